//! Small problems whose nondominated sets can be enumerated exactly.

use crate::error::Result;
use crate::metrics::nondominated_indices;
use crate::model::{violation_of, Bounds, Evaluation, IndexPartition, ProblemSpec};

/// A point of an enumerated reference front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePoint {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct AnalyticProblem {
    pub spec: ProblemSpec,
    /// Grid points per continuous coordinate used by [`Self::reference_front`].
    pub continuous_grid: usize,
}

impl AnalyticProblem {
    /// Feasible nondominated points over the integer lattice times a uniform
    /// grid on each continuous coordinate (the midpoint when the grid has
    /// one point).
    pub fn reference_front(&self) -> Result<Vec<ReferencePoint>> {
        let domain = self.spec.domain();
        let part = domain.partition();
        let (lower, upper) = (domain.bounds().lower(), domain.bounds().upper());
        let axes: Vec<Vec<f64>> = (0..domain.dim())
            .map(|i| {
                if part.is_integer(i) {
                    (lower[i] as i64..=upper[i] as i64).map(|v| v as f64).collect()
                } else if self.continuous_grid <= 1 {
                    vec![0.5 * (lower[i] + upper[i])]
                } else {
                    let steps = (self.continuous_grid - 1) as f64;
                    (0..self.continuous_grid)
                        .map(|k| lower[i] + (upper[i] - lower[i]) * k as f64 / steps)
                        .collect()
                }
            })
            .collect();

        let mut xs = Vec::new();
        let mut fs = Vec::new();
        let mut idx = vec![0usize; axes.len()];
        'outer: loop {
            let x: Vec<f64> = idx.iter().zip(&axes).map(|(&k, a)| a[k]).collect();
            let out = self.spec.evaluate(&part.split(&x)?)?;
            if violation_of(&out.constraints) == 0.0 {
                xs.push(x);
                fs.push(out.objectives);
            }
            for d in (0..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < axes[d].len() {
                    continue 'outer;
                }
                idx[d] = 0;
            }
            break;
        }
        Ok(nondominated_indices(&fs)
            .into_iter()
            .map(|i| ReferencePoint {
                x: xs[i].clone(),
                f: fs[i].clone(),
            })
            .collect())
    }
}

/// `f1 = z1 + z2`, `f2 = (10 - z1) + (10 - z2)` on `{0..10}²`, plus a
/// continuous coordinate in `[0, 1]` that neither objective reads. Every
/// lattice point is nondominated.
pub fn integer_grid() -> AnalyticProblem {
    let part = IndexPartition::new(3, [1, 2]).expect("valid partition");
    let bounds = Bounds::new(vec![0.0, 0.0, 0.0], vec![1.0, 10.0, 10.0]).expect("valid bounds");
    let spec = ProblemSpec::from_fn("integer-grid", part, bounds, 2, 0, |x| Evaluation {
        objectives: vec![x[1] + x[2], (10.0 - x[1]) + (10.0 - x[2])],
        constraints: Vec::new(),
    })
    .expect("valid problem");
    AnalyticProblem {
        spec,
        continuous_grid: 1,
    }
}

fn convex_objectives(x: &[f64]) -> Vec<f64> {
    let (c, z) = (x[0], x[1]);
    vec![(c - 0.25).powi(2) + z, (c - 0.75).powi(2) + (3.0 - z)]
}

/// `f1 = (x - 0.25)² + z`, `f2 = (x - 0.75)² + (3 - z)` with `x ∈ [0, 1]`,
/// `z ∈ {0..3}`. For every `z` the nondominated slice is `x ∈ [0.25, 0.75]`,
/// and no slice dominates another.
pub fn mixed_convex() -> AnalyticProblem {
    let part = IndexPartition::new(2, [1]).expect("valid partition");
    let bounds = Bounds::new(vec![0.0, 0.0], vec![1.0, 3.0]).expect("valid bounds");
    let spec = ProblemSpec::from_fn("mixed-convex", part, bounds, 2, 0, |x| Evaluation {
        objectives: convex_objectives(x),
        constraints: Vec::new(),
    })
    .expect("valid problem");
    AnalyticProblem {
        spec,
        continuous_grid: 2001,
    }
}

/// [`mixed_convex`] with the linear cut `x + z/4 - 0.9 <= 0`. The feasible
/// nondominated slice for `z` is `x ∈ [0.25, min(0.75, 0.9 - z/4)]`, which
/// collapses to the single point `x = 0.15` for `z = 3`.
pub fn constrained_convex() -> AnalyticProblem {
    let part = IndexPartition::new(2, [1]).expect("valid partition");
    let bounds = Bounds::new(vec![0.0, 0.0], vec![1.0, 3.0]).expect("valid bounds");
    let spec = ProblemSpec::from_fn("constrained-convex", part, bounds, 2, 1, |x| Evaluation {
        objectives: convex_objectives(x),
        constraints: vec![x[0] + 0.25 * x[1] - 0.9],
    })
    .expect("valid problem");
    AnalyticProblem {
        spec,
        continuous_grid: 2001,
    }
}

pub fn analytic_oracle_problems() -> Vec<AnalyticProblem> {
    vec![integer_grid(), mixed_convex(), constrained_convex()]
}
