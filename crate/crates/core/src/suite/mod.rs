//! Benchmark instances: discretized UF problems, the six constraint
//! families, and small problems whose fronts can be enumerated exactly.

mod analytic;
mod uf;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use analytic::{
    analytic_oracle_problems, constrained_convex, integer_grid, mixed_convex, AnalyticProblem, ReferencePoint,
};
pub use uf::Uf;

use crate::error::{Error, Result};
use crate::model::{Bounds, Evaluation, Evaluator, IndexPartition, ProblemSpec};

/// Dimensions used by the benchmark suite.
pub const SUITE_DIMENSIONS: [usize; 5] = [10, 15, 20, 25, 30];

/// Integer codes run over `0..=INTEGER_LEVELS`.
pub const INTEGER_LEVELS: i64 = 100;

/// Map from solver variables back to the original UF variables: identity on
/// continuous coordinates, `x̃_i = l_i + (u_i - l_i) x_i / 100` on integer codes.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableMap {
    lower: Vec<f64>,
    range: Vec<f64>,
    first_integer: usize,
}

impl VariableMap {
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(i, &v)| {
                if i < self.first_integer {
                    v
                } else {
                    self.lower[i] + self.range[i] * v / INTEGER_LEVELS as f64
                }
            })
            .collect()
    }
}

/// A mixed-integer problem obtained from a continuous UF function.
#[derive(Debug, Clone)]
pub struct Discretized {
    pub spec: ProblemSpec,
    pub map: VariableMap,
    pub base: Uf,
}

struct DiscretizedEvaluator {
    base: Uf,
    map: VariableMap,
}

impl Evaluator for DiscretizedEvaluator {
    fn evaluate(&self, x: &[f64]) -> std::result::Result<Evaluation, String> {
        Ok(Evaluation {
            objectives: self.base.evaluate(&self.map.apply(x)),
            constraints: Vec::new(),
        })
    }
}

/// Keeps the first `⌊n/2⌋` variables continuous and turns the rest into
/// integer codes in `[0, 100]` mapped affinely onto the original range.
pub fn discretize(base: Uf) -> Result<Discretized> {
    let n = base.dim();
    let n_c = n / 2;
    let (lo, hi) = (base.lower(), base.upper());
    let mut lower = lo.clone();
    let mut upper = hi.clone();
    for i in n_c..n {
        lower[i] = 0.0;
        upper[i] = INTEGER_LEVELS as f64;
    }
    let map = VariableMap {
        range: lo.iter().zip(&hi).map(|(l, u)| u - l).collect(),
        lower: lo,
        first_integer: n_c,
    };
    let partition = IndexPartition::new(n, n_c..n)?;
    let evaluator = Arc::new(DiscretizedEvaluator {
        base,
        map: map.clone(),
    });
    let spec = ProblemSpec::new(
        format!("UF{}-n{}", base.id(), n),
        partition,
        Bounds::new(lower, upper)?,
        base.num_objectives(),
        0,
        evaluator,
    )?;
    Ok(Discretized { spec, map, base })
}

/// Number of constraints family `family` contributes for dimension `n`.
pub fn constraint_count(family: u8, n: usize) -> Result<usize> {
    match family {
        1 | 2 | 5 => Ok(n - 2),
        3 | 4 => Ok(n - 1),
        6 => Ok(1),
        _ => Err(Error::usage(format!(
            "unknown constraint family {family}, expected 1..=6"
        ))),
    }
}

/// Constraint values `g(x)` of one family, evaluated on original variables.
pub fn constraint_values(family: u8, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let cubic = |j: usize, a: f64, c: f64| (3.0 - a * x[j + 1]) * x[j + 1] - x[j] - 2.0 * x[j + 2] + c;
    let quad = |j: usize| x[j] * x[j] + x[j + 1] * x[j + 1] + x[j] * x[j + 1];
    match family {
        1 => (0..n - 2).map(|j| cubic(j, 2.0, 1.0)).collect(),
        2 => (0..n - 2).map(|j| cubic(j, 2.0, 2.5)).collect(),
        3 => (0..n - 1)
            .map(|j| quad(j) - 2.0 * x[j] - 2.0 * x[j + 1] + 1.0)
            .collect(),
        4 => (0..n - 1).map(|j| quad(j) - 1.0).collect(),
        5 => (0..n - 2).map(|j| cubic(j, 0.5, 1.0)).collect(),
        6 => vec![(0..n - 2).map(|j| cubic(j, 0.5, 1.0)).sum()],
        _ => Vec::new(),
    }
}

struct ConstrainedEvaluator {
    inner: Arc<dyn Evaluator>,
    map: VariableMap,
    family: u8,
}

impl Evaluator for ConstrainedEvaluator {
    fn evaluate(&self, x: &[f64]) -> std::result::Result<Evaluation, String> {
        let mut out = self.inner.evaluate(x)?;
        out.constraints = constraint_values(self.family, &self.map.apply(x));
        Ok(out)
    }
}

/// Adds constraint family `family` to a discretized problem. The
/// constraints see the same original variables `x̃` as the objectives.
pub fn attach_constraints(problem: &Discretized, family: u8) -> Result<ProblemSpec> {
    let n = problem.spec.dim();
    if n < 3 {
        return Err(Error::usage("constraint families need n >= 3"));
    }
    let m = constraint_count(family, n)?;
    let evaluator = Arc::new(ConstrainedEvaluator {
        inner: Arc::clone(problem.spec.evaluator()),
        map: problem.map.clone(),
        family,
    });
    Ok(problem
        .spec
        .with_evaluator(format!("{}-fam{family}", problem.spec.name()), m, evaluator))
}

/// Identifier of a suite instance, printed as `UF3-n20` or `UF3-n20-fam4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstanceId {
    pub uf: u8,
    pub n: usize,
    pub family: Option<u8>,
}

impl InstanceId {
    pub fn num_objectives(&self) -> usize {
        if self.uf >= 8 {
            3
        } else {
            2
        }
    }

    pub fn is_constrained(&self) -> bool {
        self.family.is_some()
    }
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UF{}-n{}", self.uf, self.n)?;
        if let Some(fam) = self.family {
            write!(f, "-fam{fam}")?;
        }
        Ok(())
    }
}

impl FromStr for InstanceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::usage(format!(
                "bad instance id {s:?}, expected e.g. UF3-n20 or UF3-n20-fam4"
            ))
        };
        let mut parts = s.split('-');
        let uf = parts
            .next()
            .and_then(|p| p.strip_prefix("UF"))
            .and_then(|p| p.parse::<u8>().ok())
            .ok_or_else(bad)?;
        let n = parts
            .next()
            .and_then(|p| p.strip_prefix('n'))
            .and_then(|p| p.parse::<usize>().ok())
            .ok_or_else(bad)?;
        let family = match parts.next() {
            None => None,
            Some(p) => Some(
                p.strip_prefix("fam")
                    .and_then(|f| f.parse::<u8>().ok())
                    .ok_or_else(bad)?,
            ),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Uf::new(uf, n)?;
        if let Some(fam) = family {
            constraint_count(fam, n)?;
        }
        Ok(Self { uf, n, family })
    }
}

/// One benchmark problem and its id.
#[derive(Debug, Clone)]
pub struct SuiteInstance {
    pub id: InstanceId,
    pub spec: ProblemSpec,
}

impl SuiteInstance {
    pub fn build(id: InstanceId) -> Result<Self> {
        let d = discretize(Uf::new(id.uf, id.n)?)?;
        let spec = match id.family {
            None => d.spec,
            Some(fam) => attach_constraints(&d, fam)?,
        };
        Ok(Self { id, spec })
    }

    pub fn n_continuous(&self) -> usize {
        self.id.n / 2
    }

    pub fn n_integer(&self) -> usize {
        self.id.n - self.id.n / 2
    }
}

/// Every instance id: the 50 bound-constrained problems first, then the 300
/// constrained ones, ordered by UF id, dimension and family.
pub fn suite_ids() -> Vec<InstanceId> {
    let mut ids = Vec::with_capacity(350);
    for family in std::iter::once(None).chain((1..=6).map(Some)) {
        for uf in 1..=10 {
            for n in SUITE_DIMENSIONS {
                ids.push(InstanceId { uf, n, family });
            }
        }
    }
    ids
}

pub fn enumerate_suite() -> Vec<SuiteInstance> {
    suite_ids()
        .into_iter()
        .map(|id| SuiteInstance::build(id).expect("suite ids are valid"))
        .collect()
}

/// Selection over suite instances, parsed from comma-separated terms such
/// as `q=2,bound`, `constrained`, `uf=3,n=10`, `fam=4` or `all`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteFilter {
    pub q: Option<usize>,
    pub constrained: Option<bool>,
    pub uf: Option<u8>,
    pub n: Option<usize>,
    pub family: Option<u8>,
}

impl SuiteFilter {
    pub fn matches(&self, id: &InstanceId) -> bool {
        self.q.is_none_or(|q| id.num_objectives() == q)
            && self.constrained.is_none_or(|c| id.is_constrained() == c)
            && self.uf.is_none_or(|u| id.uf == u)
            && self.n.is_none_or(|n| id.n == n)
            && self.family.is_none_or(|f| id.family == Some(f))
    }

    pub fn select(&self) -> Vec<InstanceId> {
        suite_ids().into_iter().filter(|id| self.matches(id)).collect()
    }
}

impl FromStr for SuiteFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut f = SuiteFilter::default();
        for term in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::usage(format!("bad filter term {term:?}"));
            match term.split_once('=') {
                None => match term {
                    "all" => {}
                    "bound" | "bound-constrained" | "unconstrained" => f.constrained = Some(false),
                    "constrained" => f.constrained = Some(true),
                    _ => return Err(bad()),
                },
                Some((key, value)) => match key.trim() {
                    "q" => f.q = Some(value.trim().parse().map_err(|_| bad())?),
                    "n" => f.n = Some(value.trim().parse().map_err(|_| bad())?),
                    "uf" => f.uf = Some(value.trim().trim_start_matches("UF").parse().map_err(|_| bad())?),
                    "fam" | "family" => {
                        f.family = Some(value.trim().parse().map_err(|_| bad())?);
                        f.constrained = Some(true);
                    }
                    _ => return Err(bad()),
                },
            }
        }
        Ok(f)
    }
}
