//! Problem model for boxed mixed-integer multiobjective problems.
//!
//! A point lives in `X ∩ Z`: inside the box `[l, u]`, with every coordinate in
//! the integer index set holding an integral value. Integer coordinates are
//! stored as `i64` and only widened to `f64` when handed to an evaluator, so
//! equality on the integer part is exact.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Continuous(usize),
    Integer(usize),
}

/// Split of `0..n` into continuous and integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPartition {
    continuous: Vec<usize>,
    integer: Vec<usize>,
    slots: Vec<Slot>,
}

impl IndexPartition {
    /// Builds a partition of `0..n` where `integer` lists the integer
    /// coordinates and every other index is continuous.
    pub fn new(n: usize, integer: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut is_int = vec![false; n];
        for i in integer {
            if i >= n {
                return Err(Error::usage(format!(
                    "integer index {i} out of range for n = {n}"
                )));
            }
            if is_int[i] {
                return Err(Error::usage(format!("integer index {i} listed twice")));
            }
            is_int[i] = true;
        }
        let continuous: Vec<usize> = (0..n).filter(|&i| !is_int[i]).collect();
        let integer: Vec<usize> = (0..n).filter(|&i| is_int[i]).collect();
        Self::from_sets(n, continuous, integer)
    }

    /// Builds a partition from both index sets, checking that they cover
    /// `0..n` disjointly and are both nonempty. Subspace order is ascending
    /// index order.
    pub fn from_sets(n: usize, mut continuous: Vec<usize>, mut integer: Vec<usize>) -> Result<Self> {
        continuous.sort_unstable();
        integer.sort_unstable();
        if continuous.is_empty() || integer.is_empty() {
            return Err(Error::usage(
                "both the continuous and the integer index sets must be nonempty",
            ));
        }
        let mut slots = vec![None; n];
        for (k, &i) in continuous.iter().enumerate() {
            match slots.get_mut(i) {
                Some(s @ None) => *s = Some(Slot::Continuous(k)),
                Some(Some(_)) => return Err(Error::usage(format!("index {i} assigned twice"))),
                None => return Err(Error::usage(format!("index {i} out of range for n = {n}"))),
            }
        }
        for (k, &i) in integer.iter().enumerate() {
            match slots.get_mut(i) {
                Some(s @ None) => *s = Some(Slot::Integer(k)),
                Some(Some(_)) => return Err(Error::usage(format!("index {i} assigned twice"))),
                None => return Err(Error::usage(format!("index {i} out of range for n = {n}"))),
            }
        }
        let slots = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::usage(format!("index {i} not assigned"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            continuous,
            integer,
            slots,
        })
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn continuous(&self) -> &[usize] {
        &self.continuous
    }

    pub fn integer(&self) -> &[usize] {
        &self.integer
    }

    pub fn is_integer(&self, i: usize) -> bool {
        matches!(self.slots[i], Slot::Integer(_))
    }

    /// Dense `n`-vector view of a mixed point.
    pub fn assemble(&self, point: &MixedPoint) -> Vec<f64> {
        self.slots
            .iter()
            .map(|s| match *s {
                Slot::Continuous(k) => point.continuous[k],
                Slot::Integer(k) => point.integer[k] as f64,
            })
            .collect()
    }

    /// Splits a dense vector, failing if an integer coordinate is not integral.
    pub fn split(&self, x: &[f64]) -> Result<MixedPoint> {
        Error::check_len(self.dim(), x.len())?;
        let mut continuous = Vec::with_capacity(self.continuous.len());
        let mut integer = Vec::with_capacity(self.integer.len());
        for (i, slot) in self.slots.iter().enumerate() {
            let v = x[i];
            if !v.is_finite() {
                return Err(Error::usage(format!("coordinate {i} is not finite")));
            }
            match slot {
                Slot::Continuous(_) => continuous.push(v),
                Slot::Integer(_) => {
                    if v.fract() != 0.0 || v.abs() >= 9.0e15 {
                        return Err(Error::usage(format!(
                            "coordinate {i} is declared integer but holds {v}"
                        )));
                    }
                    integer.push(v as i64);
                }
            }
        }
        Ok(MixedPoint::new(continuous, integer))
    }
}

/// Box bounds `l <= x <= u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        Error::check_len(lower.len(), upper.len())?;
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::usage(format!(
                    "bounds at {i} must satisfy l < u, got [{l}, {u}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Checks the bounds against a partition: same dimension, integral
    /// bounds on integer coordinates.
    pub fn check(&self, partition: &IndexPartition) -> Result<()> {
        Error::check_len(partition.dim(), self.dim())?;
        for &i in partition.integer() {
            if self.lower[i].fract() != 0.0 || self.upper[i].fract() != 0.0 {
                return Err(Error::usage(format!(
                    "integer coordinate {i} needs integral bounds"
                )));
            }
        }
        Ok(())
    }
}

/// A point of `X ∩ Z`, split into its continuous and integer parts.
///
/// Equality and hashing are exact: continuous parts compare bit patterns
/// (with `-0.0` folded into `0.0`), integer parts compare as integers.
#[derive(Debug, Clone)]
pub struct MixedPoint {
    continuous: Vec<f64>,
    integer: Vec<i64>,
}

impl MixedPoint {
    pub fn new(mut continuous: Vec<f64>, integer: Vec<i64>) -> Self {
        for v in &mut continuous {
            if *v == 0.0 {
                *v = 0.0;
            }
        }
        Self { continuous, integer }
    }

    pub fn continuous(&self) -> &[f64] {
        &self.continuous
    }

    pub fn integer(&self) -> &[i64] {
        &self.integer
    }
}

impl PartialEq for MixedPoint {
    fn eq(&self, other: &Self) -> bool {
        self.integer == other.integer
            && self.continuous.len() == other.continuous.len()
            && self
                .continuous
                .iter()
                .zip(&other.continuous)
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl Eq for MixedPoint {}

impl Hash for MixedPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.integer.hash(state);
        for v in &self.continuous {
            v.to_bits().hash(state);
        }
    }
}

/// Variable partition and box bounds, with the bounds also split into the
/// continuous and integer subspaces for the search routines.
#[derive(Debug, Clone)]
pub struct Domain {
    partition: IndexPartition,
    bounds: Bounds,
    cont_lower: Vec<f64>,
    cont_upper: Vec<f64>,
    int_lower: Vec<i64>,
    int_upper: Vec<i64>,
}

impl Domain {
    pub fn new(partition: IndexPartition, bounds: Bounds) -> Result<Self> {
        bounds.check(&partition)?;
        let cont_lower = partition.continuous().iter().map(|&i| bounds.lower[i]).collect();
        let cont_upper = partition.continuous().iter().map(|&i| bounds.upper[i]).collect();
        let int_lower = partition
            .integer()
            .iter()
            .map(|&i| bounds.lower[i] as i64)
            .collect();
        let int_upper = partition
            .integer()
            .iter()
            .map(|&i| bounds.upper[i] as i64)
            .collect();
        Ok(Self {
            partition,
            bounds,
            cont_lower,
            cont_upper,
            int_lower,
            int_upper,
        })
    }

    pub fn partition(&self) -> &IndexPartition {
        &self.partition
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.partition.dim()
    }

    pub fn n_continuous(&self) -> usize {
        self.cont_lower.len()
    }

    pub fn n_integer(&self) -> usize {
        self.int_lower.len()
    }

    pub fn int_lower(&self) -> &[i64] {
        &self.int_lower
    }

    pub fn int_upper(&self) -> &[i64] {
        &self.int_upper
    }

    pub fn contains(&self, p: &MixedPoint) -> bool {
        p.continuous.len() == self.cont_lower.len()
            && p.integer.len() == self.int_lower.len()
            && p.continuous
                .iter()
                .zip(self.cont_lower.iter().zip(&self.cont_upper))
                .all(|(v, (l, u))| l <= v && v <= u)
            && p.integer
                .iter()
                .zip(self.int_lower.iter().zip(&self.int_upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    /// Midpoint of the box, integer coordinates rounded half away from zero.
    pub fn centroid(&self) -> MixedPoint {
        let continuous = self
            .cont_lower
            .iter()
            .zip(&self.cont_upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect();
        let integer = self
            .int_lower
            .iter()
            .zip(&self.int_upper)
            .map(|(&l, &u)| ((l + u) as f64 / 2.0).round() as i64)
            .collect();
        MixedPoint::new(continuous, integer)
    }

    /// `[y + alpha * p]_{[l,u]}` for a direction `p` living in the continuous
    /// subspace. The integer part of `y` is untouched.
    pub fn continuous_step(&self, y: &MixedPoint, alpha: f64, p: &[f64]) -> MixedPoint {
        let continuous = y
            .continuous
            .iter()
            .zip(p)
            .zip(self.cont_lower.iter().zip(&self.cont_upper))
            .map(|((v, d), (l, u))| (v + alpha * d).clamp(*l, *u))
            .collect();
        MixedPoint::new(continuous, y.integer.clone())
    }

    /// `y + t * p` for an integer direction on the integer subspace. The
    /// caller guarantees the result is inside the box.
    pub fn integer_step(&self, y: &MixedPoint, t: i64, p: &[i64]) -> MixedPoint {
        let integer = y.integer.iter().zip(p).map(|(v, d)| v + t * d).collect();
        MixedPoint::new(y.continuous.clone(), integer)
    }
}

/// Objective (or penalized objective) values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector(pub Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

/// Raw black-box output at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objectives: Vec<f64>,
    pub constraints: Vec<f64>,
}

/// A black box mapping a dense point to objective and constraint values.
///
/// Implementations must be deterministic; the solver memoizes results.
pub trait Evaluator: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> std::result::Result<Evaluation, String>;
}

struct FnEvaluator<F>(F);

impl<F> Evaluator for FnEvaluator<F>
where
    F: Fn(&[f64]) -> Evaluation + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> std::result::Result<Evaluation, String> {
        Ok((self.0)(x))
    }
}

/// A user problem: domain, objective/constraint counts and the black box.
#[derive(Clone)]
pub struct ProblemSpec {
    name: String,
    domain: Domain,
    q: usize,
    m: usize,
    evaluator: Arc<dyn Evaluator>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("n", &self.domain.dim())
            .field("q", &self.q)
            .field("m", &self.m)
            .finish()
    }
}

impl ProblemSpec {
    pub fn new(
        name: impl Into<String>,
        partition: IndexPartition,
        bounds: Bounds,
        q: usize,
        m: usize,
        evaluator: Arc<dyn Evaluator>,
    ) -> Result<Self> {
        if q == 0 {
            return Err(Error::usage("a problem needs at least one objective"));
        }
        Ok(Self {
            name: name.into(),
            domain: Domain::new(partition, bounds)?,
            q,
            m,
            evaluator,
        })
    }

    /// Convenience constructor from a plain closure returning `(F, g)`.
    pub fn from_fn<F>(
        name: impl Into<String>,
        partition: IndexPartition,
        bounds: Bounds,
        q: usize,
        m: usize,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> Evaluation + Send + Sync + 'static,
    {
        Self::new(name, partition, bounds, q, m, Arc::new(FnEvaluator(f)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn partition(&self) -> &IndexPartition {
        self.domain.partition()
    }

    pub fn bounds(&self) -> &Bounds {
        self.domain.bounds()
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn num_objectives(&self) -> usize {
        self.q
    }

    pub fn num_constraints(&self) -> usize {
        self.m
    }

    pub fn evaluator(&self) -> &Arc<dyn Evaluator> {
        &self.evaluator
    }

    /// Calls the black box and validates the shape and finiteness of its output.
    pub fn evaluate(&self, x: &MixedPoint) -> Result<Evaluation> {
        let dense = self.partition().assemble(x);
        let fail = |dense: Vec<f64>, message: String| Error::Evaluation {
            point: dense,
            message,
        };
        let out = match self.evaluator.evaluate(&dense) {
            Ok(out) => out,
            Err(msg) => return Err(fail(dense, msg)),
        };
        if out.objectives.len() != self.q {
            let msg = format!("expected {} objectives, got {}", self.q, out.objectives.len());
            return Err(fail(dense, msg));
        }
        if out.constraints.len() != self.m {
            let msg = format!("expected {} constraints, got {}", self.m, out.constraints.len());
            return Err(fail(dense, msg));
        }
        if out
            .objectives
            .iter()
            .chain(&out.constraints)
            .any(|v| !v.is_finite())
        {
            return Err(fail(dense, "non-finite evaluator output".into()));
        }
        Ok(out)
    }

    /// Returns a copy of the problem with a different evaluator and
    /// constraint count, keeping domain and objectives count.
    pub fn with_evaluator(&self, name: impl Into<String>, m: usize, evaluator: Arc<dyn Evaluator>) -> Self {
        Self {
            name: name.into(),
            domain: self.domain.clone(),
            q: self.q,
            m,
            evaluator,
        }
    }
}

/// `u ≤ v` with `u ≠ v`: `u` Pareto-dominates `v`.
pub fn dominates(u: &[f64], v: &[f64]) -> Result<bool> {
    Error::check_len(u.len(), v.len())?;
    Ok(dominates_unchecked(u, v))
}

/// `u_i < v_i` for every `i`.
pub fn strictly_less(u: &[f64], v: &[f64]) -> Result<bool> {
    Error::check_len(u.len(), v.len())?;
    Ok(u.iter().zip(v).all(|(a, b)| a < b))
}

#[inline]
pub(crate) fn dominates_unchecked(u: &[f64], v: &[f64]) -> bool {
    let mut strict = false;
    for (a, b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// `a > b - margin·1` componentwise.
///
/// Tested as `a - b > -margin` so that a margin far below the ulp of `b`
/// still separates `a == b` from a decrease.
#[inline]
pub(crate) fn all_above(a: &[f64], b: &[f64], margin: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| *x - *y > -margin)
}

/// `a < b - margin·1` componentwise, in the same difference form as
/// [`all_above`].
#[inline]
pub(crate) fn all_below(a: &[f64], b: &[f64], margin: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| *x - *y < -margin)
}

/// `Σ_j max{0, g_j}`.
pub fn violation_of(constraints: &[f64]) -> f64 {
    constraints.iter().map(|g| g.max(0.0)).sum::<f64>() + 0.0
}

/// `f_i + violation / eps` for every objective.
pub fn penalize(objectives: &[f64], violation: f64, eps: f64) -> ObjectiveVector {
    if violation == 0.0 {
        return ObjectiveVector(objectives.to_vec());
    }
    let shift = violation / eps;
    ObjectiveVector(objectives.iter().map(|f| f + shift).collect())
}

/// Penalized objectives `Z(x; eps)`.
pub fn penalty_values(problem: &ProblemSpec, x: &MixedPoint, eps: f64) -> Result<ObjectiveVector> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::usage(format!(
            "penalty parameter must be positive, got {eps}"
        )));
    }
    let out = problem.evaluate(x)?;
    Ok(penalize(&out.objectives, violation_of(&out.constraints), eps))
}

/// Total constraint violation `Σ_j max{0, g_j(x)}`.
pub fn violation(problem: &ProblemSpec, x: &MixedPoint) -> Result<f64> {
    Ok(violation_of(&problem.evaluate(x)?.constraints))
}

/// Componentwise projection onto the box. Integer coordinates must already
/// be integral.
pub fn project_to_box(x: &[f64], bounds: &Bounds, partition: &IndexPartition) -> Result<MixedPoint> {
    Error::check_len(bounds.dim(), x.len())?;
    Error::check_len(partition.dim(), x.len())?;
    let clamped: Vec<f64> = x
        .iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(v, (l, u))| v.clamp(*l, *u))
        .collect();
    for &i in partition.integer() {
        if x[i].fract() != 0.0 {
            return Err(Error::usage(format!(
                "projection got non-integral value {} on integer coordinate {i}",
                x[i]
            )));
        }
    }
    partition.split(&clamped)
}
