//! Memoized, budgeted access to the black box for one solver run.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{penalize, violation_of, Domain, MixedPoint, ObjectiveVector, ProblemSpec};

/// Cached outcome of one distinct oracle call.
#[derive(Debug, Clone, PartialEq)]
pub struct PointValue {
    pub objectives: Vec<f64>,
    pub violation: f64,
    /// `Z(x; eps)` for the run's `eps`.
    pub penalized: ObjectiveVector,
}

/// Evaluation cache keyed on the exact point. Only cache misses count
/// against the budget.
pub struct Oracle<'p> {
    problem: &'p ProblemSpec,
    eps: f64,
    max_evals: u64,
    misses: u64,
    calls: u64,
    cache: HashMap<MixedPoint, Arc<PointValue>>,
    trace: Option<Vec<MixedPoint>>,
}

impl<'p> Oracle<'p> {
    pub fn new(problem: &'p ProblemSpec, eps: f64, max_evals: u64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::usage(format!(
                "penalty parameter must be positive, got {eps}"
            )));
        }
        Ok(Self {
            problem,
            eps,
            max_evals,
            misses: 0,
            calls: 0,
            cache: HashMap::new(),
            trace: None,
        })
    }

    /// Records every requested point, hits included, in request order.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn problem(&self) -> &'p ProblemSpec {
        self.problem
    }

    pub fn domain(&self) -> &'p Domain {
        self.problem.domain()
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Distinct oracle calls made so far.
    pub fn evaluations(&self) -> u64 {
        self.misses
    }

    /// All requests, cache hits included.
    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn cache_hits(&self) -> u64 {
        self.calls - self.misses
    }

    pub fn max_evals(&self) -> u64 {
        self.max_evals
    }

    pub fn exhausted(&self) -> bool {
        self.misses >= self.max_evals
    }

    pub fn trace(&self) -> Option<&[MixedPoint]> {
        self.trace.as_deref()
    }

    pub fn value(&mut self, x: &MixedPoint) -> Result<Arc<PointValue>> {
        if let Some(t) = &mut self.trace {
            t.push(x.clone());
        }
        if let Some(v) = self.cache.get(x) {
            self.calls += 1;
            return Ok(Arc::clone(v));
        }
        if self.misses >= self.max_evals {
            return Err(Error::BudgetExhausted);
        }
        self.calls += 1;
        self.misses += 1;
        let out = self.problem.evaluate(x)?;
        let violation = violation_of(&out.constraints);
        let value = Arc::new(PointValue {
            penalized: penalize(&out.objectives, violation, self.eps),
            objectives: out.objectives,
            violation,
        });
        self.cache.insert(x.clone(), Arc::clone(&value));
        Ok(value)
    }
}
