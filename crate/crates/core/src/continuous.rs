//! Search over the continuous variables: a dense sequence of unit directions
//! and the projected expansion linesearch.

use statrs::function::erf::erf_inv;

use crate::error::{Error, Result};
use crate::eval::Oracle;
use crate::front::{FrontEntry, FrontList};
use crate::model::{all_below, IndexPartition};

fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut c = 2u64;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|p| *p * *p <= c)
            .all(|p| !c.is_multiple_of(*p))
        {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// Van der Corput radical inverse of `index` in `base`; in `(0, 1)` for `index >= 1`.
pub fn radical_inverse(base: u64, mut index: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    out
}

fn std_normal_quantile(u: f64) -> f64 {
    std::f64::consts::SQRT_2 * erf_inv(2.0 * u - 1.0)
}

/// Deterministic, seed-free sequence of unit directions that is dense in the
/// unit sphere of the continuous subspace.
///
/// The `k`-th direction is the Halton point with index `k + 1` (one prime base
/// per continuous coordinate) pushed through the standard normal quantile and
/// normalized. With a single continuous coordinate the sphere is `{-1, +1}`
/// and the sequence alternates between them.
#[derive(Debug, Clone)]
pub struct DirectionSequence {
    n: usize,
    continuous: Vec<usize>,
    bases: Vec<u64>,
    warmup: bool,
    k: u64,
    halton_index: u64,
}

impl DirectionSequence {
    pub fn new(partition: &IndexPartition) -> Self {
        let continuous = partition.continuous().to_vec();
        Self {
            n: partition.dim(),
            bases: first_primes(continuous.len()),
            continuous,
            warmup: false,
            k: 0,
            halton_index: 0,
        }
    }

    /// Emits the `2|I^c|` signed coordinate directions before the dense stream.
    pub fn with_coordinate_warmup(mut self, on: bool) -> Self {
        self.warmup = on;
        self
    }

    /// Number of directions emitted so far.
    pub fn count(&self) -> u64 {
        self.k
    }

    /// Next direction on the continuous subspace (length `|I^c|`).
    pub fn next_continuous(&mut self) -> Vec<f64> {
        let d = self.continuous.len();
        let k = self.k;
        self.k += 1;
        if self.warmup && k < 2 * d as u64 {
            let mut v = vec![0.0; d];
            v[(k / 2) as usize] = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            return v;
        }
        if d == 1 {
            let j = if self.warmup { k - 2 } else { k };
            return vec![if j % 2 == 0 { 1.0 } else { -1.0 }];
        }
        loop {
            self.halton_index += 1;
            let v: Vec<f64> = self
                .bases
                .iter()
                .map(|&b| std_normal_quantile(radical_inverse(b, self.halton_index)))
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 && norm.is_finite() {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }

    /// Next direction embedded in `R^n`, zero on the integer coordinates.
    pub fn next_direction(&mut self) -> Vec<f64> {
        let c = self.next_continuous();
        let mut out = vec![0.0; self.n];
        for (&i, v) in self.continuous.iter().zip(c) {
            out[i] = v;
        }
        out
    }
}

/// Linesearch constants: sufficient decrease `gamma`, expansion divisor
/// `delta`, shrink factor `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionParams {
    pub gamma: f64,
    pub delta: f64,
    pub theta: f64,
}

impl Default for ExpansionParams {
    fn default() -> Self {
        Self {
            gamma: 1e-6,
            delta: 0.5,
            theta: 0.5,
        }
    }
}

impl ExpansionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::usage(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::usage(format!(
                "delta must lie in (0,1), got {}",
                self.delta
            )));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::usage(format!(
                "theta must lie in (0,1), got {}",
                self.theta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExpansionOutcome {
    /// The first trial failed; the entry's `α^c` was multiplied by θ (if the
    /// entry was still in the list).
    Shrunk,
    /// The first trial passed and the expansion ran until its stopping test;
    /// `last_alpha` is the last stepsize accepted into the loop.
    Expanded { last_alpha: f64 },
}

/// Projected expansion along `p` (a unit vector on the continuous subspace)
/// from `entry`, updating `list` in place.
///
/// On `Err(BudgetExhausted)` the list holds every update made before the
/// budget ran out.
pub fn projected_expansion(
    entry: &FrontEntry,
    p: &[f64],
    list: &mut FrontList,
    params: &ExpansionParams,
    oracle: &mut Oracle<'_>,
) -> Result<ExpansionOutcome> {
    let domain = oracle.domain();
    Error::check_len(domain.n_continuous(), p.len())?;
    let ExpansionParams { gamma, delta, theta } = *params;

    let mut alpha = entry.alpha_c;
    let mut x_alpha = domain.continuous_step(&entry.x, alpha, p);
    let mut v_alpha = oracle.value(&x_alpha)?;

    let margin = gamma * alpha * alpha;
    if list.beats_with_margin(&v_alpha.penalized, margin) {
        list.replace_entry(entry, entry.with_alpha_c(theta * alpha));
        return Ok(ExpansionOutcome::Shrunk);
    }

    loop {
        let beta = alpha / delta;
        let x_beta = domain.continuous_step(&entry.x, beta, p);
        let v_beta = oracle.value(&x_beta)?;

        if !all_below(
            &v_beta.penalized,
            &v_alpha.penalized,
            gamma * (beta * beta - alpha * alpha),
        ) {
            let mut child = entry.child(x_alpha, v_alpha);
            child.alpha_c = alpha;
            list.add_and_filter(child);
        }

        let margin = gamma * beta * beta;
        let keep_going = !list.beats_with_margin(&v_beta.penalized, margin);
        if !keep_going {
            return Ok(ExpansionOutcome::Expanded { last_alpha: alpha });
        }
        alpha = beta;
        x_alpha = x_beta;
        v_alpha = v_beta;
    }
}
