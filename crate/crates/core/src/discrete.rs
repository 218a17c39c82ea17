//! Primitive integer directions, their enrichment, and the discrete search.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::Result;
use crate::eval::Oracle;
use crate::front::{FrontEntry, FrontList};
use crate::model::{all_above, all_below, Domain, IndexPartition, MixedPoint};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// True iff `v` is nonzero and the gcd of its nonzero components is 1.
pub fn is_primitive(v: &[i64]) -> bool {
    let g = v.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()));
    g == 1
}

/// An integer direction on the integer subspace, with a stable id (its
/// position in the [`DirectionSet`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveDirection {
    pub id: usize,
    pub vector: Vec<i64>,
}

impl PrimitiveDirection {
    /// The direction embedded in `R^n`, zero on continuous coordinates.
    pub fn dense(&self, partition: &IndexPartition) -> Vec<i64> {
        let mut out = vec![0; partition.dim()];
        for (&i, &v) in partition.integer().iter().zip(&self.vector) {
            out[i] = v;
        }
        out
    }
}

/// The current set `D_k` of primitive directions.
///
/// Enrichment walks sup-norm shells `r = 1, 2, ...` in lexicographic order,
/// skipping vectors already present and vectors with a component larger
/// than that coordinate's range (infeasible from every point). Once every
/// shell up to the largest range has been walked the set equals the set of
/// all feasible primitive directions and stops growing.
#[derive(Debug, Clone)]
pub struct DirectionSet {
    directions: Vec<PrimitiveDirection>,
    present: HashSet<Vec<i64>>,
    ranges: Vec<i64>,
    level: i64,
    cursor: Option<Vec<i64>>,
    complete: bool,
    shell_limit: usize,
}

/// Default cap on directions added by one enrichment. Whole shells are
/// added when they fit; otherwise a shell is spread over several enrichments.
pub const DEFAULT_SHELL_LIMIT: usize = 1024;

impl DirectionSet {
    /// `D_0 = {±e_i : i ∈ I^z}`, at level 0.
    pub fn initial(domain: &Domain) -> Self {
        let nz = domain.n_integer();
        let ranges: Vec<i64> = domain
            .int_lower()
            .iter()
            .zip(domain.int_upper())
            .map(|(l, u)| u - l)
            .collect();
        let mut set = Self {
            directions: Vec::with_capacity(2 * nz),
            present: HashSet::new(),
            ranges,
            level: 0,
            cursor: None,
            complete: false,
            shell_limit: DEFAULT_SHELL_LIMIT,
        };
        for i in 0..nz {
            for s in [1, -1] {
                let mut v = vec![0; nz];
                v[i] = s;
                set.push(v);
            }
        }
        set
    }

    pub fn with_shell_limit(mut self, limit: usize) -> Self {
        self.shell_limit = limit.max(1);
        self
    }

    fn push(&mut self, vector: Vec<i64>) {
        self.present.insert(vector.clone());
        self.directions.push(PrimitiveDirection {
            id: self.directions.len(),
            vector,
        });
    }

    pub fn directions(&self) -> &[PrimitiveDirection] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Sup-norm radius of the shell currently being enumerated.
    pub fn level(&self) -> i64 {
        self.level
    }

    /// True once the set holds every feasible primitive direction.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn max_range(&self) -> i64 {
        self.ranges.iter().copied().max().unwrap_or(0)
    }

    fn shell_start(&self) -> Vec<i64> {
        self.ranges.iter().map(|&r| -r.min(self.level)).collect()
    }

    /// Advances the odometer; `false` once the shell is exhausted.
    fn advance(&self, v: &mut [i64]) -> bool {
        for i in (0..v.len()).rev() {
            let hi = self.ranges[i].min(self.level);
            if v[i] < hi {
                v[i] += 1;
                return true;
            }
            v[i] = -hi;
        }
        false
    }

    /// Adds new primitive directions, returning how many were added. Adds
    /// nothing once the set is complete.
    pub fn enrich(&mut self) -> usize {
        let mut added = 0;
        while !self.complete {
            let mut v = match self.cursor.take() {
                Some(v) => v,
                None => {
                    self.level += 1;
                    self.shell_start()
                }
            };
            loop {
                let sup = v.iter().map(|c| c.abs()).max().unwrap_or(0);
                if sup == self.level && !self.present.contains(&v) && is_primitive(&v) {
                    self.push(v.clone());
                    added += 1;
                }
                if !self.advance(&mut v) {
                    break;
                }
                if added == self.shell_limit {
                    self.cursor = Some(v);
                    return added;
                }
            }
            if self.level >= self.max_range() {
                self.complete = true;
            }
            if added > 0 {
                break;
            }
        }
        added
    }
}

/// Largest `t >= 0` with `y + t·p` inside the box.
pub fn max_feasible_step(y: &MixedPoint, p: &[i64], domain: &Domain) -> i64 {
    let mut best = i64::MAX;
    for ((&v, &d), (&l, &u)) in y
        .integer()
        .iter()
        .zip(p)
        .zip(domain.int_lower().iter().zip(domain.int_upper()))
    {
        let room = match d.signum() {
            1 => (u - v) / d,
            -1 => (v - l) / -d,
            _ => continue,
        };
        best = best.min(room.max(0));
    }
    if best == i64::MAX {
        0
    } else {
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscreteOutcome {
    /// No admissible step; the direction's stepsize was halved (floored at 1).
    Failed,
    /// At least one trial was offered to the list; `last_step` is the final
    /// stepsize reached.
    Moved { last_step: i64 },
}

/// Discrete search from `entry` along `dir`, updating `list` in place.
///
/// A search whose trials pass but are all already listed leaves the point
/// set as it was; it takes the failure branch (halving `α^(d)_p`) so that
/// the entry's stepsizes can return to 1 once its neighbourhood is listed.
pub fn discrete_search(
    entry: &FrontEntry,
    dir: &PrimitiveDirection,
    list: &mut FrontList,
    oracle: &mut Oracle<'_>,
) -> Result<DiscreteOutcome> {
    let domain = oracle.domain();
    let p = &dir.vector;
    let xi = entry.xi;
    let current = entry.alpha_d(dir.id);
    let max_step = max_feasible_step(&entry.x, p, domain);
    let mut alpha = max_step.min(current as i64);
    let version = list.point_version();

    let fail = |list: &mut FrontList| {
        list.replace_entry(entry, entry.with_alpha_d(dir.id, (current / 2).max(1)));
        Ok(DiscreteOutcome::Failed)
    };
    if alpha == 0 {
        return fail(list);
    }
    let mut x_alpha = domain.integer_step(&entry.x, alpha, p);
    let mut v_alpha = oracle.value(&x_alpha)?;
    if all_above(&v_alpha.penalized, entry.z(), xi) {
        return fail(list);
    }

    let (beta, x_beta, v_beta) = loop {
        let beta = max_step.min(2 * alpha);
        let x_beta = domain.integer_step(&entry.x, beta, p);
        let v_beta = oracle.value(&x_beta)?;

        if !all_below(&v_beta.penalized, &v_alpha.penalized, xi) {
            let child = entry.child(x_alpha, v_alpha).with_alpha_d(dir.id, alpha as u64);
            list.add_and_filter(child);
        }

        if beta < max_step && !list.beats_with_margin(&v_beta.penalized, xi) {
            alpha = beta;
            x_alpha = x_beta;
            v_alpha = v_beta;
            continue;
        }
        break (beta, x_beta, v_beta);
    };

    if beta == max_step {
        let child = entry.child(x_beta, v_beta).with_alpha_d(dir.id, beta as u64);
        list.add_and_filter(child);
    }
    if list.point_version() == version {
        return fail(list);
    }
    Ok(DiscreteOutcome::Moved { last_step: beta })
}
