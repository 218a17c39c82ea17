//! The evolving list of tuples `(x, α^c, α^(d), ξ)` and its Add&Filter update.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::eval::PointValue;
use crate::metrics::nondominated_indices;
use crate::model::{all_above, dominates_unchecked, MixedPoint};

/// One tuple of the list.
///
/// `alpha_d` is indexed by primitive-direction id; ids past the end of the
/// vector read as the initial stepsize 1, which is how directions added by
/// enrichment start for every existing entry.
#[derive(Debug, Clone)]
pub struct FrontEntry {
    pub x: MixedPoint,
    pub alpha_c: f64,
    alpha_d: Vec<u64>,
    pub xi: f64,
    value: Arc<PointValue>,
    xi_history: Vec<f64>,
}

impl FrontEntry {
    pub fn new(x: MixedPoint, value: Arc<PointValue>, alpha_c: f64, xi: f64) -> Self {
        Self {
            x,
            alpha_c,
            alpha_d: Vec::new(),
            xi,
            value,
            xi_history: vec![xi],
        }
    }

    /// Cached `Z(x; eps)`.
    pub fn z(&self) -> &[f64] {
        &self.value.penalized
    }

    pub fn objectives(&self) -> &[f64] {
        &self.value.objectives
    }

    pub fn violation(&self) -> f64 {
        self.value.violation
    }

    pub fn value(&self) -> &Arc<PointValue> {
        &self.value
    }

    pub fn alpha_d(&self, id: usize) -> u64 {
        self.alpha_d.get(id).copied().unwrap_or(1)
    }

    pub fn set_alpha_d(&mut self, id: usize, step: u64) {
        debug_assert!(step >= 1);
        if id >= self.alpha_d.len() {
            if step == 1 {
                return;
            }
            self.alpha_d.resize(id + 1, 1);
        }
        self.alpha_d[id] = step;
        while self.alpha_d.last() == Some(&1) {
            self.alpha_d.pop();
        }
    }

    /// True when every discrete stepsize among the first `count` directions is 1.
    pub fn all_alpha_d_unit(&self, count: usize) -> bool {
        self.alpha_d.iter().take(count).all(|&a| a == 1)
    }

    /// Nonunit discrete stepsizes as `(direction id, step)`.
    pub fn alpha_d_entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.alpha_d.iter().copied().enumerate().filter(|&(_, a)| a != 1)
    }

    /// ξ values along this tuple's chain of ancestors, oldest first.
    pub fn xi_history(&self) -> &[f64] {
        &self.xi_history
    }

    /// A trial tuple generated from this one: new point, inherited stepsizes.
    pub fn child(&self, x: MixedPoint, value: Arc<PointValue>) -> Self {
        Self {
            x,
            alpha_c: self.alpha_c,
            alpha_d: self.alpha_d.clone(),
            xi: self.xi,
            value,
            xi_history: self.xi_history.clone(),
        }
    }

    pub fn with_alpha_c(&self, alpha_c: f64) -> Self {
        Self {
            alpha_c,
            ..self.clone()
        }
    }

    pub fn with_alpha_d(&self, id: usize, step: u64) -> Self {
        let mut e = self.clone();
        e.set_alpha_d(id, step);
        e
    }

    pub fn with_xi(&self, xi: f64) -> Self {
        let mut e = self.clone();
        e.xi = xi;
        e.xi_history.push(xi);
        e
    }

    /// Tuple identity `(x, α^c, α^(d), ξ)`.
    pub fn same_tuple(&self, other: &Self) -> bool {
        self.x == other.x
            && self.alpha_c.to_bits() == other.alpha_c.to_bits()
            && self.alpha_d == other.alpha_d
            && self.xi.to_bits() == other.xi.to_bits()
    }
}

/// A reported front point with raw objectives and constraint violation.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub x: MixedPoint,
    pub objectives: Vec<f64>,
    pub violation: f64,
    pub penalized: Vec<f64>,
}

/// Nondominated values of a biobjective list, `f1` ascending and `f2`
/// strictly descending. A value that some list entry satisfies a margin
/// test against is matched by a staircase value too, since the test is
/// monotone in each component and every entry is weakly dominated by a
/// staircase value.
#[derive(Debug, Clone, Default)]
struct Staircase {
    points: Vec<(f64, f64)>,
}

impl Staircase {
    fn insert(&mut self, a: f64, b: f64) {
        let at_or_left = self.points.partition_point(|&(f1, _)| f1 <= a);
        // The left neighbour has the least f2 among values with f1 <= a; if
        // that is <= b, (a, b) is dominated or already present.
        if at_or_left > 0 && self.points[at_or_left - 1].1 <= b {
            return;
        }
        let start = self.points.partition_point(|&(f1, _)| f1 < a);
        let end = start + self.points[start..].partition_point(|&(_, f2)| f2 >= b);
        self.points.splice(start..end, [(a, b)]);
    }

    fn beats_with_margin(&self, v: &[f64], margin: f64) -> bool {
        let k = self.points.partition_point(|&(f1, _)| v[0] - f1 > -margin);
        k > 0 && v[1] - self.points[k - 1].1 > -margin
    }
}

/// List of tuples in insertion order. No two entries share the same point.
#[derive(Debug, Clone)]
pub struct FrontList {
    entries: Vec<FrontEntry>,
    index: HashMap<MixedPoint, usize>,
    staircase: Staircase,
    eps: f64,
    point_version: u64,
}

impl FrontList {
    pub fn new(eps: f64) -> Self {
        Self {
            entries: Vec::new(),
            index: HashMap::new(),
            staircase: Staircase::default(),
            eps,
            point_version: 0,
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Entries, oldest first.
    pub fn entries(&self) -> &[FrontEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Bumped whenever the point set `L[x]` changes. Equal versions of the
    /// same list mean equal point sets; the converse need not hold.
    pub fn point_version(&self) -> u64 {
        self.point_version
    }

    pub fn find(&self, x: &MixedPoint) -> Option<&FrontEntry> {
        self.index.get(x).map(|&i| &self.entries[i])
    }

    pub fn contains_point(&self, x: &MixedPoint) -> bool {
        self.index.contains_key(x)
    }

    /// Algorithm 2: keep the candidate and every entry whose `Z` it does not
    /// dominate. The candidate goes last.
    ///
    /// A candidate at a point that is already listed is dropped and the
    /// listed tuple stays as it is. Its `Z` equals the listed one, so it
    /// would remove nothing, and overwriting the listed tuple would undo the
    /// ξ reductions made for it.
    pub fn add_and_filter(&mut self, candidate: FrontEntry) {
        if self.contains_point(&candidate.x) {
            return;
        }
        if self
            .entries
            .iter()
            .any(|y| dominates_unchecked(candidate.z(), y.z()))
        {
            self.entries
                .retain(|y| !dominates_unchecked(candidate.z(), y.z()));
            self.index = self
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| (e.x.clone(), i))
                .collect();
        }
        if candidate.z().len() == 2 {
            self.staircase.insert(candidate.z()[0], candidate.z()[1]);
        }
        self.index.insert(candidate.x.clone(), self.entries.len());
        self.entries.push(candidate);
        self.point_version += 1;
    }

    /// Whether some entry `x_j` has `v > Z(x_j) - margin·1` componentwise,
    /// the failure test shared by both linesearches.
    pub fn beats_with_margin(&self, v: &[f64], margin: f64) -> bool {
        if v.len() == 2 && !self.entries.is_empty() {
            return self.staircase.beats_with_margin(v, margin);
        }
        self.entries.iter().any(|xj| all_above(v, xj.z(), margin))
    }

    /// Swaps `old` for `new` if `old` (as a full tuple) is still in the list.
    /// `new` must be at the same point.
    pub fn replace_entry(&mut self, old: &FrontEntry, new: FrontEntry) -> bool {
        debug_assert!(old.x == new.x);
        match self.index.get(&old.x) {
            Some(&i) if self.entries[i].same_tuple(old) => {
                self.entries[i] = new;
                true
            }
            _ => false,
        }
    }

    /// Same point sets `L[x]`.
    pub fn same_points(&self, other: &FrontList) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mine: HashSet<&MixedPoint> = self.entries.iter().map(|e| &e.x).collect();
        other.entries.iter().all(|e| mine.contains(&e.x))
    }

    /// Same tuples, order ignored.
    pub fn same_tuples(&self, other: &FrontList) -> bool {
        self.len() == other.len()
            && self
                .entries
                .iter()
                .all(|e| other.entries.iter().any(|o| o.same_tuple(e)))
    }

    /// The reported front: entries whose `Z` no other entry dominates.
    pub fn final_front(&self) -> Vec<FrontPoint> {
        let zs: Vec<Vec<f64>> = self.entries.iter().map(|e| e.z().to_vec()).collect();
        nondominated_indices(&zs)
            .into_iter()
            .map(|i| {
                let e = &self.entries[i];
                FrontPoint {
                    x: e.x.clone(),
                    objectives: e.objectives().to_vec(),
                    violation: e.violation(),
                    penalized: zs[i].clone(),
                }
            })
            .collect()
    }
}
