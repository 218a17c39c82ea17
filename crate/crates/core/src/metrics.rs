//! Front-quality metrics (purity, Γ and Δ spread) and performance profiles.
//!
//! Spread metrics use the reference front only for its per-objective
//! extremes. For objective `j`, sort the front's values `v_1 <= ... <= v_N`
//! and let `lo_j`, `hi_j` be the smallest and largest reference values. The
//! gaps are `δ_0 = |v_1 - lo_j|`, `δ_i = v_{i+1} - v_i` for `0 < i < N`, and
//! `δ_N = |hi_j - v_N|`. Then
//!
//! * `Γ = max_j max_i δ_i`
//! * `Δ = max_j (δ_0 + δ_N + Σ_{0<i<N} |δ_i - δ̄|) / (δ_0 + δ_N + (N-1) δ̄)`
//!
//! with `δ̄` the mean interior gap. A zero denominator gives `Δ = 0`; a
//! single-point front has no interior gaps, so its `Δ` is 1 unless both
//! extreme gaps vanish.

use std::cmp::Ordering;
use std::collections::HashSet;

use log::warn;

use crate::model::dominates_unchecked;

/// Points with violation at or below this count as feasible when building
/// fronts for comparison.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

/// Rounds to 12 significant digits so values serialized by different tools
/// compare equal.
pub fn canonical(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

pub fn canonical_vector(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| canonical(x)).collect()
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

/// Indices (ascending) of the vectors not dominated by any other vector.
/// Equal vectors do not dominate each other, so duplicates survive together.
pub fn nondominated_indices(values: &[Vec<f64>]) -> Vec<usize> {
    if values.first().is_some_and(|v| v.len() == 2) && values.iter().all(|v| v.len() == 2) {
        return nondominated_2d(values);
    }
    (0..values.len())
        .filter(|&i| !values.iter().any(|o| dominates_unchecked(o, &values[i])))
        .collect()
}

fn nondominated_2d(values: &[Vec<f64>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let (u, v) = (&values[a], &values[b]);
        u[0].total_cmp(&v[0]).then(u[1].total_cmp(&v[1]))
    });
    let mut keep = Vec::new();
    let mut best_before = f64::INFINITY;
    let mut k = 0;
    while k < order.len() {
        let f1 = values[order[k]][0];
        let group_end = order[k..]
            .iter()
            .position(|&i| values[i][0] != f1)
            .map_or(order.len(), |p| k + p);
        let group_min = values[order[k]][1];
        for &i in &order[k..group_end] {
            let f2 = values[i][1];
            if f2 < best_before && f2 == group_min {
                keep.push(i);
            }
        }
        best_before = best_before.min(group_min);
        k = group_end;
    }
    keep.sort_unstable();
    keep
}

/// Nondominated filter of the union of several fronts, after canonical
/// rounding, with exact duplicates collapsed.
pub fn reference_front(fronts: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let mut seen = HashSet::new();
    let union: Vec<Vec<f64>> = fronts
        .iter()
        .flatten()
        .map(|v| canonical_vector(v))
        .filter(|v| seen.insert(bits(v)))
        .collect();
    if union.is_empty() {
        warn!("reference front requested from empty fronts");
    }
    nondominated_indices(&union)
        .into_iter()
        .map(|i| union[i].clone())
        .collect()
}

/// Fraction of the front's points that appear in the reference front.
/// `None` for an empty front.
pub fn purity(front: &[Vec<f64>], reference: &[Vec<f64>]) -> Option<f64> {
    if front.is_empty() {
        return None;
    }
    let members: HashSet<Vec<u64>> = reference.iter().map(|r| bits(&canonical_vector(r))).collect();
    let hits = front
        .iter()
        .filter(|f| members.contains(&bits(&canonical_vector(f))))
        .count();
    Some(hits as f64 / front.len() as f64)
}

/// Smallest and largest value of each objective over `reference`.
pub fn extremes(reference: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let q = reference.first().map_or(0, Vec::len);
    (0..q)
        .map(|j| {
            reference
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                    (lo.min(r[j]), hi.max(r[j]))
                })
        })
        .collect()
}

fn gaps(front: &[Vec<f64>], j: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
    let mut v: Vec<f64> = front.iter().map(|p| p[j]).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push((v[0] - lo).abs());
    out.extend(v.windows(2).map(|w| w[1] - w[0]));
    out.push((hi - v[v.len() - 1]).abs());
    out
}

/// Γ spread: the largest gap along any objective. `None` for an empty front.
pub fn gamma_spread(front: &[Vec<f64>], extremes: &[(f64, f64)]) -> Option<f64> {
    if front.is_empty() {
        return None;
    }
    Some(
        extremes
            .iter()
            .enumerate()
            .map(|(j, &e)| gaps(front, j, e).into_iter().fold(0.0, f64::max))
            .fold(0.0, f64::max),
    )
}

/// Δ spread: gap non-uniformity including the extreme gaps. `None` for an
/// empty front.
pub fn delta_spread(front: &[Vec<f64>], extremes: &[(f64, f64)]) -> Option<f64> {
    if front.is_empty() {
        return None;
    }
    let per_objective = extremes.iter().enumerate().map(|(j, &e)| {
        let g = gaps(front, j, e);
        let (first, last) = (g[0], g[g.len() - 1]);
        let interior = &g[1..g.len() - 1];
        let (dev, mean) = if interior.is_empty() {
            (0.0, 0.0)
        } else {
            let mean = interior.iter().sum::<f64>() / interior.len() as f64;
            (interior.iter().map(|d| (d - mean).abs()).sum::<f64>(), mean)
        };
        let denom = first + last + interior.len() as f64 * mean;
        if denom == 0.0 {
            0.0
        } else {
            (first + last + dev) / denom
        }
    });
    Some(per_objective.fold(0.0, f64::max))
}

/// Ratios of each solver's metric to the best solver's, per problem, and
/// the resulting cumulative profiles `ρ_s(τ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    /// `ratios[p][s] >= 1`; failures hold `f64::INFINITY`.
    pub ratios: Vec<Vec<f64>>,
    /// Input rows kept, in order (rows where every solver failed are dropped).
    pub kept_problems: Vec<usize>,
    pub dropped_problems: Vec<usize>,
    /// Breakpoints of the step functions: the distinct finite ratios.
    pub taus: Vec<f64>,
    /// `rho[s][t] = ρ_s(taus[t])`.
    pub rho: Vec<Vec<f64>>,
}

impl ProfileTable {
    pub fn num_solvers(&self) -> usize {
        self.rho.len()
    }

    /// `ρ_s(τ)`: fraction of problems where solver `s` is within a factor
    /// `tau` of the best.
    pub fn rho_at(&self, solver: usize, tau: f64) -> f64 {
        if self.ratios.is_empty() {
            return 0.0;
        }
        let hits = self.ratios.iter().filter(|row| row[solver] <= tau).count();
        hits as f64 / self.ratios.len() as f64
    }
}

/// Builds performance profiles from `values[problem][solver]`, where `None`
/// marks a failure. For higher-is-better metrics the ratio is
/// `best / value`, otherwise `value / best`; a zero value that is not the
/// best gets the failure ratio.
pub fn performance_profile(values: &[Vec<Option<f64>>], higher_is_better: bool) -> ProfileTable {
    let solvers = values.first().map_or(0, Vec::len);
    let mut ratios = Vec::new();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (p, row) in values.iter().enumerate() {
        let valid: Vec<f64> = row.iter().flatten().copied().collect();
        if valid.is_empty() {
            warn!("problem {p}: every solver failed, dropped from the profile");
            dropped.push(p);
            continue;
        }
        let best = if higher_is_better {
            valid.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        } else {
            valid.iter().copied().fold(f64::INFINITY, f64::min)
        };
        let r: Vec<f64> = row
            .iter()
            .map(|v| match *v {
                None => f64::INFINITY,
                Some(v) if v == best => 1.0,
                Some(v) if higher_is_better && v > 0.0 => best / v,
                Some(v) if !higher_is_better && best > 0.0 => v / best,
                Some(_) => f64::INFINITY,
            })
            .collect();
        ratios.push(r);
        kept.push(p);
    }
    let mut taus: Vec<f64> = ratios
        .iter()
        .flatten()
        .copied()
        .filter(|r| r.is_finite())
        .collect();
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    taus.dedup();
    let mut table = ProfileTable {
        ratios,
        kept_problems: kept,
        dropped_problems: dropped,
        taus,
        rho: Vec::new(),
    };
    table.rho = (0..solvers)
        .map(|s| table.taus.iter().map(|&t| table.rho_at(s, t)).collect())
        .collect();
    table
}
