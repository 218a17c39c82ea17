//! Independent oracles shared by the core tests and the acceptance suite.

#![allow(dead_code)]

use std::sync::Arc;

use dfmoint_core::metrics::canonical_vector;
use dfmoint_core::{FrontEntry, MixedPoint, ObjectiveVector, PointValue};
use rand::rngs::StdRng;
use rand::Rng;

pub const REL: f64 = 1e-12;

pub fn close(a: f64, b: f64) -> bool {
    (a == b) || (a - b).abs() <= REL * a.abs().max(b.abs())
}

pub fn dominates(u: &[f64], v: &[f64]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b) && u != v
}

/// Three solvers' fronts. Values sit on a coarse lattice half of the time so
/// fronts share points and purity is not trivially 0 or 1.
pub fn random_set(rng: &mut StdRng) -> Vec<Vec<Vec<f64>>> {
    let q = rng.random_range(2..=3);
    (0..3)
        .map(|_| {
            let size = rng.random_range(1..25);
            (0..size)
                .map(|_| {
                    (0..q)
                        .map(|_| {
                            if rng.random_bool(0.5) {
                                rng.random_range(0..8) as f64 * 0.125
                            } else {
                                rng.random::<f64>()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

pub fn brute_reference(fronts: &[Vec<Vec<f64>>]) -> Vec<Vec<f64>> {
    let mut union: Vec<Vec<f64>> = Vec::new();
    for p in fronts.iter().flatten() {
        let c = canonical_vector(p);
        if !union.contains(&c) {
            union.push(c);
        }
    }
    union
        .iter()
        .filter(|p| !union.iter().any(|o| dominates(o, p)))
        .cloned()
        .collect()
}

pub fn brute_purity(front: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let hits = front
        .iter()
        .filter(|p| reference.contains(&canonical_vector(p)))
        .count();
    hits as f64 / front.len() as f64
}

/// Gaps along objective `j`: from the low extreme to the smallest value, each
/// value to its successor in sorted order, the largest value to the high
/// extreme. The successor is found by scanning, not by sorting.
pub fn brute_gaps(front: &[Vec<f64>], j: usize, lo: f64, hi: f64) -> (f64, Vec<f64>, f64) {
    let vals: Vec<f64> = front.iter().map(|p| p[j]).collect();
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut interior = Vec::new();
    // Walk the multiset upward: equal values contribute zero gaps.
    let mut used = vec![false; vals.len()];
    let mut current = None::<f64>;
    for _ in 0..vals.len() {
        let (k, v) = vals
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(k, v)| (k, *v))
            .unwrap();
        used[k] = true;
        if let Some(c) = current {
            interior.push(v - c);
        }
        current = Some(v);
    }
    ((min - lo).abs(), interior, (hi - max).abs())
}

pub fn brute_gamma(front: &[Vec<f64>], ext: &[(f64, f64)]) -> f64 {
    let mut g: f64 = 0.0;
    for (j, &(lo, hi)) in ext.iter().enumerate() {
        let (a, mid, b) = brute_gaps(front, j, lo, hi);
        g = g.max(a).max(b);
        for d in mid {
            g = g.max(d);
        }
    }
    g
}

pub fn brute_delta(front: &[Vec<f64>], ext: &[(f64, f64)]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &(lo, hi)) in ext.iter().enumerate() {
        let (a, mid, b) = brute_gaps(front, j, lo, hi);
        let mean = if mid.is_empty() {
            0.0
        } else {
            mid.iter().sum::<f64>() / mid.len() as f64
        };
        let num = a + b + mid.iter().map(|d| (d - mean).abs()).sum::<f64>();
        let den = a + b + mid.len() as f64 * mean;
        worst = worst.max(if den == 0.0 { 0.0 } else { num / den });
    }
    worst
}

pub fn brute_rho(values: &[Vec<Option<f64>>], higher: bool, solver: usize, tau: f64) -> f64 {
    let rows: Vec<&Vec<Option<f64>>> = values.iter().filter(|r| r.iter().any(Option::is_some)).collect();
    let mut hits = 0;
    for row in &rows {
        let Some(v) = row[solver] else { continue };
        let ok = row.iter().flatten().all(|&other| {
            // Within a factor tau of every solver (itself included, which
            // rules out tau < 1), the same as within tau of the best one.
            if higher {
                other <= tau * v
            } else {
                v <= tau * other
            }
        });
        if ok {
            hits += 1;
        }
    }
    hits as f64 / rows.len() as f64
}

pub fn entry(id: i64, z: &[f64]) -> FrontEntry {
    let value = Arc::new(PointValue {
        objectives: z.to_vec(),
        violation: 0.0,
        penalized: ObjectiveVector::new(z.to_vec()),
    });
    FrontEntry::new(MixedPoint::new(vec![0.0], vec![id]), value, 1.0, 1.0)
}

/// Algorithm 2 verbatim on `(id, Z)` pairs: the new list is the candidate
/// plus every entry it does not dominate. A candidate whose point is already
/// listed is ignored.
pub fn replay(list: &[(i64, Vec<f64>)], id: i64, z: &[f64]) -> Vec<(i64, Vec<f64>)> {
    if list.iter().any(|(j, _)| *j == id) {
        return list.to_vec();
    }
    let mut out = vec![(id, z.to_vec())];
    out.extend(list.iter().filter(|(_, y)| !dominates(z, y)).cloned());
    out
}
