//! The ten unconstrained UF test functions from the CEC 2009 multiobjective
//! competition, for any dimension `n >= 3`.
//!
//! Variables are 1-based in the comments below (`x1` is `x[0]`). For the
//! biobjective functions `J1` holds the odd and `J2` the even indices in
//! `2..=n`; for the three-objective ones `J1`, `J2`, `J3` split `3..=n` by
//! `j ≡ 1, 2, 0 (mod 3)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A continuous UF instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Uf {
    id: u8,
    n: usize,
}

impl Uf {
    pub fn new(id: u8, n: usize) -> Result<Self> {
        if !(1..=10).contains(&id) {
            return Err(Error::usage(format!(
                "unknown UF problem id {id}, expected 1..=10"
            )));
        }
        if n < 3 {
            return Err(Error::usage(format!("UF{id} needs n >= 3, got {n}")));
        }
        Ok(Self { id, n })
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_objectives(&self) -> usize {
        if self.id >= 8 {
            3
        } else {
            2
        }
    }

    pub fn lower(&self) -> Vec<f64> {
        (1..=self.n)
            .map(|j| match (self.id, j) {
                (_, 1) => 0.0,
                (8..=10, 2) => 0.0,
                (3, _) => 0.0,
                (4, _) | (8..=10, _) => -2.0,
                _ => -1.0,
            })
            .collect()
    }

    pub fn upper(&self) -> Vec<f64> {
        (1..=self.n)
            .map(|j| match (self.id, j) {
                (_, 1) => 1.0,
                (8..=10, 2) => 1.0,
                (3, _) => 1.0,
                (4, _) | (8..=10, _) => 2.0,
                _ => 1.0,
            })
            .collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        match self.id {
            1..=7 => self.biobjective(x),
            _ => self.triobjective(x),
        }
    }

    fn biobjective(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n as f64;
        let x1 = x[0];
        let (mut s1, mut s2) = (0.0, 0.0);
        let (mut c1, mut c2) = (0usize, 0usize);
        let (mut p1, mut p2) = (1.0, 1.0);
        for j in 2..=self.n {
            let xj = x[j - 1];
            let jf = j as f64;
            let odd = j % 2 == 1;
            let (term, prod) = match self.id {
                1 | 7 => {
                    let y = xj - (6.0 * PI * x1 + jf * PI / n).sin();
                    (y * y, 1.0)
                }
                2 => {
                    let amp = 0.3 * x1 * x1 * (24.0 * PI * x1 + 4.0 * jf * PI / n).cos() + 0.6 * x1;
                    let phase = 6.0 * PI * x1 + jf * PI / n;
                    let y = if odd {
                        xj - amp * phase.cos()
                    } else {
                        xj - amp * phase.sin()
                    };
                    (y * y, 1.0)
                }
                3 => {
                    let y = xj - x1.powf(0.5 * (1.0 + 3.0 * (jf - 2.0) / (n - 2.0)));
                    (y * y, (20.0 * y * PI / jf.sqrt()).cos())
                }
                4 => {
                    let y = xj - (6.0 * PI * x1 + jf * PI / n).sin();
                    (y.abs() / (1.0 + (2.0 * y.abs()).exp()), 1.0)
                }
                5 => {
                    let y = xj - (6.0 * PI * x1 + jf * PI / n).sin();
                    (2.0 * y * y - (4.0 * PI * y).cos() + 1.0, 1.0)
                }
                6 => {
                    let y = xj - (6.0 * PI * x1 + jf * PI / n).sin();
                    (y * y, (20.0 * y * PI / jf.sqrt()).cos())
                }
                _ => unreachable!(),
            };
            if odd {
                s1 += term;
                p1 *= prod;
                c1 += 1;
            } else {
                s2 += term;
                p2 *= prod;
                c2 += 1;
            }
        }
        let (c1, c2) = (c1 as f64, c2 as f64);
        match self.id {
            1 | 2 => vec![x1 + 2.0 * s1 / c1, 1.0 - x1.sqrt() + 2.0 * s2 / c2],
            3 => vec![
                x1 + 2.0 / c1 * (4.0 * s1 - 2.0 * p1 + 2.0),
                1.0 - x1.sqrt() + 2.0 / c2 * (4.0 * s2 - 2.0 * p2 + 2.0),
            ],
            4 => vec![x1 + 2.0 * s1 / c1, 1.0 - x1 * x1 + 2.0 * s2 / c2],
            5 => {
                let (big_n, e) = (10.0, 0.1);
                let h = (0.5 / big_n + e) * (2.0 * big_n * PI * x1).sin().abs();
                vec![x1 + h + 2.0 * s1 / c1, 1.0 - x1 + h + 2.0 * s2 / c2]
            }
            6 => {
                let (big_n, e) = (2.0, 0.1);
                let h = (2.0 * (0.5 / big_n + e) * (2.0 * big_n * PI * x1).sin()).max(0.0);
                vec![
                    x1 + h + 2.0 / c1 * (4.0 * s1 - 2.0 * p1 + 2.0),
                    1.0 - x1 + h + 2.0 / c2 * (4.0 * s2 - 2.0 * p2 + 2.0),
                ]
            }
            7 => {
                let r = x1.powf(0.2);
                vec![r + 2.0 * s1 / c1, 1.0 - r + 2.0 * s2 / c2]
            }
            _ => unreachable!(),
        }
    }

    fn triobjective(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n as f64;
        let (x1, x2) = (x[0], x[1]);
        let mut sums = [0.0; 3];
        let mut counts = [0usize; 3];
        for j in 3..=self.n {
            let jf = j as f64;
            let y = x[j - 1] - 2.0 * x2 * (2.0 * PI * x1 + jf * PI / n).sin();
            let term = if self.id == 10 {
                4.0 * y * y - (8.0 * PI * y).cos() + 1.0
            } else {
                y * y
            };
            let k = match j % 3 {
                1 => 0,
                2 => 1,
                _ => 2,
            };
            sums[k] += term;
            counts[k] += 1;
        }
        // With n = 3 only J3 is populated; an empty group contributes nothing.
        let tail: Vec<f64> = (0..3)
            .map(|k| {
                if counts[k] == 0 {
                    0.0
                } else {
                    2.0 * sums[k] / counts[k] as f64
                }
            })
            .collect();
        match self.id {
            8 | 10 => vec![
                (0.5 * PI * x1).cos() * (0.5 * PI * x2).cos() + tail[0],
                (0.5 * PI * x1).cos() * (0.5 * PI * x2).sin() + tail[1],
                (0.5 * PI * x1).sin() + tail[2],
            ],
            9 => {
                let e = 0.1;
                let bump = ((1.0 + e) * (1.0 - 4.0 * (2.0 * x1 - 1.0).powi(2))).max(0.0);
                vec![
                    0.5 * (bump + 2.0 * x1) * x2 + tail[0],
                    0.5 * (bump - 2.0 * x1 + 2.0) * x2 + tail[1],
                    1.0 - x2 + tail[2],
                ]
            }
            _ => unreachable!(),
        }
    }
}
