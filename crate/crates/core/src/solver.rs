//! The outer loop: continuous exploration, discrete exploration, direction
//! set enrichment, and run bookkeeping.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::continuous::{projected_expansion, DirectionSequence, ExpansionOutcome, ExpansionParams};
use crate::discrete::{discrete_search, DirectionSet, DEFAULT_SHELL_LIMIT};
use crate::error::{Error, Result};
use crate::eval::Oracle;
use crate::front::{FrontEntry, FrontList};
use crate::model::{MixedPoint, ProblemSpec};

/// Version of the serialized [`RunRecord`] layout.
pub const RUN_RECORD_SCHEMA_VERSION: u32 = 1;

/// Penalty parameters used by [`solve_with_eps_schedule`] when none are given.
pub const DEFAULT_EPS_SCHEDULE: [f64; 3] = [1e-1, 1e-3, 1e-5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Penalty parameter ε, fixed for the run.
    pub eps: f64,
    pub gamma: f64,
    pub delta: f64,
    pub theta: f64,
    /// Initial discrete sufficient-decrease threshold ξ_0.
    pub xi0: f64,
    /// Initial continuous stepsize.
    pub alpha_c0: f64,
    /// Budget of distinct black-box evaluations.
    pub max_evals: u64,
    /// Starting points (dense coordinates). Empty means the box centroid.
    pub initial_points: Vec<Vec<f64>>,
    /// Retry a failed continuous linesearch along `-s_k`.
    pub opposite_direction: bool,
    /// Emit the signed coordinate directions before the dense sequence.
    pub coordinate_warmup: bool,
    /// Entries with `α^c` at or below this skip the continuous phase.
    pub alpha_c_floor: f64,
    /// ξ below this counts as converged for the early stop test.
    pub xi_floor: f64,
    pub max_iterations: u64,
    /// Most directions added by one enrichment.
    pub shell_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let p = ExpansionParams::default();
        Self {
            eps: 1e-3,
            gamma: p.gamma,
            delta: p.delta,
            theta: p.theta,
            xi0: 1.0,
            alpha_c0: 1.0,
            max_evals: 20_000,
            initial_points: Vec::new(),
            opposite_direction: true,
            coordinate_warmup: false,
            alpha_c_floor: 1e-12,
            xi_floor: 1e-8,
            max_iterations: 100_000,
            shell_limit: DEFAULT_SHELL_LIMIT,
        }
    }
}

impl SolverConfig {
    pub fn expansion(&self) -> ExpansionParams {
        ExpansionParams {
            gamma: self.gamma,
            delta: self.delta,
            theta: self.theta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.expansion().validate()?;
        let positive = [
            ("eps", self.eps),
            ("xi0", self.xi0),
            ("alpha_c0", self.alpha_c0),
            ("alpha_c_floor", self.alpha_c_floor),
            ("xi_floor", self.xi_floor),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::usage(format!("{name} must be positive, got {v}")));
            }
        }
        if self.shell_limit == 0 {
            return Err(Error::usage("shell_limit must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Budget,
    /// Every entry has `α^c`, `α^(d)` and ξ at their floors, but the direction
    /// set could still grow.
    StepsizeFloor,
    /// As above with the direction set complete.
    DirectionSetExhaustedAndXiFloor,
    IterationLimit,
}

/// A reported front point in dense coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportedPoint {
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub violation: f64,
}

/// Final state of one list tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub x: Vec<f64>,
    pub alpha_c: f64,
    /// Nonunit discrete stepsizes as `(direction id, step)`.
    pub alpha_d: Vec<(usize, u64)>,
    pub xi: f64,
    pub xi_history: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub problem: String,
    pub eps: f64,
    pub max_evals: u64,
    pub evaluations_used: u64,
    pub calls: u64,
    pub cache_hits: u64,
    pub iterations: u64,
    pub termination: Termination,
    pub direction_count: usize,
    pub direction_level: i64,
    pub front: Vec<ReportedPoint>,
    pub entries: Vec<EntryReport>,
    #[serde(skip)]
    pub list: FrontList,
}

/// Which part of two lists to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListComparison {
    /// Point sets `L[x]`.
    Points,
    /// Full tuples `(x, α^c, α^(d), ξ)`.
    Tuples,
}

pub fn check_list_comparison(a: &FrontList, b: &FrontList, mode: ListComparison) -> bool {
    match mode {
        ListComparison::Points => a.same_points(b),
        ListComparison::Tuples => a.same_tuples(b),
    }
}

struct Run<'p> {
    config: &'p SolverConfig,
    params: ExpansionParams,
    oracle: Oracle<'p>,
    list: FrontList,
    dirs: DirectionSet,
    seq: DirectionSequence,
    iterations: u64,
}

impl Run<'_> {
    fn continuous_phase(&mut self) -> Result<()> {
        let s = self.seq.next_continuous();
        let minus_s: Vec<f64> = s.iter().map(|v| -v).collect();
        let snapshot = self.list.entries().to_vec();
        for entry in &snapshot {
            if entry.alpha_c <= self.config.alpha_c_floor {
                continue;
            }
            let out = projected_expansion(entry, &s, &mut self.list, &self.params, &mut self.oracle)?;
            if out == ExpansionOutcome::Shrunk && self.config.opposite_direction {
                projected_expansion(entry, &minus_s, &mut self.list, &self.params, &mut self.oracle)?;
            }
        }
        Ok(())
    }

    /// Returns the tuples whose ξ was reduced, keyed by point.
    fn discrete_phase(&mut self) -> Result<HashMap<MixedPoint, FrontEntry>> {
        let snapshot = self.list.entries().to_vec();
        let dir_count = self.dirs.len();
        let mut reduced = HashMap::new();
        for ec in &snapshot {
            let version = self.list.point_version();
            for dir in self.dirs.directions() {
                if self.list.point_version() != version {
                    break;
                }
                let live = self.list.find(&ec.x).cloned().unwrap_or_else(|| ec.clone());
                discrete_search(&live, dir, &mut self.list, &mut self.oracle)?;
            }
            if self.list.point_version() != version {
                continue;
            }
            if let Some(live) = self.list.find(&ec.x).cloned() {
                if live.all_alpha_d_unit(dir_count) {
                    let new = live.with_xi(self.config.theta * live.xi);
                    self.list.replace_entry(&live, new.clone());
                    reduced.insert(ec.x.clone(), new);
                }
            }
        }
        Ok(reduced)
    }

    fn iterate(&mut self) -> Result<()> {
        self.continuous_phase()?;
        let version = self.list.point_version();
        let reduced = self.discrete_phase()?;
        let unchanged = self.list.point_version() == version;
        let all_reduced = self
            .list
            .entries()
            .iter()
            .all(|e| reduced.get(&e.x).is_some_and(|r| r.same_tuple(e)));
        if unchanged && all_reduced && !self.dirs.is_complete() {
            self.dirs.enrich();
        }
        Ok(())
    }

    fn at_floors(&self) -> bool {
        let n = self.dirs.len();
        self.list.entries().iter().all(|e| {
            e.alpha_c <= self.config.alpha_c_floor && e.all_alpha_d_unit(n) && e.xi < self.config.xi_floor
        })
    }

    fn main_loop(&mut self) -> Result<Termination> {
        loop {
            self.iterate()?;
            self.iterations += 1;
            if self.at_floors() {
                return Ok(if self.dirs.is_complete() {
                    Termination::DirectionSetExhaustedAndXiFloor
                } else {
                    Termination::StepsizeFloor
                });
            }
            if self.iterations >= self.config.max_iterations {
                return Ok(Termination::IterationLimit);
            }
        }
    }

    fn finish(self, problem: &ProblemSpec, termination: Termination) -> RunRecord {
        let part = problem.partition();
        let front = self
            .list
            .final_front()
            .into_iter()
            .map(|p| ReportedPoint {
                x: part.assemble(&p.x),
                f: p.objectives,
                violation: p.violation,
            })
            .collect();
        let entries = self
            .list
            .entries()
            .iter()
            .map(|e| EntryReport {
                x: part.assemble(&e.x),
                alpha_c: e.alpha_c,
                alpha_d: e.alpha_d_entries().collect(),
                xi: e.xi,
                xi_history: e.xi_history().to_vec(),
            })
            .collect();
        RunRecord {
            schema_version: RUN_RECORD_SCHEMA_VERSION,
            problem: problem.name().to_string(),
            eps: self.config.eps,
            max_evals: self.config.max_evals,
            evaluations_used: self.oracle.evaluations(),
            calls: self.oracle.calls(),
            cache_hits: self.oracle.cache_hits(),
            iterations: self.iterations,
            termination,
            direction_count: self.dirs.len(),
            direction_level: self.dirs.level(),
            front,
            entries,
            list: self.list,
        }
    }
}

fn starting_points(problem: &ProblemSpec, config: &SolverConfig) -> Result<Vec<MixedPoint>> {
    let domain = problem.domain();
    if config.initial_points.is_empty() {
        return Ok(vec![domain.centroid()]);
    }
    config
        .initial_points
        .iter()
        .map(|x| {
            let p = problem.partition().split(x)?;
            if domain.contains(&p) {
                Ok(p)
            } else {
                Err(Error::usage(format!("initial point {x:?} lies outside the box")))
            }
        })
        .collect()
}

/// Runs the solver until the budget, the stepsize floors or the iteration
/// limit stop it. Budget exhaustion is a normal stop, not an error.
pub fn solve(problem: &ProblemSpec, config: &SolverConfig) -> Result<RunRecord> {
    config.validate()?;
    let starts = starting_points(problem, config)?;
    let mut run = Run {
        config,
        params: config.expansion(),
        oracle: Oracle::new(problem, config.eps, config.max_evals)?,
        list: FrontList::new(config.eps),
        dirs: DirectionSet::initial(problem.domain()).with_shell_limit(config.shell_limit),
        seq: DirectionSequence::new(problem.partition()).with_coordinate_warmup(config.coordinate_warmup),
        iterations: 0,
    };
    for x in starts {
        match run.oracle.value(&x) {
            Ok(v) => run
                .list
                .add_and_filter(FrontEntry::new(x, v, config.alpha_c0, config.xi0)),
            Err(Error::BudgetExhausted) => return Ok(run.finish(problem, Termination::Budget)),
            Err(e) => return Err(e),
        }
    }
    let termination = match run.main_loop() {
        Ok(t) => t,
        Err(Error::BudgetExhausted) => Termination::Budget,
        Err(e) => return Err(e),
    };
    Ok(run.finish(problem, termination))
}

/// Solves once per penalty parameter in `schedule`, each run starting from
/// the previous run's reported front. Each run gets the full budget.
pub fn solve_with_eps_schedule(
    problem: &ProblemSpec,
    config: &SolverConfig,
    schedule: &[f64],
) -> Result<Vec<RunRecord>> {
    if schedule.is_empty() {
        return Err(Error::usage("empty penalty schedule"));
    }
    let mut runs: Vec<RunRecord> = Vec::with_capacity(schedule.len());
    for &eps in schedule {
        let mut cfg = config.clone();
        cfg.eps = eps;
        if let Some(prev) = runs.last() {
            if !prev.front.is_empty() {
                cfg.initial_points = prev.front.iter().map(|p| p.x.clone()).collect();
            }
        }
        runs.push(solve(problem, &cfg)?);
    }
    Ok(runs)
}
