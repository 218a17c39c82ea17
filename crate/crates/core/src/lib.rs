//! Derivative-free linesearch solver for mixed-integer multiobjective
//! black-box problems with inequality constraints.
//!
//! Constraints are handled by an exact penalty: every objective is shifted
//! by `(1/ε) Σ max{0, g_j(x)}` and the resulting bound-constrained problem
//! is solved by evolving a list of nondominated tuples
//! `(x, α^c, α^(d), ξ)`:
//!
//! * continuous variables are explored by a projected expansion linesearch
//!   along a dense sequence of unit directions ([`continuous`]);
//! * integer variables are explored along primitive directions with a
//!   doubling discrete search, and the direction set is enriched when the
//!   list stalls ([`discrete`]);
//! * the outer loop ([`solver::solve`]) ties both together under an
//!   evaluation budget with memoized black-box calls.
//!
//! [`suite`] builds the discretized UF benchmark problems and small problems
//! with enumerable fronts; [`metrics`] computes purity, Γ/Δ spreads and
//! performance profiles.
//!
//! ```
//! use dfmoint_core::{solve, Bounds, Evaluation, IndexPartition, ProblemSpec, SolverConfig};
//!
//! let part = IndexPartition::new(2, [1]).unwrap();
//! let bounds = Bounds::new(vec![0.0, 0.0], vec![1.0, 3.0]).unwrap();
//! let problem = ProblemSpec::from_fn("demo", part, bounds, 2, 0, |x| Evaluation {
//!     objectives: vec![(x[0] - 0.25).powi(2) + x[1], (x[0] - 0.75).powi(2) + 3.0 - x[1]],
//!     constraints: vec![],
//! })
//! .unwrap();
//! let config = SolverConfig { max_evals: 500, ..Default::default() };
//! let run = solve(&problem, &config).unwrap();
//! assert!(run.evaluations_used <= 500);
//! assert!(!run.front.is_empty());
//! ```

pub mod continuous;
pub mod discrete;
mod error;
pub mod eval;
pub mod front;
pub mod metrics;
pub mod model;
pub mod solver;
pub mod suite;

pub use continuous::{projected_expansion, DirectionSequence, ExpansionOutcome, ExpansionParams};
pub use discrete::{
    discrete_search, is_primitive, max_feasible_step, DirectionSet, DiscreteOutcome, PrimitiveDirection,
};
pub use error::{Error, Result};
pub use eval::{Oracle, PointValue};
pub use front::{FrontEntry, FrontList, FrontPoint};
pub use model::{
    dominates, penalty_values, project_to_box, strictly_less, violation, Bounds, Domain, Evaluation,
    Evaluator, IndexPartition, MixedPoint, ObjectiveVector, ProblemSpec,
};
pub use solver::{
    check_list_comparison, solve, solve_with_eps_schedule, EntryReport, ListComparison, ReportedPoint,
    RunRecord, SolverConfig, Termination, DEFAULT_EPS_SCHEDULE, RUN_RECORD_SCHEMA_VERSION,
};
