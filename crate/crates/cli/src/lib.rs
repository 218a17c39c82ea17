//! Command-line front end for the DFMOINT solver.
//!
//! * `dfmoint solve` runs one suite instance or a subprocess problem and
//!   writes `front.csv` and `run.json`;
//! * `dfmoint bench` does the same for every instance a filter selects,
//!   into `<results>/<tag>/<instance>/`;
//! * `dfmoint metrics` compares result trees of several solvers.
//!
//! Exit codes: 0 on success, 2 when the budget ran out with an empty front,
//! 1 on any error.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod frontcsv;
pub mod io;
pub mod plugin;

pub use args::{Cli, Command};
pub use error::{CliError, Outcome, Result};

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Bench(a) => commands::cmd_bench(a),
        Command::Metrics(a) => commands::cmd_metrics(a),
    }
}
