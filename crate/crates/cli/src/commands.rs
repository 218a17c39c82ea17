use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use dfmoint_core::metrics::{
    delta_spread, extremes, gamma_spread, nondominated_indices, performance_profile, purity, reference_front,
    FEASIBILITY_TOLERANCE,
};
use dfmoint_core::suite::{InstanceId, SuiteFilter, SuiteInstance};
use dfmoint_core::{solve, solve_with_eps_schedule, ProblemSpec, RunRecord, SolverConfig, Termination};
use log::{error, info, warn};
use rayon::prelude::*;

use crate::args::{BenchArgs, MetricsArgs, SolveArgs, SolverFlags};
use crate::config::RunConfigFile;
use crate::error::{CliError, Outcome, Result};
use crate::frontcsv::{FrontRow, FrontTable};
use crate::io::{write_atomic, write_json};
use crate::plugin;

pub const DEFAULT_TAG: &str = "dfmoint";
pub const DEFAULT_RESULTS_ROOT: &str = "results";
pub const FRONT_FILE: &str = "front.csv";
pub const RUN_FILE: &str = "run.json";
/// Every stage of an ε schedule, written next to `run.json` (which holds the last).
pub const STAGES_FILE: &str = "stages.json";
pub const ERROR_FILE: &str = "error.txt";

/// Config file merged with command-line overrides.
struct Settings {
    file: RunConfigFile,
    solver: SolverConfig,
    schedule: Option<Vec<f64>>,
    tag: String,
    results_root: PathBuf,
}

impl Settings {
    fn resolve(flags: &SolverFlags) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => RunConfigFile::load(path)?,
            None => RunConfigFile::default(),
        };
        let mut solver = file.solver.clone();
        if let Some(eps) = flags.eps {
            solver.eps = eps;
        }
        if let Some(budget) = flags.budget {
            solver.max_evals = budget;
        }
        solver.validate()?;
        let schedule = flags.eps_schedule.clone().or_else(|| file.eps_schedule.clone());
        if let Some(s) = &schedule {
            if s.is_empty() || s.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
                return Err(CliError::usage("eps schedule entries must be positive"));
            }
        }
        let tag = flags
            .tag
            .clone()
            .or_else(|| file.tag.clone())
            .unwrap_or_else(|| DEFAULT_TAG.into());
        let results_root = flags
            .results
            .clone()
            .or_else(|| file.results_root.clone())
            .unwrap_or_else(|| DEFAULT_RESULTS_ROOT.into());
        Ok(Self {
            file,
            solver,
            schedule,
            tag,
            results_root,
        })
    }

    fn run(&self, problem: &ProblemSpec) -> Result<Vec<RunRecord>> {
        Ok(match &self.schedule {
            Some(s) => solve_with_eps_schedule(problem, &self.solver, s)?,
            None => vec![solve(problem, &self.solver)?],
        })
    }
}

pub fn front_table(problem: &ProblemSpec, run: &RunRecord) -> FrontTable {
    let mut t = FrontTable::new(problem.dim(), problem.num_objectives());
    t.rows = run
        .front
        .iter()
        .map(|p| FrontRow {
            x: p.x.clone(),
            f: p.f.clone(),
            viol: p.violation,
        })
        .collect();
    t
}

/// Solves and writes the result files into `dir`. Nothing is written when
/// the solver fails.
fn solve_into(problem: &ProblemSpec, settings: &Settings, dir: &Path) -> Result<Outcome> {
    let runs = settings.run(problem)?;
    let last = runs.last().expect("at least one stage");
    front_table(problem, last).write(&dir.join(FRONT_FILE))?;
    write_json(&dir.join(RUN_FILE), last)?;
    if runs.len() > 1 {
        write_json(&dir.join(STAGES_FILE), &runs)?;
    }
    info!(
        "{}: {} points, {} evaluations, {:?}",
        problem.name(),
        last.front.len(),
        last.evaluations_used,
        last.termination
    );
    if last.front.is_empty() && last.termination == Termination::Budget {
        Ok(Outcome::EmptyFront)
    } else {
        Ok(Outcome::Done)
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<Outcome> {
    let settings = Settings::resolve(&args.solver)?;
    let instance = args.instance.clone().or_else(|| settings.file.instance.clone());
    let descriptor = args.problem.clone().or_else(|| settings.file.problem.clone());
    let (name, problem) = match (instance, descriptor) {
        (Some(id), None) => {
            let inst = SuiteInstance::build(id.parse::<InstanceId>()?)?;
            (inst.id.to_string(), inst.spec)
        }
        (None, Some(path)) => {
            let p = plugin::load_problem(&path)?;
            (p.name().to_string(), p)
        }
        (Some(_), Some(_)) => return Err(CliError::usage("give either an instance or a problem, not both")),
        (None, None) => return Err(CliError::usage("no problem given: use --instance or --problem")),
    };
    let out = args
        .out
        .clone()
        .or_else(|| settings.file.out.clone())
        .unwrap_or_else(|| settings.results_root.join(&settings.tag).join(&name));
    solve_into(&problem, &settings, &out)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Outcome> {
    let settings = Settings::resolve(&args.solver)?;
    let filter: SuiteFilter = args
        .filter
        .clone()
        .or_else(|| settings.file.filter.clone())
        .unwrap_or_else(|| "all".into())
        .parse()?;
    let ids = filter.select();
    let jobs = args.jobs.or(settings.file.jobs).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    let root = settings.results_root.join(&settings.tag);
    info!("{} instances into {}", ids.len(), root.display());
    let failed: usize = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let dir = root.join(id.to_string());
                let result = SuiteInstance::build(*id)
                    .map_err(CliError::from)
                    .and_then(|inst| solve_into(&inst.spec, &settings, &dir));
                match result {
                    Ok(_) => 0,
                    Err(e) => {
                        error!("{id}: {e}");
                        if let Err(e2) = write_atomic(&dir.join(ERROR_FILE), format!("{e}\n").as_bytes()) {
                            error!("{id}: {e2}");
                        }
                        1
                    }
                }
            })
            .sum()
    });
    if failed > 0 {
        return Err(CliError::Sweep {
            failed,
            total: ids.len(),
        });
    }
    Ok(Outcome::Done)
}

/// Instance directories (those holding a front file) under a solver root.
fn instances_under(root: &Path) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for entry in std::fs::read_dir(root).map_err(|e| CliError::io(root, e))? {
        let entry = entry.map_err(|e| CliError::io(root, e))?;
        if entry.path().join(FRONT_FILE).is_file() {
            out.insert(entry.file_name().to_string_lossy().into_owned());
        }
    }
    Ok(out)
}

fn solver_names(roots: &[PathBuf]) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    roots
        .iter()
        .map(|r| {
            let base = r
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| r.display().to_string());
            let count = seen.entry(base.clone()).or_default();
            *count += 1;
            if *count == 1 {
                base
            } else {
                format!("{base}#{count}")
            }
        })
        .collect()
}

/// Feasible, nondominated objective vectors of one front file.
fn comparable_front(path: &Path, q: &mut Option<usize>) -> Result<Vec<Vec<f64>>> {
    let table = FrontTable::read(path)?;
    match *q {
        None => *q = Some(table.q),
        Some(expected) if expected != table.q => {
            return Err(CliError::parse(
                path,
                format!("front has {} objectives, other solvers have {expected}", table.q),
            ))
        }
        Some(_) => {}
    }
    let f: Vec<Vec<f64>> = table
        .rows
        .into_iter()
        .filter(|r| r.viol <= FEASIBILITY_TOLERANCE)
        .map(|r| r.f)
        .collect();
    Ok(nondominated_indices(&f)
        .into_iter()
        .map(|i| f[i].clone())
        .collect())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:?}")).unwrap_or_default()
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("ASCII output")
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<Outcome> {
    let names = solver_names(&args.roots);
    let sets = args
        .roots
        .iter()
        .map(|r| instances_under(r))
        .collect::<Result<Vec<_>>>()?;
    let common: BTreeSet<String> = sets
        .iter()
        .skip(1)
        .fold(sets[0].clone(), |acc, s| acc.intersection(s).cloned().collect());
    for (name, set) in names.iter().zip(&sets) {
        for missing in set.difference(&common) {
            warn!("instance {missing} of solver {name} is missing elsewhere; dropped");
        }
    }
    if common.is_empty() {
        return Err(CliError::usage("the results roots have no instance in common"));
    }

    let mut table = Vec::new();
    let mut values: [Vec<Vec<Option<f64>>>; 3] = Default::default();
    for inst in &common {
        let mut q = None;
        let fronts = args
            .roots
            .iter()
            .map(|r| comparable_front(&r.join(inst).join(FRONT_FILE), &mut q))
            .collect::<Result<Vec<_>>>()?;
        let reference = reference_front(&fronts);
        let ext = extremes(&reference);
        let mut row: [Vec<Option<f64>>; 3] = Default::default();
        for (name, front) in names.iter().zip(&fronts) {
            let m = [
                purity(front, &reference),
                gamma_spread(front, &ext),
                delta_spread(front, &ext),
            ];
            table.push(vec![
                inst.clone(),
                name.clone(),
                front.len().to_string(),
                fmt_opt(m[0]),
                fmt_opt(m[1]),
                fmt_opt(m[2]),
            ]);
            for k in 0..3 {
                row[k].push(m[k]);
            }
        }
        for k in 0..3 {
            values[k].push(std::mem::take(&mut row[k]));
        }
    }

    let out = &args.out;
    let header = ["instance", "solver", "points", "purity", "gamma", "delta"];
    write_atomic(&out.join("metrics.csv"), render_csv(&header, &table).as_bytes())?;
    for (k, (metric, higher_is_better)) in [("purity", true), ("gamma", false), ("delta", false)]
        .iter()
        .enumerate()
    {
        let profile = performance_profile(&values[k], *higher_is_better);
        for p in &profile.dropped_problems {
            warn!(
                "{metric}: every solver failed on {}; dropped from the profile",
                common.iter().nth(*p).unwrap()
            );
        }
        let mut rows = Vec::new();
        for (t, tau) in profile.taus.iter().enumerate() {
            for (s, name) in names.iter().enumerate() {
                rows.push(vec![
                    format!("{tau:?}"),
                    name.clone(),
                    format!("{:?}", profile.rho[s][t]),
                ]);
            }
        }
        let path = out.join(format!("profile_{metric}.csv"));
        write_atomic(&path, render_csv(&["tau", "solver", "rho"], &rows).as_bytes())?;
    }
    info!(
        "{} instances, {} solvers into {}",
        common.len(),
        names.len(),
        out.display()
    );
    Ok(Outcome::Done)
}
