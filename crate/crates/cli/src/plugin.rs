//! User black boxes run as a subprocess.
//!
//! A descriptor file names the command and the problem shape:
//!
//! ```json
//! {
//!   "name": "my-problem",
//!   "command": ["python3", "blackbox.py"],
//!   "lower": [0, 0, -5],
//!   "upper": [1, 1, 5],
//!   "integer": [2],
//!   "objectives": 2,
//!   "constraints": 1
//! }
//! ```
//!
//! The command starts once, with the descriptor's directory as working
//! directory. For each point the solver writes one line of comma-separated
//! coordinates and reads back one line `f_1,…,f_q;g_1,…,g_m` (the part
//! after `;` is empty or absent when there are no constraints). Numbers use
//! `.` as decimal separator.

use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};
use std::sync::{Arc, Mutex};

use dfmoint_core::{Bounds, Evaluation, Evaluator, IndexPartition, ProblemSpec};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluginDescriptor {
    pub name: String,
    pub command: Vec<String>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    #[serde(default)]
    pub integer: Vec<usize>,
    pub objectives: usize,
    #[serde(default)]
    pub constraints: usize,
}

impl PluginDescriptor {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let d: Self = serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))?;
        if d.command.is_empty() {
            return Err(CliError::parse(path, "command must not be empty"));
        }
        Ok(d)
    }
}

struct Pipe {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
}

pub struct SubprocessEvaluator {
    program: String,
    q: usize,
    m: usize,
    pipe: Mutex<Pipe>,
}

impl SubprocessEvaluator {
    pub fn spawn(command: &[String], cwd: &Path, q: usize, m: usize) -> Result<Self> {
        let program = command[0].clone();
        let mut child = Command::new(&program)
            .args(&command[1..])
            .current_dir(cwd)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| CliError::io(Path::new(&program), e))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = BufReader::new(child.stdout.take().expect("piped stdout"));
        Ok(Self {
            program,
            q,
            m,
            pipe: Mutex::new(Pipe { child, stdin, stdout }),
        })
    }

    fn parse_reply(&self, line: &str) -> std::result::Result<Evaluation, String> {
        let line = line.trim();
        let (f, g) = line.split_once(';').unwrap_or((line, ""));
        let numbers = |s: &str| -> std::result::Result<Vec<f64>, String> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|e| format!("bad number {t:?} in reply {line:?}: {e}"))
                })
                .collect()
        };
        let out = Evaluation {
            objectives: numbers(f)?,
            constraints: numbers(g)?,
        };
        if out.objectives.len() != self.q || out.constraints.len() != self.m {
            return Err(format!(
                "reply {line:?} has {} objectives and {} constraints, expected {} and {}",
                out.objectives.len(),
                out.constraints.len(),
                self.q,
                self.m
            ));
        }
        Ok(out)
    }
}

impl Evaluator for SubprocessEvaluator {
    fn evaluate(&self, x: &[f64]) -> std::result::Result<Evaluation, String> {
        let mut pipe = self
            .pipe
            .lock()
            .map_err(|_| "evaluator pipe poisoned".to_string())?;
        let request: Vec<String> = x.iter().map(|v| format!("{v:?}")).collect();
        let io_err = |e: std::io::Error| format!("{}: {e}", self.program);
        writeln!(pipe.stdin, "{}", request.join(",")).map_err(io_err)?;
        pipe.stdin.flush().map_err(io_err)?;
        let mut line = String::new();
        if pipe.stdout.read_line(&mut line).map_err(io_err)? == 0 {
            return Err(format!("{} closed its output", self.program));
        }
        self.parse_reply(&line)
    }
}

impl Drop for SubprocessEvaluator {
    fn drop(&mut self) {
        if let Ok(pipe) = self.pipe.get_mut() {
            let _ = pipe.child.kill();
            let _ = pipe.child.wait();
        }
    }
}

/// Loads a descriptor and starts its black box.
pub fn load_problem(path: &Path) -> Result<ProblemSpec> {
    let d = PluginDescriptor::load(path)?;
    let cwd: PathBuf = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let eval = SubprocessEvaluator::spawn(&d.command, &cwd, d.objectives, d.constraints)?;
    let partition = IndexPartition::new(d.lower.len(), d.integer.iter().copied())?;
    let bounds = Bounds::new(d.lower, d.upper)?;
    Ok(ProblemSpec::new(
        d.name,
        partition,
        bounds,
        d.objectives,
        d.constraints,
        Arc::new(eval),
    )?)
}
