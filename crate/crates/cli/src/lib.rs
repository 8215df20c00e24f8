//! Command-line front end: argument parsing, file I/O, the JSON report
//! envelope and the corpus runner.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails (the
//! report carries a witness), 2 on usage, input or budget errors.

pub mod args;
mod corpus;
mod verbs;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use medcons_core::graph::generators::from_spec;
use medcons_core::graph::io::{parse_graph, write_graph};
use medcons_core::{Exec, Graph};

pub use args::Cli;

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub vertices: usize,
    pub edges: usize,
    /// SHA-256 of the canonical edge-list text.
    pub sha256: String,
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Self {
        let digest = Sha256::digest(write_graph(g).as_bytes());
        Fingerprint { vertices: g.vertex_count(), edges: g.edge_count(), sha256: hex::encode(digest) }
    }
}

/// JSON document printed on standard output.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Fingerprint>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub report: Value,
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Run {
    pub code: i32,
    /// `None` only for `--help` and `--version`.
    pub report: Option<RunReport>,
    /// Human-readable lines for standard error.
    pub summary: String,
}

impl Run {
    pub fn json(&self) -> Option<String> {
        self.report.as_ref().map(|r| serde_json::to_string_pretty(r).expect("report serializes"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// What a verb hands back to the envelope.
pub(crate) struct Verdict {
    pub passed: bool,
    pub graph: Option<Fingerprint>,
    pub budget: Option<Value>,
    pub report: Value,
    pub summary: String,
}

impl Verdict {
    pub(crate) fn new(passed: bool, report: impl Serialize, summary: impl Into<String>) -> Self {
        Verdict {
            passed,
            graph: None,
            budget: None,
            report: serde_json::to_value(report).expect("report serializes"),
            summary: summary.into(),
        }
    }

    pub(crate) fn on(mut self, g: &Graph) -> Self {
        self.graph = Some(Fingerprint::of(g));
        self
    }

    pub(crate) fn budget(mut self, b: impl Serialize) -> Self {
        self.budget = Some(serde_json::to_value(b).expect("budget serializes"));
        self
    }
}

pub(crate) struct Context {
    pub base: PathBuf,
    pub exec: Exec,
}

impl Context {
    pub(crate) fn path(&self, p: &str) -> PathBuf {
        self.base.join(p)
    }

    pub(crate) fn read(&self, p: &str) -> Result<String, CliError> {
        let path = self.path(p);
        std::fs::read_to_string(&path).map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))
    }

    pub(crate) fn write(&self, p: &str, text: &str) -> Result<(), CliError> {
        let path = self.path(p);
        std::fs::write(&path, text).map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))
    }

    /// A file in edge-list format if one exists at `arg`, otherwise a generator spec.
    pub(crate) fn graph(&self, arg: &str) -> Result<Graph, CliError> {
        if self.path(arg).is_file() {
            return Ok(parse_graph(&self.read(arg)?)?);
        }
        if arg.contains(':') {
            return Ok(from_spec(arg)?);
        }
        Err(CliError(format!("`{arg}` is neither a readable file nor a generator spec")))
    }
}

/// Parses and executes one command line (without the program name).
/// Relative paths are resolved against `base`.
pub fn run(args: &[String], base: &Path) -> Run {
    let argv = std::iter::once("medcons".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Run { code: EXIT_PASS, report: None, summary: e.to_string() };
            }
            return error_run(args, e.to_string());
        }
    };
    let ctx = Context {
        base: base.to_path_buf(),
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    let start = Instant::now();
    if let args::Verb::Corpus { manifest } = &cli.verb {
        return corpus::run_manifest(&ctx, args, manifest, cli.timing);
    }
    match verbs::dispatch(&ctx, &cli.verb) {
        Ok(v) => {
            let report = RunReport {
                schema: SCHEMA,
                command: args.to_vec(),
                graph: v.graph,
                passed: v.passed,
                budget: v.budget,
                elapsed_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
                error: None,
                report: v.report,
            };
            let code = if v.passed { EXIT_PASS } else { EXIT_FAIL };
            let status = if v.passed { "PASS" } else { "FAIL" };
            Run { code, report: Some(report), summary: format!("{status} {}: {}", args.join(" "), v.summary) }
        }
        Err(e) => error_run(args, e.0),
    }
}

fn error_run(args: &[String], msg: String) -> Run {
    let report = RunReport {
        schema: SCHEMA,
        command: args.to_vec(),
        graph: None,
        passed: false,
        budget: None,
        elapsed_ms: None,
        error: Some(msg.trim_end().to_string()),
        report: Value::Null,
    };
    Run { code: EXIT_ERROR, report: Some(report), summary: format!("ERROR {}: {}", args.join(" "), msg.trim_end()) }
}
