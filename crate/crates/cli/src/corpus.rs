//! Manifest runner. A manifest is TOML with any number of entries:
//!
//! ```toml
//! [[entry]]
//! name = "hexagon classes"
//! command = ["classify", "cycle:6"]
//! expect = "pass"   # or "fail"; defaults to "pass"
//! ```
//!
//! Paths inside commands are resolved against the manifest's directory.

use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{error_run, run, Context, Run, RunReport, EXIT_ERROR, EXIT_FAIL, EXIT_PASS, SCHEMA};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    #[serde(default)]
    entry: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    name: String,
    command: Vec<String>,
    #[serde(default)]
    expect: Expect,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
enum Expect {
    #[default]
    Pass,
    Fail,
}

#[derive(Serialize)]
struct EntryResult {
    name: String,
    expect: Expect,
    exit: i32,
    ok: bool,
    run: Option<RunReport>,
}

pub(crate) fn run_manifest(ctx: &Context, args: &[String], manifest: &str, timing: bool) -> Run {
    let start = Instant::now();
    let text = match ctx.read(manifest) {
        Ok(t) => t,
        Err(e) => return error_run(args, e.0),
    };
    let m: Manifest = match toml::from_str(&text) {
        Ok(m) => m,
        Err(e) => return error_run(args, format!("manifest {manifest}: {e}")),
    };
    let path = ctx.path(manifest);
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut results = Vec::new();
    let mut lines = Vec::new();
    for e in m.entry {
        if e.command.first().is_some_and(|v| v == "corpus") {
            return error_run(args, format!("entry `{}`: manifests cannot nest", e.name));
        }
        let mut cmd = e.command.clone();
        if ctx.exec == medcons_core::Exec::Sequential {
            cmd.push("--sequential".into());
        }
        let r = run(&cmd, dir);
        let wanted = match e.expect {
            Expect::Pass => EXIT_PASS,
            Expect::Fail => EXIT_FAIL,
        };
        let ok = r.code == wanted;
        lines.push(format!("  {} {}: {}", if ok { "ok  " } else { "MISS" }, e.name, r.summary));
        results.push(EntryResult { name: e.name, expect: e.expect, exit: r.code, ok, run: r.report });
    }
    let code = if results.iter().any(|r| r.exit == EXIT_ERROR) {
        EXIT_ERROR
    } else if results.iter().all(|r| r.ok) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let passed = code == EXIT_PASS;
    let matched = results.iter().filter(|r| r.ok).count();
    let total = results.len();
    let report = RunReport {
        schema: SCHEMA,
        command: args.to_vec(),
        graph: None,
        passed,
        budget: None,
        elapsed_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        error: None,
        report: json!({ "entries": total, "as_expected": matched, "results": results }),
    };
    lines.insert(0, format!("{} corpus {manifest}: {matched} of {total} entries as expected", if passed { "PASS" } else { "FAIL" }));
    Run { code, report: Some(report), summary: lines.join("\n") }
}
