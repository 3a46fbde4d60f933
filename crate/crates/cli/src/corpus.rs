//! Regression corpus runner: one `lct` child process per example.

use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};

use logdiv_core::corpus::{self, Example};
use logdiv_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::Outcome;

pub struct CorpusOptions {
    /// Flags forwarded to every child (`--order`, `--budget-steps`).
    pub forwarded: Vec<String>,
    pub dir: Option<PathBuf>,
    pub jobs: usize,
    pub skip_bfunction: bool,
}

pub fn examples() -> Vec<Example> {
    let mut out = corpus::named();
    out.extend((1..=3).map(corpus::random_plane_curve));
    out
}

fn slug(name: &str) -> String {
    let mut s: String = name.chars().map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' }).collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    s.trim_matches('_').to_string()
}

fn spawn(exe: &Path, e: &Example, opts: &CorpusOptions) -> Result<Child> {
    let mut cmd = Command::new(exe);
    cmd.arg("lct").arg("--vars").arg(e.variables.join(",")).args(&opts.forwarded);
    if opts.skip_bfunction {
        cmd.arg("--skip-bfunction");
    }
    cmd.arg("--").arg(&e.text);
    cmd.stdout(Stdio::piped()).stderr(Stdio::null());
    cmd.spawn().map_err(|err| Error::Invalid(format!("cannot start {}: {err}", exe.display())))
}

pub fn run(opts: &CorpusOptions, out: &mut Map<String, Value>) -> Result<Outcome> {
    let exe = std::env::current_exe().map_err(|e| Error::Invalid(format!("cannot locate the executable: {e}")))?;
    if let Some(dir) = &opts.dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    }
    let all = examples();
    let mut rows = Vec::with_capacity(all.len());
    let mut timeouts = Vec::new();
    let mut failures = Vec::new();
    for chunk in all.chunks(opts.jobs.max(1)) {
        let children: Vec<Child> = chunk.iter().map(|e| spawn(&exe, e, opts)).collect::<Result<_>>()?;
        for (e, child) in chunk.iter().zip(children) {
            let output = child.wait_with_output().map_err(|err| Error::Invalid(format!("{}: {err}", e.name)))?;
            let code = output.status.code().unwrap_or(-1);
            let report: Value = serde_json::from_slice(&output.stdout).unwrap_or(Value::Null);
            let file = slug(&e.name) + ".json";
            if let Some(dir) = &opts.dir {
                std::fs::write(dir.join(&file), &output.stdout)
                    .map_err(|err| Error::Invalid(format!("cannot write {file}: {err}")))?;
            }
            match code {
                0 => {}
                3 => timeouts.push(e.name.clone()),
                _ => failures.push(format!("{} (exit {code})", e.name)),
            }
            rows.push(json!({
                "name": e.name,
                "polynomial": e.text,
                "variables": e.variables,
                "exit_code": code,
                "status": report["status"],
                "verdict": report["result"]["verdict"],
                "report": opts.dir.as_ref().map(|_| file),
            }));
        }
    }
    out.insert("examples".into(), Value::Array(rows));
    if !failures.is_empty() {
        return Err(Error::Invalid(format!("corpus failures: {}", failures.join(", "))));
    }
    Ok(if timeouts.is_empty() { Outcome::Ok } else { Outcome::Partial(timeouts) })
}
