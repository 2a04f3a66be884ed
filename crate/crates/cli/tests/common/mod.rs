//! Runs the shipped fixture manifest through the real binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub exit: i32,
    pub golden: String,
    #[serde(default)]
    pub stdin: Option<String>,
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn manifest() -> Vec<Case> {
    let text = std::fs::read_to_string(fixtures().join("manifest.json")).expect("manifest");
    serde_json::from_str(&text).expect("manifest parses")
}

pub fn run(args: &[String], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nearspace"));
    cmd.args(args).current_dir(fixtures());
    cmd.stdin(match stdin {
        Some(f) => Stdio::from(std::fs::File::open(fixtures().join(f)).expect("stdin fixture")),
        None => Stdio::null(),
    });
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
        code: out.status.code().expect("exit code"),
    }
}

/// What a case is compared on: stdout for verdicts, stderr for input errors.
pub fn observed(case: &Case, run: &Run) -> String {
    if case.exit == 2 {
        run.stderr.clone()
    } else {
        run.stdout.clone()
    }
}

/// Mismatches, one line each. With `NEARSPACE_BLESS=1` goldens are
/// rewritten instead of compared.
pub fn check_all() -> Vec<String> {
    let bless = std::env::var_os("NEARSPACE_BLESS").is_some();
    let mut problems = Vec::new();
    for case in manifest() {
        let run = run(&case.args, case.stdin.as_deref());
        if run.code != case.exit {
            problems.push(format!(
                "{}: exit {} (expected {}): {}",
                case.name, run.code, case.exit, run.stderr
            ));
            continue;
        }
        let got = observed(&case, &run);
        let path = fixtures().join(&case.golden);
        if bless {
            std::fs::write(&path, &got).expect("write golden");
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(_) => problems.push(format!(
                "{}: output differs from {}",
                case.name, case.golden
            )),
            Err(e) => problems.push(format!("{}: {}: {e}", case.name, case.golden)),
        }
    }
    problems
}
