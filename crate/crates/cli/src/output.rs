use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use hopf_cyclic::report::{CheckRecord, ComputationRecord, Report};
use hopf_cyclic::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const PASS: u8 = 0;
pub const FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const UNSUPPORTED: u8 = 3;

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    arguments: &'a BTreeMap<String, String>,
    input_sha256: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    checks: &'a [CheckRecord],
    computations: &'a [ComputationRecord],
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_ms: Option<u128>,
}

/// Report under construction for one command invocation.
pub struct Run {
    command: String,
    arguments: BTreeMap<String, String>,
    input: String,
    started: Instant,
    timing: bool,
}

impl Run {
    pub fn new(command: &str, timing: bool) -> Self {
        Run {
            command: command.to_string(),
            arguments: BTreeMap::new(),
            input: String::new(),
            started: Instant::now(),
            timing,
        }
    }

    pub fn arg(&mut self, key: &str, value: impl ToString) {
        self.arguments.insert(key.to_string(), value.to_string());
    }

    /// Text that, with the arguments, determines the result.
    pub fn input(&mut self, text: &str) {
        self.input.push_str(text);
        self.input.push('\n');
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.input.as_bytes());
        for (k, v) in &self.arguments {
            h.update(format!("{k}={v}\n").as_bytes());
        }
        format!("{:x}", h.finalize())
    }

    fn emit(&self, status: &'static str, error: Option<String>, report: &Report) {
        let env = Envelope {
            tool: "hcyc",
            version: env!("CARGO_PKG_VERSION"),
            command: &self.command,
            arguments: &self.arguments,
            input_sha256: self.digest(),
            status,
            error,
            checks: &report.checks,
            computations: &report.computations,
            duration_ms: self.timing.then(|| self.started.elapsed().as_millis()),
        };
        print_stdout(&serde_json::to_string_pretty(&env).expect("reports serialize"));
    }

    /// Print the report; exit code 0 iff every check passed.
    pub fn finish(&self, report: &Report) -> u8 {
        if report.passed() {
            self.emit("pass", None, report);
            PASS
        } else {
            self.emit("fail", None, report);
            FAILED
        }
    }

    /// Print a report for a computation that could not run.
    pub fn fail_with(&self, err: &Error, mut report: Report) -> u8 {
        let code = exit_code(err);
        let status = match code {
            UNSUPPORTED => "unsupported",
            USAGE => "usage",
            _ => "fail",
        };
        if let Error::Rejected { what, witness } = err {
            report.check(what.clone(), "precondition of the computation", Some(witness.clone()));
        }
        eprintln!("hcyc: {err}");
        self.emit(status, Some(err.to_string()), &report);
        code
    }
}

/// Print a line, ignoring a closed pipe on the reading end.
pub fn print_stdout(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Unsupported(_) => UNSUPPORTED,
        Error::UnknownName(_) | Error::Parse(_) => USAGE,
        _ => FAILED,
    }
}
