//! Plain-text run reports: which command ran, on which inputs (pinned by
//! content digest), what each check concluded, and how long it took.

use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::time::Instant;

pub struct RunReport {
    command: String,
    inputs: Vec<(String, String)>,
    outcomes: Vec<Outcome>,
    started: Instant,
}

enum Outcome {
    Value { name: String, value: String },
    Check { name: String, passed: bool, witness: String },
    Note(String),
}

pub fn digest(content: &str) -> String {
    let mut h = Sha256::new();
    h.update(content.as_bytes());
    let out = h.finalize();
    let mut s = String::from("sha256:");
    for b in out.iter().take(8) {
        let _ = write!(s, "{b:02x}");
    }
    s
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Vec::new(),
            outcomes: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn input(&mut self, path: &str, content: &str) {
        self.inputs.push((path.to_string(), digest(content)));
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.outcomes.push(Outcome::Value {
            name: name.to_string(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, name: &str, passed: bool, witness: impl ToString) {
        self.outcomes.push(Outcome::Check {
            name: name.to_string(),
            passed,
            witness: witness.to_string(),
        });
    }

    pub fn note(&mut self, text: impl ToString) {
        self.outcomes.push(Outcome::Note(text.to_string()));
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| match o {
            Outcome::Check { passed, .. } => *passed,
            _ => true,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (path, digest) in &self.inputs {
            let _ = writeln!(out, "input: {path} ({digest})");
        }
        for o in &self.outcomes {
            match o {
                Outcome::Value { name, value } => {
                    let _ = writeln!(out, "{name}: {value}");
                }
                Outcome::Check { name, passed, witness } => {
                    let status = if *passed { "pass" } else { "FAIL" };
                    if witness.is_empty() {
                        let _ = writeln!(out, "check {name}: {status}");
                    } else {
                        let _ = writeln!(out, "check {name}: {status} ({witness})");
                    }
                }
                Outcome::Note(text) => {
                    let _ = writeln!(out, "note: {text}");
                }
            }
        }
        let _ = writeln!(out, "wall: {:.3}s", self.started.elapsed().as_secs_f64());
        out
    }
}
