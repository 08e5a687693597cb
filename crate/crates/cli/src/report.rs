//! Run reports: human-readable text or stable JSON.

use serde::Serialize;

use liouville_core::report::VerificationReport;

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

/// Everything a command run produces. Exit status is 0 exactly when all
/// checks pass; the JSON schema is {command, checks, duration_ms}.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub checks: Vec<CheckOut>,
    pub duration_ms: u64,
}

impl RunReport {
    pub fn new(command: String) -> RunReport {
        RunReport {
            command,
            checks: Vec::new(),
            duration_ms: 0,
        }
    }

    pub fn push(&mut self, name: &str, pass: bool, witness: String) {
        self.checks.push(CheckOut {
            name: name.to_string(),
            pass,
            witness,
        });
    }

    /// A fact with no pass/fail content; recorded as passing.
    pub fn info(&mut self, name: &str, witness: String) {
        self.push(name, true, witness);
    }

    pub fn absorb(&mut self, r: VerificationReport) {
        for c in r.checks {
            self.checks.push(CheckOut {
                name: c.name,
                pass: c.pass,
                witness: c.witness,
            });
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serialization");
        }
        let mut out = String::new();
        out.push_str(&self.command);
        out.push('\n');
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {mark}  {}\n", c.name));
            if !c.witness.is_empty() {
                out.push_str(&format!("        {}\n", c.witness));
            }
        }
        let verdict = if self.all_pass() {
            "all checks passed"
        } else {
            "CHECKS FAILED"
        };
        out.push_str(&format!(
            "result: {verdict} ({} checks, {} ms)\n",
            self.checks.len(),
            self.duration_ms
        ));
        out
    }
}
