//! Named pass/fail check lists shared by the verification entry points and
//! the command line front end.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Human-readable evidence: the offending value on failure, or a short
    /// confirmation (for example the order a series identity was checked
    /// through) on success.
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            witness: witness.into(),
        });
    }

    pub fn push_pass(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, true, witness);
    }

    pub fn push_fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, false, witness);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.witness.is_empty() {
                writeln!(f, "{status} {}", c.name)?;
            } else {
                writeln!(f, "{status} {} ({})", c.name, c.witness)?;
            }
        }
        Ok(())
    }
}
