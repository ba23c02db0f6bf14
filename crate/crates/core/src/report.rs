//! Pass/fail check lists shared by the verifiers and the command line.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(id, passed, detail));
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// One `CHECK <id> <PASS|FAIL>` line per check, then the details of failures
/// and a summary line.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "CHECK {} {}", c.id, if c.passed { "PASS" } else { "FAIL" })?;
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            writeln!(f, "# {}: {}", c.id, c.detail)?;
        }
        writeln!(f, "# {} of {} checks passed", self.passed(), self.len())
    }
}
