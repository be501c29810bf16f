use serde::{Deserialize, Serialize};

/// Outcome of checking a family of equations at every index tuple.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub valid: bool,
    /// one entry per equation family, in checking order
    pub checks: Vec<Check>,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub equation: String,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub equation: String,
    pub indices: Vec<usize>,
    pub lhs: u64,
    pub rhs: u64,
}

impl Report {
    pub fn new() -> Self {
        Self { valid: true, checks: Vec::new(), violations: Vec::new() }
    }

    /// Records an equation family; `instances` yields `(indices, lhs, rhs)`
    /// with both sides already reduced.
    pub fn family(&mut self, equation: &str, instances: impl IntoIterator<Item = (Vec<usize>, u64, u64)>) {
        let mut count = 0;
        let mut failures = 0;
        for (indices, lhs, rhs) in instances {
            count += 1;
            if lhs != rhs {
                failures += 1;
                self.violations.push(Violation { equation: equation.to_string(), indices, lhs, rhs });
            }
        }
        self.valid &= failures == 0;
        self.checks.push(Check { equation: equation.to_string(), instances: count, failures });
    }

    /// Records a single yes/no condition.
    pub fn condition(&mut self, equation: &str, holds: bool) {
        let instance = (Vec::new(), u64::from(holds), 1);
        self.family(equation, [instance]);
    }

    pub fn merge(&mut self, other: Report) {
        self.valid &= other.valid;
        self.checks.extend(other.checks);
        self.violations.extend(other.violations);
    }

    pub fn check(&self, equation: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.equation == equation)
    }

    /// Names of the families with at least one failure.
    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.failures > 0).map(|c| c.equation.as_str()).collect()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_every_violation() {
        let mut r = Report::new();
        r.family("a", vec![(vec![0], 1, 1), (vec![1], 2, 3), (vec![2], 0, 1)]);
        r.family("b", vec![(vec![0], 1, 1)]);
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.failed(), vec!["a"]);
        assert_eq!(r.check("b").unwrap().instances, 1);
    }

    #[test]
    fn empty_is_valid() {
        let mut r = Report::new();
        r.condition("x", true);
        assert!(r.valid);
        r.condition("y", false);
        assert!(!r.valid);
    }
}
