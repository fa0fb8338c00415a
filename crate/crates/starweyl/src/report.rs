//! Verification reports: one record per identity check, JSON-serializable.

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct CheckRecord {
    /// Stable identifier of the identity, e.g. "gamma.functional_equation".
    pub id: String,
    /// Short statement of the hypothesis or identity being checked.
    pub anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn record(
        &mut self,
        id: &str,
        anchor: &str,
        max_residual: f64,
        tolerance: f64,
        runtime_ms: u128,
    ) -> bool {
        let pass = max_residual.is_finite() && max_residual <= tolerance;
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            max_residual,
            tolerance,
            pass,
            runtime_ms,
        });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "anchor": c.anchor,
                "max_residual": c.max_residual,
                "tolerance": c.tolerance,
                "pass": c.pass,
                "runtime_ms": c.runtime_ms,
            })).collect::<Vec<_>>(),
        })
    }

    /// One pass/fail line per check.
    pub fn print_lines(&self) {
        for c in &self.checks {
            println!(
                "{} {:<42} residual {:.3e} (tol {:.1e}, {} ms)",
                if c.pass { "PASS" } else { "FAIL" },
                format!("{}:", c.id),
                c.max_residual,
                c.tolerance,
                c.runtime_ms
            );
        }
    }
}
