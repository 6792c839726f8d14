use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// `null` in JSON when the check could not be evaluated.
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn new(id: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            id: id.into(),
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol,
            error: None,
        }
    }

    pub fn failed(id: impl Into<String>, tol: f64, error: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            residual: f64::NAN,
            tol,
            pass: false,
            error: Some(error.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub case: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Measured quantities worth reporting beside the checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<serde_json::Value>,
    pub timing: Timing,
}

impl CheckReport {
    pub fn new(case: impl Into<String>, checks: Vec<Check>, seconds: f64) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            case: case.into(),
            checks,
            pass,
            measured: None,
            enumeration: None,
            timing: Timing { seconds },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("case: {}\n", self.case);
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {:<28} residual {:>10.3e}  tol {:.0e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.residual,
                c.tol
            ));
            if let Some(e) = &c.error {
                out.push_str(&format!("  ({e})"));
            }
            out.push('\n');
        }
        out.push_str(if self.pass { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_pass_is_conjunction() {
        let r = CheckReport::new("x", vec![Check::new("a", 1e-9, 1e-6), Check::new("b", 1.0, 1e-6)], 0.0);
        assert!(!r.pass);
        let r = CheckReport::new("x", vec![Check::new("a", 1e-9, 1e-6)], 0.0);
        assert!(r.pass);
        assert!(!Check::new("nan", f64::NAN, 1.0).pass);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["id"], "a");
        assert_eq!(v["pass"], true);
    }
}
