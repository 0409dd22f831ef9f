//! Structured verification reports with a fixed convention block.
//!
//! Every report names the conventions that affect numeric comparisons, so a
//! reader can reproduce the verdicts: the matrix layout and transform signs,
//! the S²-factor contribution to twistor types, the tolerance, and the
//! arithmetic mode. Serialization order is fixed by the struct layout, which
//! keeps byte output deterministic for identical inputs.

use serde::Serialize;

/// Schema version of all JSON reports.
pub const SCHEMA_VERSION: u32 = 1;

/// Conventions that fix the meaning of every check in a report.
#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    /// Matrix layout and transform signs.
    pub sign_convention: String,
    /// What the S² factor adds to the twistor type.
    pub s2_factor: String,
    /// Comparison tolerance (ignored by exact arithmetic).
    pub epsilon: f64,
    /// "exact" or "float".
    pub mode: String,
    pub schema_version: u32,
}

impl Conventions {
    pub fn new(mode: &str, epsilon: f64, s2_symplectic: bool) -> Self {
        Conventions {
            sign_convention: "rows ordered V then V*; a 2-form with Gram G acts by G^T; \
                              exp(B) conjugation adds B below the diagonal, exp(beta) above; \
                              pairing <X+xi, Y+eta> = (xi(Y) + eta(X))/2"
                .to_string(),
            s2_factor: if s2_symplectic {
                "symplectic (adds 0 to the twistor type)".to_string()
            } else {
                "complex (adds 1 to the twistor type)".to_string()
            },
            epsilon,
            mode: mode.to_string(),
            schema_version: SCHEMA_VERSION,
        }
    }
}

/// One named pass/fail item with an optional residual and free-form detail.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckItem {
    pub fn new(name: &str, pass: bool) -> Self {
        CheckItem {
            name: name.to_string(),
            pass,
            residual: None,
            detail: None,
        }
    }

    pub fn with_residual(mut self, residual: f64) -> Self {
        self.residual = Some(residual);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// A full verification report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub conventions: Conventions,
    pub checks: Vec<CheckItem>,
    pub all_pass: bool,
}

impl Report {
    pub fn new(title: &str, conventions: Conventions, checks: Vec<CheckItem>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        Report {
            title: title.to_string(),
            conventions,
            checks,
            all_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Title and convention header, one `PASS name` / `FAIL name — detail`
    /// line per check, and a final verdict line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.title);
        out.push('\n');
        out.push_str(&format!(
            "mode: {}; epsilon: {}; S² factor: {}\n",
            self.conventions.mode, self.conventions.epsilon, self.conventions.s2_factor
        ));
        out.push_str(&format!(
            "conventions: {}\n",
            self.conventions.sign_convention
        ));
        for c in &self.checks {
            out.push_str(if c.pass { "PASS " } else { "FAIL " });
            out.push_str(&c.name);
            if let Some(d) = &c.detail {
                out.push_str(" — ");
                out.push_str(d);
            }
            out.push('\n');
        }
        out.push_str("result: ");
        out.push_str(if self.all_pass { "PASS" } else { "FAIL" });
        out.push('\n');
        out
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_reflects_the_checks() {
        let conv = Conventions::new("exact", 0.0, false);
        let r = Report::new(
            "demo",
            conv.clone(),
            vec![CheckItem::new("a", true), CheckItem::new("b", true)],
        );
        assert!(r.all_pass);
        let r2 = Report::new(
            "demo",
            conv,
            vec![
                CheckItem::new("a", true),
                CheckItem::new("b", false).with_detail("entry (1,2)"),
            ],
        );
        assert!(!r2.all_pass);
        assert_eq!(r2.failed_names(), vec!["b"]);
        assert!(r2.to_text().contains("FAIL b — entry (1,2)"));
    }

    #[test]
    fn serialization_is_deterministic() {
        let conv = Conventions::new("float", 1e-9, true);
        let r = Report::new("demo", conv, vec![CheckItem::new("a", true).with_residual(0.0)]);
        assert_eq!(r.to_json(), r.to_json());
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }
}
