//! Verdicts returned by every inequality check.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Relative slack used by all deterministic inequality checks.
pub const DEFAULT_REL_SLACK: f64 = 1e-12;

/// Outcome of checking `lhs ≤ rhs` up to `slack`.
///
/// Serializes flat: `{"lhs", "rhs", "holds", "slack", ...extra}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// Absolute slack that was allowed on top of `rhs`.
    pub slack: f64,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl CheckReport {
    /// `holds ⟺ lhs ≤ rhs + rel·max(lhs, rhs, 1)`.
    pub fn compare(lhs: f64, rhs: f64, rel: f64) -> Self {
        let slack = rel * lhs.max(rhs).max(1.0);
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + slack,
            slack,
            extra: Map::new(),
        }
    }

    /// Comparison with an explicit absolute slack (Monte-Carlo bands).
    pub fn with_abs_slack(lhs: f64, rhs: f64, slack: f64) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + slack,
            slack,
            extra: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_owned(), value.into());
        self
    }

    pub fn get_f64(&self, key: &str) -> Option<f64> {
        self.extra.get(key).and_then(Value::as_f64)
    }

    /// `lhs / rhs`, or 0 when both vanish.
    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 {
            if self.lhs == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            self.lhs / self.rhs
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_flat() {
        let r = CheckReport::compare(1.0, 2.0, DEFAULT_REL_SLACK).with("w", 4.0 / 3.0);
        let v: Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["holds"], Value::Bool(true));
        assert!(v["w"].as_f64().is_some());
        assert!(v.get("extra").is_none());
        let back: CheckReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn slack_scales_with_magnitude() {
        let r = CheckReport::compare(1e6 * (1.0 + 5e-13), 1e6, DEFAULT_REL_SLACK);
        assert!(r.holds);
        let r = CheckReport::compare(1e6 * (1.0 + 5e-12), 1e6, DEFAULT_REL_SLACK);
        assert!(!r.holds);
    }
}
