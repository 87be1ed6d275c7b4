//! Machine-readable verification results.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Outcome of one verification suite. `pass` holds exactly when there are
/// no witnesses and every child passes. Wall time is kept out of the
/// serialized form so that reports are byte-for-byte reproducible; see
/// [`VerificationReport::timings`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Value,
    pub pass: bool,
    /// Number of individual cases examined.
    pub checked: u64,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<VerificationReport>,
    #[serde(skip)]
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn leaf(suite: &str, parameters: Value, checked: u64, witnesses: Vec<Value>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            parameters,
            pass: witnesses.is_empty(),
            checked,
            witnesses,
            children: vec![],
            wall_time: 0.0,
        }
    }

    pub fn aggregate(suite: &str, parameters: Value, children: Vec<VerificationReport>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            parameters,
            pass: children.iter().all(|c| c.pass),
            checked: children.iter().map(|c| c.checked).sum(),
            witnesses: vec![],
            children,
            wall_time: 0.0,
        }
    }

    pub fn with_wall_time(mut self, seconds: f64) -> Self {
        self.wall_time = seconds;
        self
    }

    /// Wall time per suite path, e.g. `"verify-all/triangularity"`.
    pub fn timings(&self) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        self.collect_timings("", &mut out);
        out
    }

    fn collect_timings(&self, prefix: &str, out: &mut BTreeMap<String, f64>) {
        let path = if prefix.is_empty() { self.suite.clone() } else { format!("{prefix}/{}", self.suite) };
        for c in &self.children {
            c.collect_timings(&path, out);
        }
        // suites that were not timed individually are left out
        if prefix.is_empty() || self.wall_time > 0.0 {
            out.insert(path, self.wall_time);
        }
    }

    /// The child with the given suite name, searched depth first.
    pub fn find(&self, suite: &str) -> Option<&VerificationReport> {
        if self.suite == suite {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(suite))
    }
}

/// Runs `f` and records its wall time on the returned report.
pub fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    let start = std::time::Instant::now();
    let r = f();
    let secs = start.elapsed().as_secs_f64();
    r.with_wall_time(secs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn pass_tracks_witnesses() {
        let ok = VerificationReport::leaf("a", json!({}), 3, vec![]);
        let bad = VerificationReport::leaf("b", json!({}), 1, vec![json!({"x": 1})]);
        assert!(ok.pass && !bad.pass);
        let agg = VerificationReport::aggregate("all", json!({}), vec![ok.clone(), bad]);
        assert!(!agg.pass);
        assert_eq!(agg.checked, 4);
        assert!(VerificationReport::aggregate("all", json!({}), vec![ok]).pass);
    }

    #[test]
    fn wall_time_not_serialized() {
        let r = VerificationReport::leaf("a", json!({"d": 2}), 0, vec![]).with_wall_time(1.5);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"suite":"a","parameters":{"d":2},"pass":true,"checked":0,"witnesses":[]}"#);
        assert_eq!(r.timings()["a"], 1.5);
    }
}
