//! Structured verdicts of individual checks.

use std::time::Instant;

use fiberlab_core::Error;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// A value stated in the literature for this example.
    Literature,
    /// A closed formula evaluated on independently computed terms.
    Formula,
    /// An independent computation (brute force or a second engine).
    Oracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Formula => "formula",
            Provenance::Oracle => "oracle",
        }
    }
}

/// Result of one check. `verdict` is `Pass` exactly when every key of
/// `expected` has the same value in `computed`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub claim: String,
    pub params: Map<String, Value>,
    pub verdict: Verdict,
    pub computed: Map<String, Value>,
    pub expected: Map<String, Value>,
    pub provenance: Provenance,
    pub note: Option<String>,
    pub elapsed_ms: u128,
    /// Set when the check stopped on a resource cap.
    pub cap_exceeded: bool,
}

impl Report {
    pub fn new(claim: impl Into<String>, provenance: Provenance) -> Report {
        Report {
            claim: claim.into(),
            params: Map::new(),
            verdict: Verdict::Pass,
            computed: Map::new(),
            expected: Map::new(),
            provenance,
            note: None,
            elapsed_ms: 0,
            cap_exceeded: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn computed(&mut self, key: &str, value: impl Into<Value>) {
        self.computed.insert(key.to_string(), value.into());
    }

    pub fn expect(&mut self, key: &str, value: impl Into<Value>) {
        self.expected.insert(key.to_string(), value.into());
    }

    /// Records a computed value together with the value it must equal.
    pub fn compare(&mut self, key: &str, computed: impl Into<Value>, expected: impl Into<Value>) {
        self.computed(key, computed);
        self.expect(key, expected);
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        self.note = Some(note.into());
        self
    }

    /// Sets the verdict from the comparison of expected and computed maps.
    pub fn settle(mut self, started: Instant) -> Report {
        self.elapsed_ms = started.elapsed().as_millis();
        if self.verdict != Verdict::Error {
            let ok = self.expected.iter().all(|(k, v)| self.computed.get(k) == Some(v));
            self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        }
        self
    }

    /// A report for a check that could not be completed.
    pub fn error(claim: impl Into<String>, err: &Error, started: Instant) -> Report {
        let mut r = Report::new(claim, Provenance::Oracle);
        r.verdict = Verdict::Error;
        r.cap_exceeded = err.is_cap();
        r.computed("error", err.to_string());
        r.elapsed_ms = started.elapsed().as_millis();
        r
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// JSON form; `timing` controls whether `elapsedMs` is included.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut expected = self.expected.clone();
        expected.insert("provenance".into(), Value::from(self.provenance.as_str()));
        let mut out = Map::new();
        out.insert("claim".into(), Value::from(self.claim.clone()));
        out.insert("params".into(), Value::Object(self.params.clone()));
        out.insert("verdict".into(), serde_json::to_value(self.verdict).expect("verdict serializes"));
        out.insert("computed".into(), Value::Object(self.computed.clone()));
        out.insert("expected".into(), Value::Object(expected));
        if let Some(n) = &self.note {
            out.insert("note".into(), Value::from(n.clone()));
        }
        if timing {
            out.insert("elapsedMs".into(), Value::from(self.elapsed_ms as u64));
        }
        Value::Object(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let t = Instant::now();
        let mut r = Report::new("thm-5.1", Provenance::Formula).param("s", 2);
        r.compare("regFs", 10, 10);
        let r = r.settle(t);
        assert!(r.passed());
        let json = r.to_json(false);
        assert_eq!(
            json.to_string(),
            r#"{"claim":"thm-5.1","computed":{"regFs":10},"expected":{"provenance":"formula","regFs":10},"params":{"s":2},"verdict":"pass"}"#
        );
        let mut bad = Report::new("x", Provenance::Oracle);
        bad.compare("v", 1, 2);
        assert_eq!(bad.settle(t).verdict, Verdict::Fail);
        assert_eq!(Report::error("x", &Error::ZeroIdeal, t).verdict, Verdict::Error);
    }
}
