//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    /// The claim this check exercises, in words.
    pub anchor: String,
    pub parameters: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Record {
    /// Passes iff `expected` and `actual` serialize identically.
    pub fn exact(
        id: impl Into<String>,
        anchor: &str,
        parameters: Value,
        expected: impl Serialize,
        actual: impl Serialize,
    ) -> Self {
        let expected = to_value(expected);
        let actual = to_value(actual);
        let pass = expected == actual;
        Record {
            id: id.into(),
            anchor: anchor.to_string(),
            parameters,
            expected,
            actual,
            pass,
        }
    }

    /// Passes iff `pass`; `expected` describes the predicate.
    pub fn predicate(
        id: impl Into<String>,
        anchor: &str,
        parameters: Value,
        expected: impl Serialize,
        actual: impl Serialize,
        pass: bool,
    ) -> Self {
        Record {
            id: id.into(),
            anchor: anchor.to_string(),
            parameters,
            expected: to_value(expected),
            actual: to_value(actual),
            pass,
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub config: Value,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: Value, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        };
        Report {
            tool: format!("laxg2 {}", env!("CARGO_PKG_VERSION")),
            config,
            records,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
