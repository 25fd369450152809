//! Structured check reports with a stable JSON encoding and a plain-text
//! rendering. A report fails exactly when some non-informational record
//! fails; serialization is byte-stable for fixed inputs.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub anchor: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub subject: String,
    pub records: Vec<Record>,
    pub repair_notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            schema: 1,
            version: env!("CARGO_PKG_VERSION").to_string(),
            subject: subject.into(),
            records: Vec::new(),
            repair_notes: Vec::new(),
        }
    }

    /// Pass/fail record comparing rendered values for equality.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        self.records.push(Record {
            name: name.into(),
            status: if expected == actual {
                Status::Pass
            } else {
                Status::Fail
            },
            expected,
            actual,
            anchor: anchor.into(),
        });
    }

    /// Pass/fail record from a boolean condition.
    pub fn require(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        detail: impl fmt::Display,
    ) {
        self.records.push(Record {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: "true".into(),
            actual: detail.to_string(),
            anchor: anchor.into(),
        });
    }

    /// Informational record; never affects the overall status.
    pub fn info(
        &mut self,
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: impl fmt::Display,
    ) {
        self.records.push(Record {
            name: name.into(),
            status: Status::Info,
            expected: String::new(),
            actual: value.to_string(),
            anchor: anchor.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.repair_notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.subject)?;
        for r in &self.records {
            match r.status {
                Status::Pass => writeln!(f, "PASS {} [{}]: {}", r.name, r.anchor, r.actual)?,
                Status::Fail => writeln!(
                    f,
                    "FAIL {} [{}]: expected {}, got {}",
                    r.name, r.anchor, r.expected, r.actual
                )?,
                Status::Info => writeln!(f, "INFO {} [{}]: {}", r.name, r.anchor, r.actual)?,
            }
        }
        for n in &self.repair_notes {
            writeln!(f, "NOTE {n}")?;
        }
        writeln!(
            f,
            "overall: {}",
            if self.passed() { "pass" } else { "fail" }
        )
    }
}
