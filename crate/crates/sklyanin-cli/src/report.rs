//! Machine-readable reports: per-check records with provenance-tagged
//! expected values, rendered as JSON or CSV.
//!
//! Rendering is deterministic: identical run configurations produce
//! byte-identical output. Wall-clock time never enters the payload; the
//! binary prints timing to stderr instead.

use serde::Serialize;
use std::collections::BTreeMap;

/// Expected value printed in the source material.
pub const PRINTED: &str = "printed";
/// Expected value derived by an independent oracle computation.
pub const ORACLE: &str = "oracle";
/// Internal consistency identity that must hold regardless of inputs.
pub const IDENTITY: &str = "identity";

/// One verification: what was checked, what was expected (and on whose
/// authority), and what came out.
#[derive(Serialize, Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub expected: Option<String>,
    pub provenance: Option<String>,
    pub computed: String,
    pub pass: bool,
}

impl CheckRecord {
    /// A record that only reports a computed value, with nothing to compare
    /// against; it always passes.
    pub fn report(name: &str, inputs: &str, computed: impl ToString) -> Self {
        CheckRecord {
            name: name.to_string(),
            inputs: inputs.to_string(),
            expected: None,
            provenance: None,
            computed: computed.to_string(),
            pass: true,
        }
    }

    /// A record that compares the computed value against an expected one by
    /// string equality.
    pub fn expect(
        name: &str,
        inputs: &str,
        expected: impl ToString,
        provenance: &str,
        computed: impl ToString,
    ) -> Self {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let pass = expected == computed;
        CheckRecord {
            name: name.to_string(),
            inputs: inputs.to_string(),
            expected: Some(expected),
            provenance: Some(provenance.to_string()),
            computed,
            pass,
        }
    }

    /// A record with no expected value whose pass/fail was still decided by
    /// the caller (user-supplied elements with no reference answer).
    pub fn observe(name: &str, inputs: &str, computed: impl ToString, pass: bool) -> Self {
        CheckRecord {
            name: name.to_string(),
            inputs: inputs.to_string(),
            expected: None,
            provenance: None,
            computed: computed.to_string(),
            pass,
        }
    }

    /// A record whose pass/fail was decided by the caller (span equalities
    /// and other structural comparisons that are not string equality).
    pub fn judged(
        name: &str,
        inputs: &str,
        expected: impl ToString,
        provenance: &str,
        computed: impl ToString,
        pass: bool,
    ) -> Self {
        CheckRecord {
            name: name.to_string(),
            inputs: inputs.to_string(),
            expected: Some(expected.to_string()),
            provenance: Some(provenance.to_string()),
            computed: computed.to_string(),
            pass,
        }
    }
}

/// A full command report: the run configuration, the records, and a
/// pass/fail roll-up. Extra command-specific payload fields are flattened
/// into the JSON object (and omitted from CSV).
#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub order: String,
    pub presentation: Option<String>,
    pub max_degree: usize,
    pub oracle_max: Option<usize>,
    pub records: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, field: &str, order: &str, max_degree: usize) -> Self {
        Report {
            command: command.to_string(),
            field: field.to_string(),
            order: order.to_string(),
            presentation: None,
            max_degree,
            oracle_max: None,
            records: Vec::new(),
            passed: 0,
            failed: 0,
            all_pass: true,
            extra: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn set_extra(&mut self, key: &str, value: serde_json::Value) {
        self.extra.insert(key.to_string(), value);
    }

    /// Fill in the pass/fail tallies from the records.
    pub fn finish(&mut self) {
        self.passed = self.records.iter().filter(|r| r.pass).count();
        self.failed = self.records.len() - self.passed;
        self.all_pass = self.failed == 0;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV with one row per record. The flattened extra payload is a JSON
    /// convenience and has no CSV rendering.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,inputs,expected,provenance,computed,pass\n");
        for r in &self.records {
            let row = [
                r.name.as_str(),
                r.inputs.as_str(),
                r.expected.as_deref().unwrap_or(""),
                r.provenance.as_deref().unwrap_or(""),
                r.computed.as_str(),
                if r.pass { "true" } else { "false" },
            ];
            let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// One-line human summary for stderr.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} checks, {} passed, {} failed",
            self.command,
            self.records.len(),
            self.passed,
            self.failed
        )
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
