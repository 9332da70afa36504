//! Report assembly and the three output dialects.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Header plus rows, all cells already serialized.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (i, c) in r.iter().enumerate() {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&self.header).chain(&self.rows) {
            let line: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{c:<w$}", w = width[i]))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// Rows as objects keyed by header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> = self
                        .header
                        .iter()
                        .cloned()
                        .zip(r.iter().map(|c| Value::String(c.clone())))
                        .collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

/// Everything a command produces. Only `command` and the payload enter
/// the output, never worker counts or paths, so reruns are byte-identical.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub text: String,
    pub table: Table,
    pub json: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            text: String::new(),
            table: Table::default(),
            json: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.json.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                for c in &self.checks {
                    s.push_str(&format!("{}: {}\n", c.name, if c.passed { "pass" } else { "FAIL" }));
                }
                s
            }
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut m = self.json.clone();
                m.insert("command".into(), json!(self.command));
                m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
                m.insert("checks".into(), json!(self.checks));
                m.insert("passed".into(), json!(self.passed()));
                let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
