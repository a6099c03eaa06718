use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Flat view of a command's results for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command computed, before timing and the argv echo are attached.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub parameters: Value,
    pub results: Value,
    pub counterexample: Option<Value>,
    pub table: Table,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub parameters: Value,
    pub results: Value,
    /// `pass` exactly when no counterexample was recorded.
    pub verdict: Verdict,
    pub counterexample: Option<Value>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(command: Vec<String>, outcome: Outcome, elapsed_ms: u64) -> Self {
        let verdict = if outcome.counterexample.is_none() { Verdict::Pass } else { Verdict::Fail };
        Report {
            command,
            parameters: outcome.parameters,
            results: outcome.results,
            verdict,
            counterexample: outcome.counterexample,
            elapsed_ms,
            table: outcome.table,
        }
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.table.headers)?;
        for row in &self.table.rows {
            w.write_record(row.iter().map(cell))?;
        }
        w.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
