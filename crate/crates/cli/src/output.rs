//! Output documents: a parameter header, a table, a summary, and optional nested JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

pub const TOOL: &str = "summa";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Default)]
pub struct Document {
    pub command: &'static str,
    pub params: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
    /// Nested sections emitted only in JSON (e.g. witness metadata).
    pub sections: Vec<(String, Value)>,
    /// Set when the command produced output but failed numerically.
    pub failure: Option<String>,
}

impl Document {
    pub fn new(command: &'static str, params: Vec<(String, String)>) -> Self {
        Self {
            command,
            params,
            ..Default::default()
        }
    }

    fn header_lines(&self) -> Vec<String> {
        let mut out = vec![format!("{TOOL} {VERSION}"), format!("command: {}", self.command)];
        out.extend(self.params.iter().map(|(k, v)| format!("{k}: {v}")));
        out
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut buf = Vec::new();
        for line in self.header_lines() {
            writeln!(buf, "# {line}")?;
        }
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&self.columns).map_err(csv_err)?;
            for row in &self.rows {
                w.write_record(row.iter().map(cell)).map_err(csv_err)?;
            }
            w.flush()?;
        }
        for (k, v) in &self.summary {
            writeln!(buf, "# {k}: {}", cell(v))?;
        }
        if let Some(f) = &self.failure {
            writeln!(buf, "# failure: {f}")?;
        }
        Ok(buf)
    }

    pub fn to_json(&self) -> Value {
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let mut doc = Map::new();
        doc.insert(
            "header".into(),
            json!({ "tool": TOOL, "version": VERSION, "command": self.command, "params": params }),
        );
        if !self.columns.is_empty() {
            doc.insert("columns".into(), json!(self.columns));
            doc.insert("rows".into(), Value::Array(self.rows.iter().map(|r| Value::Array(r.clone())).collect()));
        }
        if !self.summary.is_empty() {
            doc.insert("summary".into(), Value::Object(self.summary.iter().cloned().collect()));
        }
        for (k, v) in &self.sections {
            doc.insert(k.clone(), v.clone());
        }
        if let Some(f) = &self.failure {
            doc.insert("failure_message".into(), Value::String(f.clone()));
        }
        Value::Object(doc)
    }

    pub fn write(&self, out: &OutputArgs, default: Format) -> Result<(), CliError> {
        let bytes = match out.format.unwrap_or(default) {
            Format::Csv => self.to_csv()?,
            Format::Json => {
                let mut b = serde_json::to_vec_pretty(&self.to_json()).map_err(|e| CliError::Numerical(e.to_string()))?;
                b.push(b'\n');
                b
            }
        };
        match &out.out {
            Some(path) => std::fs::write(path, bytes)?,
            None => std::io::stdout().lock().write_all(&bytes)?,
        }
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON number, or null for non-finite values.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}
