use std::fmt::Write as _;

use omega_core::Error;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Exit codes: 0 success, 2 validation failure, 3 guard or precondition, 4 I/O.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Core(Error::Parse { .. }) => 4,
            CliError::Core(
                Error::InadmissibleDistance { .. }
                | Error::InternalConsistency(_)
                | Error::Uncertified(_),
            ) => 2,
            CliError::Core(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Core(e) => match e {
                Error::DimensionMismatch { .. } => "dimension_mismatch",
                Error::GuardExceeded { .. } => "guard_exceeded",
                Error::Precondition(_) => "precondition",
                Error::Parse { .. } => "parse",
                Error::InadmissibleDistance { .. } => "inadmissible_distance",
                Error::RatioBoundVoid { .. } => "ratio_bound_void",
                Error::Uncertified(_) => "uncertified",
                Error::InternalConsistency(_) => "internal_consistency",
            },
        }
    }

    pub fn to_json(&self, command: &str) -> Value {
        json!({
            "command": command,
            "error": {
                "exit_code": self.exit_code(),
                "kind": self.kind(),
                "message": self.to_string(),
            }
        })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Result of one command. Keys serialize in sorted order; numbers appear as
/// decimal strings and rationals as `"p/q"`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub valid: bool,
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: Map::new(),
            results: Map::new(),
            valid: true,
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "valid": self.valid,
        });
        if let Some(ms) = self.elapsed_ms {
            v["timing"] = json!({ "elapsed_ms": ms.to_string() });
        }
        v
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn rows(&self) -> Option<(Vec<String>, &Vec<Value>)> {
        let rows = self.results.get("rows").and_then(Value::as_array)?;
        let columns = match self.results.get("columns").and_then(Value::as_array) {
            Some(cols) => cols.iter().map(scalar_text).collect(),
            None => rows
                .first()
                .and_then(Value::as_object)
                .map(|o| o.keys().cloned().collect())
                .unwrap_or_default(),
        };
        Some((columns, rows))
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some((columns, rows)) = self.rows() {
            let table = table_cells(&columns, rows);
            let widths: Vec<usize> = (0..table[0].len())
                .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            for row in &table {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            let _ = writeln!(out, "valid: {}", self.valid);
            return out;
        }
        let mut flat = Vec::new();
        flatten("", &Value::Object(self.results.clone()), &mut flat);
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in flat {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "valid: {}", self.valid);
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some((columns, rows)) = self.rows() {
            for row in table_cells(&columns, rows) {
                let cells: Vec<String> = row.iter().map(|c| csv_escape(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            return out;
        }
        out.push_str("key,value\n");
        let mut flat = Vec::new();
        flatten("", &Value::Object(self.results.clone()), &mut flat);
        flat.push(("valid".into(), self.valid.to_string()));
        for (k, v) in flat {
            let _ = writeln!(out, "{},{}", csv_escape(&k), csv_escape(&v));
        }
        out
    }
}

/// Header plus one line per row.
fn table_cells(columns: &[String], rows: &[Value]) -> Vec<Vec<String>> {
    let mut table = vec![columns.to_vec()];
    for row in rows {
        table.push(
            columns
                .iter()
                .map(|c| scalar_text(row.get(c).unwrap_or(&Value::Null)))
                .collect(),
        );
    }
    table
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), child, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), format!("[{}]", joined.join(", "))));
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
