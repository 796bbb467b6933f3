//! Tabular results rendered as CSV or JSON.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Uint(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Uint(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Uint(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Uint(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Uint(v as u64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    rows: Vec<(Vec<Cell>, String)>,
    extra: Map<String, Value>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table { command, columns: columns.to_vec(), rows: Vec::new(), extra: Map::new() }
    }

    /// Append a row. `reference` names the statement the row evaluates.
    pub fn push(&mut self, cells: Vec<Cell>, reference: impl Into<String>) {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.rows.push((cells, reference.into()));
    }

    /// Attach a JSON-only field.
    pub fn attach(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("json");
                s.push('\n');
                s
            }
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for (cells, _) in &self.rows {
            let line: Vec<String> = cells.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(cells, reference)| {
                let mut m = Map::new();
                for (k, c) in self.columns.iter().zip(cells) {
                    m.insert(k.to_string(), c.json());
                }
                m.insert("paper_ref".into(), json!(reference));
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("rows".into(), Value::Array(rows));
        for (k, v) in &self.extra {
            top.insert(k.clone(), v.clone());
        }
        Value::Object(top)
    }
}
