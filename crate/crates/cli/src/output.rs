//! Tabular results and their CSV / JSON renderings.
//!
//! CSV layout: a `#format=denergy-csv/1` line, optional `#key=value` metadata
//! lines, the header row, then data rows. Floats carry 15 significant digits
//! in Rust's `{:.14e}` notation; exact integers are printed in full.

use std::io::{self, Write};

use serde_json::{Map, Number, Value};

pub const CSV_FORMAT: &str = "denergy-csv/1";
pub const JSON_FORMAT: &str = "denergy-json/1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Exact integer, kept as decimal digits so big values survive.
    Int(String),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(v: impl ToString) -> Self {
        Cell::Int(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) => number(s),
            Cell::Float(x) if x.is_finite() => number(&format_float(*x)),
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

fn number(digits: &str) -> Value {
    serde_json::from_str::<Number>(digits)
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(digits.to_string()))
}

/// 15 significant digits, e.g. `3.14159265358979e0`.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.14e}")
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub columns: &'static [&'static str],
    pub meta: Vec<(&'static str, Cell)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Self {
            command,
            columns,
            meta: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "#format={CSV_FORMAT}")?;
        for (key, value) in &self.meta {
            writeln!(w, "#{key}={}", value.csv())?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("format".into(), JSON_FORMAT.into());
        doc.insert("command".into(), self.command.into());
        doc.insert(
            "columns".into(),
            self.columns.iter().map(|&c| Value::from(c)).collect(),
        );
        doc.insert("meta".into(), Value::Object(meta));
        doc.insert("rows".into(), Value::Array(rows));
        Value::Object(doc)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut w, &self.to_json())?;
        writeln!(w)?;
        w.flush()
    }
}
