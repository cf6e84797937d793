//! Tabular output as CSV (with `#` comment lines) or JSON (array of row objects).

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A numeric table with optional comment lines before and after the rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table {
            columns,
            ..Table::default()
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write<W: Write>(&self, format: Format, w: &mut W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for c in &self.header {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        for c in &self.footer {
            writeln!(w, "# {c}")?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, &v)| (c.clone(), Number::from_f64(v).map_or(Value::Null, Value::Number)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *w, &rows)?;
        writeln!(w)
    }
}

/// Shortest round-trip representation, in scientific notation outside `[1e-4, 1e15)`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v == 0.0 || (1e-4..1e15).contains(&v.abs()) || v.is_infinite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
