//! CSV and JSON tables.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
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

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn csv_field(c: &Cell) -> String {
    match c {
        Cell::Num(v) if v.is_nan() => "NaN".into(),
        Cell::Num(v) => format!("{v:.16e}"),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_field(c: &Cell) -> Value {
    match c {
        Cell::Num(v) if v.is_finite() => json!(v),
        Cell::Num(_) | Cell::Empty => Value::Null,
        Cell::Text(s) => json!(s),
    }
}

pub fn render(table: &Table, format: Format, meta: &Value) -> String {
    match format {
        Format::Csv => {
            let mut out = table.columns.join(",");
            out.push('\n');
            for row in &table.rows {
                let fields: Vec<String> = row.iter().map(csv_field).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> = table
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(json_field))
                        .collect();
                    Value::Object(m)
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows })).unwrap();
            s.push('\n');
            s
        }
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Two numeric columns from a CSV file with a header row.
pub fn read_pairs(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (n, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let field = |i: usize| -> Result<f64, CliError> {
            rec.get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{} row {}: column {} is not a number", path.display(), n + 1, i + 1)))
        };
        a.push(field(0)?);
        b.push(field(1)?);
    }
    if a.len() < 3 {
        return Err(CliError::Usage(format!("{}: need at least three samples", path.display())));
    }
    if a.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CliError::Usage(format!("{}: first column must increase", path.display())));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_fixed_width_scientific() {
        let mut t = Table::new(&["x", "name", "r"]);
        t.push(vec![0.1.into(), "a,b".into(), Cell::Empty]);
        let s = render(&t, Format::Csv, &Value::Null);
        assert_eq!(s, "x,name,r\n1.0000000000000001e-1,\"a,b\",\n");
    }

    #[test]
    fn json_has_meta_and_rows() {
        let mut t = Table::new(&["x"]);
        t.push(vec![f64::NAN.into()]);
        let v: Value = serde_json::from_str(&render(&t, Format::Json, &json!({"k": 1}))).unwrap();
        assert_eq!(v["meta"]["k"], 1);
        assert!(v["rows"][0]["x"].is_null());
    }
}
