use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use wallcross::algebra::{format_rational, LaurentPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Rational(Rational),
    Poly(LaurentPoly),
    Text(String),
    List(Vec<String>),
    Error(String),
    Empty,
}

impl Cell {
    pub fn is_error(&self) -> bool {
        matches!(self, Cell::Error(_))
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Rational(r) => json!(format_rational(r)),
            Cell::Poly(p) => serde_json::to_value(p).expect("polynomials serialize"),
            Cell::Text(s) => json!(s),
            Cell::List(v) => json!(v),
            Cell::Error(e) => json!({ "error": e }),
            Cell::Empty => Value::Null,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Rational(r) => format_rational(r),
            Cell::Poly(p) => p.to_q_string(),
            Cell::Text(s) => s.clone(),
            Cell::List(v) => v.join(";"),
            Cell::Error(e) => format!("error: {e}"),
            Cell::Empty => String::new(),
        }
    }
}

impl<T: Into<Rational>> From<Result<T, String>> for Cell {
    fn from(r: Result<T, String>) -> Self {
        match r {
            Ok(v) => Cell::Rational(v.into()),
            Err(e) => Cell::Error(e),
        }
    }
}

/// Rows of named cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().flatten().any(Cell::is_error)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (c, cell) in self.columns.iter().zip(row) {
                        obj.insert((*c).to_string(), cell.json());
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn text_rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect()
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&self.to_json())?),
            Format::Csv => write_csv(&self.columns, &self.text_rows(), out),
            Format::Human => write_aligned(&self.columns, &self.text_rows(), out),
        }
    }
}

pub fn write_csv(columns: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

pub fn write_aligned(columns: &[&str], rows: &[Vec<String>], out: &mut dyn Write) -> std::io::Result<()> {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(columns.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallcross::algebra::rat;

    fn sample() -> Table {
        let mut t = Table::new(vec!["d", "value"]);
        t.rows.push(vec![Cell::Int(1), Cell::Rational(rat(-7, 8))]);
        t.rows.push(vec![Cell::Int(2), Cell::Error("bad".into())]);
        t
    }

    #[test]
    fn json_rows_are_objects() {
        let v = sample().to_json();
        assert_eq!(v[0]["value"], "-7/8");
        assert_eq!(v[1]["value"]["error"], "bad");
        assert!(sample().has_errors());
    }

    #[test]
    fn human_columns_align() {
        let mut buf = Vec::new();
        sample().write(Format::Human, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("d  value"));
        assert_eq!(text.lines().nth(1), Some("1  -7/8"));
    }
}
