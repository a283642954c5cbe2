use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn as_f64(self) -> f64 {
        match self {
            Cell::Int(i) => i as f64,
            Cell::Real(x) => x,
        }
    }

    fn to_csv(self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) if x.is_nan() => "nan".into(),
            Cell::Real(x) if x.is_infinite() => if x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Real(x) => format!("{x:.16e}"),
        }
    }

    fn to_json(self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) if x.is_finite() => json!(x),
            Cell::Real(_) => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Rectangular result table with ordered `key: value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
    metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Sets a metadata entry. Values are single-line; newlines are replaced
    /// by spaces.
    pub fn set_meta(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into().replace(['\n', '\r'], " ");
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_string(), value)),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::LengthMismatch {
                left: row.len(),
                right: self.columns.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of column `name` as `f64`.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64()).collect())
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Metadata as `# key: value` lines, then the header and rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_csv()).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    /// `{"metadata": {...}, "columns": [...], "rows": [[...], ...]}` with
    /// non-finite reals written as `null`.
    pub fn to_json(&self) -> String {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| c.to_json()).collect()))
            .collect();
        let doc = json!({ "metadata": metadata, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    /// Parses the CSV layout written by [`ResultTable::to_csv`]. Fields
    /// without a decimal point or exponent parse as integers.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let mut metadata = Vec::new();
        let header = loop {
            let line = lines.next().ok_or_else(|| Error::Config("CSV has no header".into()))?;
            match line.strip_prefix("# ") {
                Some(meta) => {
                    let (k, v) = meta
                        .split_once(": ")
                        .ok_or_else(|| Error::Config(format!("bad metadata line '{line}'")))?;
                    metadata.push((k.to_string(), v.to_string()));
                }
                None => break line,
            }
        };
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.is_empty()) {
            let row = line
                .split(',')
                .map(parse_cell)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Config(format!("bad value on data row {}", i + 1)))?;
            if row.len() != columns.len() {
                return Err(Error::Config(format!(
                    "data row {} has {} fields, header has {}",
                    i + 1,
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        Ok(Self {
            columns,
            rows,
            metadata,
        })
    }

    /// Parses the JSON layout written by [`ResultTable::to_json`].
    pub fn parse_json(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Config(format!("result JSON: {msg}"));
        let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let metadata = doc["metadata"]
            .as_object()
            .ok_or_else(|| bad("missing metadata"))?
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.as_str().ok_or_else(|| bad("metadata must be strings"))?.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let columns = doc["columns"]
            .as_array()
            .ok_or_else(|| bad("missing columns"))?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or_else(|| bad("column names must be strings")))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for r in doc["rows"].as_array().ok_or_else(|| bad("missing rows"))? {
            let r = r.as_array().ok_or_else(|| bad("rows must be arrays"))?;
            if r.len() != columns.len() {
                return Err(bad("ragged row"));
            }
            let row = r
                .iter()
                .map(|v| match v {
                    Value::Null => Ok(Cell::Real(f64::NAN)),
                    Value::Number(n) => Ok(n.as_i64().map_or_else(|| Cell::Real(n.as_f64().unwrap()), Cell::Int)),
                    _ => Err(bad("cells must be numbers or null")),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Self {
            columns,
            rows,
            metadata,
        })
    }

    /// Detects the format from the first non-space character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_csv(text)
        }
    }
}

fn parse_cell(field: &str) -> Option<Cell> {
    let is_real = field.contains(['.', 'e', 'E']) || matches!(field, "nan" | "inf" | "-inf");
    if is_real {
        f64::from_str(field).ok().map(Cell::Real)
    } else {
        i64::from_str(field).ok().map(Cell::Int)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new(&["m", "x"]);
        t.set_meta("seed", "3");
        t.set_meta("note", "two\nlines");
        t.push_row(vec![Cell::Int(8), Cell::Real(0.1)]).unwrap();
        t.push_row(vec![Cell::Int(16), Cell::Real(f64::INFINITY)]).unwrap();
        t.push_row(vec![Cell::Int(32), Cell::Real(-1.5e-300)]).unwrap();
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# seed: 3");
        assert_eq!(lines[1], "# note: two lines");
        assert_eq!(lines[2], "m,x");
        assert_eq!(lines[3], "8,1.0000000000000001e-1");
        assert_eq!(lines[4], "16,inf");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = sample();
        let back = ResultTable::parse_csv(&t.to_csv()).unwrap();
        assert_eq!(back, t);
        let mut t = ResultTable::new(&["v"]);
        for x in [std::f64::consts::PI, 1.0 / 3.0, 6.02e23, 5e-324] {
            t.push_row(vec![Cell::Real(x)]).unwrap();
        }
        assert_eq!(ResultTable::parse(&t.to_csv()).unwrap(), t);
    }

    #[test]
    fn json_round_trip() {
        let t = sample();
        let text = t.to_json();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["rows"][1][1], Value::Null);
        assert_eq!(doc["metadata"]["seed"], "3");
        let back = ResultTable::parse(&text).unwrap();
        assert_eq!(back.columns(), t.columns());
        assert_eq!(back.rows()[0], t.rows()[0]);
        assert!(back.rows()[1][1].as_f64().is_nan());
        assert_eq!(back.meta("seed"), Some("3"));
    }

    #[test]
    fn header_without_rows() {
        let t = ResultTable::new(&["a", "b"]);
        assert_eq!(t.to_csv(), "a,b\n");
        assert_eq!(ResultTable::parse_csv("a,b\n").unwrap().rows().len(), 0);
    }

    #[test]
    fn ragged_rows_rejected() {
        let mut t = ResultTable::new(&["a", "b"]);
        assert!(t.push_row(vec![Cell::Int(1)]).is_err());
        assert!(ResultTable::parse_csv("a,b\n1\n").is_err());
        assert!(ResultTable::parse_csv("a,b\n1,x\n").is_err());
    }

    #[test]
    fn column_lookup() {
        let t = sample();
        assert_eq!(t.column("m").unwrap(), vec![8.0, 16.0, 32.0]);
        assert!(t.column("zz").is_none());
    }
}
