use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A result table plus `key: value` metadata. CSV puts the metadata on
/// `#`-prefixed lines ahead of the header row.
#[derive(Clone, Debug, Default)]
pub struct Table {
    meta: Vec<(String, Value)>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn prepend_meta(&mut self, entries: Vec<(&str, Value)>) {
        let front = entries.into_iter().map(|(k, v)| (k.to_string(), v));
        self.meta.splice(0..0, front);
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {}", cell_text(v))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text))?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let meta: Map<String, Value> = self.meta.iter().cloned().collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().cloned())
                        .collect(),
                )
            })
            .collect();
        let doc = serde_json::json!({ "meta": meta, "columns": self.columns, "rows": rows });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Fixed six-decimal rendering so CSV floats do not depend on shortest-repr quirks.
pub fn real(x: f64) -> Value {
    Value::String(format!("{x:.6}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["a", "b"]);
        t.meta("p", 23).meta("class", "D0_D0m1");
        t.row(vec![1.into(), "x,y".into()]);
        t.row(vec![Value::Null, real(0.5)]);
        let mut buf = Vec::new();
        t.write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# p: 23\n# class: D0_D0m1\na,b\n1,\"x,y\"\n,0.500000\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(["a"]);
        t.meta("p", 5);
        t.row(vec![3.into()]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["p"], 5);
        assert_eq!(v["rows"][0]["a"], 3);
    }
}
