use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::numfmt::sci17;
use crate::units::PhysicalConstants;

use super::config::{OutputFormat, ScenarioConfig};
use super::Scenario;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => sci17(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        self.rows
            .iter()
            .map(|r| match r[i] {
                Cell::Num(v) => Some(v),
                Cell::Int(v) => Some(v as f64),
                Cell::Text(_) => None,
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write_json<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut writer, &self.to_json())?;
        writeln!(writer)?;
        Ok(())
    }

    pub fn write<W: Write>(&self, writer: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(writer),
            OutputFormat::Json => self.write_json(writer),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub table: Table,
    pub summary: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    scenario: &'a str,
    version: &'a str,
    config: &'a ScenarioConfig,
    constants: &'a PhysicalConstants,
    summary: &'a BTreeMap<String, Value>,
    warnings: &'a [String],
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Writes the table and its `.meta.json` sidecar; returns both paths.
pub fn write_outputs(
    scenario: Scenario,
    config: &ScenarioConfig,
    result: &ScenarioResult,
) -> Result<(PathBuf, PathBuf)> {
    let out = config.output_path(scenario);
    let file = std::io::BufWriter::new(std::fs::File::create(&out)?);
    result.table.write(file, config.output.format)?;
    let meta = sidecar_path(&out);
    let sidecar = Sidecar {
        scenario: scenario.name(),
        version: env!("CARGO_PKG_VERSION"),
        config,
        constants: &config.constants(),
        summary: &result.summary,
        warnings: &result.warnings,
    };
    let mut w = std::io::BufWriter::new(std::fs::File::create(&meta)?);
    serde_json::to_writer_pretty(&mut w, &sidecar)?;
    writeln!(w)?;
    w.flush()?;
    Ok((out, meta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(&["t", "label", "count"]);
        t.push(vec![Cell::Num(0.5), Cell::Text("a".into()), Cell::Int(3)]);
        t.push(vec![Cell::Num(-1.25e-3), Cell::Text("b".into()), Cell::Int(-1)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        table().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "t,label,count\n5.0000000000000000e-01,a,3\n-1.2500000000000000e-03,b,-1\n"
        );
    }

    #[test]
    fn json_layout() {
        let v = table().to_json();
        assert_eq!(v[1]["t"], Value::from(-1.25e-3));
        assert_eq!(v[0]["label"], Value::from("a"));
        assert_eq!(v.as_array().unwrap().len(), 2);
        let mut t = Table::new(&["x"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        assert_eq!(t.to_json()[0]["x"], Value::Null);
    }

    #[test]
    fn column_extraction() {
        assert_eq!(table().column_f64("count").unwrap(), vec![3.0, -1.0]);
        assert!(table().column_f64("label").is_none());
        assert!(table().column_f64("missing").is_none());
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(
            sidecar_path(Path::new("out/a.csv")),
            PathBuf::from("out/a.csv.meta.json")
        );
    }
}
