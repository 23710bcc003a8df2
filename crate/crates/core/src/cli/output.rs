//! Tables written as CSV with a `#` preamble, or as JSON `{meta, rows}`.
//!
//! Floating-point values carry 12 significant digits in both formats.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use super::config::Format;
use crate::error::{Error, Result};

/// Bumped whenever a column is renamed, removed or reordered.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    /// One row per record, columns in field order of the first record.
    pub fn from_records<T: Serialize>(records: &[T]) -> Result<Table> {
        let mut table = Table::default();
        for r in records {
            let Value::Object(obj) = serde_json::to_value(r).map_err(|e| Error::Io(e.to_string()))? else {
                return Err(Error::Io("table records must serialize to objects".into()));
            };
            if table.columns.is_empty() {
                table.columns = obj.keys().cloned().collect();
            }
            table.rows.push(
                table
                    .columns
                    .iter()
                    .map(|c| obj.get(c).cloned().unwrap_or(Value::Null))
                    .collect(),
            );
        }
        Ok(table)
    }
}

/// Run description recorded in every output file.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub command: &'static str,
    pub config: Value,
    pub tolerances: Value,
}

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.11e}").parse().unwrap_or(x)
    } else {
        x
    }
}

fn rounded(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        other => other.clone(),
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => format!("{x:.11e}"),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_table<W: Write>(table: &Table, meta: &Meta, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(table, meta, out),
        Format::Json => write_json(table, meta, out),
    }
}

fn write_csv<W: Write>(table: &Table, meta: &Meta, mut out: W) -> Result<()> {
    writeln!(out, "# {} {}", meta.tool, meta.version)?;
    writeln!(out, "# schema: {}", meta.schema)?;
    writeln!(out, "# command: {}", meta.command)?;
    writeln!(out, "# config: {}", meta.config)?;
    writeln!(out, "# tolerances: {}", meta.tolerances)?;
    let mut w = csv::Writer::from_writer(&mut out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&table.columns).map_err(io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(csv_field)).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<W: Write>(table: &Table, meta: &Meta, mut out: W) -> Result<()> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            Value::Object(
                table
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(rounded))
                    .collect::<Map<_, _>>(),
            )
        })
        .collect();
    let mut doc = Map::new();
    doc.insert(
        "meta".into(),
        serde_json::to_value(meta).map_err(|e| Error::Io(e.to_string()))?,
    );
    doc.insert("rows".into(), Value::Array(rows));
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc)).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Rec {
        name: &'static str,
        n: u32,
        x: f64,
        y: Option<f64>,
    }

    fn meta() -> Meta {
        Meta {
            tool: "qdinfo",
            version: "0",
            schema: SCHEMA_VERSION,
            command: "test",
            config: Value::Null,
            tolerances: Value::Null,
        }
    }

    #[test]
    fn csv_layout() {
        let t = Table::from_records(&[Rec {
            name: "a,b",
            n: 2,
            x: 1.0 / 3.0,
            y: None,
        }])
        .unwrap();
        let mut buf = Vec::new();
        write_table(&t, &meta(), Format::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert!(lines[..5].iter().all(|l| l.starts_with('#')));
        assert_eq!(lines[5], "name,n,x,y");
        assert_eq!(lines[6], "\"a,b\",2,3.33333333333e-1,");
    }

    #[test]
    fn json_rounds_to_twelve_digits() {
        let t = Table::from_records(&[Rec {
            name: "a",
            n: 2,
            x: 1.0 / 3.0,
            y: Some(2.0),
        }])
        .unwrap();
        let mut buf = Vec::new();
        write_table(&t, &meta(), Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"][0]["x"].as_f64().unwrap(), 0.333333333333);
        assert_eq!(v["rows"][0]["n"], 2);
        assert_eq!(v["meta"]["command"], "test");
    }
}
