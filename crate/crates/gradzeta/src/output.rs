//! Rendering of command results as a table, JSON or CSV.

use std::io::Write;

use anyhow::Result;
use serde_json::{Map, Value};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A computed value disagrees with a reference value.
    Mismatch,
}

/// What a command hands back: human text, a JSON body and CSV rows.
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub text: Vec<String>,
    pub json: Map<String, Value>,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, csv_header: Vec<&'static str>) -> Self {
        Report {
            command,
            status: Status::Ok,
            text: Vec::new(),
            json: Map::new(),
            csv_header,
            csv_rows: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.json.insert(key.into(), v.into());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.csv_rows.push(cells);
    }

    pub fn mismatch_if(&mut self, cond: bool) {
        if cond {
            self.status = Status::Mismatch;
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Table => {
                for l in &self.text {
                    writeln!(out, "{l}")?;
                }
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema_version".into(), SCHEMA_VERSION.into());
                m.insert("command".into(), self.command.into());
                m.insert(
                    "status".into(),
                    if self.status == Status::Ok {
                        "ok"
                    } else {
                        "mismatch"
                    }
                    .into(),
                );
                m.extend(self.json.clone());
                serde_json::to_writer_pretty(&mut *out, &Value::Object(m))?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.csv_header)?;
                for r in &self.csv_rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

/// Rows of a plain aligned table.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            width[i] = width[i].max(c.len());
        }
    }
    let fmt = |cells: Vec<&str>| {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:>w$}", w = width[i]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = vec![fmt(header.to_vec())];
    for r in rows {
        out.push(fmt(r.iter().map(String::as_str).collect()));
    }
    out
}
