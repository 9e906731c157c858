use std::io::Write;

use lgbound_core::scans::{Cell, ScanResult, ScanSummary, Tabular};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

/// A finished table: column names, rows, summary and the worst truncation
/// error met while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Column names.
    pub columns: Vec<&'static str>,
    /// One row per record, in column order.
    pub rows: Vec<Vec<Cell>>,
    /// Column extremes plus command-specific scalars.
    pub summary: ScanSummary,
    /// Largest truncation error, if the command uses truncated series.
    pub quality: Option<f64>,
}

impl Report {
    /// Report over plain records.
    pub fn from_records<R: Tabular>(records: &[R]) -> Self {
        Report {
            columns: R::columns(),
            rows: records.iter().map(Tabular::cells).collect(),
            summary: ScanSummary::of(records),
            quality: None,
        }
    }

    /// Report over a scan result, keeping its summary extras.
    pub fn from_scan<R: Tabular>(scan: &ScanResult<R>) -> Self {
        Report {
            columns: R::columns(),
            rows: scan.records.iter().map(Tabular::cells).collect(),
            summary: scan.summary.clone(),
            quality: None,
        }
    }

    /// Attach a summary scalar.
    pub fn extra(mut self, name: &str, value: impl Into<Cell>) -> Self {
        self.summary.extras.push((name.to_string(), value.into()));
        self
    }

    /// Record the worst truncation error.
    pub fn with_quality(mut self, quality: f64) -> Self {
        self.quality = Some(self.quality.map_or(quality, |q| q.max(quality)));
        self
    }

    /// Encode in `format`.
    pub fn render(&self, format: Format, config: &RunConfig) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(config),
        }
    }

    /// Header plus rows, 15 significant digits.
    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(cell_text)).map_err(io_err)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    /// `{"config": .., "records": [..], "summary": {..}}`.
    pub fn to_json(&self, config: &RunConfig) -> Result<Vec<u8>, CliError> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), cell_json(v))).collect();
                Value::Object(obj)
            })
            .collect();
        let mut columns = Map::new();
        for c in &self.summary.columns {
            columns.insert(
                c.column.to_string(),
                json!({"min": finite(c.min), "argmin": c.argmin, "max": finite(c.max), "argmax": c.argmax}),
            );
        }
        let mut summary = Map::new();
        summary.insert("records".into(), json!(self.rows.len()));
        summary.insert("columns".into(), Value::Object(columns));
        for (k, v) in &self.summary.extras {
            summary.insert(k.clone(), cell_json(v));
        }
        if let Some(q) = self.quality {
            summary.insert("max_truncation_error".into(), finite(q));
        }
        let doc = json!({
            "config": serde_json::to_value(config).map_err(|e| CliError::Config(e.to_string()))?,
            "records": records,
            "summary": summary,
        });
        let mut out = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Config(e.to_string()))?;
        out.push(b'\n');
        Ok(out)
    }
}

fn io_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn finite(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn cell_json(cell: &Cell) -> Value {
    match cell {
        Cell::Float(v) => finite(*v),
        Cell::Int(v) => json!(v),
        Cell::Bool(v) => json!(v),
        Cell::Text(s) => json!(s),
        Cell::Missing => Value::Null,
    }
}

/// CSV text of a cell; missing values are empty fields.
pub fn cell_text(cell: &Cell) -> String {
    match cell {
        Cell::Float(v) => format_float(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Missing => String::new(),
    }
}

/// Shortest rendering of `v` rounded to 15 significant digits: plain
/// decimal for exponents in `[-5, 15)`, scientific otherwise.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        trim_fraction(format!("{:.*}", (14 - exp) as usize, v))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        let keep = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(keep);
    }
    s
}

/// Write `bytes` to the file, or to stdout when `path` is `None`.
pub fn emit(bytes: &[u8], path: Option<&std::path::Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(CliError::Io),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(CliError::Io)
        }
    }
}
