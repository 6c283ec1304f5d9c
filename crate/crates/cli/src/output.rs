//! CSV and JSON emission.
//!
//! CSV carries `#`-prefixed metadata lines (version, quantity, seed, spec
//! echo), then the column header, then rows, then an optional oracle-check
//! trailer. Numbers print with 17 significant digits so the data round-trips
//! bit-exactly through text.

use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;

use crate::spec::SweepSpec;

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(&'static str),
    Empty,
}

/// A finished sweep table.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub oracle_check: Option<OracleCheckSummary>,
}

/// Trailer describing the seeded oracle re-evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OracleCheckSummary {
    pub fraction: f64,
    pub sampled: usize,
    pub max_abs_deviation: f64,
}

/// 17-significant-digit round-trip float formatting.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(spec: &SweepSpec, table: &Table, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# squeezelab {}", crate::VERSION)?;
    writeln!(out, "# quantity: {}", spec.quantity.name())?;
    writeln!(out, "# seed: {}", spec.seed)?;
    writeln!(
        out,
        "# spec: {}",
        serde_json::to_string(spec).context("echoing spec")?
    )?;
    writeln!(out, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let mut first = true;
        for cell in row {
            if !first {
                write!(out, ",")?;
            }
            first = false;
            match cell {
                Cell::Num(v) => write!(out, "{}", fmt_f64(*v))?,
                Cell::Int(v) => write!(out, "{v}")?,
                Cell::Text(t) => write!(out, "{t}")?,
                Cell::Empty => {}
            }
        }
        writeln!(out)?;
    }
    if let Some(check) = &table.oracle_check {
        writeln!(
            out,
            "# oracle_check: fraction={} sampled={} max_abs_deviation={}",
            fmt_f64(check.fraction),
            check.sampled,
            fmt_f64(check.max_abs_deviation)
        )?;
    }
    Ok(())
}

pub fn write_json(spec: &SweepSpec, table: &Table, out: &mut dyn Write) -> Result<()> {
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = table
        .rows
        .iter()
        .map(|row| {
            table
                .columns
                .iter()
                .zip(row)
                .map(|(col, cell)| {
                    let value = match cell {
                        Cell::Num(v) => serde_json::json!(v),
                        Cell::Int(v) => serde_json::json!(v),
                        Cell::Text(t) => serde_json::json!(t),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    (col.to_string(), value)
                })
                .collect()
        })
        .collect();

    let doc = serde_json::json!({
        "metadata": {
            "tool": "squeezelab",
            "version": crate::VERSION,
            "quantity": spec.quantity.name(),
            "seed": spec.seed,
            "spec": spec,
            "oracle_check": table.oracle_check,
        },
        "columns": table.columns,
        "rows": rows,
    });
    serde_json::to_writer_pretty(&mut *out, &doc).context("writing json")?;
    writeln!(out)?;
    Ok(())
}

/// Writes to a file path or stdout (`-`).
pub fn emit(spec: &SweepSpec, table: &Table, output: &str) -> Result<()> {
    let mut sink: Box<dyn Write> = if output == "-" {
        Box::new(std::io::BufWriter::new(std::io::stdout()))
    } else {
        Box::new(std::io::BufWriter::new(
            std::fs::File::create(output)
                .with_context(|| format!("creating output file {output}"))?,
        ))
    };
    match spec.output_format {
        crate::spec::OutputFormat::Csv => write_csv(spec, table, &mut sink)?,
        crate::spec::OutputFormat::Json => write_json(spec, table, &mut sink)?,
    }
    sink.flush()?;
    Ok(())
}
