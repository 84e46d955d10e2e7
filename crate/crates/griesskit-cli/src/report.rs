//! Output rendering: aligned text tables and deterministic JSON.
//!
//! JSON objects serialize with sorted keys (the default map behind
//! `serde_json::Value`), so identical inputs produce byte-identical
//! output in either format.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

use griesskit::exactnum::matrix::QFMatrix;
use griesskit::exactnum::QFElement;

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// The result of one subcommand: both renderings plus the verification
/// outcome that drives the exit code.
pub struct CommandOutput {
    pub text: String,
    pub json: Value,
    /// True when the command ran but a verification check failed.
    pub failed: bool,
}

/// Writes the selected rendering to `out`, or to stdout when absent.
pub fn emit(output: &CommandOutput, format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut rendered = match format {
        Format::Text => output.text.clone(),
        Format::Json => serde_json::to_string_pretty(&output.json)?,
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match out {
        Some(path) => fs::write(path, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    }
}

/// Joins pre-split rows into lines with columns padded to equal width.
pub fn align_rows(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let pad = if i + 1 < row.len() { widths[i] } else { 0 };
            line.push_str(&format!("{cell:<pad$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// One matrix as aligned text, each entry rendered exactly.
pub fn matrix_text(matrix: &QFMatrix) -> String {
    let rows: Vec<Vec<String>> = (0..matrix.rows())
        .map(|i| {
            (0..matrix.cols())
                .map(|j| matrix.get(i, j).to_string())
                .collect()
        })
        .collect();
    align_rows(&rows)
}

/// One matrix as a JSON array of arrays of exact-value strings.
pub fn matrix_json(matrix: &QFMatrix) -> Value {
    Value::Array(
        (0..matrix.rows())
            .map(|i| {
                Value::Array(
                    (0..matrix.cols())
                        .map(|j| Value::String(matrix.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// A coordinate vector as a JSON array of exact-value strings.
pub fn coords_json(coords: &[QFElement]) -> Value {
    Value::Array(
        coords
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}
