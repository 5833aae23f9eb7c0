//! Evaluation histories as CSV:
//! `index,level,cost,cumulative_cost,off_budget,x_1,...,x_D,value`.
//!
//! Reals carry 17 significant digits so a history parses back to the same
//! bits.

use std::fmt::Write as _;

use mfbench::oracle::EvaluationRecord;
use mfbench::FidelityLevel;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HistoryError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("history has {actual} design columns, benchmark expects {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
}

pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn header(dim: usize) -> String {
    let mut h = String::from("index,level,cost,cumulative_cost,off_budget");
    for i in 1..=dim {
        write!(h, ",x_{i}").unwrap();
    }
    h.push_str(",value");
    h
}

pub fn write_history(records: &[EvaluationRecord], dim: usize) -> String {
    let mut out = header(dim);
    out.push('\n');
    for r in records {
        write!(
            out,
            "{},{},{},{},{}",
            r.index,
            r.level.index(),
            format_real(r.cost),
            format_real(r.cumulative_cost),
            r.off_budget
        )
        .unwrap();
        for x in &r.point {
            write!(out, ",{}", format_real(*x)).unwrap();
        }
        writeln!(out, ",{}", format_real(r.value)).unwrap();
    }
    out
}

/// Reads a history back. With `expected_dim`, a file with a different
/// number of design columns is rejected.
pub fn parse_history(
    text: &str,
    expected_dim: Option<usize>,
) -> Result<Vec<EvaluationRecord>, HistoryError> {
    let malformed = |line: usize, message: String| HistoryError::Malformed { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let Some((_, head)) = lines.next() else {
        return Err(malformed(1, "empty file, expected a header".into()));
    };
    let columns: Vec<&str> = head.split(',').collect();
    if columns.len() < 6 {
        return Err(malformed(
            1,
            format!("header has {} columns", columns.len()),
        ));
    }
    let dim = columns.len() - 6;
    if head != header(dim) {
        return Err(malformed(1, format!("unexpected header `{head}`")));
    }
    if let Some(expected) = expected_dim {
        if expected != dim {
            return Err(HistoryError::DimensionMismatch {
                expected,
                actual: dim,
            });
        }
    }

    let mut records = Vec::new();
    for (line, row) in lines {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != columns.len() {
            return Err(malformed(
                line,
                format!("expected {} fields, found {}", columns.len(), fields.len()),
            ));
        }
        let real = |k: usize| -> Result<f64, HistoryError> {
            fields[k].parse::<f64>().map_err(|_| {
                malformed(
                    line,
                    format!("`{}` in column {} is not a number", fields[k], columns[k]),
                )
            })
        };
        let index: usize = fields[0]
            .parse()
            .map_err(|_| malformed(line, format!("bad index `{}`", fields[0])))?;
        if index != records.len() {
            return Err(malformed(line, format!("index {index} out of sequence")));
        }
        let level = fields[1]
            .parse::<usize>()
            .ok()
            .and_then(|l| FidelityLevel::new(l).ok())
            .ok_or_else(|| malformed(line, format!("bad level `{}`", fields[1])))?;
        let off_budget = match fields[4] {
            "true" => true,
            "false" => false,
            other => return Err(malformed(line, format!("bad off_budget flag `{other}`"))),
        };
        let point = (0..dim)
            .map(|k| real(5 + k))
            .collect::<Result<Vec<_>, _>>()?;
        records.push(EvaluationRecord {
            index,
            level,
            point,
            value: real(5 + dim)?,
            cost: real(2)?,
            cumulative_cost: real(3)?,
            off_budget,
            timestamp: index as u64 + 1,
        });
    }
    Ok(records)
}
