//! The subcommands, returning their standard output as text.

use std::path::Path;

use mfbench::benchmarks::{all_benchmarks, get_benchmark, Benchmark, NoiseStream};
use mfbench::metrics::{assess_records, NormalizationMode, RunAssessment};
use mfbench::{Error, FidelityLevel, OptimumLocation};
use serde::Serialize;

use crate::history_csv::{parse_history, HistoryError};
use crate::runner::{run_experiment, ExperimentOutput};
use crate::{CliError, ExperimentConfig};

/// Six decimals, or the exact value when it carries seven or eight.
fn coordinate(v: f64) -> String {
    let short = format!("{v}");
    let decimals = short.split_once('.').map_or(0, |(_, d)| d.len());
    if (6..=8).contains(&decimals) {
        short
    } else {
        format!("{v:.6}")
    }
}

fn tuple(values: &[f64], fmt: fn(f64) -> String) -> String {
    format!(
        "({})",
        values
            .iter()
            .map(|v| fmt(*v))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

pub fn describe_optimum(location: &OptimumLocation) -> String {
    match location {
        OptimumLocation::Point(p) => tuple(p, coordinate),
        OptimumLocation::FirstCoordinate(v) => format!("x_1 = {}", coordinate(*v)),
        OptimumLocation::Hyperbolas(c) => format!(
            "x_1 x_2 in {{{}}}",
            c.iter()
                .map(|v| coordinate(*v))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

#[derive(Debug, Serialize)]
struct ListRow {
    id: String,
    dimension: usize,
    budget: f64,
    costs: Vec<f64>,
    optimum: OptimumLocation,
    f_star: f64,
    f_min: f64,
    f_max: f64,
}

pub fn list(json: bool) -> String {
    let benchmarks = all_benchmarks();
    if json {
        let rows: Vec<ListRow> = benchmarks
            .iter()
            .map(|b| {
                let s = b.spec();
                ListRow {
                    id: s.id.to_string(),
                    dimension: s.dimension,
                    budget: s.budget,
                    costs: s.fidelity_costs.clone(),
                    optimum: s.reference.optimum.clone(),
                    f_star: s.reference.f_star,
                    f_min: s.reference.f_min,
                    f_max: s.reference.f_max,
                }
            })
            .collect();
        return crate::report::to_json(&rows);
    }
    let header = ["ID", "D", "budget", "costs", "x*", "f*", "f_min", "f_max"].map(String::from);
    let mut rows = vec![header.to_vec()];
    for b in &benchmarks {
        let s = b.spec();
        rows.push(vec![
            s.id.to_string(),
            s.dimension.to_string(),
            s.budget.to_string(),
            tuple(&s.fidelity_costs, |v| v.to_string()),
            describe_optimum(&s.reference.optimum),
            s.reference.f_star.to_string(),
            s.reference.f_min.to_string(),
            s.reference.f_max.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|k| rows.iter().map(|r| r[k].chars().count()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// One uncharged evaluation. Noisy benchmarks draw from the stream a run
/// with the same seed would use.
pub fn evaluate(id: &str, level: usize, x: &[f64], seed: Option<u64>) -> Result<String, CliError> {
    let benchmark = get_benchmark(id).map_err(usage)?;
    let level = FidelityLevel::new(level).map_err(usage)?;
    let cost = benchmark.cost(level).map_err(usage)?;
    let value = if benchmark.is_noisy() {
        let seed = seed.ok_or_else(|| {
            CliError::Usage(format!(
                "{} is noisy; pass --seed to evaluate it",
                benchmark.id()
            ))
        })?;
        benchmark.evaluate(level, x, Some(&mut NoiseStream::from_seed(seed)))
    } else {
        benchmark.evaluate_noise_free(level, x)
    }
    .map_err(usage)?;
    Ok(format!("value {value}\ncost {cost}\n"))
}

pub fn assess_history(
    benchmark: &Benchmark,
    text: &str,
    mode: NormalizationMode,
) -> Result<RunAssessment, CliError> {
    let records = parse_history(text, Some(benchmark.dim())).map_err(|e| match e {
        HistoryError::Malformed { .. } | HistoryError::DimensionMismatch { .. } => {
            CliError::Config(e.to_string())
        }
    })?;
    if let Some(r) = records
        .iter()
        .find(|r| r.level.index() > benchmark.levels())
    {
        return Err(CliError::Config(format!(
            "record {} has level {} but {} has {} levels",
            r.index,
            r.level,
            benchmark.id(),
            benchmark.levels()
        )));
    }
    assess_records(benchmark, &records, mode).map_err(|e| CliError::Runtime(e.to_string()))
}

pub fn metrics(history: &Path, id: &str, mode: NormalizationMode) -> Result<String, CliError> {
    let benchmark = get_benchmark(id).map_err(usage)?;
    let text = std::fs::read_to_string(history)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", history.display())))?;
    let assessment = assess_history(&benchmark, &text, mode)?;
    Ok(crate::report::to_json(&assessment))
}

pub fn run(config: &ExperimentConfig, threads: Option<usize>) -> Result<String, CliError> {
    let ExperimentOutput { summary, files } = run_experiment(config, threads)?;
    let m = &summary.metrics;
    Ok(format!(
        "{} with {}: {} repeats, {} files in {}\nmedian e_x {:.6e}  e_f {:.6e}  e_t {:.6e}\n",
        summary.benchmark_id,
        summary.solver.name,
        summary.repeats,
        files.len(),
        config.output_dir.display(),
        m.e_x.median,
        m.e_f.median,
        m.e_t.median
    ))
}
