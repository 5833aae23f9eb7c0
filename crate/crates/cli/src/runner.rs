//! Repeated seeded runs on a worker pool, with all outputs staged and then
//! moved into the output directory together.

use std::fs;
use std::path::{Path, PathBuf};

use mfbench::benchmarks::Benchmark;
use mfbench::metrics::{assess_records, NormalizationMode};
use mfbench::oracle::open_run;
use mfbench::solvers::{solve, SolverConfig};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::history_csv::write_history;
use crate::report::{to_json, Convergence, RunMetrics, RunOutcome, SolverSummary, Summary};
use crate::CliError;

/// Setting this to anything but `0` or the empty string runs repeats on a
/// single thread.
pub const SINGLE_THREAD_ENV: &str = "MFBENCH_SINGLE_THREAD";

pub fn worker_count(requested: Option<usize>) -> usize {
    let forced = std::env::var(SINGLE_THREAD_ENV).is_ok_and(|v| !v.is_empty() && v != "0");
    if forced {
        1
    } else {
        requested
            .filter(|&n| n > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

pub fn run_single(
    benchmark: &Benchmark,
    solver: &SolverConfig,
    seed: u64,
    mode: NormalizationMode,
) -> mfbench::Result<RunOutcome> {
    let mut run = open_run(benchmark, seed);
    let incumbent = solve(&solver.clone().with_seed(seed), &mut run)?;
    let history = run.finalize(incumbent)?;
    let assessment = assess_records(benchmark, &history.records, mode)?;
    Ok(RunOutcome {
        seed,
        history,
        assessment,
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub summary: Summary,
    pub files: Vec<PathBuf>,
}

pub fn run_experiment(
    config: &ExperimentConfig,
    threads: Option<usize>,
) -> Result<ExperimentOutput, CliError> {
    let solver = config.validate()?;
    let benchmark = Benchmark::from(config.benchmark_id);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(threads))
        .build()
        .map_err(|e| CliError::Runtime(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<RunOutcome> = pool
        .install(|| {
            (0..config.repeats)
                .into_par_iter()
                .map(|r| {
                    let seed = config.seed_for(r);
                    run_single(&benchmark, &solver, seed, config.normalization_mode)
                        .map_err(|e| format!("repeat {r} (seed {seed}): {e}"))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(CliError::Runtime)?;

    let runtime = |e: mfbench::Error| CliError::Runtime(e.to_string());
    let summary = Summary::build(
        config.benchmark_id.to_string(),
        SolverSummary {
            name: solver.name.clone(),
            parameters: solver.parameters.clone(),
        },
        config.base_seed,
        config.normalization_mode,
        &outcomes,
    )
    .map_err(runtime)?;
    let convergence = Convergence::build(benchmark.spec().budget, &outcomes).map_err(runtime)?;

    let mut files = Vec::with_capacity(2 * outcomes.len() + 2);
    for o in &outcomes {
        files.push((
            format!("history_{}.csv", o.seed),
            write_history(&o.history.records, benchmark.dim()),
        ));
        files.push((
            format!("metrics_{}.json", o.seed),
            to_json(&RunMetrics::from_outcome(o, benchmark.levels())),
        ));
    }
    files.push(("summary.json".into(), to_json(&summary)));
    files.push(("convergence.csv".into(), convergence.to_csv()));
    let files = write_all(&config.output_dir, &files)?;
    Ok(ExperimentOutput { summary, files })
}

/// Writes every file into a staging directory inside `dir` and then renames
/// them into place. On failure nothing new is left behind.
pub fn write_all(dir: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>, CliError> {
    let io = |what: &str, path: &Path, e: std::io::Error| {
        CliError::Runtime(format!("{what} {}: {e}", path.display()))
    };
    fs::create_dir_all(dir).map_err(|e| io("cannot create", dir, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".mfbench-staging-")
        .tempdir_in(dir)
        .map_err(|e| io("cannot stage in", dir, e))?;
    for (name, content) in files {
        let path = staging.path().join(name);
        fs::write(&path, content).map_err(|e| io("cannot write", &path, e))?;
    }
    let mut placed = Vec::with_capacity(files.len());
    for (name, _) in files {
        let target = dir.join(name);
        if let Err(e) = fs::rename(staging.path().join(name), &target) {
            for p in &placed {
                let _ = fs::remove_file(p);
            }
            return Err(io("cannot move output to", &target, e));
        }
        placed.push(target);
    }
    Ok(placed)
}
