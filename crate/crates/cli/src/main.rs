use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mfbench::metrics::NormalizationMode;
use mfbench::solvers::SolverConfig;
use mfbench::BenchmarkId;
use mfbench_cli::config::parse_param;
use mfbench_cli::{commands, CliError, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "mfbench",
    version,
    about = "Multifidelity optimization benchmark runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lists the benchmark instances with their budgets and reference values
    List {
        #[arg(long)]
        json: bool,
    },
    /// Evaluates one benchmark at one point without charging a budget
    Evaluate {
        id: String,
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Comma-separated coordinates
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
        /// Noise seed, required for noisy benchmarks
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs repeated seeded experiments and writes reports
    Run(RunArgs),
    /// Recomputes the metrics of a stored history
    Metrics {
        #[arg(long)]
        history: PathBuf,
        #[arg(long)]
        benchmark: String,
        #[arg(long, default_value = "table")]
        normalization: NormalizationMode,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment file; other flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    benchmark: Option<BenchmarkId>,
    #[arg(long)]
    solver: Option<String>,
    /// Solver parameter as key=value, repeatable
    #[arg(long = "param")]
    params: Vec<String>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    normalization: Option<NormalizationMode>,
    /// Worker threads, defaults to the number of logical processors
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn into_config(self) -> Result<(ExperimentConfig, Option<usize>), CliError> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => {
                let missing =
                    |flag: &str| CliError::Usage(format!("run needs --{flag} or --config"));
                ExperimentConfig::new(
                    self.benchmark.ok_or_else(|| missing("benchmark"))?,
                    SolverConfig::new(
                        self.solver
                            .clone()
                            .unwrap_or_else(|| "random-search".into()),
                    ),
                    self.output.clone().ok_or_else(|| missing("output"))?,
                )
            }
        };
        if let Some(b) = self.benchmark {
            config.benchmark_id = b;
        }
        if let Some(s) = self.solver {
            if s != config.solver.name {
                config.solver = SolverConfig::new(s);
            }
        }
        for p in &self.params {
            let (key, value) = parse_param(p)?;
            config.solver.parameters.insert(key, value);
        }
        if let Some(r) = self.repeats {
            config.repeats = r;
        }
        if let Some(s) = self.seed {
            config.base_seed = s;
        }
        if let Some(o) = self.output {
            config.output_dir = o;
        }
        if let Some(n) = self.normalization {
            config.normalization_mode = n;
        }
        Ok((config, self.threads))
    }
}

fn dispatch(command: Command) -> Result<String, CliError> {
    match command {
        Command::List { json } => Ok(commands::list(json)),
        Command::Evaluate { id, level, x, seed } => commands::evaluate(&id, level, &x, seed),
        Command::Run(args) => {
            let (config, threads) = args.into_config()?;
            commands::run(&config, threads)
        }
        Command::Metrics {
            history,
            benchmark,
            normalization,
        } => commands::metrics(&history, &benchmark, normalization),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
