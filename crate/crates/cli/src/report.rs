//! Per-run metrics JSON, the aggregate summary JSON and the convergence CSV.
//!
//! Field order in the JSON documents is fixed by the struct definitions, so
//! identical experiments produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mfbench::metrics::{
    aggregate, cost_grid, median_curve, quantile, resample_trace, MetricsSummary,
    NormalizationMode, RunAssessment,
};
use mfbench::oracle::RunHistory;
use serde::{Deserialize, Serialize};

use crate::history_csv::format_real;

pub const CURVE_POINTS: usize = 101;

/// One finished repeat.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub seed: u64,
    pub history: RunHistory,
    pub assessment: RunAssessment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub benchmark_id: String,
    pub seed: u64,
    pub budget: f64,
    pub total_cost: f64,
    pub level_counts: Vec<usize>,
    pub terminated: bool,
    pub incumbent: Vec<f64>,
    pub f_incumbent: f64,
    pub e_x: f64,
    pub e_f: f64,
    pub e_t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_rmse: Option<f64>,
    pub normalization_mode: NormalizationMode,
}

impl RunMetrics {
    pub fn from_outcome(outcome: &RunOutcome, levels: usize) -> Self {
        let h = &outcome.history;
        let a = &outcome.assessment;
        Self {
            benchmark_id: h.benchmark_id.to_string(),
            seed: outcome.seed,
            budget: h.budget,
            total_cost: h.total_cost(),
            level_counts: h.level_counts(levels),
            terminated: h.terminated,
            incumbent: a.incumbent.clone(),
            f_incumbent: a.f_incumbent,
            e_x: a.report.e_x,
            e_f: a.report.e_f,
            e_t: a.report.e_t,
            e_rmse: a.report.e_rmse,
            normalization_mode: a.report.normalization_mode,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverSummary {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub e_x: f64,
    pub e_f: f64,
    pub e_t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_rmse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub benchmark_id: String,
    pub solver: SolverSummary,
    pub repeats: usize,
    pub base_seed: u64,
    pub normalization_mode: NormalizationMode,
    pub metrics: MetricsSummary,
    pub runs: Vec<RunSummary>,
}

impl Summary {
    pub fn build(
        benchmark_id: String,
        solver: SolverSummary,
        base_seed: u64,
        normalization_mode: NormalizationMode,
        outcomes: &[RunOutcome],
    ) -> mfbench::Result<Self> {
        let reports: Vec<_> = outcomes
            .iter()
            .map(|o| o.assessment.report.clone())
            .collect();
        Ok(Self {
            benchmark_id,
            solver,
            repeats: outcomes.len(),
            base_seed,
            normalization_mode,
            metrics: aggregate(&reports)?,
            runs: outcomes
                .iter()
                .map(|o| RunSummary {
                    seed: o.seed,
                    e_x: o.assessment.report.e_x,
                    e_f: o.assessment.report.e_f,
                    e_t: o.assessment.report.e_t,
                    e_rmse: o.assessment.report.e_rmse,
                })
                .collect(),
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Best-so-far level-1 values of every run at evenly spaced costs, with the
/// pointwise median and quartiles across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub cost: Vec<f64>,
    pub median: Vec<f64>,
    pub q1: Vec<f64>,
    pub q3: Vec<f64>,
    pub runs: Vec<(u64, Vec<f64>)>,
}

impl Convergence {
    pub fn build(budget: f64, outcomes: &[RunOutcome]) -> mfbench::Result<Self> {
        let cost = cost_grid(budget, CURVE_POINTS);
        let runs: Vec<(u64, Vec<f64>)> = outcomes
            .iter()
            .map(|o| (o.seed, resample_trace(&o.history.best_trace, &cost)))
            .collect();
        let curves: Vec<Vec<f64>> = runs.iter().map(|(_, c)| c.clone()).collect();
        let median = median_curve(&curves)?;
        let column_quantile = |q: f64| -> Vec<f64> {
            (0..cost.len())
                .map(|j| {
                    let mut col: Vec<f64> = curves.iter().map(|c| c[j]).collect();
                    col.sort_by(f64::total_cmp);
                    quantile(&col, q)
                })
                .collect()
        };
        Ok(Self {
            q1: column_quantile(0.25),
            q3: column_quantile(0.75),
            cost,
            median,
            runs,
        })
    }

    /// `cost,median,q1,q3,run_<seed>...`; cells before a run's first
    /// level-1 value are empty.
    pub fn to_csv(&self) -> String {
        let cell = |v: f64| {
            if v.is_finite() {
                format_real(v)
            } else {
                String::new()
            }
        };
        let mut out = String::from("cost,median,q1,q3");
        for (seed, _) in &self.runs {
            write!(out, ",run_{seed}").unwrap();
        }
        out.push('\n');
        for j in 0..self.cost.len() {
            write!(
                out,
                "{},{},{},{}",
                format_real(self.cost[j]),
                cell(self.median[j]),
                cell(self.q1[j]),
                cell(self.q3[j])
            )
            .unwrap();
            for (_, curve) in &self.runs {
                write!(out, ",{}", cell(curve[j])).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, head) = lines.next().ok_or("line 1: empty file")?;
        let columns: Vec<&str> = head.split(',').collect();
        if columns.len() < 4 || columns[..4] != ["cost", "median", "q1", "q3"] {
            return Err(format!("line 1: unexpected header `{head}`"));
        }
        let seeds = columns[4..]
            .iter()
            .map(|c| {
                c.strip_prefix("run_")
                    .and_then(|s| s.parse::<u64>().ok())
                    .ok_or(format!("line 1: bad run column `{c}`"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut table: Vec<Vec<f64>> = vec![Vec::new(); columns.len()];
        for (line, row) in lines {
            let fields: Vec<&str> = row.split(',').collect();
            if fields.len() != columns.len() {
                return Err(format!("line {line}: expected {} fields", columns.len()));
            }
            for (k, f) in fields.iter().enumerate() {
                let v = if f.is_empty() && k > 0 {
                    f64::INFINITY
                } else {
                    f.parse()
                        .map_err(|_| format!("line {line}: `{f}` is not a number"))?
                };
                table[k].push(v);
            }
        }
        let mut cols = table.into_iter();
        let mut next = || cols.next().unwrap();
        Ok(Self {
            cost: next(),
            median: next(),
            q1: next(),
            q3: next(),
            runs: seeds.into_iter().map(|s| (s, next())).collect(),
        })
    }
}
