//! Budget-tracked evaluation gateway.
//!
//! Every solver query goes through a [`Run`]: it is validated, charged the
//! fidelity cost of its level, recorded, and refused once the next charge
//! would overrun the budget. The first refusal is terminal.

use serde::{Deserialize, Serialize};

use crate::benchmarks::{Benchmark, NoiseStream};
use crate::{BenchmarkId, BudgetLedger, DesignPoint, Error, FidelityLevel, Result};

/// Refusals tolerated after termination before the solver is declared stuck.
pub const REFUSAL_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationRecord {
    pub index: usize,
    pub level: FidelityLevel,
    pub point: Vec<f64>,
    pub value: f64,
    /// Zero for the off-budget instrumentation record.
    pub cost: f64,
    pub cumulative_cost: f64,
    /// Instrumentation evaluation of the incumbent, not charged.
    pub off_budget: bool,
    /// Position of the query among all calls made on the run.
    pub timestamp: u64,
}

/// Best level-1 value seen so far, recorded whenever it strictly improves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub cumulative_cost: f64,
    pub value: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunHistory {
    pub benchmark_id: BenchmarkId,
    pub seed: u64,
    pub budget: f64,
    pub records: Vec<EvaluationRecord>,
    pub best_trace: Vec<TracePoint>,
    /// Incumbent `x̂*`; absent when the run never evaluated level 1 and the
    /// solver reported nothing.
    pub incumbent: Option<Vec<f64>>,
    pub terminated: bool,
}

impl RunHistory {
    pub fn has_high_fidelity_evidence(&self) -> bool {
        self.incumbent.is_some()
    }

    pub fn charged_records(&self) -> impl Iterator<Item = &EvaluationRecord> {
        self.records.iter().filter(|r| !r.off_budget)
    }

    pub fn total_cost(&self) -> f64 {
        self.charged_records()
            .last()
            .map_or(0.0, |r| r.cumulative_cost)
    }

    /// Charged evaluations per fidelity level, index 0 being level 1.
    pub fn level_counts(&self, levels: usize) -> Vec<usize> {
        let mut counts = vec![0; levels];
        for r in self.charged_records() {
            counts[r.level.index() - 1] += 1;
        }
        counts
    }
}

/// One optimizer run against one benchmark.
#[derive(Debug)]
pub struct Run<'a> {
    benchmark: &'a Benchmark,
    seed: u64,
    ledger: BudgetLedger,
    noise: NoiseStream,
    records: Vec<EvaluationRecord>,
    best_trace: Vec<TracePoint>,
    terminated: bool,
    refusals: usize,
    calls: u64,
}

/// Opens a run with a fresh ledger of the benchmark's budget and a noise
/// stream derived from `seed`.
pub fn open_run(benchmark: &Benchmark, seed: u64) -> Run<'_> {
    Run::open(benchmark, seed)
}

impl<'a> Run<'a> {
    pub fn open(benchmark: &'a Benchmark, seed: u64) -> Self {
        Self {
            benchmark,
            seed,
            ledger: BudgetLedger::new(benchmark.spec().budget)
                .expect("tabulated budgets are positive"),
            noise: NoiseStream::from_seed(seed),
            records: Vec::new(),
            best_trace: Vec::new(),
            terminated: false,
            refusals: 0,
            calls: 0,
        }
    }

    pub fn benchmark(&self) -> &'a Benchmark {
        self.benchmark
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ledger(&self) -> &BudgetLedger {
        &self.ledger
    }

    pub fn records(&self) -> &[EvaluationRecord] {
        &self.records
    }

    pub fn best(&self) -> Option<&TracePoint> {
        self.best_trace.last()
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// Evaluates `f_level(x)` and charges its cost.
    ///
    /// Invalid levels or points are rejected without charge. Once a charge
    /// would overrun the budget the run terminates and this and every later
    /// call return [`Error::BudgetExhausted`]; after [`REFUSAL_LIMIT`] such
    /// refusals the call fails with [`Error::RunawaySolver`].
    pub fn query(&mut self, level: FidelityLevel, x: &[f64]) -> Result<f64> {
        self.calls += 1;
        let cost = self.benchmark.cost(level)?;
        if self.terminated {
            return Err(self.refuse(cost));
        }
        self.benchmark.spec().bounds.check(x)?;
        if !self.ledger.can_afford(cost)? {
            self.terminated = true;
            return Err(self.refuse(cost));
        }
        let value = self.benchmark.evaluate(level, x, Some(&mut self.noise))?;
        self.ledger.charge(cost)?;
        let cumulative_cost = self.ledger.spent();
        self.records.push(EvaluationRecord {
            index: self.records.len(),
            level,
            point: x.to_vec(),
            value,
            cost,
            cumulative_cost,
            off_budget: false,
            timestamp: self.calls,
        });
        if level.is_highest() && self.best().is_none_or(|b| value < b.value) {
            self.best_trace.push(TracePoint {
                cumulative_cost,
                value,
                point: x.to_vec(),
            });
        }
        Ok(value)
    }

    /// Like [`Run::query`], mapping the budget refusal to `Ok(None)`.
    pub fn try_query(&mut self, level: FidelityLevel, x: &[f64]) -> Result<Option<f64>> {
        match self.query(level, x) {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExhausted { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn refuse(&mut self, cost: f64) -> Error {
        self.refusals += 1;
        if self.refusals > REFUSAL_LIMIT {
            return Error::RunawaySolver {
                refusals: self.refusals,
            };
        }
        Error::BudgetExhausted {
            spent: self.ledger.spent(),
            total: self.ledger.total(),
            cost,
        }
    }

    /// Closes the run. The incumbent is the solver's report, or the last
    /// best-trace point when the solver reports none. When an incumbent
    /// exists, one uncharged, noise-free level-1 evaluation of it is
    /// appended and flagged `off_budget`.
    pub fn finalize(self, reported: Option<DesignPoint>) -> Result<RunHistory> {
        let incumbent = match reported {
            Some(p) => {
                self.benchmark.spec().bounds.check(p.as_slice())?;
                Some(p.into_inner())
            }
            None => self.best().map(|b| b.point.clone()),
        };
        let mut records = self.records;
        if let Some(x) = &incumbent {
            let value = self
                .benchmark
                .evaluate_noise_free(FidelityLevel::HIGHEST, x)?;
            records.push(EvaluationRecord {
                index: records.len(),
                level: FidelityLevel::HIGHEST,
                point: x.clone(),
                value,
                cost: 0.0,
                cumulative_cost: self.ledger.spent(),
                off_budget: true,
                timestamp: self.calls + 1,
            });
        }
        Ok(RunHistory {
            benchmark_id: self.benchmark.id(),
            seed: self.seed,
            budget: self.ledger.total(),
            records,
            best_trace: self.best_trace,
            incumbent,
            terminated: self.terminated,
        })
    }
}
