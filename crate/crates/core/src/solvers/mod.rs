//! Baseline optimizers driving the [`oracle`](crate::oracle).
//!
//! These are yardsticks for exercising the harness, not contributions:
//!
//! * `random-search`: uniform draws at one fidelity level until the budget
//!   is refused; the incumbent is the best draw.
//! * `lhs-pattern`: a Latin hypercube of `initial_fraction * budget` level-1
//!   points (or the box center when the fraction is 0), then compass search
//!   from the best point with initial step 0.25 in unit coordinates,
//!   halving the step after every unsuccessful poll and stopping once the
//!   step falls below 1e-6 or the budget is refused.
//! * `mf-screening`: a Latin hypercube sweep at the lowest fidelity using
//!   `screening_fraction` of the budget, level-1 evaluation of the `top_k`
//!   best screened points, then compass search at level 1 from the best of
//!   those with initial step `polish_step`.

mod pattern;
mod random;
mod screening;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::oracle::Run;
use crate::{DesignPoint, Error, Result};

pub use pattern::{LhsPattern, CONTRACTION, INITIAL_STEP, MIN_STEP};
pub use random::RandomSearch;
pub use screening::MultifidelityScreening;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub name: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            parameters: BTreeMap::new(),
            seed: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: f64,
    pub min: f64,
    pub max: f64,
    pub integer: bool,
    pub doc: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub multifidelity: bool,
    pub params: &'static [ParamSpec],
}

pub trait Solver {
    /// Drives `run` until the solver is done or the budget is refused, and
    /// reports an incumbent if it has one.
    fn solve(&self, run: &mut Run<'_>, rng: &mut ChaCha8Rng) -> Result<Option<DesignPoint>>;
}

static SOLVERS: [SolverInfo; 3] = [
    SolverInfo {
        name: "random-search",
        summary: "uniform random sampling at a single fidelity level",
        multifidelity: false,
        params: &[ParamSpec {
            key: "level",
            default: 1.0,
            min: 1.0,
            max: 4.0,
            integer: true,
            doc: "fidelity level queried",
        }],
    },
    SolverInfo {
        name: "lhs-pattern",
        summary: "Latin hypercube start followed by compass pattern search at level 1",
        multifidelity: false,
        params: &[ParamSpec {
            key: "initial_fraction",
            default: 0.2,
            min: 0.0,
            max: 1.0,
            integer: false,
            doc: "budget share of the initial Latin hypercube; 0 starts from the box center",
        }],
    },
    SolverInfo {
        name: "mf-screening",
        summary: "lowest-fidelity Latin hypercube screening, then level-1 refinement",
        multifidelity: true,
        params: &[
            ParamSpec {
                key: "screening_fraction",
                default: 0.5,
                min: 0.01,
                max: 0.99,
                integer: false,
                doc: "budget share spent on the low-fidelity sweep",
            },
            ParamSpec {
                key: "top_k",
                default: 5.0,
                min: 1.0,
                max: 1000.0,
                integer: true,
                doc: "screened candidates re-evaluated at level 1",
            },
            ParamSpec {
                key: "polish_step",
                default: 0.05,
                min: 1e-6,
                max: 0.5,
                integer: false,
                doc: "initial compass step of the level-1 refinement, unit coordinates",
            },
        ],
    },
];

pub fn list_solvers() -> &'static [SolverInfo] {
    &SOLVERS
}

pub fn solver_info(name: &str) -> Result<&'static SolverInfo> {
    SOLVERS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSolver {
            name: name.to_string(),
            available: SOLVERS.map(|s| s.name).join(", "),
        })
}

impl SolverInfo {
    pub fn defaults(&self) -> BTreeMap<String, f64> {
        self.params
            .iter()
            .map(|p| (p.key.to_string(), p.default))
            .collect()
    }

    /// Checks `given` against the schema and fills in defaults.
    pub fn resolve(&self, given: &BTreeMap<String, f64>) -> Result<BTreeMap<String, f64>> {
        let invalid = |message: String| Error::InvalidParameter {
            solver: self.name.to_string(),
            message,
        };
        let mut resolved = self.defaults();
        for (key, &value) in given {
            let spec = self
                .params
                .iter()
                .find(|p| p.key == key)
                .ok_or_else(|| invalid(format!("unknown parameter `{key}`")))?;
            if !(spec.min..=spec.max).contains(&value) {
                return Err(invalid(format!(
                    "`{key}` = {value} outside [{}, {}]",
                    spec.min, spec.max
                )));
            }
            if spec.integer && value.fract() != 0.0 {
                return Err(invalid(format!("`{key}` must be an integer, got {value}")));
            }
            resolved.insert(key.clone(), value);
        }
        Ok(resolved)
    }
}

/// Instantiates the configured baseline after validating its parameters.
pub fn build_solver(config: &SolverConfig) -> Result<Box<dyn Solver + Send + Sync>> {
    let info = solver_info(&config.name)?;
    let p = info.resolve(&config.parameters)?;
    Ok(match info.name {
        "random-search" => Box::new(RandomSearch {
            level: p["level"] as usize,
        }),
        "lhs-pattern" => Box::new(LhsPattern {
            initial_fraction: p["initial_fraction"],
        }),
        _ => Box::new(MultifidelityScreening {
            screening_fraction: p["screening_fraction"],
            top_k: p["top_k"] as usize,
            polish_step: p["polish_step"],
        }),
    })
}

/// Runs the configured solver on `run` with its own seeded stream.
pub fn solve(config: &SolverConfig, run: &mut Run<'_>) -> Result<Option<DesignPoint>> {
    let solver = build_solver(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    solver.solve(run, &mut rng)
}
