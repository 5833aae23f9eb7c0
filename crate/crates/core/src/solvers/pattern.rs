use rand_chacha::ChaCha8Rng;

use super::Solver;
use crate::oracle::Run;
use crate::sampling::latin_hypercube;
use crate::{scale_to_unit, unscale, DesignPoint, FidelityLevel, Result};

pub const INITIAL_STEP: f64 = 0.25;
pub const CONTRACTION: f64 = 0.5;
pub const MIN_STEP: f64 = 1e-6;

/// Opportunistic compass search in unit coordinates. Returns the best point
/// and value reached; stops on budget refusal or once the step is below
/// [`MIN_STEP`].
pub(crate) fn compass_search(
    run: &mut Run<'_>,
    level: FidelityLevel,
    start: Vec<f64>,
    start_value: f64,
    initial_step: f64,
) -> Result<(Vec<f64>, f64)> {
    let bounds = run.benchmark().spec().bounds.clone();
    let (mut current, mut value) = (start, start_value);
    let mut step = initial_step;
    'outer: while step >= MIN_STEP {
        for k in 0..current.len() {
            for sign in [1.0, -1.0] {
                let mut candidate = current.clone();
                candidate[k] = (candidate[k] + sign * step).clamp(0.0, 1.0);
                if candidate[k] == current[k] {
                    continue;
                }
                let x = unscale(&candidate, &bounds)?;
                let Some(v) = run.try_query(level, x.as_slice())? else {
                    break 'outer;
                };
                if v < value {
                    current = candidate;
                    value = v;
                    continue 'outer;
                }
            }
        }
        step *= CONTRACTION;
    }
    Ok((current, value))
}

#[derive(Debug, Clone)]
pub struct LhsPattern {
    pub initial_fraction: f64,
}

impl Solver for LhsPattern {
    fn solve(&self, run: &mut Run<'_>, rng: &mut ChaCha8Rng) -> Result<Option<DesignPoint>> {
        let spec = run.benchmark().spec().clone();
        let level = FidelityLevel::HIGHEST;
        let starts = if self.initial_fraction == 0.0 {
            vec![scale_to_unit(&spec.bounds.center(), &spec.bounds)?.into_inner()]
        } else {
            let n = ((self.initial_fraction * spec.budget).floor() as usize).max(1);
            latin_hypercube(n, spec.dimension, rng)
        };
        let mut best: Option<(Vec<f64>, f64)> = None;
        for unit in starts {
            let x = unscale(&unit, &spec.bounds)?;
            let Some(v) = run.try_query(level, x.as_slice())? else {
                break;
            };
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((unit, v));
            }
        }
        let Some((unit, value)) = best else {
            return Ok(None);
        };
        let (unit, _) = compass_search(run, level, unit, value, INITIAL_STEP)?;
        Ok(Some(unscale(&unit, &spec.bounds)?))
    }
}
