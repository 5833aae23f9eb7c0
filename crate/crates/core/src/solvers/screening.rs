use rand_chacha::ChaCha8Rng;

use super::pattern::compass_search;
use super::Solver;
use crate::oracle::Run;
use crate::sampling::latin_hypercube;
use crate::{unscale, DesignPoint, FidelityLevel, Result};

#[derive(Debug, Clone)]
pub struct MultifidelityScreening {
    pub screening_fraction: f64,
    pub top_k: usize,
    pub polish_step: f64,
}

impl Solver for MultifidelityScreening {
    fn solve(&self, run: &mut Run<'_>, rng: &mut ChaCha8Rng) -> Result<Option<DesignPoint>> {
        let spec = run.benchmark().spec().clone();
        let lowest = spec.lowest_level();
        let cheap = spec.cost(lowest)?;
        let n = ((self.screening_fraction * spec.budget / cheap).floor() as usize).max(1);

        let mut screened = Vec::with_capacity(n);
        for unit in latin_hypercube(n, spec.dimension, rng) {
            let x = unscale(&unit, &spec.bounds)?;
            let Some(v) = run.try_query(lowest, x.as_slice())? else {
                break;
            };
            screened.push((v, unit));
        }
        screened.sort_by(|a, b| a.0.total_cmp(&b.0));

        let high = FidelityLevel::HIGHEST;
        let mut best: Option<(Vec<f64>, f64)> = None;
        for (_, unit) in screened.into_iter().take(self.top_k) {
            let x = unscale(&unit, &spec.bounds)?;
            let Some(v) = run.try_query(high, x.as_slice())? else {
                break;
            };
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((unit, v));
            }
        }
        let Some((unit, value)) = best else {
            return Ok(None);
        };
        let (unit, _) = compass_search(run, high, unit, value, self.polish_step)?;
        Ok(Some(unscale(&unit, &spec.bounds)?))
    }
}
