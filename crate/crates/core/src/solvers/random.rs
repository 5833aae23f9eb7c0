use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Solver;
use crate::oracle::Run;
use crate::{unscale, DesignPoint, FidelityLevel, Result};

#[derive(Debug, Clone)]
pub struct RandomSearch {
    pub level: usize,
}

impl Solver for RandomSearch {
    fn solve(&self, run: &mut Run<'_>, rng: &mut ChaCha8Rng) -> Result<Option<DesignPoint>> {
        let level = FidelityLevel::new(self.level)?;
        let bounds = &run.benchmark().spec().bounds;
        let mut best: Option<(f64, DesignPoint)> = None;
        loop {
            let unit: Vec<f64> = (0..bounds.dim()).map(|_| rng.random::<f64>()).collect();
            let x = unscale(&unit, bounds)?;
            let Some(value) = run.try_query(level, x.as_slice())? else {
                break;
            };
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, x));
            }
        }
        Ok(best.map(|(_, x)| x))
    }
}
