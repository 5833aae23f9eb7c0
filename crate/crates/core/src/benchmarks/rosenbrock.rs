//! Three-level Rosenbrock function on `[-2, 2]^D`.

use super::check_box;
use crate::{Error, FidelityLevel, Result};

fn valley(x: &[f64], curvature: f64, target: f64) -> f64 {
    x.windows(2)
        .map(|w| curvature * (w[1] - w[0] * w[0]).powi(2) + (target - w[0]).powi(2))
        .sum()
}

/// `level 1`: classic Rosenbrock. `level 2`: halved curvature, valley floor
/// pulled to -2 and a linear tilt. `level 3`: rational transform of level 1.
pub fn rosenbrock(level: FidelityLevel, x: &[f64]) -> Result<f64> {
    level.check(3)?;
    if x.len() < 2 {
        return Err(Error::InvalidArgument("Rosenbrock needs D >= 2".into()));
    }
    check_box(x, -2.0, 2.0)?;
    let sum: f64 = x.iter().sum();
    Ok(match level.index() {
        1 => valley(x, 100.0, 1.0),
        2 => valley(x, 50.0, -2.0) - 0.5 * sum,
        // the denominator sums 0.25 x_i over all coordinates
        _ => (valley(x, 100.0, 1.0) - 4.0 - 0.5 * sum) / (10.0 + 0.25 * sum),
    })
}
