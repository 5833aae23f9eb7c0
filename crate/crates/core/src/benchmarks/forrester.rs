//! Forrester function and its discontinuous ("jump") variant on `[0, 1]`.

use super::check_box;
use crate::{FidelityLevel, Result};

fn high(x: f64) -> f64 {
    (6.0 * x - 2.0).powi(2) * (12.0 * x - 4.0).sin()
}

/// Four-level Forrester function.
pub fn forrester(level: FidelityLevel, x: f64) -> Result<f64> {
    level.check(4)?;
    check_box(&[x], 0.0, 1.0)?;
    Ok(match level.index() {
        1 => high(x),
        2 => (5.5 * x - 2.5).powi(2) * (12.0 * x - 4.0).sin(),
        3 => 0.75 * high(x) + 5.0 * (x - 0.5) - 2.0,
        _ => 0.5 * high(x) + 10.0 * (x - 0.5) - 5.0,
    })
}

/// Two-level Forrester function with a +10 jump for `x > 0.5`.
///
/// `x = 0.5` belongs to the left branch at both levels.
pub fn forrester_jump(level: FidelityLevel, x: f64) -> Result<f64> {
    level.check(2)?;
    check_box(&[x], 0.0, 1.0)?;
    let right = x > 0.5;
    let f1 = high(x) + if right { 10.0 } else { 0.0 };
    Ok(match level.index() {
        1 => f1,
        _ => 0.5 * f1 + 10.0 * (x - 0.5) - if right { 2.0 } else { 5.0 },
    })
}
