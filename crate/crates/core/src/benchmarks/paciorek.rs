//! Paciorek function with additive Gaussian noise, `D = 2` on `[0.3, 1]^2`.

use serde::{Deserialize, Serialize};

use super::{check_box, NoiseStream};
use crate::{Error, FidelityLevel, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Standard deviation of the additive noise per fidelity level.
    pub alpha_per_level: Vec<f64>,
    /// Discrepancy amplitude `A` between the two levels.
    pub discrepancy_amplitude: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            alpha_per_level: vec![0.0125, 0.075],
            discrepancy_amplitude: 0.5,
        }
    }
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_per_level.iter().any(|a| a.is_nan() || *a < 0.0)
            || !(0.0..=1.0).contains(&self.discrepancy_amplitude)
        {
            return Err(Error::InvalidArgument(format!(
                "invalid noise spec {self:?}"
            )));
        }
        Ok(())
    }
}

/// Deterministic part of the response.
pub fn paciorek_core(level: FidelityLevel, x: &[f64], amplitude: f64) -> Result<f64> {
    level.check(2)?;
    if x.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: x.len(),
        });
    }
    check_box(x, 0.3, 1.0)?;
    let inv = 1.0 / (x[0] * x[1]);
    let f1 = inv.sin();
    Ok(match level.index() {
        1 => f1,
        _ => f1 - 9.0 * amplitude * amplitude * inv.cos(),
    })
}

/// Core plus one normal draw of standard deviation `α_level`; without a
/// stream the response is noise-free.
pub fn paciorek(
    level: FidelityLevel,
    x: &[f64],
    spec: &NoiseSpec,
    noise: Option<&mut NoiseStream>,
) -> Result<f64> {
    let core = paciorek_core(level, x, spec.discrepancy_amplitude)?;
    Ok(match noise {
        Some(stream) => core + spec.alpha_per_level[level.index() - 1] * stream.standard_normal(),
        None => core,
    })
}
