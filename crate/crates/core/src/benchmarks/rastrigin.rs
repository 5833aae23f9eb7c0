//! Shifted-rotated Rastrigin function with resolution-error fidelities.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::check_box;
use crate::{Error, FidelityLevel, Result};

/// Rotation angle used by the benchmark.
pub const ANGLE: f64 = 0.2;
/// Shift: the optimum sits at `(0.1, ..., 0.1)`.
pub const SHIFT: f64 = 0.1;
/// Fidelity parameter `φ` per level.
pub const PHI: [f64; 3] = [10_000.0, 5_000.0, 2_500.0];

/// Orthogonal `D x D` rotation by a single angle.
///
/// For `D = 2` this is `[[cos θ, -sin θ], [sin θ, cos θ]]`. Larger
/// dimensions compose plane rotations by `θ` in the coordinate planes
/// `(1,2), (2,3), ..., (D-1,D)`, the `(1,2)` rotation acting first:
/// `R = G_{D-1,D} ... G_{2,3} G_{1,2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    angle: f64,
    dim: usize,
    /// Row-major.
    matrix: Vec<f64>,
}

impl Rotation {
    pub fn new(angle: f64, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "rotation needs dimension >= 2, got {dim}"
            )));
        }
        let mut matrix = vec![0.0; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = 1.0;
        }
        let (s, c) = angle.sin_cos();
        for k in 0..dim - 1 {
            // left-multiply by the plane rotation acting on rows k, k+1
            for col in 0..dim {
                let a = matrix[k * dim + col];
                let b = matrix[(k + 1) * dim + col];
                matrix[k * dim + col] = c * a - s * b;
                matrix[(k + 1) * dim + col] = s * a + c * b;
            }
        }
        Ok(Self { angle, dim, matrix })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.matrix.chunks(self.dim)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `Θ(φ) = 1 - 0.0001 φ`.
fn theta(phi: f64) -> f64 {
    1.0 - 1e-4 * phi
}

/// Resolution error `Σ a cos²(w z_i + b + π)` with `a = Θ`, `w = 10πΘ`,
/// `b = 0.5πΘ`.
pub fn resolution_error(z: &[f64], phi: f64) -> f64 {
    let t = theta(phi);
    let (a, w, b) = (t, 10.0 * PI * t, 0.5 * PI * t);
    z.iter()
        .map(|&zi| a * (w * zi + b + PI).cos().powi(2))
        .sum()
}

/// Unshifted, unrotated Rastrigin `Σ z_i² + 1 - cos(10π z_i)`.
pub fn rastrigin_core(z: &[f64]) -> f64 {
    z.iter()
        .map(|&zi| zi * zi + 1.0 - (10.0 * PI * zi).cos())
        .sum()
}

/// Evaluates level `level` at `x` in `[-0.1, 0.2]^D`; `rotation` must match `D`.
pub fn rastrigin(level: FidelityLevel, x: &[f64], rotation: &Rotation) -> Result<f64> {
    level.check(3)?;
    if x.len() != rotation.dim() {
        return Err(Error::DimensionMismatch {
            expected: rotation.dim(),
            actual: x.len(),
        });
    }
    check_box(x, -0.1, 0.2)?;
    let shifted: Vec<f64> = x.iter().map(|v| v - SHIFT).collect();
    let z = rotation.apply(&shifted);
    Ok(rastrigin_core(&z) + resolution_error(&z, PHI[level.index() - 1]))
}
