//! Coupled two-mass, three-spring oscillator.
//!
//! The system `M x'' = K x` with `M = diag(m1, m2)` and
//! `K = [[-k1-k2, k2], [k2, -k2-k3]]` is marched with classical RK4; the
//! time step sets the fidelity. The modal closed form serves as an oracle.

use serde::{Deserialize, Serialize};

use crate::domain::Bounds;
use crate::{Error, FidelityLevel, Result};

pub type Matrix2 = [[f64; 2]; 2];

/// Time step of each fidelity level.
pub const LEVEL_STEPS: [f64; 2] = [0.01, 0.6];
pub const T_END: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpringMassParams {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub m1: f64,
    pub m2: f64,
}

impl SpringMassParams {
    pub fn new(k1: f64, k2: f64, k3: f64, m1: f64, m2: f64) -> Result<Self> {
        let p = Self { k1, k2, k3, m1, m2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.k1, self.k2, self.k3, self.m1, self.m2];
        if all.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "spring constants and masses must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub dt: f64,
    pub t_end: f64,
    pub x0: [f64; 2],
    pub v0: [f64; 2],
}

impl SimulationConfig {
    /// Step size of `level`, released from rest at `x0 = (1, 0)`, up to `t = 6`.
    pub fn for_level(level: FidelityLevel) -> Result<Self> {
        level.check(LEVEL_STEPS.len())?;
        Ok(Self::with_dt(LEVEL_STEPS[level.index() - 1]))
    }

    pub fn with_dt(dt: f64) -> Self {
        Self {
            dt,
            t_end: T_END,
            x0: [1.0, 0.0],
            v0: [0.0, 0.0],
        }
    }

    /// Number of steps; `t_end` must be an integer multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        if !self.dt.is_finite() || self.dt <= 0.0 || !self.t_end.is_finite() || self.t_end <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "dt {} and t_end {} must be positive",
                self.dt, self.t_end
            )));
        }
        let n = (self.t_end / self.dt).round();
        if (n * self.dt - self.t_end).abs() > 1e-9 * self.t_end {
            return Err(Error::InvalidArgument(format!(
                "t_end {} is not a multiple of dt {}",
                self.t_end, self.dt
            )));
        }
        Ok(n as usize)
    }
}

/// Mass and stiffness matrices.
pub fn assemble(params: &SpringMassParams) -> Result<(Matrix2, Matrix2)> {
    params.validate()?;
    let SpringMassParams { k1, k2, k3, m1, m2 } = *params;
    Ok(([[m1, 0.0], [0.0, m2]], [[-k1 - k2, k2], [k2, -k2 - k3]]))
}

fn dynamics_matrix(params: &SpringMassParams) -> Result<Matrix2> {
    let (m, k) = assemble(params)?;
    Ok([
        [k[0][0] / m[0][0], k[0][1] / m[0][0]],
        [k[1][0] / m[1][1], k[1][1] / m[1][1]],
    ])
}

/// Modal decomposition `x(t) = Σ (a_i cos ω_i t + b_i sin ω_i t) z_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalSolution {
    pub omega: [f64; 2],
    pub modes: [[f64; 2]; 2],
    pub cos_coeff: [f64; 2],
    pub sin_coeff: [f64; 2],
}

fn solve2(cols: [[f64; 2]; 2], rhs: [f64; 2]) -> [f64; 2] {
    let [[a, c], [b, d]] = cols; // columns (a, c) and (b, d)
    let det = a * d - b * c;
    [
        (rhs[0] * d - b * rhs[1]) / det,
        (a * rhs[1] - c * rhs[0]) / det,
    ]
}

impl ModalSolution {
    pub fn new(params: &SpringMassParams, x0: [f64; 2], v0: [f64; 2]) -> Result<Self> {
        let a = dynamics_matrix(params)?;
        let half_trace = 0.5 * (a[0][0] + a[1][1]);
        let disc = (0.5 * (a[0][0] - a[1][1])).powi(2) + a[0][1] * a[1][0];
        if disc.is_nan() || disc <= 1e-12 * half_trace * half_trace {
            return Err(Error::Degenerate(format!(
                "repeated eigenvalues of M^-1 K for {params:?}"
            )));
        }
        let root = disc.sqrt();
        let lambda = [half_trace - root, half_trace + root];
        if lambda.iter().any(|l| l.is_nan() || *l >= 0.0) {
            return Err(Error::Degenerate(format!(
                "non-negative eigenvalue {lambda:?} for {params:?}"
            )));
        }
        // a[0][1] = k2 / m1 > 0, so this eigenvector form never vanishes
        let modes = lambda.map(|l| [a[0][1], l - a[0][0]]);
        let omega = lambda.map(|l| (-l).sqrt());
        let cos_coeff = solve2(modes, x0);
        let vel = solve2(modes, v0);
        let sin_coeff = [vel[0] / omega[0], vel[1] / omega[1]];
        Ok(Self {
            omega,
            modes,
            cos_coeff,
            sin_coeff,
        })
    }

    pub fn displacement(&self, t: f64) -> [f64; 2] {
        let mut x = [0.0; 2];
        for i in 0..2 {
            let (s, c) = (self.omega[i] * t).sin_cos();
            let amp = self.cos_coeff[i] * c + self.sin_coeff[i] * s;
            x[0] += amp * self.modes[i][0];
            x[1] += amp * self.modes[i][1];
        }
        x
    }
}

/// Closed-form displacement at time `t`.
pub fn analytic_solution(
    params: &SpringMassParams,
    config: &SimulationConfig,
    t: f64,
) -> Result<[f64; 2]> {
    Ok(ModalSolution::new(params, config.x0, config.v0)?.displacement(t))
}

/// State `(x1, x2, v1, v2)` after marching to `t_end` with fixed-step RK4.
pub fn rk4_final_state(params: &SpringMassParams, config: &SimulationConfig) -> Result<[f64; 4]> {
    let a = dynamics_matrix(params)?;
    let steps = config.steps()?;
    let h = config.dt;
    let rhs = |s: &[f64; 4]| -> [f64; 4] {
        [
            s[2],
            s[3],
            a[0][0] * s[0] + a[0][1] * s[1],
            a[1][0] * s[0] + a[1][1] * s[1],
        ]
    };
    let axpy = |s: &[f64; 4], k: &[f64; 4], f: f64| -> [f64; 4] {
        [
            s[0] + f * k[0],
            s[1] + f * k[1],
            s[2] + f * k[2],
            s[3] + f * k[3],
        ]
    };
    let mut s = [config.x0[0], config.x0[1], config.v0[0], config.v0[1]];
    for _ in 0..steps {
        let k1 = rhs(&s);
        let k2 = rhs(&axpy(&s, &k1, 0.5 * h));
        let k3 = rhs(&axpy(&s, &k2, 0.5 * h));
        let k4 = rhs(&axpy(&s, &k3, h));
        for i in 0..4 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(s)
}

/// Position of the first mass at `t_end`.
pub fn rk4_evaluate(params: &SpringMassParams, config: &SimulationConfig) -> Result<f64> {
    Ok(rk4_final_state(params, config)?[0])
}

/// Which quantities are design variables. In both cases `k3 = k1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpringMassVariant {
    /// `x = (k1, k2)`, unit masses.
    Springs,
    /// `x = (k1, k2, m1, m2)`.
    SpringsAndMasses,
}

impl SpringMassVariant {
    pub fn dim(self) -> usize {
        match self {
            SpringMassVariant::Springs => 2,
            SpringMassVariant::SpringsAndMasses => 4,
        }
    }

    pub fn bounds(self) -> Bounds {
        Bounds::uniform(self.dim(), 1.0, 4.0).expect("static bounds")
    }

    pub fn params(self, x: &[f64]) -> Result<SpringMassParams> {
        self.bounds().check(x)?;
        let (m1, m2) = match self {
            SpringMassVariant::Springs => (1.0, 1.0),
            SpringMassVariant::SpringsAndMasses => (x[2], x[3]),
        };
        SpringMassParams::new(x[0], x[1], x[0], m1, m2)
    }
}

/// `x_1(t = 6)` integrated at the step size of `level`.
pub fn spring_mass(level: FidelityLevel, x: &[f64], variant: SpringMassVariant) -> Result<f64> {
    let config = SimulationConfig::for_level(level)?;
    rk4_evaluate(&variant.params(x)?, &config)
}
