//! The six benchmark families and a registry of the fourteen tabulated instances.

mod forrester;
mod heterogeneous;
mod paciorek;
mod rastrigin;
mod registry;
mod rosenbrock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use forrester::{forrester, forrester_jump};
pub use heterogeneous::heterogeneous;
pub use paciorek::{paciorek, paciorek_core, NoiseSpec};
pub use rastrigin::{rastrigin, rastrigin_core, resolution_error, Rotation};
pub use registry::{all_benchmarks, fidelity_cost_law, get_benchmark, spec_for};
pub use rosenbrock::rosenbrock;

use crate::domain::DOMAIN_TOLERANCE;
use crate::dynamics::{spring_mass, SpringMassVariant};
use crate::{BenchmarkId, BenchmarkSpec, Error, FidelityLevel, Result};

pub(crate) fn check_box(x: &[f64], lower: f64, upper: f64) -> Result<()> {
    for (index, &value) in x.iter().enumerate() {
        if !(value >= lower - DOMAIN_TOLERANCE && value <= upper + DOMAIN_TOLERANCE) {
            return Err(Error::OutOfDomain {
                index,
                value,
                lower,
                upper,
            });
        }
    }
    Ok(())
}

/// Seeded source of standard normal draws for noisy benchmarks.
#[derive(Debug, Clone)]
pub struct NoiseStream(ChaCha8Rng);

impl NoiseStream {
    pub fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // keep noise independent of solver streams seeded with the same value
        rng.set_stream(0x6e6f697365);
        Self(rng)
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }
}

#[derive(Debug, Clone)]
enum Family {
    Forrester,
    ForresterJump,
    Rosenbrock,
    Rastrigin(Rotation),
    Heterogeneous,
    SpringMass(SpringMassVariant),
    Paciorek(NoiseSpec),
}

/// A tabulated instance bound to its evaluator.
#[derive(Debug, Clone)]
pub struct Benchmark {
    spec: BenchmarkSpec,
    family: Family,
}

impl Benchmark {
    pub fn spec(&self) -> &BenchmarkSpec {
        &self.spec
    }

    pub fn id(&self) -> BenchmarkId {
        self.spec.id
    }

    pub fn dim(&self) -> usize {
        self.spec.dimension
    }

    pub fn levels(&self) -> usize {
        self.spec.levels()
    }

    pub fn cost(&self, level: FidelityLevel) -> Result<f64> {
        self.spec.cost(level)
    }

    pub fn is_noisy(&self) -> bool {
        matches!(self.family, Family::Paciorek(_))
    }

    /// Evaluates `f_level(x)`. Noisy families draw from `noise` when given
    /// and are noise-free otherwise; deterministic families ignore it.
    pub fn evaluate(
        &self,
        level: FidelityLevel,
        x: &[f64],
        noise: Option<&mut NoiseStream>,
    ) -> Result<f64> {
        level.check(self.levels())?;
        self.spec.bounds.check(x)?;
        match &self.family {
            Family::Forrester => forrester(level, x[0]),
            Family::ForresterJump => forrester_jump(level, x[0]),
            Family::Rosenbrock => rosenbrock(level, x),
            Family::Rastrigin(rotation) => rastrigin(level, x, rotation),
            Family::Heterogeneous => heterogeneous(level, x),
            Family::SpringMass(variant) => spring_mass(level, x, *variant),
            Family::Paciorek(spec) => paciorek(level, x, spec, noise),
        }
    }

    pub fn evaluate_noise_free(&self, level: FidelityLevel, x: &[f64]) -> Result<f64> {
        self.evaluate(level, x, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_checks_domain_and_level() {
        let b = get_benchmark("MF2.1").unwrap();
        assert!(matches!(
            b.evaluate_noise_free(FidelityLevel::new(4).unwrap(), &[0.0, 0.0]),
            Err(Error::InvalidLevel {
                level: 4,
                levels: 3
            })
        ));
        assert!(matches!(
            b.evaluate_noise_free(FidelityLevel::HIGHEST, &[0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(b
            .evaluate_noise_free(FidelityLevel::HIGHEST, &[3.0, 0.0])
            .is_err());
    }

    #[test]
    fn deterministic_families_ignore_noise() {
        let b = get_benchmark("MF3.2").unwrap();
        let mut noise = NoiseStream::from_seed(3);
        let x = [0.0, 0.05, 0.1, 0.15, 0.2];
        let a = b
            .evaluate(FidelityLevel::HIGHEST, &x, Some(&mut noise))
            .unwrap();
        assert_eq!(
            a,
            b.evaluate_noise_free(FidelityLevel::HIGHEST, &x).unwrap()
        );
    }

    #[test]
    fn noise_stream_moments() {
        let mut s = NoiseStream::from_seed(1);
        let draws: Vec<f64> = (0..20_000).map(|_| s.standard_normal()).collect();
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / draws.len() as f64;
        assert!(mean.abs() < 0.03);
        assert!((var - 1.0).abs() < 0.05);
    }
}
