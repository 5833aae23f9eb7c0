use std::f64::consts::PI;

use super::{Benchmark, Family, NoiseSpec, Rotation};
use crate::dynamics::SpringMassVariant;
use crate::{BenchmarkId, BenchmarkSpec, Bounds, OptimumLocation, ReferenceValues, Result};

/// Cost assignment `λ_l = (1 / 2^(l-1))^4` used for the Rastrigin levels.
pub fn fidelity_cost_law(level: usize) -> f64 {
    (1.0 / 2f64.powi(level as i32 - 1)).powi(4)
}

fn reference(optimum: OptimumLocation, f_star: f64, f_min: f64, f_max: f64) -> ReferenceValues {
    ReferenceValues {
        optimum,
        f_star,
        f_min,
        f_max,
    }
}

/// The tabulated setup and reference values of instance `id`.
///
/// Optimum locations use the full-precision values quoted with each
/// function definition where those are finer than the summary table.
pub fn spec_for(id: BenchmarkId) -> BenchmarkSpec {
    use BenchmarkId::*;
    use OptimumLocation::{FirstCoordinate, Hyperbolas, Point};

    let (dimension, (lower, upper), costs, budget, reference): (usize, _, &[f64], f64, _) = match id
    {
        Mf1_1 => (
            1,
            (0.0, 1.0),
            &[1.0, 0.5, 0.1, 0.05],
            100.0,
            reference(Point(vec![0.75724876]), -6.020740, -6.0207, 15.830),
        ),
        Mf1_2 => (
            1,
            (0.0, 1.0),
            &[1.0, 0.2],
            100.0,
            reference(Point(vec![0.1426]), -0.9863, -0.9863, 25.830),
        ),
        Mf2_1 => (
            2,
            (-2.0, 2.0),
            &[1.0, 0.5, 0.1],
            200.0,
            reference(Point(vec![1.0; 2]), 0.0, 0.0, 3609.0),
        ),
        Mf2_2 => (
            5,
            (-2.0, 2.0),
            &[1.0, 0.5, 0.1],
            500.0,
            reference(Point(vec![1.0; 5]), 0.0, 0.0, 14436.0),
        ),
        Mf2_3 => (
            10,
            (-2.0, 2.0),
            &[1.0, 0.5, 0.1],
            1000.0,
            reference(Point(vec![1.0; 10]), 0.0, 0.0, 32481.0),
        ),
        Mf3_1 => (
            2,
            (-0.1, 0.2),
            &[1.0, 6.25e-2, 3.90625e-3],
            200.0,
            reference(Point(vec![0.1; 2]), 0.0, 0.0, 4.02),
        ),
        Mf3_2 => (
            5,
            (-0.1, 0.2),
            &[1.0, 6.25e-2, 3.90625e-3],
            500.0,
            reference(Point(vec![0.1; 5]), 0.0, 0.0, 10.05),
        ),
        Mf3_3 => (
            10,
            (-0.1, 0.2),
            &[1.0, 6.25e-2, 3.90625e-3],
            1000.0,
            reference(Point(vec![0.1; 10]), 0.0, 0.0, 20.1),
        ),
        Mf4_1 => (
            1,
            (0.0, 1.0),
            &[1.0, 0.2],
            100.0,
            reference(Point(vec![0.27550]), -0.625, -0.625, 0.36151),
        ),
        Mf4_2 => (
            2,
            (0.0, 1.0),
            &[1.0, 0.2],
            200.0,
            reference(FirstCoordinate(0.0), -0.5627123, -0.56271, 1.8350),
        ),
        Mf4_3 => (
            3,
            (0.0, 1.0),
            &[1.0, 0.2],
            300.0,
            reference(FirstCoordinate(0.0), -0.5627123, -0.56271, 4.3594),
        ),
        Mf5_1 => (
            2,
            (1.0, 4.0),
            &[1.0, 1.66667e-2],
            200.0,
            reference(Point(vec![2.467401, 2.193245]), -1.0, -1.0, 1.0),
        ),
        Mf5_2 => (
            4,
            (1.0, 4.0),
            &[1.0, 1.66667e-2],
            400.0,
            reference(
                Point(vec![1.000000, 3.946018, 4.000000, 3.286277]),
                -1.0,
                -1.0,
                1.0,
            ),
        ),
        Mf6 => (
            2,
            (0.3, 1.0),
            &[1.0, 0.2],
            200.0,
            reference(
                Hyperbolas(vec![2.0 / (3.0 * PI), 2.0 / (7.0 * PI)]),
                -1.0,
                -1.0,
                1.0,
            ),
        ),
    };
    BenchmarkSpec {
        id,
        dimension,
        bounds: Bounds::uniform(dimension, lower, upper).expect("static bounds"),
        fidelity_costs: costs.to_vec(),
        budget,
        reference,
    }
}

fn build(id: BenchmarkId) -> Benchmark {
    use BenchmarkId::*;
    let spec = spec_for(id);
    let family = match id {
        Mf1_1 => Family::Forrester,
        Mf1_2 => Family::ForresterJump,
        Mf2_1 | Mf2_2 | Mf2_3 => Family::Rosenbrock,
        Mf3_1 | Mf3_2 | Mf3_3 => Family::Rastrigin(
            Rotation::new(super::rastrigin::ANGLE, spec.dimension).expect("D >= 2"),
        ),
        Mf4_1 | Mf4_2 | Mf4_3 => Family::Heterogeneous,
        Mf5_1 => Family::SpringMass(SpringMassVariant::Springs),
        Mf5_2 => Family::SpringMass(SpringMassVariant::SpringsAndMasses),
        Mf6 => Family::Paciorek(NoiseSpec::default()),
    };
    Benchmark { spec, family }
}

/// Looks up an instance by its id, e.g. `"MF2.2"`.
pub fn get_benchmark(id: &str) -> Result<Benchmark> {
    Ok(build(id.parse()?))
}

pub fn all_benchmarks() -> Vec<Benchmark> {
    BenchmarkId::ALL.into_iter().map(build).collect()
}

impl From<BenchmarkId> for Benchmark {
    fn from(id: BenchmarkId) -> Self {
        build(id)
    }
}
