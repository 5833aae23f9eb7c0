//! RK4 time-marching against the modal closed form.

use mfbench::dynamics::{
    analytic_solution, rk4_evaluate, spring_mass, ModalSolution, SimulationConfig,
    SpringMassParams, SpringMassVariant,
};
use mfbench::FidelityLevel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_params(rng: &mut ChaCha8Rng) -> SpringMassParams {
    let mut draw = || 1.0 + 3.0 * rng.random::<f64>();
    let (k1, k2, m1, m2) = (draw(), draw(), draw(), draw());
    SpringMassParams::new(k1, k2, k1, m1, m2).unwrap()
}

#[test]
fn rk4_matches_closed_form_over_parameter_box() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = SimulationConfig::with_dt(0.01);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let exact = analytic_solution(&p, &cfg, 6.0).unwrap()[0];
        let marched = rk4_evaluate(&p, &cfg).unwrap();
        assert!(
            (exact - marched).abs() < 1e-6,
            "{p:?}: {exact} vs {marched}"
        );
    }
}

#[test]
fn fourth_order_convergence() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut orders: Vec<f64> = (0..21)
        .map(|_| {
            let p = random_params(&mut rng);
            let exact = analytic_solution(&p, &SimulationConfig::with_dt(0.1), 6.0).unwrap()[0];
            let err =
                |dt: f64| (rk4_evaluate(&p, &SimulationConfig::with_dt(dt)).unwrap() - exact).abs();
            (err(0.1) / err(0.05)).log2()
        })
        .collect();
    orders.sort_by(f64::total_cmp);
    let order = orders[orders.len() / 2];
    assert!(
        (order - 4.0).abs() <= 0.2,
        "observed order {order}, all {orders:?}"
    );
}

#[test]
fn closed_form_satisfies_the_ode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let p = random_params(&mut rng);
        let modal = ModalSolution::new(&p, [1.0, 0.0], [0.0, 0.0]).unwrap();
        let t = 6.0 * rng.random::<f64>();
        let h = 1e-3;
        let (xm, x0, xp) = (
            modal.displacement(t - h),
            modal.displacement(t),
            modal.displacement(t + h),
        );
        // fourth-order central stencil for the second derivative
        let (xm2, xp2) = (
            modal.displacement(t - 2.0 * h),
            modal.displacement(t + 2.0 * h),
        );
        for i in 0..2 {
            let acc =
                (-xp2[i] + 16.0 * xp[i] - 30.0 * x0[i] + 16.0 * xm[i] - xm2[i]) / (12.0 * h * h);
            let (m, kx) = if i == 0 {
                (p.m1, (-p.k1 - p.k2) * x0[0] + p.k2 * x0[1])
            } else {
                (p.m2, p.k2 * x0[0] + (-p.k2 - p.k3) * x0[1])
            };
            assert!((m * acc - kx).abs() < 1e-7, "residual {}", m * acc - kx);
        }
    }
}

#[test]
fn first_mass_stays_within_unit_amplitude() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let k1 = 1.0 + 3.0 * rng.random::<f64>();
        let k2 = 1.0 + 3.0 * rng.random::<f64>();
        let m = 1.0 + 3.0 * rng.random::<f64>();
        let p = SpringMassParams::new(k1, k2, k1, m, m).unwrap();
        let modal = ModalSolution::new(&p, [1.0, 0.0], [0.0, 0.0]).unwrap();
        let weights: Vec<f64> = (0..2)
            .map(|i| modal.cos_coeff[i] * modal.modes[i][0])
            .collect();
        assert!(weights.iter().all(|w| *w >= 0.0));
        assert!((weights[0] + weights[1] - 1.0).abs() < 1e-12);
        for j in 0..=600 {
            assert!(modal.displacement(j as f64 * 0.01)[0].abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn tabulated_optima() {
    let v = spring_mass(
        FidelityLevel::HIGHEST,
        &[2.467401, 2.193245],
        SpringMassVariant::Springs,
    )
    .unwrap();
    assert!((v + 1.0).abs() < 1e-6);
    let v = spring_mass(
        FidelityLevel::HIGHEST,
        &[1.000000, 3.946018, 4.000000, 3.286277],
        SpringMassVariant::SpringsAndMasses,
    )
    .unwrap();
    assert!((v + 1.0).abs() < 1e-4);
}
