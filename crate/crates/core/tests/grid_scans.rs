//! Brute-force grid scans of the level-1 functions: the minimizer lies
//! within one grid cell of the reference optimum, and the observed range
//! agrees with the reference `f_min` / `f_max`.

use std::f64::consts::PI;

use mfbench::benchmarks::{get_benchmark, Benchmark};
use mfbench::{unscale, FidelityLevel};

fn scan(b: &Benchmark, per_axis: usize) -> (Vec<f64>, f64, f64) {
    let d = b.dim();
    let total = per_axis.pow(d as u32);
    let mut best = (vec![], f64::INFINITY);
    let mut max = f64::NEG_INFINITY;
    for flat in 0..total {
        let mut rem = flat;
        let unit: Vec<f64> = (0..d)
            .map(|_| {
                let i = rem % per_axis;
                rem /= per_axis;
                i as f64 / (per_axis - 1) as f64
            })
            .collect();
        let x = unscale(&unit, &b.spec().bounds).unwrap().into_inner();
        let f = b.evaluate_noise_free(FidelityLevel::HIGHEST, &x).unwrap();
        if f < best.1 {
            best = (x, f);
        }
        max = max.max(f);
    }
    (best.0, best.1, max)
}

fn cell(b: &Benchmark, per_axis: usize) -> f64 {
    let s = &b.spec().bounds;
    (s.upper()[0] - s.lower()[0]) / (per_axis - 1) as f64
}

#[test]
fn one_dimensional_minimizers() {
    for id in ["MF1.1", "MF1.2", "MF4.1"] {
        let b = get_benchmark(id).unwrap();
        let (x, _, _) = scan(&b, 10_001);
        let x_star = b.spec().reference.optimum.representative(&b.spec().bounds);
        assert!((x[0] - x_star[0]).abs() <= cell(&b, 10_001), "{id}: {x:?}");
    }
}

#[test]
fn two_dimensional_point_minimizers() {
    for id in ["MF2.1", "MF3.1"] {
        let b = get_benchmark(id).unwrap();
        let (x, _, _) = scan(&b, 1001);
        let x_star = b.spec().reference.optimum.representative(&b.spec().bounds);
        for k in 0..2 {
            assert!((x[k] - x_star[k]).abs() <= cell(&b, 1001), "{id}: {x:?}");
        }
    }
}

#[test]
fn springs_minimizer() {
    let b = get_benchmark("MF5.1").unwrap();
    let (x, f, max) = scan(&b, 301);
    assert!(f >= -1.0 - 1e-6 && max <= 1.0 + 1e-6);
    let x_star = [2.467401, 2.193245];
    for k in 0..2 {
        assert!((x[k] - x_star[k]).abs() <= cell(&b, 301), "{x:?}");
    }
}

#[test]
fn manifold_minimizers() {
    let b = get_benchmark("MF4.2").unwrap();
    let (x, f, max) = scan(&b, 1001);
    assert!(x[0] <= cell(&b, 1001));
    assert!((f + 0.5627123).abs() < 1e-6);
    assert!((max - 1.8350).abs() < 1e-4);

    let b = get_benchmark("MF6").unwrap();
    let (x, f, max) = scan(&b, 1001);
    let p = x[0] * x[1];
    let c = [2.0 / (3.0 * PI), 2.0 / (7.0 * PI)];
    // a one-cell move changes x1 x2 by at most ~ 2 * cell
    assert!(
        c.iter().any(|c| (p - c).abs() <= 2.0 * cell(&b, 1001)),
        "{x:?}"
    );
    assert!(f >= -1.0 && (f + 1.0) < 1e-5 && max <= 1.0 && max > 0.9999);
}

#[test]
fn heterogeneous_three_dimensional_range() {
    let b = get_benchmark("MF4.3").unwrap();
    let (x, f, max) = scan(&b, 101);
    assert!(x[0] == 0.0 && (f + 0.5627123).abs() < 1e-6);
    assert!((max - 4.3594).abs() / 4.3594 < 1e-4);
}
