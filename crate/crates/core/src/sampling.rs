//! Space-filling designs on the unit hypercube.

use rand::seq::SliceRandom;
use rand::Rng;

/// Latin hypercube of `n` points in `[0, 1]^dim`: every axis is cut into
/// `n` equal strata and each stratum holds exactly one point, jittered
/// uniformly inside it.
pub fn latin_hypercube<R: Rng + ?Sized>(n: usize, dim: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; dim]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for k in 0..dim {
        strata.shuffle(rng);
        for (point, &s) in points.iter_mut().zip(&strata) {
            point[k] = (s as f64 + rng.random::<f64>()) / n as f64;
        }
    }
    points
}

/// Full-factorial grid with `per_axis` evenly spaced levels (end points
/// included) on each of `dim` axes, first axis varying slowest.
pub fn full_factorial(per_axis: usize, dim: usize) -> Vec<Vec<f64>> {
    assert!(per_axis >= 2, "a grid needs at least two levels per axis");
    let total = per_axis.pow(dim as u32);
    let step = 1.0 / (per_axis - 1) as f64;
    (0..total)
        .map(|mut flat| {
            let mut p = vec![0.0; dim];
            for k in (0..dim).rev() {
                p[k] = (flat % per_axis) as f64 * step;
                flat /= per_axis;
            }
            p
        })
        .collect()
}
