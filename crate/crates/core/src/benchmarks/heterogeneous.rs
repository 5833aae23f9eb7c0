//! Heterogeneous non-polynomial functions on the unit hypercube, `D = 1, 2, 3`.

use super::check_box;
use crate::{FidelityLevel, Result};

fn high_1d(x: f64) -> f64 {
    (30.0 * (x - 0.9).powi(4)).sin() * (2.0 * (x - 0.9)).cos() + (x - 0.9) / 2.0
}

fn high_nd(x: &[f64]) -> f64 {
    let x1 = x[0];
    let mut f = (21.0 * (x1 - 0.9).powi(4)).sin() * (2.0 * (x1 - 0.9)).cos() + (x1 - 0.7) / 2.0;
    let mut prefix = x1;
    for (k, &xi) in x.iter().enumerate().skip(1) {
        let i = k + 1;
        prefix *= xi;
        f += i as f64 * xi.powi(i as i32) * prefix.sin();
    }
    f
}

/// Two-level heterogeneous benchmark. `D = 1` and `D >= 2` use different
/// high-fidelity forms; the low fidelity is a linear bridge of the high one.
pub fn heterogeneous(level: FidelityLevel, x: &[f64]) -> Result<f64> {
    level.check(2)?;
    check_box(x, 0.0, 1.0)?;
    if let [x1] = *x {
        let f1 = high_1d(x1);
        return Ok(match level.index() {
            1 => f1,
            _ => (f1 - 1.0 + x1) / (1.0 + 0.25 * x1),
        });
    }
    let f1 = high_nd(x);
    if level.is_highest() {
        return Ok(f1);
    }
    let sum: f64 = x.iter().sum();
    let denominator = x.iter().enumerate().fold(5.0, |acc, (k, &xi)| {
        let term = 0.25 * (k + 1) as f64 * xi;
        if k < 2 {
            acc + term
        } else {
            acc - term
        }
    });
    Ok((f1 - 2.0 + sum) / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn lvl(l: usize) -> FidelityLevel {
        FidelityLevel::new(l).unwrap()
    }

    #[test]
    fn one_dimensional_values() {
        assert_abs_diff_eq!(
            heterogeneous(lvl(1), &[0.27550]).unwrap(),
            -0.625,
            epsilon = 1e-3
        );
        let f1 = (30.0f64 * 1e-4).sin() * 0.2f64.cos() + 0.05;
        assert_abs_diff_eq!(heterogeneous(lvl(1), &[1.0]).unwrap(), f1, epsilon = 1e-15);
        assert_abs_diff_eq!(
            heterogeneous(lvl(2), &[1.0]).unwrap(),
            f1 / 1.25,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            heterogeneous(lvl(2), &[1.0]).unwrap(),
            0.042352,
            epsilon = 1e-6
        );
    }

    #[test]
    fn multi_dimensional_origin() {
        assert_abs_diff_eq!(
            heterogeneous(lvl(1), &[0.0, 0.0]).unwrap(),
            -0.5627123,
            epsilon = 1e-5
        );
        assert_abs_diff_eq!(
            heterogeneous(lvl(1), &[0.0, 0.0, 0.0]).unwrap(),
            -0.5627123,
            epsilon = 1e-5
        );
    }

    #[test]
    fn bridge_denominator_signs() {
        // D = 3 at (1,1,1): 5 + 0.25 + 0.5 - 0.75
        let x = [1.0, 1.0, 1.0];
        let f1 = heterogeneous(lvl(1), &x).unwrap();
        assert_abs_diff_eq!(
            heterogeneous(lvl(2), &x).unwrap(),
            (f1 + 1.0) / 5.0,
            epsilon = 1e-14
        );
        let x = [1.0, 1.0];
        let f1 = heterogeneous(lvl(1), &x).unwrap();
        assert_abs_diff_eq!(
            heterogeneous(lvl(2), &x).unwrap(),
            f1 / 5.75,
            epsilon = 1e-14
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(heterogeneous(lvl(1), &[1.2]).is_err());
        assert!(heterogeneous(lvl(3), &[0.5]).is_err());
    }

    proptest! {
        #[test]
        fn constant_on_first_coordinate_zero(rest in proptest::collection::vec(0.0f64..=1.0, 1..3)) {
            let mut x = vec![0.0];
            x.extend(rest);
            let v = heterogeneous(lvl(1), &x).unwrap();
            prop_assert!((v + 0.5627123).abs() < 1e-6);
        }
    }
}
