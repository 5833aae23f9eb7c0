use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Absolute slack accepted on box membership, absorbing round-off from
/// unscaling unit-hypercube coordinates.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

/// Closed box `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidArgument(
                "bounds need at least one dimension".into(),
            ));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (k, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() || l >= u {
                return Err(Error::InvalidArgument(format!(
                    "bound {k}: lower {l} must be finite and below upper {u}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval on every axis.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn center(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| 0.5 * (l + u))
            .collect()
    }

    /// Checks dimension and closed-box membership (with [`DOMAIN_TOLERANCE`]).
    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        for (index, ((&value, &lower), &upper)) in
            x.iter().zip(&self.lower).zip(&self.upper).enumerate()
        {
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

    pub fn contains(&self, x: &[f64]) -> bool {
        self.check(x).is_ok()
    }

    /// Projects `x` onto the box.
    pub fn clamp(&self, x: &mut [f64]) {
        for ((v, l), u) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*l, *u);
        }
    }
}

/// A point of the design space, in unscaled coordinates unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DesignPoint(Vec<f64>);

impl DesignPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for DesignPoint {
    fn from(coords: Vec<f64>) -> Self {
        Self(coords)
    }
}

impl AsRef<[f64]> for DesignPoint {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Maps `x` linearly onto the unit hypercube, `(x_k - l_k) / (u_k - l_k)`.
pub fn scale_to_unit(x: &[f64], bounds: &Bounds) -> Result<DesignPoint> {
    bounds.check(x)?;
    Ok(x.iter()
        .zip(bounds.lower())
        .zip(bounds.upper())
        .map(|((v, l), u)| ((v - l) / (u - l)).clamp(0.0, 1.0))
        .collect::<Vec<_>>()
        .into())
}

/// Inverse of [`scale_to_unit`].
pub fn unscale(unit: &[f64], bounds: &Bounds) -> Result<DesignPoint> {
    if unit.len() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dim(),
            actual: unit.len(),
        });
    }
    let mut out = Vec::with_capacity(unit.len());
    for (index, ((&t, &l), &u)) in unit
        .iter()
        .zip(bounds.lower())
        .zip(bounds.upper())
        .enumerate()
    {
        if !(-DOMAIN_TOLERANCE..=1.0 + DOMAIN_TOLERANCE).contains(&t) {
            return Err(Error::OutOfDomain {
                index,
                value: t,
                lower: 0.0,
                upper: 1.0,
            });
        }
        let t = t.clamp(0.0, 1.0);
        out.push((l + t * (u - l)).clamp(l, u));
    }
    Ok(out.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn corners_map_to_unit_corners() {
        let b = Bounds::new(vec![-2.0, 0.3], vec![2.0, 1.0]).unwrap();
        assert_eq!(
            scale_to_unit(&[-2.0, 0.3], &b).unwrap().as_slice(),
            &[0.0, 0.0]
        );
        assert_eq!(
            scale_to_unit(&[2.0, 1.0], &b).unwrap().as_slice(),
            &[1.0, 1.0]
        );
        assert_eq!(unscale(&[0.0, 0.0], &b).unwrap().as_slice(), b.lower());
        assert_eq!(unscale(&[1.0, 1.0], &b).unwrap().as_slice(), b.upper());
    }

    #[test]
    fn rastrigin_box_scaling() {
        let b = Bounds::uniform(2, -0.1, 0.2).unwrap();
        let s = scale_to_unit(&[0.1, 0.1], &b).unwrap();
        for v in s.as_slice() {
            assert!((v - 2.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn out_of_bounds_names_component() {
        let b = Bounds::uniform(3, 0.0, 1.0).unwrap();
        match scale_to_unit(&[0.5, 1.5, 0.5], &b) {
            Err(Error::OutOfDomain { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            unscale(&[0.5, -0.1, 0.0], &b),
            Err(Error::OutOfDomain { index: 1, .. })
        ));
        assert!(matches!(
            scale_to_unit(&[0.5], &b),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 1
            })
        ));
    }

    #[test]
    fn tolerance_admits_round_off() {
        let b = Bounds::uniform(1, 0.0, 1.0).unwrap();
        assert!(b.contains(&[1.0 + 5e-13]));
        assert!(!b.contains(&[1.0 + 1e-9]));
        assert!(!b.contains(&[f64::NAN]));
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Bounds::new(vec![1.0], vec![1.0]).is_err());
        assert!(Bounds::new(vec![], vec![]).is_err());
        assert!(Bounds::new(vec![0.0, 0.0], vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn scaling_round_trip(
            pairs in proptest::collection::vec((-50.0f64..50.0, 1e-3f64..100.0, 0.0f64..=1.0), 1..12)
        ) {
            let lower: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let upper: Vec<f64> = pairs.iter().map(|p| p.0 + p.1).collect();
            let unit: Vec<f64> = pairs.iter().map(|p| p.2).collect();
            let b = Bounds::new(lower, upper).unwrap();
            let x = unscale(&unit, &b).unwrap();
            let back = scale_to_unit(x.as_slice(), &b).unwrap();
            for (a, e) in back.as_slice().iter().zip(&unit) {
                prop_assert!((a - e).abs() < 1e-12);
            }
        }
    }
}
