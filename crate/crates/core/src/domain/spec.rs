use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Bounds;
use crate::{Error, Result};

/// One of the fourteen tabulated benchmark instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BenchmarkId {
    Mf1_1,
    Mf1_2,
    Mf2_1,
    Mf2_2,
    Mf2_3,
    Mf3_1,
    Mf3_2,
    Mf3_3,
    Mf4_1,
    Mf4_2,
    Mf4_3,
    Mf5_1,
    Mf5_2,
    Mf6,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 14] = [
        BenchmarkId::Mf1_1,
        BenchmarkId::Mf1_2,
        BenchmarkId::Mf2_1,
        BenchmarkId::Mf2_2,
        BenchmarkId::Mf2_3,
        BenchmarkId::Mf3_1,
        BenchmarkId::Mf3_2,
        BenchmarkId::Mf3_3,
        BenchmarkId::Mf4_1,
        BenchmarkId::Mf4_2,
        BenchmarkId::Mf4_3,
        BenchmarkId::Mf5_1,
        BenchmarkId::Mf5_2,
        BenchmarkId::Mf6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchmarkId::Mf1_1 => "MF1.1",
            BenchmarkId::Mf1_2 => "MF1.2",
            BenchmarkId::Mf2_1 => "MF2.1",
            BenchmarkId::Mf2_2 => "MF2.2",
            BenchmarkId::Mf2_3 => "MF2.3",
            BenchmarkId::Mf3_1 => "MF3.1",
            BenchmarkId::Mf3_2 => "MF3.2",
            BenchmarkId::Mf3_3 => "MF3.3",
            BenchmarkId::Mf4_1 => "MF4.1",
            BenchmarkId::Mf4_2 => "MF4.2",
            BenchmarkId::Mf4_3 => "MF4.3",
            BenchmarkId::Mf5_1 => "MF5.1",
            BenchmarkId::Mf5_2 => "MF5.2",
            BenchmarkId::Mf6 => "MF6",
        }
    }

    pub fn valid_ids() -> String {
        Self::ALL.map(Self::as_str).join(", ")
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownBenchmark {
                id: s.to_string(),
                valid: Self::valid_ids(),
            })
    }
}

impl TryFrom<String> for BenchmarkId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BenchmarkId> for String {
    fn from(id: BenchmarkId) -> Self {
        id.as_str().to_string()
    }
}

/// Fidelity index `l`, 1 being the most accurate and most expensive level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct FidelityLevel(usize);

impl FidelityLevel {
    pub const HIGHEST: FidelityLevel = FidelityLevel(1);

    pub fn new(index: usize) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("fidelity levels start at 1".into()));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_highest(self) -> bool {
        self.0 == 1
    }

    /// Errors unless `1 <= self <= levels`.
    pub fn check(self, levels: usize) -> Result<()> {
        if self.0 > levels {
            return Err(Error::InvalidLevel {
                level: self.0,
                levels,
            });
        }
        Ok(())
    }
}

impl TryFrom<usize> for FidelityLevel {
    type Error = Error;

    fn try_from(index: usize) -> Result<Self> {
        Self::new(index)
    }
}

impl From<FidelityLevel> for usize {
    fn from(level: FidelityLevel) -> Self {
        level.0
    }
}

impl fmt::Display for FidelityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Where the global optimum lies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimumLocation {
    Point(Vec<f64>),
    /// Every point whose first coordinate equals the given value.
    FirstCoordinate(f64),
    /// Every point with `x_1 * x_2` equal to one of the given products.
    Hyperbolas(Vec<f64>),
}

impl OptimumLocation {
    /// A representative optimal point inside `bounds`.
    pub fn representative(&self, bounds: &Bounds) -> Vec<f64> {
        match self {
            OptimumLocation::Point(p) => p.clone(),
            OptimumLocation::FirstCoordinate(v) => {
                let mut p = bounds.center();
                p[0] = *v;
                p
            }
            OptimumLocation::Hyperbolas(products) => {
                let c = products[0];
                let x1 = c.sqrt().clamp(bounds.lower()[0], bounds.upper()[0]);
                vec![x1, c / x1]
            }
        }
    }
}

/// Reference optimum and response range used for metric normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValues {
    pub optimum: OptimumLocation,
    pub f_star: f64,
    pub f_min: f64,
    pub f_max: f64,
}

/// Immutable description of one benchmark instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub id: BenchmarkId,
    pub dimension: usize,
    pub bounds: Bounds,
    /// `λ_1 .. λ_L`, in equivalent high-fidelity evaluations.
    pub fidelity_costs: Vec<f64>,
    pub budget: f64,
    pub reference: ReferenceValues,
}

impl BenchmarkSpec {
    pub fn levels(&self) -> usize {
        self.fidelity_costs.len()
    }

    pub fn lowest_level(&self) -> FidelityLevel {
        FidelityLevel(self.levels())
    }

    pub fn cost(&self, level: FidelityLevel) -> Result<f64> {
        level.check(self.levels())?;
        Ok(self.fidelity_costs[level.0 - 1])
    }

    /// Structural invariants of a tabulated instance.
    ///
    /// The tabulated `f_min` is rounded to five significant digits and can
    /// sit a hair above `f_star`; a slack of one unit in that digit is allowed.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(format!("{}: {msg}", self.id)));
        if self.bounds.dim() != self.dimension || self.dimension == 0 {
            return bad("bounds do not match dimension".into());
        }
        if self.fidelity_costs.first() != Some(&1.0) {
            return bad("highest-fidelity cost must be 1".into());
        }
        if self
            .fidelity_costs
            .windows(2)
            .any(|w| !(w[1] < w[0] && w[1] > 0.0))
        {
            return bad("fidelity costs must be positive and strictly decreasing".into());
        }
        if !self.budget.is_finite() || self.budget <= 0.0 {
            return bad("budget must be positive".into());
        }
        let r = &self.reference;
        let slack = 1e-4 * r.f_min.abs().max(1.0);
        if !(r.f_min <= r.f_star + slack && r.f_star <= r.f_max && r.f_min < r.f_max) {
            return bad(format!(
                "reference values out of order: f_min {} f* {} f_max {}",
                r.f_min, r.f_star, r.f_max
            ));
        }
        if let OptimumLocation::Point(p) = &r.optimum {
            self.bounds.check(p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_strings() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.as_str().parse::<BenchmarkId>().unwrap(), id);
        }
        assert_eq!("mf2.2".parse::<BenchmarkId>().unwrap(), BenchmarkId::Mf2_2);
    }

    #[test]
    fn unknown_id_lists_valid_ones() {
        let err = "MF0".parse::<BenchmarkId>().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("MF0") && msg.contains("MF5.2") && msg.contains("MF6"));
    }

    #[test]
    fn level_zero_is_rejected() {
        assert!(FidelityLevel::new(0).is_err());
        assert!(FidelityLevel::new(3).unwrap().check(2).is_err());
        assert!(FidelityLevel::new(2).unwrap().check(2).is_ok());
    }
}
