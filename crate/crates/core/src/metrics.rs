//! Assessment metrics.
//!
//! Goal-insensitive: the normalized RMSE of a surrogate over a dense
//! validation sample. Goal-sensitive: the scaled design error `e_x`, the
//! normalized objective error `e_f` of the incumbent evaluated at the
//! highest fidelity, and their quadratic mean `e_t`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::benchmarks::Benchmark;
use crate::oracle::{EvaluationRecord, TracePoint};
use crate::sampling::{full_factorial, latin_hypercube};
use crate::{scale_to_unit, unscale, Bounds, DesignPoint, Error, FidelityLevel, OptimumLocation};
use crate::{ReferenceValues, Result};

/// Seed of the Latin hypercube used for validation samples with `D >= 4`.
pub const VALIDATION_SEED: u64 = 0x5eed_0f5a_3b1e;

/// Source of the `(f_min, f_max)` pair used to normalize objective errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMode {
    /// Reference values shipped with the benchmark.
    #[default]
    Table,
    /// Extremes of the level-1 values observed during the run.
    Observed,
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalizationMode::Table => "table",
            NormalizationMode::Observed => "observed",
        })
    }
}

impl FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(NormalizationMode::Table),
            "observed" => Ok(NormalizationMode::Observed),
            other => Err(Error::InvalidArgument(format!(
                "normalization mode must be `table` or `observed`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub f_min: f64,
    pub f_max: f64,
}

impl Normalization {
    pub fn new(f_min: f64, f_max: f64) -> Result<Self> {
        if !f_min.is_finite() || !f_max.is_finite() || f_max <= f_min {
            return Err(Error::InvalidArgument(format!(
                "degenerate normalization: f_min {f_min}, f_max {f_max}"
            )));
        }
        Ok(Self { f_min, f_max })
    }

    pub fn from_reference(reference: &ReferenceValues) -> Result<Self> {
        Self::new(reference.f_min, reference.f_max)
    }

    /// Extremes of `values`.
    pub fn observed(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        let (lo, hi) = values
            .into_iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            });
        Self::new(lo, hi)
    }

    pub fn range(&self) -> f64 {
        self.f_max - self.f_min
    }
}

/// Dense sample of truth and surrogate values.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationSample {
    pub points: Vec<DesignPoint>,
    pub truth: Vec<f64>,
    pub predicted: Vec<f64>,
}

impl ValidationSample {
    pub fn new(points: Vec<DesignPoint>, truth: Vec<f64>, predicted: Vec<f64>) -> Result<Self> {
        if points.len() != truth.len() || truth.len() != predicted.len() {
            return Err(Error::InvalidArgument(format!(
                "sample lengths differ: {} points, {} truth, {} predicted",
                points.len(),
                truth.len(),
                predicted.len()
            )));
        }
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "validation sample needs S >= 2".into(),
            ));
        }
        Ok(Self {
            points,
            truth,
            predicted,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A surrogate model that can be interrogated anywhere in the box.
pub trait Predictor {
    fn predict(&self, x: &[f64]) -> f64;
}

impl<F: Fn(&[f64]) -> f64> Predictor for F {
    fn predict(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Sample locations for the RMSE metric: a full-factorial grid for `D <= 3`
/// (1001, 101² and 41³ points) and a seeded Latin hypercube of `1000 D`
/// points beyond.
pub fn validation_points(bounds: &Bounds) -> Vec<DesignPoint> {
    let d = bounds.dim();
    let unit = match d {
        1 => full_factorial(1001, 1),
        2 => full_factorial(101, 2),
        3 => full_factorial(41, 3),
        _ => latin_hypercube(1000 * d, d, &mut ChaCha8Rng::seed_from_u64(VALIDATION_SEED)),
    };
    unit.iter()
        .map(|u| unscale(u, bounds).expect("unit points"))
        .collect()
}

/// Evaluates the noise-free level-1 truth and the surrogate on
/// [`validation_points`]. Truth evaluations are instrumentation and cost nothing.
pub fn build_validation_sample(
    benchmark: &Benchmark,
    surrogate: &dyn Predictor,
) -> Result<ValidationSample> {
    let points = validation_points(&benchmark.spec().bounds);
    let truth = points
        .iter()
        .map(|p| benchmark.evaluate_noise_free(FidelityLevel::HIGHEST, p.as_slice()))
        .collect::<Result<Vec<_>>>()?;
    let predicted = points
        .iter()
        .map(|p| surrogate.predict(p.as_slice()))
        .collect();
    ValidationSample::new(points, truth, predicted)
}

/// `sqrt(mean((f - f̂)²)) / (f_max - f_min)`.
pub fn rmse_error(sample: &ValidationSample, norm: Normalization) -> f64 {
    let sq: f64 = sample
        .truth
        .iter()
        .zip(&sample.predicted)
        .map(|(t, p)| (t - p).powi(2))
        .sum();
    (sq / sample.len() as f64).sqrt() / norm.range()
}

/// Distance between `x_hat` and the optimal set in unit-hypercube
/// coordinates, divided by `sqrt(D)`.
pub fn error_x(x_hat: &[f64], reference: &ReferenceValues, bounds: &Bounds) -> Result<f64> {
    let scaled = scale_to_unit(x_hat, bounds)?;
    let s = scaled.as_slice();
    let root_d = (bounds.dim() as f64).sqrt();
    let distance = match &reference.optimum {
        OptimumLocation::Point(p) => {
            let target = scale_to_unit(p, bounds)?;
            s.iter()
                .zip(target.as_slice())
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt()
        }
        OptimumLocation::FirstCoordinate(v) => {
            let (l, u) = (bounds.lower()[0], bounds.upper()[0]);
            (s[0] - (v - l) / (u - l)).abs()
        }
        OptimumLocation::Hyperbolas(products) => {
            if bounds.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    actual: bounds.dim(),
                });
            }
            products
                .iter()
                .filter_map(|&c| distance_to_hyperbola(x_hat, c, bounds))
                .fold(f64::INFINITY, f64::min)
        }
    };
    Ok(distance / root_d)
}

/// Scaled distance from `x` to the part of `x1 x2 = c` inside `bounds`,
/// or `None` if that branch misses the box.
///
/// Stationary points of the scaled squared distance are roots of
/// `w2² X⁴ - p w2² X³ + q c w1² X - c² w1²`, with `(p, q) = x` and `w` the
/// box widths; they are bracketed on a fine grid and bisected.
fn distance_to_hyperbola(x: &[f64], c: f64, bounds: &Bounds) -> Option<f64> {
    let (l, u) = (bounds.lower(), bounds.upper());
    let (w1, w2) = (u[0] - l[0], u[1] - l[1]);
    let (p, q) = (x[0], x[1]);
    let lo = l[0].max(c / u[1]);
    let hi = u[0].min(c / l[1]);
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return None;
    }
    let dist = |t: f64| (((t - p) / w1).powi(2) + ((c / t - q) / w2).powi(2)).sqrt();
    let poly = |t: f64| {
        let (a, b) = (w2 * w2, w1 * w1);
        (((a * t - p * a) * t) * t + q * c * b) * t - c * c * b
    };
    let mut best = dist(lo).min(dist(hi));
    const CELLS: usize = 512;
    let mut a = lo;
    let mut fa = poly(a);
    for i in 1..=CELLS {
        let b = if i == CELLS {
            hi
        } else {
            lo + (hi - lo) * i as f64 / CELLS as f64
        };
        let fb = poly(b);
        if fa == 0.0 {
            best = best.min(dist(a));
        } else if fa.signum() != fb.signum() {
            let (mut x0, mut x1, mut f0) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (x0 + x1);
                if mid <= x0 || mid >= x1 {
                    break;
                }
                let fm = poly(mid);
                if fm == 0.0 {
                    x0 = mid;
                    x1 = mid;
                    break;
                }
                if fm.signum() == f0.signum() {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            best = best.min(dist(x0)).min(dist(x1));
        }
        a = b;
        fa = fb;
    }
    Some(best)
}

/// `(f(x̂*) - f_min) / (f_max - f_min)`, not clamped.
pub fn error_f(f_at_x_hat: f64, norm: Normalization) -> f64 {
    (f_at_x_hat - norm.f_min) / norm.range()
}

/// `sqrt((e_x² + e_f²) / 2)`.
pub fn error_t(e_x: f64, e_f: f64) -> f64 {
    ((e_x * e_x + e_f * e_f) / 2.0).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    /// Only for solvers that expose a surrogate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_rmse: Option<f64>,
    pub e_x: f64,
    pub e_f: f64,
    pub e_t: f64,
    pub normalization_mode: NormalizationMode,
}

/// Metrics of one run plus the incumbent they were computed at.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunAssessment {
    pub incumbent: Vec<f64>,
    /// Noise-free level-1 value at the incumbent.
    pub f_incumbent: f64,
    pub report: MetricsReport,
}

/// The incumbent recorded in a history: the off-budget instrumentation
/// point when present, otherwise the best charged level-1 evaluation.
pub fn incumbent_of(records: &[EvaluationRecord]) -> Option<Vec<f64>> {
    if let Some(r) = records.iter().rev().find(|r| r.off_budget) {
        return Some(r.point.clone());
    }
    records
        .iter()
        .filter(|r| !r.off_budget && r.level.is_highest())
        .fold(None::<&EvaluationRecord>, |best, r| match best {
            Some(b) if b.value <= r.value => Some(b),
            _ => Some(r),
        })
        .map(|r| r.point.clone())
}

/// Goal-sensitive metrics from the records of one run.
pub fn assess_records(
    benchmark: &Benchmark,
    records: &[EvaluationRecord],
    mode: NormalizationMode,
) -> Result<RunAssessment> {
    let incumbent = incumbent_of(records).ok_or(Error::NoHighFidelityEvidence)?;
    let spec = benchmark.spec();
    let f_incumbent = benchmark.evaluate_noise_free(FidelityLevel::HIGHEST, &incumbent)?;
    let norm = match mode {
        NormalizationMode::Table => Normalization::from_reference(&spec.reference)?,
        NormalizationMode::Observed => Normalization::observed(
            records
                .iter()
                .filter(|r| !r.off_budget && r.level.is_highest())
                .map(|r| r.value),
        )?,
    };
    let e_x = error_x(&incumbent, &spec.reference, &spec.bounds)?;
    let e_f = error_f(f_incumbent, norm);
    Ok(RunAssessment {
        incumbent,
        f_incumbent,
        report: MetricsReport {
            e_rmse: None,
            e_x,
            e_f,
            e_t: error_t(e_x, e_f),
            normalization_mode: mode,
        },
    })
}

/// Order statistics of one metric across repeats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub median: f64,
    pub mean: f64,
    /// Sample standard deviation; zero for a single value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub iqr: f64,
}

/// Linear-interpolation quantile of ascending data, `q` in `[0, 1]`.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    }
}

/// Median of arbitrary data; infinities propagate.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

impl Stats {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("statistics of an empty set".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mean = sorted.iter().sum::<f64>() / n;
        let std = if sorted.len() > 1 {
            (sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Ok(Self {
            median: median(&sorted),
            mean,
            std,
            min: sorted[0],
            max: sorted[sorted.len() - 1],
            iqr: quantile(&sorted, 0.75) - quantile(&sorted, 0.25),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub e_x: Stats,
    pub e_f: Stats,
    pub e_t: Stats,
    /// Over the reports that carry an RMSE; absent if none does.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_rmse: Option<Stats>,
}

/// Cross-repeat statistics of each metric.
pub fn aggregate(reports: &[MetricsReport]) -> Result<MetricsSummary> {
    if reports.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot aggregate zero reports".into(),
        ));
    }
    let collect = |f: fn(&MetricsReport) -> f64| reports.iter().map(f).collect::<Vec<_>>();
    let rmse: Vec<f64> = reports.iter().filter_map(|r| r.e_rmse).collect();
    Ok(MetricsSummary {
        e_x: Stats::from_values(&collect(|r| r.e_x))?,
        e_f: Stats::from_values(&collect(|r| r.e_f))?,
        e_t: Stats::from_values(&collect(|r| r.e_t))?,
        e_rmse: if rmse.is_empty() {
            None
        } else {
            Some(Stats::from_values(&rmse)?)
        },
    })
}

/// `points` evenly spaced costs from 0 to `budget`.
pub fn cost_grid(budget: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|j| budget * j as f64 / (points - 1) as f64)
        .collect()
}

/// Best-so-far value at each grid cost; `+inf` before the first level-1
/// evaluation, and the last value carried forward past the end of the run.
pub fn resample_trace(trace: &[TracePoint], grid: &[f64]) -> Vec<f64> {
    let slack = crate::domain::COST_RESOLUTION;
    let mut out = Vec::with_capacity(grid.len());
    let mut next = 0;
    let mut current = f64::INFINITY;
    for &c in grid {
        while next < trace.len() && trace[next].cumulative_cost <= c + slack {
            current = current.min(trace[next].value);
            next += 1;
        }
        out.push(current);
    }
    out
}

/// Pointwise median of equally long curves.
pub fn median_curve(curves: &[Vec<f64>]) -> Result<Vec<f64>> {
    let Some(first) = curves.first() else {
        return Err(Error::InvalidArgument("no curves to combine".into()));
    };
    if curves.iter().any(|c| c.len() != first.len()) {
        return Err(Error::InvalidArgument("curves differ in length".into()));
    }
    Ok((0..first.len())
        .map(|j| median(&curves.iter().map(|c| c[j]).collect::<Vec<_>>()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::get_benchmark;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn report(e_x: f64, e_f: f64) -> MetricsReport {
        MetricsReport {
            e_rmse: None,
            e_x,
            e_f,
            e_t: error_t(e_x, e_f),
            normalization_mode: NormalizationMode::Table,
        }
    }

    fn sample(truth: Vec<f64>, predicted: Vec<f64>) -> ValidationSample {
        let points = (0..truth.len())
            .map(|i| DesignPoint::new(vec![i as f64]))
            .collect();
        ValidationSample::new(points, truth, predicted).unwrap()
    }

    #[test]
    fn rmse_values() {
        let n = Normalization::new(0.0, 1.0).unwrap();
        assert_eq!(rmse_error(&sample(vec![0.0, 1.0], vec![0.0, 1.0]), n), 0.0);
        assert_eq!(rmse_error(&sample(vec![0.0, 1.0], vec![1.0, 0.0]), n), 1.0);
        assert!(Normalization::new(2.0, 2.0).is_err());
        assert!(
            ValidationSample::new(vec![DesignPoint::new(vec![0.0])], vec![0.0], vec![0.0]).is_err()
        );
        assert!(ValidationSample::new(vec![], vec![0.0], vec![]).is_err());
    }

    #[test]
    fn error_x_values() {
        let b = get_benchmark("MF2.1").unwrap();
        let s = b.spec();
        assert_eq!(error_x(&[1.0, 1.0], &s.reference, &s.bounds).unwrap(), 0.0);
        assert_abs_diff_eq!(
            error_x(&[-2.0, -2.0], &s.reference, &s.bounds).unwrap(),
            0.75,
            epsilon = 1e-15
        );
        let b = get_benchmark("MF4.2").unwrap();
        let s = b.spec();
        assert_eq!(error_x(&[0.0, 0.77], &s.reference, &s.bounds).unwrap(), 0.0);
        assert_abs_diff_eq!(
            error_x(&[0.5, 0.1], &s.reference, &s.bounds).unwrap(),
            0.5 / 2f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(error_x(&[1.5, 0.1], &s.reference, &s.bounds).is_err());
    }

    #[test]
    fn hyperbola_distance() {
        let b = get_benchmark("MF6").unwrap();
        let s = b.spec();
        for c in [2.0 / (3.0 * PI), 2.0 / (7.0 * PI)] {
            for x1 in [0.3, c.sqrt(), c / 0.3 - 1e-3] {
                let x = [x1, c / x1];
                if s.bounds.contains(&x) {
                    assert!(error_x(&x, &s.reference, &s.bounds).unwrap() < 1e-12);
                }
            }
        }
        // brute-force oracle: nearest of many points on both branches
        let x = [0.9, 0.95];
        let mut brute = f64::INFINITY;
        for c in [2.0 / (3.0 * PI), 2.0 / (7.0 * PI)] {
            for i in 0..=200_000 {
                let t = 0.3 + 0.7 * i as f64 / 200_000.0;
                let y = c / t;
                if (0.3..=1.0).contains(&y) {
                    let d = (((t - x[0]) / 0.7).powi(2) + ((y - x[1]) / 0.7).powi(2)).sqrt();
                    brute = brute.min(d);
                }
            }
        }
        let e = error_x(&x, &s.reference, &s.bounds).unwrap() * 2f64.sqrt();
        assert!(e <= brute + 1e-12 && brute - e < 1e-5, "{e} vs {brute}");
    }

    #[test]
    fn error_f_values() {
        let b = get_benchmark("MF1.1").unwrap();
        let n = Normalization::from_reference(&b.spec().reference).unwrap();
        assert_eq!(error_f(-6.0207, n), 0.0);
        assert!(error_f(-6.020740, n).abs() <= 2e-6);
        let b = get_benchmark("MF2.1").unwrap();
        let n = Normalization::from_reference(&b.spec().reference).unwrap();
        assert_eq!(error_f(3609.0, n), 1.0);
    }

    #[test]
    fn error_t_values() {
        assert_eq!(error_t(0.0, 0.0), 0.0);
        assert_abs_diff_eq!(error_t(0.3, 0.4), 0.353553, epsilon = 1e-6);
        assert_abs_diff_eq!(error_t(0.7, 0.7), 0.7, epsilon = 1e-15);
    }

    #[test]
    fn aggregate_values() {
        let single = aggregate(&[report(0.2, 0.3)]).unwrap();
        for s in [single.e_x, single.e_f] {
            assert_eq!(s.median, s.mean);
            assert_eq!(s.min, s.max);
            assert_eq!(s.std, 0.0);
            assert_eq!(s.iqr, 0.0);
        }
        assert_eq!(single.e_x.median, 0.2);
        let many = aggregate(&[report(0.0, 0.1), report(0.0, 0.3), report(0.0, 0.2)]).unwrap();
        assert_eq!(many.e_f.median, 0.2);
        assert_abs_diff_eq!(many.e_f.std, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(many.e_f.iqr, 0.1, epsilon = 1e-15);
        assert!(many.e_rmse.is_none());
        assert!(aggregate(&[]).is_err());
    }

    #[test]
    fn validation_sample_sizes() {
        let b = get_benchmark("MF1.1").unwrap();
        let pts = validation_points(&b.spec().bounds);
        assert_eq!(pts.len(), 1001);
        assert_eq!(pts[0].as_slice(), &[0.0]);
        assert_eq!(pts[1000].as_slice(), &[1.0]);
        let b = get_benchmark("MF2.2").unwrap();
        assert_eq!(validation_points(&b.spec().bounds).len(), 5000);
        let b = get_benchmark("MF4.3").unwrap();
        assert_eq!(validation_points(&b.spec().bounds).len(), 41 * 41 * 41);
        let b = get_benchmark("MF2.1").unwrap();
        let pts = validation_points(&b.spec().bounds);
        assert_eq!(pts.len(), 101 * 101);
        assert_eq!(pts[0].as_slice(), &[-2.0, -2.0]);
        assert_eq!(pts.last().unwrap().as_slice(), &[2.0, 2.0]);
    }

    #[test]
    fn perfect_surrogate_has_zero_rmse() {
        let b = get_benchmark("MF4.2").unwrap();
        let truth = |x: &[f64]| b.evaluate_noise_free(FidelityLevel::HIGHEST, x).unwrap();
        let s = build_validation_sample(&b, &truth).unwrap();
        let n = Normalization::from_reference(&b.spec().reference).unwrap();
        assert_eq!(rmse_error(&s, n), 0.0);
        let offset = |x: &[f64]| truth(x) + 0.25;
        let s = build_validation_sample(&b, &offset).unwrap();
        assert_abs_diff_eq!(rmse_error(&s, n), 0.25 / n.range(), epsilon = 1e-12);
    }

    #[test]
    fn resampled_trace() {
        let t = |c: f64, v: f64| TracePoint {
            cumulative_cost: c,
            value: v,
            point: vec![],
        };
        let trace = [t(1.0, 5.0), t(3.5, 2.0), t(7.0, 1.0)];
        let grid = cost_grid(10.0, 11);
        let r = resample_trace(&trace, &grid);
        assert_eq!(r[0], f64::INFINITY);
        assert_eq!(&r[1..], &[5.0, 5.0, 5.0, 2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0]);
        let m = median_curve(&[r.clone(), vec![f64::INFINITY; 11], r]).unwrap();
        assert_eq!(m[4], 2.0);
    }

    proptest! {
        #[test]
        fn e_t_identity_and_bounds(ex in 0.0f64..10.0, ef in 0.0f64..10.0) {
            let et = error_t(ex, ef);
            prop_assert!((et * et - (ex * ex + ef * ef) / 2.0).abs() <= 1e-12 * (1.0 + et * et));
            let m = ex.max(ef);
            prop_assert!(et <= m * (1.0 + 1e-15) && et >= m / 2f64.sqrt() * (1.0 - 1e-15));
        }

        #[test]
        fn constant_offset_rmse(delta in -5.0f64..5.0, lo in -3.0f64..3.0, width in 0.1f64..10.0) {
            let truth: Vec<f64> = (0..17).map(|i| (i as f64).sin()).collect();
            let predicted = truth.iter().map(|t| t + delta).collect();
            let n = Normalization::new(lo, lo + width).unwrap();
            let r = rmse_error(&sample(truth, predicted), n);
            prop_assert!((r - delta.abs() / width).abs() < 1e-12);
        }

        #[test]
        fn rmse_affine_invariance(scale in 0.1f64..10.0, shift in -100.0f64..100.0) {
            let truth: Vec<f64> = (0..9).map(|i| (i as f64 * 0.7).cos()).collect();
            let pred: Vec<f64> = (0..9).map(|i| (i as f64 * 0.7).cos() + 0.1 * (i as f64).sin()).collect();
            let n = Normalization::new(-1.0, 1.0).unwrap();
            let base = rmse_error(&sample(truth.clone(), pred.clone()), n);
            let map = |v: &f64| scale * v + shift;
            let n2 = Normalization::new(map(&-1.0), map(&1.0)).unwrap();
            let moved = rmse_error(&sample(truth.iter().map(map).collect(), pred.iter().map(map).collect()), n2);
            prop_assert!((base - moved).abs() < 1e-12);
        }

        #[test]
        fn error_x_invariant_under_rescaled_bounds(
            unit in proptest::collection::vec(0.0f64..=1.0, 3),
            star in proptest::collection::vec(0.0f64..=1.0, 3),
            lo in proptest::collection::vec(-10.0f64..10.0, 3),
            width in proptest::collection::vec(0.01f64..20.0, 3),
        ) {
            let unit_box = Bounds::uniform(3, 0.0, 1.0).unwrap();
            let reference = |p: Vec<f64>| ReferenceValues { optimum: OptimumLocation::Point(p), f_star: 0.0, f_min: 0.0, f_max: 1.0 };
            let base = error_x(&unit, &reference(star.clone()), &unit_box).unwrap();
            let upper: Vec<f64> = lo.iter().zip(&width).map(|(l, w)| l + w).collect();
            let b = Bounds::new(lo, upper).unwrap();
            let x = unscale(&unit, &b).unwrap();
            let s = unscale(&star, &b).unwrap();
            let moved = error_x(x.as_slice(), &reference(s.into_inner()), &b).unwrap();
            prop_assert!((base - moved).abs() < 1e-9);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&base));
        }

        #[test]
        fn median_curve_non_increasing(
            runs in proptest::collection::vec(proptest::collection::vec((0.01f64..5.0, -3.0f64..3.0), 0..30), 1..8)
        ) {
            let grid = cost_grid(100.0, 101);
            let curves: Vec<Vec<f64>> = runs.iter().map(|steps| {
                let mut cost = 0.0;
                let mut best = f64::INFINITY;
                let mut trace = Vec::new();
                for &(dc, v) in steps {
                    cost += dc;
                    if v < best {
                        best = v;
                        trace.push(TracePoint { cumulative_cost: cost, value: v, point: vec![] });
                    }
                }
                resample_trace(&trace, &grid)
            }).collect();
            for c in &curves {
                prop_assert!(c.windows(2).all(|w| w[1] <= w[0]));
            }
            let m = median_curve(&curves).unwrap();
            prop_assert!(m.windows(2).all(|w| w[1] <= w[0] || (w[0].is_nan() && w[1].is_nan())));
        }
    }
}
