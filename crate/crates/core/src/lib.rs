//! Analytical benchmark problems for multifidelity optimization.
//!
//! The crate bundles six benchmark families (Forrester, Rosenbrock,
//! shifted-rotated Rastrigin, heterogeneous, coupled spring-mass and
//! Paciorek) at every fidelity level, a budget-charging evaluation
//! [`oracle`], the goal-sensitive and goal-insensitive assessment
//! [`metrics`], and a handful of baseline [`solvers`] that drive the oracle.
//!
//! ```
//! use mfbench::{benchmarks, FidelityLevel};
//!
//! let forrester = benchmarks::get_benchmark("MF1.1").unwrap();
//! let f = forrester
//!     .evaluate_noise_free(FidelityLevel::HIGHEST, &[0.75724876])
//!     .unwrap();
//! assert!((f + 6.020740).abs() < 1e-6);
//! ```

pub mod benchmarks;
pub mod domain;
pub mod dynamics;
mod error;
pub mod metrics;
pub mod oracle;
pub mod sampling;
pub mod solvers;

pub use domain::{
    scale_to_unit, unscale, BenchmarkId, BenchmarkSpec, Bounds, BudgetLedger, DesignPoint,
    FidelityLevel, OptimumLocation, ReferenceValues,
};
pub use error::{Error, Result};
