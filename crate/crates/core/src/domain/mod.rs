//! Domain types shared by the whole crate.

mod bounds;
mod budget;
mod spec;

pub use bounds::{scale_to_unit, unscale, Bounds, DesignPoint, DOMAIN_TOLERANCE};
pub use budget::{BudgetLedger, COST_RESOLUTION};
pub use spec::{BenchmarkId, BenchmarkSpec, FidelityLevel, OptimumLocation, ReferenceValues};
