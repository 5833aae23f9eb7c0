use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("component {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfDomain {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("expected a {expected}-dimensional point, got {actual} components")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("fidelity level {level} is not defined (available: 1..={levels})")]
    InvalidLevel { level: usize, levels: usize },

    #[error("unknown benchmark `{id}`; valid ids: {valid}")]
    UnknownBenchmark { id: String, valid: String },

    /// The next charge would exceed the budget. Terminal for a run.
    #[error("budget exhausted: {spent} of {total} spent, refused charge of {cost}")]
    BudgetExhausted { spent: f64, total: f64, cost: f64 },

    #[error("degenerate eigenproblem: {0}")]
    Degenerate(String),

    #[error("unknown solver `{name}`; available: {available}")]
    UnknownSolver { name: String, available: String },

    #[error("solver `{solver}`: {message}")]
    InvalidParameter { solver: String, message: String },

    #[error("solver kept querying after {refusals} budget refusals")]
    RunawaySolver { refusals: usize },

    #[error("run has no high-fidelity evaluation to report")]
    NoHighFidelityEvidence,
}

impl Error {
    pub fn is_exhausted(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}
