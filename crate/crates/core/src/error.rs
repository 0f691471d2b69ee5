use thiserror::Error;

/// Mathematical and structural failures raised by the library.
///
/// Input-syntax problems live in [`crate::problem::ProblemError`]; everything
/// here is a statement about the objects being computed with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("an ideal needs at least one generator")]
    EmptyGenerators,

    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("negative exponent in a monomial generator")]
    NegativeExponent,

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,

    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,

    #[error("ideal is not finitely supported: transform along {chain:?} is {transform:?}, proper but not primary")]
    NotFinitelySupported {
        /// Direction indices (0-based) leading to the offending point.
        chain: Vec<usize>,
        /// Minimal generators of the offending transform in that point's coordinates.
        transform: Vec<Vec<i64>>,
    },

    #[error("base-point recursion exceeded the depth cap of {0}")]
    DepthExceeded(usize),

    #[error("ideal is not integrally closed")]
    NotComplete,

    #[error("special *-simple construction failed verification: {0}")]
    ConstructionUnverified(String),

    #[error("search budget exceeded: {explored} candidates needed, budget {budget}")]
    SearchBudgetExceeded { explored: u128, budget: u128 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dimension {0} exceeds the supported maximum of 5 for polyhedral computations")]
    DimensionTooLarge(usize),

    #[error("integer overflow in a 64-bit domain value")]
    Overflow,

    #[error("valuation is negative on a chart generator and has no center there")]
    NotCentered,

    #[error("vector is not in the chart's lattice")]
    NotInChart,

    #[error("Hilbert-Samuel function did not stabilize by n = {0}")]
    DidNotStabilize(usize),

    #[error("invalid base-point set: {0}")]
    InvalidGamma(String),

    #[error("direction index {index} out of range for dimension {dim}")]
    InvalidDirection { index: usize, dim: usize },

    #[error("{0} is not a minimal generator of the ideal's closure")]
    NotAGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
