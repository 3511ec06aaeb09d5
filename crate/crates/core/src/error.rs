use thiserror::Error;

/// Errors produced by distribution construction, evaluation, fitting, and
/// estimation routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates a family constraint (for example `sigma <= 0`).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An argument lies outside the domain of the operation (for example a
    /// quantile level outside `[0, 1]`).
    #[error("domain error: {0}")]
    DomainError(String),

    /// A named family is not recognized when reconstructing a descriptor.
    #[error("unknown family: {0}")]
    UnknownFamily(String),

    /// The input data set is empty.
    #[error("empty data")]
    EmptyData,

    /// The data admit no valid maximum-likelihood estimate (for example zero
    /// variance where a positive scale is required).
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// Data contain non-positive values where a positive support is required.
    #[error("non-positive data: {0}")]
    NonPositive(String),

    /// A transition-matrix row sums to less than one, so no state can be
    /// selected.
    #[error("degenerate transition row {row}: probabilities sum to less than 1")]
    DegenerateRow { row: usize },

    /// Two linked shapes disagree (vector lengths, matrix dimensions, ...).
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A covariance matrix is not symmetric positive definite.
    #[error("covariance matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    /// A product or mixture was given no components.
    #[error("component list is empty")]
    EmptyComponents,

    /// Mixture weights are not a probability vector.
    #[error("mixture weights are not a simplex: {0}")]
    NotASimplex(String),

    /// Mixture components do not share a variate form and value support.
    #[error("mixture components mix variate forms or value supports")]
    MixedVariateForms,

    /// A component index is out of range.
    #[error("index {index} out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },

    /// An observation has zero density under every mixture component.
    #[error("observation {row} has zero density under every component")]
    AllZeroDensity { row: usize },

    /// A mixture component received (numerically) no responsibility mass.
    #[error("component {component} received no responsibility mass")]
    EmptyComponent { component: usize },

    /// Histogram edges are invalid (too few, non-increasing, or non-finite).
    #[error("bad histogram edges: {0}")]
    BadEdges(String),

    /// A kernel bandwidth is not strictly positive and finite.
    #[error("bad bandwidth: {0}")]
    BadBandwidth(f64),

    /// The requested family has no implemented characteristic function.
    #[error("no characteristic function for {0}")]
    NoCharacteristicFunction(String),

    /// A numeric routine encountered a non-finite value it cannot recover
    /// from.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
