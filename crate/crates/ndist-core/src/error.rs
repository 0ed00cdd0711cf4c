//! Error type shared across the crate.

use alloc::string::String;

/// Errors raised by distance construction, evaluation, and verification.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A tuple had the wrong number of entries for the distance.
    #[error("expected {expected} points, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// A replaced-tuple index was outside `0..arity`.
    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    /// A config had positive numerator but zero denominator: no finite
    /// constant can satisfy the simplex inequality there, so the function
    /// under test is not an n-distance.
    #[error("simplex ratio unbounded: d = {numerator} while all pivot-replaced values vanish at {config}")]
    UnboundedRatio { numerator: f64, config: String },

    /// Invalid construction parameters.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Name not present in the distance registry.
    #[error("unknown distance `{0}`")]
    UnknownDistance(String),

    /// Iterative solver ran out of iterations without an optimality
    /// certificate.
    #[error("solver did not converge after {iterations} iterations")]
    SolverDiverged { iterations: usize },

    /// Graph operations require connectivity.
    #[error("graph is not connected")]
    Disconnected,

    /// Loops or parallel edges are not allowed.
    #[error("graph is not simple: {0}")]
    NotSimple(String),

    /// A vertex triple without a unique median.
    #[error("triple ({u}, {v}, {w}) has {count} medians, expected exactly one")]
    NotMedian { u: usize, v: usize, w: usize, count: usize },

    /// Input on which the requested quantity is undefined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Empty input where at least one element is required.
    #[error("empty input")]
    Empty,
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
