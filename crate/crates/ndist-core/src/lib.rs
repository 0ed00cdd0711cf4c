//! Generalized distances on `n`-tuples of points.
//!
//! A classical distance compares two points; the functions in this crate
//! compare `n` of them at once. An *n-distance* is a symmetric nonnegative
//! function `d` on n-tuples that vanishes exactly on constant tuples and
//! satisfies the simplex inequality
//!
//! ```text
//! d(x_1, ..., x_n) <= K * sum_i d(x_1, ..., x_n)_i^z
//! ```
//!
//! for every pivot `z`, where the `i`-th term on the right replaces `x_i`
//! by `z`, and `K = 1`. The least `K` for which the inequality holds is the
//! *best constant* of the distance.
//!
//! The crate ships:
//!
//! * a catalogue of concrete n-distances (label-based, real-line, planar,
//!   Fermat-point and graph based) with their known best constants,
//! * sampling-based axiom and simplex-inequality checkers,
//! * a deterministic stochastic estimator that brackets best constants
//!   from below via random search plus hill-climb refinement,
//! * exact rational arithmetic wherever a distance is integer-valued, so
//!   witness ratios reproduce the known constants exactly.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature and enable `libm` for float math.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("ndist-core requires either the `std` feature (default) or the `libm` feature");

pub mod distance;
pub mod elementary;
pub mod error;
pub mod estimate;
pub mod fermat;
pub mod gdistance;
pub mod geometry;
mod maths;
pub mod registry;
pub mod space;
pub mod value;
pub mod verify;

pub use distance::{
    eval_replaced, simplex_ratio, Config, Metric, NDistance, RatioSample, SimplexViolation,
    TOLERANCE,
};
pub use error::{Error, Result};
pub use value::{KBound, Value};
