//! Exact-or-approximate real numbers.
//!
//! Integer-valued distances (drastic, cardinality, direction counts, graph
//! distances, the arithmetic-progression distance) must reproduce their best
//! constants *exactly*, so their values are carried as `i64` rationals.
//! Geometric distances involve square roots and stay in `f64`. Mixed
//! arithmetic degrades to `f64`; exact arithmetic falls back to `f64` on
//! (unlikely) overflow rather than panicking.

use core::cmp::Ordering;
use core::fmt;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::maths;

/// A nonnegative real carried exactly when possible.
#[derive(Clone, Copy, Debug)]
pub enum Value {
    /// Exact `i64` rational.
    Exact(Rational64),
    /// Plain `f64`.
    Approx(f64),
}

impl Value {
    /// Exact zero.
    pub fn zero() -> Self {
        Value::Exact(Rational64::zero())
    }

    /// Exact integer.
    pub fn from_int(n: i64) -> Self {
        Value::Exact(Rational64::from_integer(n))
    }

    /// Exact ratio `p/q`.
    ///
    /// Panics if `q == 0` (programming error, not data).
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Value::Exact(Rational64::new(p, q))
    }

    pub fn from_rational(r: Rational64) -> Self {
        Value::Exact(r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    /// Exact payload, if any.
    pub fn as_exact(&self) -> Option<Rational64> {
        match self {
            Value::Exact(r) => Some(*r),
            Value::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Approx(x) => *x,
        }
    }

    /// True when the value is zero up to `tol` (exact values compare
    /// against zero exactly).
    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Approx(x) => maths::abs(*x) <= tol,
        }
    }

    /// Sum, staying exact when both sides are.
    pub fn add(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => match a.checked_add(b) {
                Some(s) => Value::Exact(s),
                None => Value::Approx(self.to_f64() + rhs.to_f64()),
            },
            _ => Value::Approx(self.to_f64() + rhs.to_f64()),
        }
    }

    /// Product, staying exact when both sides are.
    pub fn mul(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => match a.checked_mul(b) {
                Some(p) => Value::Exact(p),
                None => Value::Approx(self.to_f64() * rhs.to_f64()),
            },
            _ => Value::Approx(self.to_f64() * rhs.to_f64()),
        }
    }

    /// Difference (may go negative; callers decide what that means).
    pub fn sub(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => match a.checked_sub(b) {
                Some(d) => Value::Exact(d),
                None => Value::Approx(self.to_f64() - rhs.to_f64()),
            },
            _ => Value::Approx(self.to_f64() - rhs.to_f64()),
        }
    }

    /// Quotient, staying exact when both sides are. `rhs` must be nonzero.
    pub fn div(&self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) if !b.is_zero() => match a.checked_div(b) {
                Some(q) => Value::Exact(q),
                None => Value::Approx(self.to_f64() / rhs.to_f64()),
            },
            _ => Value::Approx(self.to_f64() / rhs.to_f64()),
        }
    }

    /// Total order for max-reductions. Exact pairs compare exactly,
    /// everything else through `f64`. Values are finite by invariant.
    pub fn total_cmp(&self, rhs: &Value) -> Ordering {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&rhs.to_f64()),
        }
    }

    /// `self > rhs + tol`, with `tol` applied only when a float is involved.
    pub fn exceeds(&self, rhs: &Value, tol: f64) -> bool {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => a > b,
            _ => self.to_f64() > rhs.to_f64() + tol,
        }
    }

    /// `|self - rhs| <= tol`, exact equality when both sides are exact.
    pub fn close_to(&self, rhs: &Value, tol: f64) -> bool {
        match (self, rhs) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => maths::abs(self.to_f64() - rhs.to_f64()) <= tol,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            // 17 significant digits round-trip any f64.
            Value::Approx(x) => write!(f, "{:.16e}", x),
        }
    }
}

/// Known best constant of a distance: an exact rational, or a proved
/// bracket when the exact value is open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KBound {
    /// `K*` is known exactly.
    Exact(Rational64),
    /// Only `lo <= K* <= hi` (or `< hi` when `hi_strict`) is known.
    Interval {
        lo: Rational64,
        hi: Rational64,
        hi_strict: bool,
    },
}

impl KBound {
    pub fn exact(p: i64, q: i64) -> Self {
        KBound::Exact(Rational64::new(p, q))
    }

    /// Lower end of the bracket.
    pub fn lower(&self) -> Rational64 {
        match self {
            KBound::Exact(k) => *k,
            KBound::Interval { lo, .. } => *lo,
        }
    }

    /// Upper end of the bracket; the simplex inequality is guaranteed at
    /// this constant.
    pub fn upper(&self) -> Rational64 {
        match self {
            KBound::Exact(k) => *k,
            KBound::Interval { hi, .. } => *hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, KBound::Exact(_))
    }

    pub fn hi_strict(&self) -> bool {
        match self {
            KBound::Exact(_) => false,
            KBound::Interval { hi_strict, .. } => *hi_strict,
        }
    }
}

impl fmt::Display for KBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KBound::Exact(k) => write!(f, "{}", Value::Exact(*k)),
            KBound::Interval { lo, hi, hi_strict } => write!(
                f,
                "[{}, {}{}",
                Value::Exact(*lo),
                Value::Exact(*hi),
                if *hi_strict { ")" } else { "]" }
            ),
        }
    }
}
