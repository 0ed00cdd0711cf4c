//! The n-distance abstraction and simplex-ratio evaluation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::value::{KBound, Value};

/// Comparison tolerance for float-valued distances. Exact (rational)
/// values always compare exactly; this only pads `f64` comparisons.
pub const TOLERANCE: f64 = 1e-9;

/// A symmetric nonnegative function of `n` points.
///
/// Implementations are expected to satisfy the n-distance axioms —
/// permutation invariance, vanishing exactly on constant tuples, and the
/// simplex inequality with `K = 1` — but nothing here enforces them; the
/// [`crate::verify`] module checks them empirically. (This is deliberate:
/// hemimetric wrappers and broken test doubles implement the same trait.)
pub trait NDistance {
    /// Element type of the ground space.
    type Point: Clone + PartialEq + Debug;

    /// Registry identifier, e.g. `"drastic"`.
    fn name(&self) -> &str;

    /// Number of arguments `n >= 2`.
    fn arity(&self) -> usize;

    /// Evaluate on a tuple of exactly `arity` points.
    fn eval(&self, tuple: &[Self::Point]) -> Result<Value>;

    /// Known best constant, when the literature provides one.
    fn theoretical_k(&self) -> Option<KBound> {
        None
    }
}

impl<D: NDistance + ?Sized> NDistance for alloc::boxed::Box<D> {
    type Point = D::Point;

    fn name(&self) -> &str {
        (**self).name()
    }

    fn arity(&self) -> usize {
        (**self).arity()
    }

    fn eval(&self, tuple: &[Self::Point]) -> Result<Value> {
        (**self).eval(tuple)
    }

    fn theoretical_k(&self) -> Option<KBound> {
        (**self).theoretical_k()
    }
}

/// A classical 2-distance used as the base of diameter/sum constructions.
pub trait Metric<P> {
    fn dist(&self, a: &P, b: &P) -> Value;
}

/// One instance of the simplex inequality: an n-tuple plus a pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct Config<P> {
    points: Vec<P>,
    pivot: P,
}

impl<P: Clone + PartialEq + Debug> Config<P> {
    pub fn new(points: Vec<P>, pivot: P) -> Self {
        Config { points, pivot }
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn pivot(&self) -> &P {
        &self.pivot
    }

    /// The tuple with entry `i` replaced by the pivot.
    pub fn replaced(&self, i: usize) -> Result<Vec<P>> {
        if i >= self.points.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                arity: self.points.len(),
            });
        }
        let mut t = self.points.clone();
        t[i] = self.pivot.clone();
        Ok(t)
    }

    /// True when every point equals the first (and hence the value of any
    /// n-distance on it is zero).
    pub fn is_constant_tuple(&self) -> bool {
        self.points.iter().all(|p| *p == self.points[0])
    }

    /// Map the point type, preserving structure.
    pub fn map<Q: Clone + PartialEq + Debug>(&self, f: impl Fn(&P) -> Q) -> Config<Q> {
        Config {
            points: self.points.iter().map(&f).collect(),
            pivot: f(&self.pivot),
        }
    }
}

/// Evaluate `d` on the tuple of `c` with entry `i` set to the pivot.
pub fn eval_replaced<D: NDistance + ?Sized>(d: &D, c: &Config<D::Point>, i: usize) -> Result<Value> {
    check_arity(d, c)?;
    d.eval(&c.replaced(i)?)
}

/// Numerator, denominator, and ratio of one simplex-inequality instance.
#[derive(Clone, Debug)]
pub struct RatioSample<P> {
    pub config: Config<P>,
    /// `d(x_1, ..., x_n)`.
    pub numerator: Value,
    /// `sum_i d(x_1, ..., x_n)_i^z`.
    pub denominator: Value,
    /// `numerator / denominator`, or zero when the numerator vanishes.
    pub ratio: Value,
}

/// A config whose ratio exceeded the constant under test.
#[derive(Clone, Debug)]
pub struct SimplexViolation<P> {
    pub config: Config<P>,
    pub k_tested: Value,
    /// `d(x_1, ..., x_n)`.
    pub lhs: Value,
    /// `k * sum_i d(x_1, ..., x_n)_i^z`.
    pub rhs: Value,
    /// `lhs - rhs`, positive.
    pub excess: f64,
}

impl<P: Clone + PartialEq + Debug> SimplexViolation<P> {
    pub fn map<Q: Clone + PartialEq + Debug>(&self, f: impl Fn(&P) -> Q) -> SimplexViolation<Q> {
        SimplexViolation {
            config: self.config.map(&f),
            k_tested: self.k_tested,
            lhs: self.lhs,
            rhs: self.rhs,
            excess: self.excess,
        }
    }
}

fn check_arity<D: NDistance + ?Sized>(d: &D, c: &Config<D::Point>) -> Result<()> {
    if c.points.len() != d.arity() {
        return Err(Error::ArityMismatch {
            expected: d.arity(),
            got: c.points.len(),
        });
    }
    Ok(())
}

/// Evaluate one simplex-inequality instance.
///
/// The ratio is zero when the numerator vanishes (a non-informative
/// config). A positive numerator with vanishing denominator means no
/// finite constant can work, which is an axiom violation of the function
/// under test, reported as [`Error::UnboundedRatio`].
pub fn simplex_ratio<D: NDistance + ?Sized>(d: &D, config: Config<D::Point>) -> Result<RatioSample<D::Point>> {
    check_arity(d, &config)?;
    let numerator = d.eval(config.points())?;
    let mut denominator = Value::zero();
    for i in 0..d.arity() {
        denominator = denominator.add(&eval_replaced(d, &config, i)?);
    }
    let ratio = if numerator.is_zero(TOLERANCE) {
        Value::zero()
    } else if denominator.is_zero(TOLERANCE) {
        return Err(Error::UnboundedRatio {
            numerator: numerator.to_f64(),
            config: describe_config(&config),
        });
    } else {
        numerator.div(&denominator)
    };
    Ok(RatioSample {
        config,
        numerator,
        denominator,
        ratio,
    })
}

fn describe_config<P: Debug>(c: &Config<P>) -> String {
    format!("points {:?}, pivot {:?}", c.points, c.pivot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::{Cardinality, Diameter, Drastic};
    use alloc::vec;

    #[test]
    fn replaced_tuple_examples() {
        // Drastic n=3 on labels: replacing the odd one out by the pivot
        // yields a constant tuple.
        let d = Drastic::<u32>::new(3).unwrap();
        let c = Config::new(vec![7u32, 7, 9], 7);
        assert_eq!(eval_replaced(&d, &c, 2).unwrap(), Value::zero());
        assert_eq!(eval_replaced(&d, &c, 0).unwrap(), Value::from_int(1));

        // Diameter on reals: (0, 3, 5) with the last entry replaced by 4
        // has max pairwise distance 4. Oracle: exhaustive pairwise max.
        let dm = Diameter::new(3, crate::elementary::AbsDiff).unwrap();
        let pts = [0.0, 3.0, 5.0].map(Value::Approx).to_vec();
        let c = Config::new(pts, Value::Approx(4.0));
        let replaced = [0.0f64, 3.0, 4.0];
        let mut oracle: f64 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                oracle = oracle.max((replaced[i] - replaced[j]).abs());
            }
        }
        assert_eq!(oracle, 4.0);
        assert_eq!(eval_replaced(&dm, &c, 2).unwrap().to_f64(), oracle);

        assert!(matches!(
            eval_replaced(&dm, &c, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn ratio_at_drastic_witness_is_half() {
        let d = Drastic::<u32>::new(3).unwrap();
        let rs = simplex_ratio(&d, Config::new(vec![0u32, 0, 1], 0)).unwrap();
        assert_eq!(rs.numerator, Value::from_int(1));
        assert_eq!(rs.denominator, Value::from_int(2));
        assert_eq!(rs.ratio, Value::from_ratio(1, 2));
    }

    #[test]
    fn ratio_zero_on_constant_tuple() {
        let d = Drastic::<u32>::new(4).unwrap();
        let rs = simplex_ratio(&d, Config::new(vec![3u32; 4], 3)).unwrap();
        assert_eq!(rs.ratio, Value::zero());
    }

    #[test]
    fn cardinality_ratio_on_distinct_triple() {
        // (a, b, c) distinct with z = a: numerator 2, replaced terms 2, 1, 1.
        let d = Cardinality::<u32>::new(3).unwrap();
        let rs = simplex_ratio(&d, Config::new(vec![0u32, 1, 2], 0)).unwrap();
        assert_eq!(rs.numerator, Value::from_int(2));
        assert_eq!(rs.denominator, Value::from_int(4));
        assert_eq!(rs.ratio, Value::from_ratio(1, 2));
    }

    #[test]
    fn unbounded_ratio_is_an_error() {
        // A function that ignores its arguments except the first pair and
        // is not an n-distance: positive on some tuple whose replaced
        // tuples all evaluate to zero.
        struct Broken;
        impl NDistance for Broken {
            type Point = u32;
            fn name(&self) -> &str {
                "broken"
            }
            fn arity(&self) -> usize {
                3
            }
            fn eval(&self, t: &[u32]) -> Result<Value> {
                // zero iff the pivot value 9 appears anywhere
                Ok(if t.contains(&9) {
                    Value::zero()
                } else {
                    Value::from_int(1)
                })
            }
        }
        let err = simplex_ratio(&Broken, Config::new(vec![1u32, 2, 3], 9)).unwrap_err();
        assert!(matches!(err, Error::UnboundedRatio { .. }));
    }
}
