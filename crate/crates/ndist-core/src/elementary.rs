//! Elementary n-distances: drastic, cardinality, diameter, pairwise sum,
//! arithmetic mean, the arithmetic-progression distance, the hemimetric
//! conversion, and the sum/scale/bound combinators.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::marker::PhantomData;

use num_rational::Rational64;
use num_traits::Zero;

use crate::distance::{Metric, NDistance};
use crate::error::{Error, Result};
use crate::value::{KBound, Value};

fn require_arity(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::InvalidConfig(format!(
            "{what} needs arity >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// Absolute difference on the real line; exact on exact inputs.
#[derive(Clone, Copy, Debug, Default)]
pub struct AbsDiff;

impl Metric<Value> for AbsDiff {
    fn dist(&self, a: &Value, b: &Value) -> Value {
        match (a.as_exact(), b.as_exact()) {
            (Some(x), Some(y)) => Value::Exact(if x >= y { x - y } else { y - x }),
            _ => Value::Approx(crate::maths::abs(a.to_f64() - b.to_f64())),
        }
    }
}

/// 0 on constant tuples, 1 otherwise. Best constant `1/(n-1)`.
#[derive(Clone, Debug)]
pub struct Drastic<P> {
    arity: usize,
    _marker: PhantomData<P>,
}

impl<P: Clone + PartialEq + Debug> Drastic<P> {
    pub fn new(arity: usize) -> Result<Self> {
        require_arity(arity, 2, "drastic")?;
        Ok(Drastic {
            arity,
            _marker: PhantomData,
        })
    }
}

impl<P: Clone + PartialEq + Debug> NDistance for Drastic<P> {
    type Point = P;

    fn name(&self) -> &str {
        "drastic"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[P]) -> Result<Value> {
        Ok(if tuple.iter().all(|p| *p == tuple[0]) {
            Value::zero()
        } else {
            Value::from_int(1)
        })
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, self.arity as i64 - 1))
    }
}

/// Number of distinct entries minus one. Best constant `1/(n-1)`.
#[derive(Clone, Debug)]
pub struct Cardinality<P> {
    arity: usize,
    _marker: PhantomData<P>,
}

impl<P: Clone + PartialEq + Debug> Cardinality<P> {
    pub fn new(arity: usize) -> Result<Self> {
        require_arity(arity, 2, "cardinality")?;
        Ok(Cardinality {
            arity,
            _marker: PhantomData,
        })
    }
}

impl<P: Clone + PartialEq + Debug> NDistance for Cardinality<P> {
    type Point = P;

    fn name(&self) -> &str {
        "cardinality"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[P]) -> Result<Value> {
        // Tuples are short; quadratic distinct-count avoids Ord/Hash bounds.
        let mut distinct = 0i64;
        for (i, p) in tuple.iter().enumerate() {
            if tuple[..i].iter().all(|q| q != p) {
                distinct += 1;
            }
        }
        Ok(Value::from_int(distinct - 1))
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, self.arity as i64 - 1))
    }
}

/// Maximum pairwise base distance. Best constant `1/(n-1)`.
#[derive(Clone, Debug)]
pub struct Diameter<P, M> {
    arity: usize,
    base: M,
    _marker: PhantomData<P>,
}

impl<P: Clone + PartialEq + Debug, M: Metric<P>> Diameter<P, M> {
    pub fn new(arity: usize, base: M) -> Result<Self> {
        require_arity(arity, 2, "diameter")?;
        Ok(Diameter {
            arity,
            base,
            _marker: PhantomData,
        })
    }
}

impl<P: Clone + PartialEq + Debug, M: Metric<P>> NDistance for Diameter<P, M> {
    type Point = P;

    fn name(&self) -> &str {
        "diameter"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[P]) -> Result<Value> {
        let mut best = Value::zero();
        for i in 0..tuple.len() {
            for j in (i + 1)..tuple.len() {
                let d = self.base.dist(&tuple[i], &tuple[j]);
                if d.total_cmp(&best) == core::cmp::Ordering::Greater {
                    best = d;
                }
            }
        }
        Ok(best)
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, self.arity as i64 - 1))
    }
}

/// Sum of all pairwise base distances. Best constant `1/(n-1)`.
#[derive(Clone, Debug)]
pub struct SumPairwise<P, M> {
    arity: usize,
    base: M,
    _marker: PhantomData<P>,
}

impl<P: Clone + PartialEq + Debug, M: Metric<P>> SumPairwise<P, M> {
    pub fn new(arity: usize, base: M) -> Result<Self> {
        require_arity(arity, 2, "sum")?;
        Ok(SumPairwise {
            arity,
            base,
            _marker: PhantomData,
        })
    }
}

impl<P: Clone + PartialEq + Debug, M: Metric<P>> NDistance for SumPairwise<P, M> {
    type Point = P;

    fn name(&self) -> &str {
        "sum"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[P]) -> Result<Value> {
        let mut total = Value::zero();
        for i in 0..tuple.len() {
            for j in (i + 1)..tuple.len() {
                total = total.add(&self.base.dist(&tuple[i], &tuple[j]));
            }
        }
        Ok(total)
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, self.arity as i64 - 1))
    }
}

/// Mean minus minimum on the real line. Best constant `1/(n-1)`.
#[derive(Clone, Debug)]
pub struct ArithmeticMean {
    arity: usize,
}

impl ArithmeticMean {
    pub fn new(arity: usize) -> Result<Self> {
        require_arity(arity, 2, "arithmetic_mean")?;
        Ok(ArithmeticMean { arity })
    }
}

impl NDistance for ArithmeticMean {
    type Point = Value;

    fn name(&self) -> &str {
        "arithmetic_mean"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[Value]) -> Result<Value> {
        if tuple.iter().all(|v| v.is_exact()) {
            let mut sum = Rational64::zero();
            let mut min = tuple[0].as_exact().unwrap();
            for v in tuple {
                let r = v.as_exact().unwrap();
                sum += r;
                if r < min {
                    min = r;
                }
            }
            Ok(Value::Exact(
                sum / Rational64::from_integer(tuple.len() as i64) - min,
            ))
        } else {
            let mut sum = 0.0;
            let mut min = f64::INFINITY;
            for v in tuple {
                let x = v.to_f64();
                sum += x;
                min = min.min(x);
            }
            Ok(Value::Approx(sum / tuple.len() as f64 - min))
        }
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, self.arity as i64 - 1))
    }
}

/// 0 on constant tuples, 1 when the sorted entries form an arithmetic
/// progression with nonzero common difference, `1/n` otherwise. Best
/// constant 1.
///
/// Progression membership is decided on the *sorted* entries: the raw
/// "consecutive elements of a progression" reading is order-sensitive,
/// and sorting is the only reading compatible with permutation
/// invariance. Membership is tested exactly, so exact (rational) inputs
/// are the intended domain; float inputs are compared with exact `f64`
/// equality of consecutive differences.
#[derive(Clone, Debug)]
pub struct ApDistance {
    arity: usize,
}

impl ApDistance {
    pub fn new(arity: usize) -> Result<Self> {
        require_arity(arity, 3, "ap")?;
        Ok(ApDistance { arity })
    }

    fn is_progression(tuple: &[Value]) -> bool {
        if tuple.iter().all(|v| v.is_exact()) {
            let mut xs: Vec<Rational64> = tuple.iter().map(|v| v.as_exact().unwrap()).collect();
            xs.sort_unstable();
            let step = xs[1] - xs[0];
            if step.is_zero() {
                return false;
            }
            xs.windows(2).all(|w| w[1] - w[0] == step)
        } else {
            let mut xs: Vec<f64> = tuple.iter().map(Value::to_f64).collect();
            xs.sort_unstable_by(f64::total_cmp);
            let step = xs[1] - xs[0];
            if step == 0.0 {
                return false;
            }
            xs.windows(2).all(|w| w[1] - w[0] == step)
        }
    }
}

impl NDistance for ApDistance {
    type Point = Value;

    fn name(&self) -> &str {
        "ap"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[Value]) -> Result<Value> {
        if tuple.iter().all(|v| v == &tuple[0]) {
            Ok(Value::zero())
        } else if Self::is_progression(tuple) {
            Ok(Value::from_int(1))
        } else {
            Ok(Value::from_ratio(1, self.arity as i64))
        }
    }

    fn theoretical_k(&self) -> Option<KBound> {
        Some(KBound::exact(1, 1))
    }
}

/// Hemimetric conversion: zero as soon as two entries coincide, the
/// wrapped distance otherwise. Satisfies the simplex inequality with
/// `K = 1` and vanishes exactly on tuples with repeats, so it is *not*
/// an n-distance (and has no registered best constant here).
#[derive(Clone, Debug)]
pub struct Hemimetric<D> {
    inner: D,
    name: String,
}

/// Wrap an n-distance as an (n-1)-hemimetric.
pub fn to_hemimetric<D: NDistance>(inner: D) -> Hemimetric<D> {
    let name = format!("hemi({})", inner.name());
    Hemimetric { inner, name }
}

impl<D: NDistance> NDistance for Hemimetric<D> {
    type Point = D::Point;

    fn name(&self) -> &str {
        &self.name
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, tuple: &[D::Point]) -> Result<Value> {
        for i in 0..tuple.len() {
            for j in (i + 1)..tuple.len() {
                if tuple[i] == tuple[j] {
                    return Ok(Value::zero());
                }
            }
        }
        self.inner.eval(tuple)
    }
}

/// Pointwise sum of two same-arity distances on the same space.
#[derive(Clone, Debug)]
pub struct CombineAdd<A, B> {
    a: A,
    b: B,
    name: String,
}

pub fn combine_add<A, B>(a: A, b: B) -> Result<CombineAdd<A, B>>
where
    A: NDistance,
    B: NDistance<Point = A::Point>,
{
    if a.arity() != b.arity() {
        return Err(Error::InvalidConfig(format!(
            "cannot add distances of arities {} and {}",
            a.arity(),
            b.arity()
        )));
    }
    let name = format!("add({},{})", a.name(), b.name());
    Ok(CombineAdd { a, b, name })
}

impl<A, B> NDistance for CombineAdd<A, B>
where
    A: NDistance,
    B: NDistance<Point = A::Point>,
{
    type Point = A::Point;

    fn name(&self) -> &str {
        &self.name
    }

    fn arity(&self) -> usize {
        self.a.arity()
    }

    fn eval(&self, tuple: &[Self::Point]) -> Result<Value> {
        Ok(self.a.eval(tuple)?.add(&self.b.eval(tuple)?))
    }
}

/// Positive scaling. Simplex ratios are scale-invariant, so the wrapped
/// distance's best constant carries over.
#[derive(Clone, Debug)]
pub struct Scale<D> {
    inner: D,
    lambda: Rational64,
    name: String,
}

pub fn scale<D: NDistance>(inner: D, lambda: Rational64) -> Result<Scale<D>> {
    if lambda <= Rational64::zero() {
        return Err(Error::InvalidConfig(format!(
            "scale factor must be positive, got {lambda}"
        )));
    }
    let name = format!("scale({},{})", inner.name(), lambda);
    Ok(Scale {
        inner,
        lambda,
        name,
    })
}

impl<D: NDistance> NDistance for Scale<D> {
    type Point = D::Point;

    fn name(&self) -> &str {
        &self.name
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, tuple: &[D::Point]) -> Result<Value> {
        Ok(self.inner.eval(tuple)?.mul(&Value::Exact(self.lambda)))
    }

    fn theoretical_k(&self) -> Option<KBound> {
        self.inner.theoretical_k()
    }
}

/// `d / (1 + d)`: an n-distance with values in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct Bound<D> {
    inner: D,
    name: String,
}

pub fn bound<D: NDistance>(inner: D) -> Bound<D> {
    let name = format!("bound({})", inner.name());
    Bound { inner, name }
}

impl<D: NDistance> NDistance for Bound<D> {
    type Point = D::Point;

    fn name(&self) -> &str {
        &self.name
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval(&self, tuple: &[D::Point]) -> Result<Value> {
        let v = self.inner.eval(tuple)?;
        Ok(v.div(&v.add(&Value::from_int(1))))
    }
}
