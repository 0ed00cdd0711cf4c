//! Counting the distinct directions spanned by pairs of points.
//!
//! A direction is the equivalence class of `±(x - y)/||x - y||`. With
//! exact (rational) coordinates, directions are gcd-reduced integer pairs
//! with a normalized sign, and counting is exact — this is the path the
//! combinatorial results live on. Float inputs fall back to clustering
//! chord angles modulo pi with a small angular tolerance.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_rational::Rational64;

use crate::distance::NDistance;
use crate::error::{Error, Result};
use crate::maths;
use crate::value::{KBound, Value};

use super::Point2;

/// Angular tolerance (radians) when bucketing float directions.
const ANGLE_EPS: f64 = 1e-9;

/// Number of distinct directions over all pairs of distinct points;
/// zero when all points coincide.
pub fn direction_count(points: &[Point2]) -> usize {
    if points.iter().all(Point2::is_exact) {
        if let Some(n) = direction_count_exact(points) {
            return n;
        }
    }
    direction_count_float(points)
}

fn direction_count_exact(points: &[Point2]) -> Option<usize> {
    let mut set: BTreeSet<(i128, i128)> = BTreeSet::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                continue;
            }
            let dx = sub_exact(&points[j].x, &points[i].x)?;
            let dy = sub_exact(&points[j].y, &points[i].y)?;
            set.insert(canonical_direction(dx, dy));
        }
    }
    Some(set.len())
}

fn sub_exact(a: &Value, b: &Value) -> Option<Rational64> {
    use num_traits::CheckedSub;
    a.as_exact()?.checked_sub(&b.as_exact()?)
}

/// Reduce the rational vector `(dx, dy)` to a primitive integer pair with
/// `(p > 0)` or `(p == 0, q > 0)`.
fn canonical_direction(dx: Rational64, dy: Rational64) -> (i128, i128) {
    let mut p = *dx.numer() as i128 * *dy.denom() as i128;
    let mut q = *dy.numer() as i128 * *dx.denom() as i128;
    debug_assert!(p != 0 || q != 0);
    let g = gcd_i128(p.unsigned_abs(), q.unsigned_abs()) as i128;
    p /= g;
    q /= g;
    if p < 0 || (p == 0 && q < 0) {
        p = -p;
        q = -q;
    }
    (p, q)
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

fn direction_count_float(points: &[Point2]) -> usize {
    let mut angles: Vec<f64> = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let (dx, dy) = (
                points[j].xf() - points[i].xf(),
                points[j].yf() - points[i].yf(),
            );
            if dx == 0.0 && dy == 0.0 {
                continue;
            }
            let mut a = maths::atan2(dy, dx);
            if a < 0.0 {
                a += core::f64::consts::PI;
            }
            if a >= core::f64::consts::PI {
                a -= core::f64::consts::PI;
            }
            angles.push(a);
        }
    }
    if angles.is_empty() {
        return 0;
    }
    angles.sort_unstable_by(f64::total_cmp);
    let mut clusters = 1usize;
    for w in angles.windows(2) {
        if w[1] - w[0] > ANGLE_EPS {
            clusters += 1;
        }
    }
    // wrap-around: angles just below pi and just above 0 are the same
    if clusters > 1 {
        let first = angles[0];
        let last = angles[angles.len() - 1];
        if first + core::f64::consts::PI - last <= ANGLE_EPS {
            clusters -= 1;
        }
    }
    clusters
}

/// The direction-count n-distance. Values are exact integers; the best
/// constant is only bracketed: `1/(n - 2 + 2/n) <= K* < 1/(n - 2)`.
#[derive(Clone, Debug)]
pub struct DirectionDistance {
    arity: usize,
}

impl DirectionDistance {
    pub fn new(arity: usize) -> Result<Self> {
        if arity < 3 {
            return Err(Error::InvalidConfig(alloc::format!(
                "directions needs arity >= 3, got {arity}"
            )));
        }
        Ok(DirectionDistance { arity })
    }
}

impl NDistance for DirectionDistance {
    type Point = Point2;

    fn name(&self) -> &str {
        "directions"
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, tuple: &[Point2]) -> Result<Value> {
        Ok(Value::from_int(direction_count(tuple) as i64))
    }

    fn theoretical_k(&self) -> Option<KBound> {
        let n = self.arity as i64;
        Some(KBound::Interval {
            // 1/(n - 2 + 2/n) = n/(n^2 - 2n + 2)
            lo: Rational64::new(n, n * n - 2 * n + 2),
            hi: Rational64::new(1, n - 2),
            hi_strict: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_span_one_direction() {
        let pts = [
            Point2::exact(0, 0),
            Point2::exact(1, 1),
            Point2::exact(3, 3),
        ];
        assert_eq!(direction_count(&pts), 1);
    }

    #[test]
    fn general_position_triple_spans_three() {
        let pts = [
            Point2::exact(0, 0),
            Point2::exact(1, 0),
            Point2::exact(0, 1),
        ];
        assert_eq!(direction_count(&pts), 3);
    }

    #[test]
    fn coincident_points_span_zero() {
        let pts = [Point2::exact(2, 2); 4];
        assert_eq!(direction_count(&pts), 0);
    }

    #[test]
    fn opposite_vectors_are_one_direction() {
        let pts = [
            Point2::exact(0, 0),
            Point2::exact(2, 1),
            Point2::exact(-2, -1),
        ];
        // chords: (2,1), (-2,-1) ~ (2,1), (4,2) ~ (2,1)
        assert_eq!(direction_count(&pts), 1);
    }

    #[test]
    fn rational_coordinates_reduce_exactly() {
        let pts = [
            Point2::exact_ratio(Rational64::new(1, 3), Rational64::new(1, 2)),
            Point2::exact_ratio(Rational64::new(2, 3), Rational64::new(1, 1)),
            Point2::exact_ratio(Rational64::new(1, 1), Rational64::new(3, 2)),
        ];
        // all chords parallel to (2, 3)
        assert_eq!(direction_count(&pts), 1);
    }

    #[test]
    fn float_angle_clustering_matches_exact_on_generic_points() {
        let exact = [
            Point2::exact(0, 0),
            Point2::exact(5, 1),
            Point2::exact(2, 7),
            Point2::exact(9, 4),
        ];
        let float: Vec<Point2> = exact.iter().map(|p| Point2::new(p.xf(), p.yf())).collect();
        assert_eq!(direction_count(&exact), direction_count(&float));
        assert_eq!(direction_count(&exact), 6);
    }

    #[test]
    fn translation_and_dilation_invariance_on_integers() {
        let pts = [
            Point2::exact(0, 0),
            Point2::exact(3, 1),
            Point2::exact(1, 4),
            Point2::exact(6, 2),
        ];
        let base = direction_count(&pts);
        let shifted: Vec<Point2> = pts
            .iter()
            .map(|p| {
                Point2::exact(
                    p.x.as_exact().unwrap().to_integer() + 7,
                    p.y.as_exact().unwrap().to_integer() - 3,
                )
            })
            .collect();
        assert_eq!(direction_count(&shifted), base);
        let scaled: Vec<Point2> = pts
            .iter()
            .map(|p| p.dilate(&Value::from_int(5)))
            .collect();
        assert_eq!(direction_count(&scaled), base);
    }
}
