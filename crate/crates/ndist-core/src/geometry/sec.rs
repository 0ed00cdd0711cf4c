//! Smallest enclosing circle, randomized incremental with move-to-front
//! behaviour via a seeded shuffle. Expected linear time; the boundary
//! stages solve exact one-, two-, and three-point support circles.

use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::maths;
use crate::space::{self, tags};

use super::Point2;

/// Relative slack when testing containment; absorbs circumcenter rounding.
const CONTAINS_EPS: f64 = 1e-12;

/// Shuffle seed used by the distance evaluations. Any fixed value gives a
/// deterministic support-set choice; the circle itself is unique anyway.
const DEFAULT_SEED: u64 = 0x5ec0_5ec0;

/// Center and radius of a smallest enclosing circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Circle {
    fn invalid() -> Self {
        Circle {
            center: (0.0, 0.0),
            radius: -1.0,
        }
    }

    fn is_valid(&self) -> bool {
        self.radius >= 0.0
    }

    /// Distance from the center to `p`.
    pub fn center_distance(&self, p: (f64, f64)) -> f64 {
        maths::hypot(p.0 - self.center.0, p.1 - self.center.1)
    }

    /// Containment with relative tolerance.
    pub fn contains(&self, p: (f64, f64)) -> bool {
        self.center_distance(p) <= self.radius * (1.0 + CONTAINS_EPS) + f64::MIN_POSITIVE
    }
}

/// Smallest circle enclosing all of `points` (at least one required).
pub fn smallest_enclosing_circle(points: &[Point2]) -> Result<Circle> {
    smallest_enclosing_circle_seeded(points, DEFAULT_SEED)
}

/// Same, with an explicit shuffle seed: identical seeds walk the points
/// in the same order and hence pick identical support sets.
pub fn smallest_enclosing_circle_seeded(points: &[Point2], seed: u64) -> Result<Circle> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for p in points {
        let q = (p.xf(), p.yf());
        if !q.0.is_finite() || !q.1.is_finite() {
            return Err(Error::Degenerate("non-finite coordinate".into()));
        }
        // duplicates contribute nothing and complicate the boundary stages
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    let mut rng = space::stream(seed, tags::SHUFFLE, pts.len() as u64, 0);
    pts.shuffle(&mut rng);

    let mut c = Circle::invalid();
    for i in 0..pts.len() {
        if !c.is_valid() || !c.contains(pts[i]) {
            c = circle_with_one_boundary(&pts[..=i], pts[i]);
        }
    }
    Ok(c)
}

fn circle_with_one_boundary(pts: &[(f64, f64)], p: (f64, f64)) -> Circle {
    let mut c = Circle {
        center: p,
        radius: 0.0,
    };
    for (i, &q) in pts.iter().enumerate() {
        if !c.contains(q) {
            c = if c.radius == 0.0 {
                diameter_circle(p, q)
            } else {
                circle_with_two_boundary(&pts[..=i], p, q)
            };
        }
    }
    c
}

fn circle_with_two_boundary(pts: &[(f64, f64)], p: (f64, f64), q: (f64, f64)) -> Circle {
    let base = diameter_circle(p, q);
    let mut left = Circle::invalid();
    let mut right = Circle::invalid();

    let (px, py) = p;
    let (dx, dy) = (q.0 - px, q.1 - py);
    for &r in pts {
        if base.contains(r) {
            continue;
        }
        let cross = dx * (r.1 - py) - dy * (r.0 - px);
        let c = circumcircle(p, q, r);
        if !c.is_valid() {
            continue;
        }
        let center_cross = dx * (c.center.1 - py) - dy * (c.center.0 - px);
        if cross > 0.0 && (!left.is_valid() || center_cross > dx * (left.center.1 - py) - dy * (left.center.0 - px)) {
            left = c;
        } else if cross < 0.0
            && (!right.is_valid() || center_cross < dx * (right.center.1 - py) - dy * (right.center.0 - px))
        {
            right = c;
        }
    }

    match (left.is_valid(), right.is_valid()) {
        (false, false) => base,
        (true, false) => left,
        (false, true) => right,
        (true, true) => {
            if left.radius <= right.radius {
                left
            } else {
                right
            }
        }
    }
}

fn diameter_circle(a: (f64, f64), b: (f64, f64)) -> Circle {
    let c = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    let r = maths::hypot(a.0 - c.0, a.1 - c.1).max(maths::hypot(b.0 - c.0, b.1 - c.1));
    Circle { center: c, radius: r }
}

fn circumcircle(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Circle {
    // Shift to the bounding-box midpoint first; the determinant is
    // translation-invariant and this keeps the products small.
    let ox = (a.0.min(b.0).min(c.0) + a.0.max(b.0).max(c.0)) / 2.0;
    let oy = (a.1.min(b.1).min(c.1) + a.1.max(b.1).max(c.1)) / 2.0;
    let (ax, ay) = (a.0 - ox, a.1 - oy);
    let (bx, by) = (b.0 - ox, b.1 - oy);
    let (cx, cy) = (c.0 - ox, c.1 - oy);
    let d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0;
    if d == 0.0 {
        return Circle::invalid();
    }
    let x = ((ax * ax + ay * ay) * (by - cy)
        + (bx * bx + by * by) * (cy - ay)
        + (cx * cx + cy * cy) * (ay - by))
        / d;
    let y = ((ax * ax + ay * ay) * (cx - bx)
        + (bx * bx + by * by) * (ax - cx)
        + (cx * cx + cy * cy) * (bx - ax))
        / d;
    let center = (ox + x, oy + y);
    let r = maths::hypot(center.0 - a.0, center.1 - a.1)
        .max(maths::hypot(center.0 - b.0, center.1 - b.1))
        .max(maths::hypot(center.0 - c.0, center.1 - c.1));
    Circle { center, radius: r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_point() {
        let c = smallest_enclosing_circle(&[Point2::new(2.0, 3.0)]).unwrap();
        assert_eq!(c.center, (2.0, 3.0));
        assert_eq!(c.radius, 0.0);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(smallest_enclosing_circle(&[]), Err(Error::Empty)));
    }

    #[test]
    fn right_triangle_uses_hypotenuse_as_diameter() {
        // right angle at (2,2): circle through (0,0) and (4,0)
        let c = smallest_enclosing_circle(&[
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(2.0, 2.0),
        ])
        .unwrap();
        assert!((c.center.0 - 2.0).abs() < 1e-12);
        assert!(c.center.1.abs() < 1e-12);
        assert!((c.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn equilateral_triangle_circumradius() {
        // side 1: circumradius 1/sqrt(3); cross-checked by the law of
        // sines R = a / (2 sin 60deg)
        let s = 3.0f64.sqrt() / 2.0;
        let c = smallest_enclosing_circle(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.5, s),
        ])
        .unwrap();
        let by_sines = 1.0 / (2.0 * (core::f64::consts::FRAC_PI_3).sin());
        assert!((c.radius - 1.0 / 3.0f64.sqrt()).abs() < 1e-12);
        assert!((c.radius - by_sines).abs() < 1e-12);
    }

    #[test]
    fn collinear_points_fall_back_to_two_support_points() {
        let c = smallest_enclosing_circle(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(5.0, 0.0),
            Point2::new(3.0, 0.0),
        ])
        .unwrap();
        assert!((c.radius - 2.5).abs() < 1e-12);
        assert!((c.center.0 - 2.5).abs() < 1e-12);
    }

    #[test]
    fn duplicates_are_harmless() {
        let pts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 0.0),
        ];
        let c = smallest_enclosing_circle(&pts).unwrap();
        assert!((c.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn all_points_contained_and_radius_at_least_half_diameter() {
        // Fact-style sanity on a few deterministic pseudo-random sets.
        use rand::Rng;
        for case in 0..200u64 {
            let mut rng = space::stream(99, 42, case, 0);
            let n = rng.random_range(1..9);
            let pts: Vec<Point2> = (0..n)
                .map(|_| Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)))
                .collect();
            let c = smallest_enclosing_circle(&pts).unwrap();
            let mut max_pair: f64 = 0.0;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    max_pair = max_pair.max(super::super::euclid(&pts[i], &pts[j]));
                }
                assert!(
                    c.center_distance((pts[i].xf(), pts[i].yf())) <= c.radius * (1.0 + 1e-9),
                    "point outside circle in case {case}"
                );
            }
            assert!(c.radius >= max_pair / 2.0 - 1e-9);
        }
    }
}
