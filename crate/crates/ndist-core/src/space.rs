//! Ground spaces: deterministic sampling and perturbation of points.
//!
//! All randomness flows through counter-keyed ChaCha8 streams derived from
//! `(seed, tag, hi, lo)`, so the config drawn for sample `i` depends only on
//! the seed and `i` — never on evaluation order or worker count. Extending a
//! run's budget extends the sample sequence without changing its prefix.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::distance::Config;
use crate::geometry::Point2;
use crate::value::Value;

/// Stream tags keep unrelated consumers of the same seed independent.
pub mod tags {
    pub const SAMPLE: u64 = 1;
    pub const VERIFY: u64 = 2;
    pub const CLIMB: u64 = 3;
    pub const CLIMB_WITNESS: u64 = 4;
    pub const GCHECK: u64 = 5;
    pub const HOMOGENEITY: u64 = 6;
    pub const SHUFFLE: u64 = 7;
}

/// Deterministic per-index random stream.
pub fn stream(seed: u64, tag: u64, hi: u64, lo: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&tag.to_le_bytes());
    key[16..24].copy_from_slice(&hi.to_le_bytes());
    key[24..32].copy_from_slice(&lo.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// A ground space that can produce random points and local moves.
pub trait Space {
    type Point: Clone + PartialEq + core::fmt::Debug;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point;

    /// A nearby point at scale `step` (relative to the space's extent).
    /// Discrete spaces interpret `step` as a move probability.
    fn perturb(&self, p: &Self::Point, step: f64, rng: &mut ChaCha8Rng) -> Self::Point;
}

/// Draw a full config (n points plus pivot) from one stream.
pub fn sample_config<S: Space>(space: &S, arity: usize, rng: &mut ChaCha8Rng) -> Config<S::Point> {
    let points: Vec<_> = (0..arity).map(|_| space.sample(rng)).collect();
    let pivot = space.sample(rng);
    Config::new(points, pivot)
}

/// Perturb every coordinate of a config at scale `step`.
pub fn perturb_config<S: Space>(
    space: &S,
    c: &Config<S::Point>,
    step: f64,
    rng: &mut ChaCha8Rng,
) -> Config<S::Point> {
    let points: Vec<_> = c.points().iter().map(|p| space.perturb(p, step, rng)).collect();
    let pivot = space.perturb(c.pivot(), step, rng);
    Config::new(points, pivot)
}

fn gaussian(rng: &mut ChaCha8Rng, sigma: f64) -> f64 {
    if sigma <= 0.0 {
        return 0.0;
    }
    Normal::new(0.0, sigma).expect("sigma > 0").sample(rng)
}

/// Finite ordered label universe `0..universe`.
#[derive(Clone, Debug)]
pub struct LabelSpace {
    pub universe: u32,
}

impl Space for LabelSpace {
    type Point = u32;

    fn sample(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.random_range(0..self.universe.max(1))
    }

    fn perturb(&self, p: &u32, step: f64, rng: &mut ChaCha8Rng) -> u32 {
        if rng.random_bool(step.clamp(0.0, 1.0)) {
            self.sample(rng)
        } else {
            *p
        }
    }
}

/// Interval of the real line. With `exact_denominator` set, sampling is
/// restricted to the exact rational grid `p / q` inside the interval
/// (used by distances whose semantics need exact equality tests).
#[derive(Clone, Debug)]
pub struct ScalarLine {
    pub lo: f64,
    pub hi: f64,
    pub exact_denominator: Option<i64>,
}

impl ScalarLine {
    pub fn unit() -> Self {
        ScalarLine {
            lo: 0.0,
            hi: 1.0,
            exact_denominator: None,
        }
    }

    pub fn integers(lo: i64, hi: i64) -> Self {
        ScalarLine {
            lo: lo as f64,
            hi: hi as f64,
            exact_denominator: Some(1),
        }
    }

    fn span(&self) -> f64 {
        (self.hi - self.lo).max(f64::MIN_POSITIVE)
    }
}

impl Space for ScalarLine {
    type Point = Value;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Value {
        match self.exact_denominator {
            Some(q) => {
                let lo = (self.lo * q as f64) as i64;
                let hi = (self.hi * q as f64) as i64;
                Value::from_ratio(rng.random_range(lo..=hi), q)
            }
            None => Value::Approx(rng.random_range(self.lo..self.hi)),
        }
    }

    fn perturb(&self, p: &Value, step: f64, rng: &mut ChaCha8Rng) -> Value {
        match (self.exact_denominator, p) {
            (Some(q), Value::Exact(r)) => {
                let jitter = crate::maths::round(gaussian(rng, step * self.span() * q as f64));
                if jitter == 0.0 {
                    *p
                } else {
                    Value::Exact(*r + num_rational::Rational64::new(jitter as i64, q))
                }
            }
            _ => Value::Approx(p.to_f64() + gaussian(rng, step * self.span())),
        }
    }
}

/// Axis-aligned box in the plane; optionally an exact integer grid.
#[derive(Clone, Debug)]
pub struct PlaneSpace {
    pub lo: f64,
    pub hi: f64,
    pub int_grid: Option<(i64, i64)>,
}

impl PlaneSpace {
    pub fn unit_square() -> Self {
        PlaneSpace {
            lo: 0.0,
            hi: 1.0,
            int_grid: None,
        }
    }

    pub fn integer_grid(lo: i64, hi: i64) -> Self {
        PlaneSpace {
            lo: lo as f64,
            hi: hi as f64,
            int_grid: Some((lo, hi)),
        }
    }

    fn span(&self) -> f64 {
        (self.hi - self.lo).max(f64::MIN_POSITIVE)
    }
}

impl Space for PlaneSpace {
    type Point = Point2;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Point2 {
        match self.int_grid {
            Some((lo, hi)) => Point2::exact(rng.random_range(lo..=hi), rng.random_range(lo..=hi)),
            None => Point2::new(
                rng.random_range(self.lo..self.hi),
                rng.random_range(self.lo..self.hi),
            ),
        }
    }

    fn perturb(&self, p: &Point2, step: f64, rng: &mut ChaCha8Rng) -> Point2 {
        match (self.int_grid, p.x.as_exact(), p.y.as_exact()) {
            (Some(_), Some(x), Some(y)) => {
                let sigma = step * self.span();
                let dx = crate::maths::round(gaussian(rng, sigma)) as i64;
                let dy = crate::maths::round(gaussian(rng, sigma)) as i64;
                Point2 {
                    x: Value::Exact(x + num_rational::Rational64::from_integer(dx)),
                    y: Value::Exact(y + num_rational::Rational64::from_integer(dy)),
                }
            }
            _ => {
                let sigma = step * self.span();
                Point2::new(
                    p.x.to_f64() + gaussian(rng, sigma),
                    p.y.to_f64() + gaussian(rng, sigma),
                )
            }
        }
    }
}

/// Box in `R^k` with plain float coordinates.
#[derive(Clone, Debug)]
pub struct VectorSpace {
    pub dim: usize,
    pub lo: f64,
    pub hi: f64,
}

impl VectorSpace {
    pub fn unit_box(dim: usize) -> Self {
        VectorSpace {
            dim,
            lo: 0.0,
            hi: 1.0,
        }
    }
}

impl Space for VectorSpace {
    type Point = Vec<f64>;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (0..self.dim)
            .map(|_| rng.random_range(self.lo..self.hi))
            .collect()
    }

    fn perturb(&self, p: &Vec<f64>, step: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let sigma = step * (self.hi - self.lo).max(f64::MIN_POSITIVE);
        p.iter().map(|x| x + gaussian(rng, sigma)).collect()
    }
}

/// Vertices `0..vertex_count` of a fixed graph.
#[derive(Clone, Debug)]
pub struct VertexSpace {
    pub vertex_count: usize,
}

impl Space for VertexSpace {
    type Point = usize;

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.random_range(0..self.vertex_count.max(1))
    }

    fn perturb(&self, p: &usize, step: f64, rng: &mut ChaCha8Rng) -> usize {
        if rng.random_bool(step.clamp(0.0, 1.0)) {
            self.sample(rng)
        } else {
            *p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_independent() {
        let mut a = stream(7, tags::SAMPLE, 3, 0);
        let mut b = stream(7, tags::SAMPLE, 3, 0);
        assert_eq!(a.random::<u64>(), b.random::<u64>());
        let mut c = stream(7, tags::SAMPLE, 4, 0);
        assert_ne!(a.random::<u64>(), c.random::<u64>());
    }

    #[test]
    fn exact_spaces_sample_exact_points() {
        let line = ScalarLine::integers(0, 9);
        let mut rng = stream(1, tags::SAMPLE, 0, 0);
        for _ in 0..50 {
            assert!(line.sample(&mut rng).is_exact());
        }
        let grid = PlaneSpace::integer_grid(0, 9);
        for _ in 0..50 {
            let p = grid.sample(&mut rng);
            assert!(p.x.is_exact() && p.y.is_exact());
        }
    }

    #[test]
    fn perturbation_preserves_exactness_on_grids() {
        let grid = PlaneSpace::integer_grid(0, 9);
        let mut rng = stream(2, tags::CLIMB, 0, 0);
        let p = grid.sample(&mut rng);
        let q = grid.perturb(&p, 0.5, &mut rng);
        assert!(q.x.is_exact() && q.y.is_exact());
    }
}
