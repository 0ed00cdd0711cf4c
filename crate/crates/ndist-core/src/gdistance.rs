//! g-distances: the simplex inequality with an arbitrary symmetric
//! aggregator in place of the sum, plus sampling-based checkers for the
//! structural properties (positive homogeneity, superadditivity,
//! additivity, concavity) that make the construction behave.
//!
//! Property checks are falsification by sampling, not proofs; sample
//! counts and seeds are part of each report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::distance::{eval_replaced, Config, NDistance, TOLERANCE};
use crate::elementary::{bound, Bound};
use crate::error::{Error, Result};
use crate::space::{self, sample_config, tags, Space};

/// Structural properties a [`GFunction`] may declare. Declarations are
/// claims to be falsified, not trusted facts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GProperty {
    Symmetric,
    PositivelyHomogeneous,
    Superadditive,
    Additive,
}

/// Symmetric aggregator `g: R^n_+ -> R_+` replacing the sum in the
/// simplex inequality.
pub trait GFunction {
    fn arity(&self) -> usize;
    fn eval(&self, r: &[f64]) -> f64;
    fn declared(&self) -> &[GProperty];
    fn name(&self) -> &str;
}

/// `g(r) = lambda * sum r_i`: the additive family, the only one with a
/// meaningful best-constant analogue.
#[derive(Clone, Debug)]
pub struct WeightedSumG {
    lambda: f64,
    arity: usize,
}

/// Build the weighted-sum aggregator; `lambda` must be nonnegative.
pub fn make_weighted_sum_g(lambda: f64, arity: usize) -> Result<WeightedSumG> {
    if !(lambda >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "weight must be >= 0, got {lambda}"
        )));
    }
    Ok(WeightedSumG { lambda, arity })
}

impl GFunction for WeightedSumG {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, r: &[f64]) -> f64 {
        self.lambda * r.iter().sum::<f64>()
    }

    fn declared(&self) -> &[GProperty] {
        &[
            GProperty::Symmetric,
            GProperty::PositivelyHomogeneous,
            GProperty::Superadditive,
            GProperty::Additive,
        ]
    }

    fn name(&self) -> &str {
        "weighted_sum"
    }
}

/// `g(r) = max r_i`: homogeneous but not superadditive.
#[derive(Clone, Debug)]
pub struct MaxG {
    pub arity: usize,
}

impl GFunction for MaxG {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, r: &[f64]) -> f64 {
        r.iter().copied().fold(0.0, f64::max)
    }

    fn declared(&self) -> &[GProperty] {
        &[GProperty::Symmetric, GProperty::PositivelyHomogeneous]
    }

    fn name(&self) -> &str {
        "max"
    }
}

/// `g(r) = factor * min r_i`: homogeneous and superadditive (hence
/// concave).
#[derive(Clone, Debug)]
pub struct ScaledMinG {
    pub factor: f64,
    pub arity: usize,
}

impl GFunction for ScaledMinG {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, r: &[f64]) -> f64 {
        self.factor * r.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn declared(&self) -> &[GProperty] {
        &[
            GProperty::Symmetric,
            GProperty::PositivelyHomogeneous,
            GProperty::Superadditive,
        ]
    }

    fn name(&self) -> &str {
        "scaled_min"
    }
}

/// A sampled counterexample to a structural property of `g`.
#[derive(Clone, Debug)]
pub struct GFailure {
    pub description: String,
    pub r: Vec<f64>,
    pub s: Option<Vec<f64>>,
}

/// Outcome of one property check.
#[derive(Clone, Debug)]
pub struct GReport {
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<GFailure>,
}

impl GReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Nonnegative test vectors: a mixture of uniform, exponential, and
/// sparse draws. Homogeneity and superadditivity failures concentrate at
/// sparse and extreme inputs, so those get weight.
fn sample_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match rng.random_range(0..3u8) {
        0 => (0..n).map(|_| rng.random_range(0.0..1.0)).collect(),
        1 => (0..n).map(|_| Exp1.sample(rng)).collect(),
        _ => (0..n)
            .map(|_| {
                if rng.random_bool(0.7) {
                    0.0
                } else {
                    Exp1.sample(rng)
                }
            })
            .collect(),
    }
}

fn rel_tol(a: f64, b: f64) -> f64 {
    TOLERANCE * (1.0 + crate::maths::abs(a) + crate::maths::abs(b))
}

/// Falsify `g(lambda r) = lambda g(r)` by sampling.
pub fn check_positively_homogeneous(g: &impl GFunction, samples: usize, seed: u64) -> GReport {
    let mut failures = Vec::new();
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 0);
        let r = sample_vector(g.arity(), &mut rng);
        let lambda: f64 = rng.random_range(0.01..10.0);
        let scaled: Vec<f64> = r.iter().map(|x| lambda * x).collect();
        let lhs = g.eval(&scaled);
        let rhs = lambda * g.eval(&r);
        if crate::maths::abs(lhs - rhs) > rel_tol(lhs, rhs) {
            failures.push(GFailure {
                description: format!("g({lambda} r) = {lhs} but {lambda} g(r) = {rhs}"),
                r,
                s: None,
            });
        }
    }
    GReport {
        samples,
        seed,
        failures,
    }
}

/// Falsify `g(r + s) >= g(r) + g(s)` by sampling.
pub fn check_superadditive(g: &impl GFunction, samples: usize, seed: u64) -> GReport {
    let mut failures = Vec::new();
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 1);
        let r = sample_vector(g.arity(), &mut rng);
        let s = sample_vector(g.arity(), &mut rng);
        let joint: Vec<f64> = r.iter().zip(&s).map(|(a, b)| a + b).collect();
        let lhs = g.eval(&joint);
        let rhs = g.eval(&r) + g.eval(&s);
        if lhs < rhs - rel_tol(lhs, rhs) {
            failures.push(GFailure {
                description: format!("g(r + s) = {lhs} < g(r) + g(s) = {rhs}"),
                r,
                s: Some(s),
            });
        }
    }
    GReport {
        samples,
        seed,
        failures,
    }
}

/// Test whether `g` has the additive form `lambda * sum r_i`; returns the
/// fitted `lambda = g(e_1)` and whether the form survived sampling.
pub fn check_additive_form(g: &impl GFunction, samples: usize, seed: u64) -> (bool, f64) {
    let mut e1 = alloc::vec![0.0; g.arity()];
    e1[0] = 1.0;
    let lambda = g.eval(&e1);
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 2);
        let r = sample_vector(g.arity(), &mut rng);
        let lhs = g.eval(&r);
        let rhs = lambda * r.iter().sum::<f64>();
        if crate::maths::abs(lhs - rhs) > rel_tol(lhs, rhs) {
            return (false, lambda);
        }
    }
    (true, lambda)
}

/// Sample midpoint concavity `g((r+s)/2) >= (g(r)+g(s))/2`.
///
/// Only meaningful for functions declared positively homogeneous and
/// superadditive (which together imply concavity); anything else is a
/// configuration error, and any failure found refutes the declaration.
pub fn check_concavity(g: &impl GFunction, samples: usize, seed: u64) -> Result<GReport> {
    let declared = g.declared();
    if !declared.contains(&GProperty::PositivelyHomogeneous)
        || !declared.contains(&GProperty::Superadditive)
    {
        return Err(Error::InvalidConfig(format!(
            "`{}` is not declared positively homogeneous and superadditive",
            g.name()
        )));
    }
    let mut failures = Vec::new();
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 3);
        let r = sample_vector(g.arity(), &mut rng);
        let s = sample_vector(g.arity(), &mut rng);
        let mid: Vec<f64> = r.iter().zip(&s).map(|(a, b)| (a + b) / 2.0).collect();
        let lhs = g.eval(&mid);
        let rhs = (g.eval(&r) + g.eval(&s)) / 2.0;
        if lhs < rhs - rel_tol(lhs, rhs) {
            failures.push(GFailure {
                description: format!("g((r+s)/2) = {lhs} < (g(r)+g(s))/2 = {rhs}"),
                r,
                s: Some(s),
            });
        }
    }
    Ok(GReport {
        samples,
        seed,
        failures,
    })
}

/// A sampled counterexample to `d` being a `g`-distance.
#[derive(Clone, Debug)]
pub struct GDistanceFailure<P> {
    pub config: Config<P>,
    pub description: String,
}

/// Outcome of [`is_g_distance`].
#[derive(Clone, Debug)]
pub struct GDistanceReport<P> {
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<GDistanceFailure<P>>,
}

impl<P> GDistanceReport<P> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `d(x) <= g(d(x)_1^z, ..., d(x)_n^z)` plus the symmetry and
/// identity axioms on the given witnesses followed by random samples.
pub fn is_g_distance<D, S, G>(
    d: &D,
    g: &G,
    space_def: &S,
    witnesses: &[Config<D::Point>],
    samples: usize,
    seed: u64,
) -> Result<GDistanceReport<D::Point>>
where
    D: NDistance + ?Sized,
    S: Space<Point = D::Point>,
    G: GFunction,
{
    if g.arity() != d.arity() {
        return Err(Error::ArityMismatch {
            expected: d.arity(),
            got: g.arity(),
        });
    }
    let mut failures = Vec::new();
    let mut run = |config: Config<D::Point>, rng: &mut ChaCha8Rng| -> Result<()> {
        let value = d.eval(config.points())?;

        // identity in both directions
        let constant = alloc::vec![config.points()[0].clone(); d.arity()];
        if !d.eval(&constant)?.is_zero(TOLERANCE) {
            failures.push(GDistanceFailure {
                config: config.clone(),
                description: "constant tuple evaluates nonzero".into(),
            });
        }
        if !config.is_constant_tuple() && value.is_zero(TOLERANCE) {
            failures.push(GDistanceFailure {
                config: config.clone(),
                description: "nonconstant tuple evaluates to zero".into(),
            });
        }

        // symmetry on one random transposition
        let n = d.arity();
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let mut swapped = config.points().to_vec();
        swapped.swap(a, b);
        if !value.close_to(&d.eval(&swapped)?, 1e-12) {
            failures.push(GDistanceFailure {
                config: config.clone(),
                description: format!("value changes under swapping entries {a} and {b}"),
            });
        }

        // the g-inequality
        let replaced: Vec<f64> = (0..n)
            .map(|i| eval_replaced(d, &config, i).map(|v| v.to_f64()))
            .collect::<Result<_>>()?;
        let bound_value = g.eval(&replaced);
        if value.to_f64() > bound_value + TOLERANCE {
            failures.push(GDistanceFailure {
                config,
                description: format!(
                    "d = {} exceeds g(replaced) = {bound_value}",
                    value.to_f64()
                ),
            });
        }
        Ok(())
    };

    for (i, w) in witnesses.iter().enumerate() {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 4);
        run(w.clone(), &mut rng)?;
    }
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::GCHECK, i as u64, 5);
        let config = sample_config(space_def, d.arity(), &mut rng);
        run(config, &mut rng)?;
    }
    Ok(GDistanceReport {
        samples,
        seed,
        failures,
    })
}

/// `d / (1 + d)` stays a `g`-distance when `g` is the additive family
/// with weight at least 1; the gate is verified by sampling before the
/// wrapper is handed out.
pub fn bound_g_distance<D: NDistance, G: GFunction>(d: D, g: &G) -> Result<Bound<D>> {
    let (additive, lambda) = check_additive_form(g, 512, 0);
    if !additive {
        return Err(Error::InvalidConfig(format!(
            "`{}` does not have the additive form lambda * sum",
            g.name()
        )));
    }
    if lambda < 1.0 {
        return Err(Error::InvalidConfig(format!(
            "bounding requires weight >= 1, fitted {lambda}"
        )));
    }
    Ok(bound(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::simplex_ratio;
    use crate::elementary::Drastic;
    use crate::space::LabelSpace;
    use crate::value::Value;
    use alloc::vec;

    fn drastic3() -> Drastic<u32> {
        Drastic::new(3).unwrap()
    }

    fn labels() -> LabelSpace {
        LabelSpace { universe: 8 }
    }

    fn drastic_witness() -> Config<u32> {
        Config::new(vec![0u32, 0, 1], 0)
    }

    #[test]
    fn weighted_sum_values() {
        let g = make_weighted_sum_g(1.0, 3).unwrap();
        assert_eq!(g.eval(&[1.0, 2.0, 3.0]), 6.0);
        let g = make_weighted_sum_g(0.5, 3).unwrap();
        assert_eq!(g.eval(&[2.0, 2.0, 2.0]), 3.0);
        let g = make_weighted_sum_g(0.0, 3).unwrap();
        assert_eq!(g.eval(&[4.0, 5.0, 6.0]), 0.0);
        assert!(make_weighted_sum_g(-0.1, 3).is_err());
    }

    #[test]
    fn drastic_is_a_g_distance_down_to_its_constant() {
        let d = drastic3();
        // lambda = 1 is the plain simplex inequality
        let g = make_weighted_sum_g(1.0, 3).unwrap();
        let report = is_g_distance(&d, &g, &labels(), &[drastic_witness()], 2000, 3).unwrap();
        assert!(report.passed());

        // lambda = 1/2 = K*: still passes
        let g = make_weighted_sum_g(0.5, 3).unwrap();
        let report = is_g_distance(&d, &g, &labels(), &[drastic_witness()], 2000, 3).unwrap();
        assert!(report.passed());

        // lambda = 0.4 < K*: the witness refutes it
        let g = make_weighted_sum_g(0.4, 3).unwrap();
        let report = is_g_distance(&d, &g, &labels(), &[drastic_witness()], 2000, 3).unwrap();
        assert!(!report.passed());
        assert_eq!(report.failures[0].config, drastic_witness());
    }

    #[test]
    fn max_is_homogeneous_but_not_superadditive() {
        let g = MaxG { arity: 3 };
        assert!(check_positively_homogeneous(&g, 2000, 1).passed());
        let sup = check_superadditive(&g, 2000, 1);
        assert!(!sup.passed());
        // the canonical counterexample shape: disjoint supports
        assert!(g.eval(&[1.0, 1.0, 0.0]) < g.eval(&[1.0, 0.0, 0.0]) + g.eval(&[0.0, 1.0, 0.0]));
    }

    #[test]
    fn additive_form_recovers_lambda_exactly() {
        for lambda in [0.0, 0.5, 1.0, 2.5] {
            let g = make_weighted_sum_g(lambda, 4).unwrap();
            let (ok, fitted) = check_additive_form(&g, 1000, 2);
            assert!(ok);
            assert_eq!(fitted, lambda);
        }
        let (ok, _) = check_additive_form(&MaxG { arity: 4 }, 1000, 2);
        assert!(!ok);
    }

    #[test]
    fn squared_sum_fails_homogeneity() {
        struct SquaredSum;
        impl GFunction for SquaredSum {
            fn arity(&self) -> usize {
                3
            }
            fn eval(&self, r: &[f64]) -> f64 {
                let s: f64 = r.iter().sum();
                s * s
            }
            fn declared(&self) -> &[GProperty] {
                &[GProperty::Symmetric]
            }
            fn name(&self) -> &str {
                "squared_sum"
            }
        }
        assert!(!check_positively_homogeneous(&SquaredSum, 500, 4).passed());
    }

    #[test]
    fn concavity_gate_and_pass() {
        // scaled min: homogeneous + superadditive, hence concave
        let g = ScaledMinG {
            factor: 3.0,
            arity: 3,
        };
        assert!(check_superadditive(&g, 2000, 5).passed());
        assert!(check_concavity(&g, 2000, 5).unwrap().passed());

        // linear: trivially concave
        let g = make_weighted_sum_g(2.0, 3).unwrap();
        assert!(check_concavity(&g, 2000, 5).unwrap().passed());

        // max is not declared superadditive: gate trips
        assert!(check_concavity(&MaxG { arity: 3 }, 10, 5).is_err());
    }

    #[test]
    fn bounding_gate() {
        let d = drastic3();
        let g = make_weighted_sum_g(1.0, 3).unwrap();
        let bounded = bound_g_distance(d, &g).unwrap();
        // drastic (a, a, b) becomes 1/(1+1)
        assert_eq!(
            bounded.eval(&[0, 0, 1]).unwrap(),
            Value::from_ratio(1, 2)
        );
        // and it is still a g-distance for the plain sum
        let report = is_g_distance(&bounded, &g, &labels(), &[drastic_witness()], 2000, 6).unwrap();
        assert!(report.passed());
        // the bounded witness ratio: (1/2) / (1/2 + 1/2) = 1/2
        let rs = simplex_ratio(&bounded, drastic_witness()).unwrap();
        assert_eq!(rs.ratio, Value::from_ratio(1, 2));

        assert!(bound_g_distance(drastic3(), &make_weighted_sum_g(0.5, 3).unwrap()).is_err());
        assert!(bound_g_distance(drastic3(), &MaxG { arity: 3 }).is_err());
    }
}
