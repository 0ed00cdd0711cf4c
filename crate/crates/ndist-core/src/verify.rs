//! Sampling-based checks of the n-distance axioms and of the simplex
//! inequality at a given constant. Failures are data, not errors: every
//! check returns the counterexamples it found.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::Zero;
use rand::seq::SliceRandom;

use crate::distance::{simplex_ratio, Config, NDistance, SimplexViolation, TOLERANCE};
use crate::error::{Error, Result};
use crate::space::{self, sample_config, tags, Space};
use crate::value::Value;

/// Which axiom a counterexample refutes: the simplex inequality with
/// `K = 1`, permutation invariance, or the identity condition (zero
/// exactly on constant tuples).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomCondition {
    Simplex,
    Symmetry,
    Identity,
}

/// One counterexample found while sampling.
#[derive(Clone, Debug)]
pub struct AxiomFailure<P> {
    pub condition: AxiomCondition,
    pub config: Config<P>,
    pub description: String,
}

impl<P: Clone + PartialEq + core::fmt::Debug> AxiomFailure<P> {
    pub fn map<Q: Clone + PartialEq + core::fmt::Debug>(
        &self,
        f: impl Fn(&P) -> Q,
    ) -> AxiomFailure<Q> {
        AxiomFailure {
            condition: self.condition,
            config: self.config.map(f),
            description: self.description.clone(),
        }
    }
}

/// Outcome of [`verify_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport<P> {
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<AxiomFailure<P>>,
}

impl<P> AxiomReport<P> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check conditions (symmetry, identity, simplex with `K = 1`) on
/// `samples` random configs.
///
/// Per sample: the tuple is compared against a random permutation of
/// itself, the constant tuple built from its first entry must evaluate to
/// zero, a nonconstant tuple must evaluate positive, and the simplex
/// ratio must not exceed 1.
pub fn verify_axioms<D, S>(
    d: &D,
    space_def: &S,
    samples: usize,
    seed: u64,
) -> Result<AxiomReport<D::Point>>
where
    D: NDistance + ?Sized,
    S: Space<Point = D::Point>,
{
    if samples == 0 {
        return Err(Error::InvalidConfig("samples must be >= 1".into()));
    }
    let n = d.arity();
    let mut failures = Vec::new();
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::VERIFY, i as u64, 0);
        let config = sample_config(space_def, n, &mut rng);
        let value = d.eval(config.points())?;

        // (iii), zero direction: constant tuples evaluate to zero
        let constant = alloc::vec![config.points()[0].clone(); n];
        let at_constant = d.eval(&constant)?;
        if !at_constant.is_zero(TOLERANCE) {
            failures.push(AxiomFailure {
                condition: AxiomCondition::Identity,
                config: Config::new(constant.clone(), config.pivot().clone()),
                description: format!("constant tuple evaluates to {at_constant}, expected 0"),
            });
        }

        // (iii), positive direction: nonconstant tuples evaluate positive
        if !config.is_constant_tuple() && value.is_zero(TOLERANCE) {
            failures.push(AxiomFailure {
                condition: AxiomCondition::Identity,
                config: config.clone(),
                description: "nonconstant tuple evaluates to 0".into(),
            });
        }

        // (ii): permutation invariance on one random permutation
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let permuted: Vec<D::Point> = order
            .iter()
            .map(|&j| config.points()[j].clone())
            .collect();
        let at_permuted = d.eval(&permuted)?;
        if !value.close_to(&at_permuted, 1e-12) {
            failures.push(AxiomFailure {
                condition: AxiomCondition::Symmetry,
                config: config.clone(),
                description: format!(
                    "value {value} changed to {at_permuted} under permutation {order:?}"
                ),
            });
        }

        // (i) with K = 1
        match simplex_ratio(d, config.clone()) {
            Ok(rs) => {
                if rs.ratio.exceeds(&Value::from_int(1), TOLERANCE) {
                    failures.push(AxiomFailure {
                        condition: AxiomCondition::Simplex,
                        config: config.clone(),
                        description: format!("simplex ratio {} exceeds 1", rs.ratio),
                    });
                }
            }
            Err(Error::UnboundedRatio { .. }) => {
                failures.push(AxiomFailure {
                    condition: AxiomCondition::Simplex,
                    config: config.clone(),
                    description: "positive value with vanishing replaced sum".into(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(AxiomReport {
        samples,
        seed,
        failures,
    })
}

/// Check the simplex inequality at constant `k` on the given witness
/// configs followed by `samples` random configs. Returns the violations
/// sorted by excess, largest first; an empty list means no sampled config
/// had ratio above `k` (plus tolerance, for float-valued distances).
pub fn verify_simplex<D, S>(
    d: &D,
    k: Rational64,
    space_def: &S,
    witnesses: &[Config<D::Point>],
    samples: usize,
    seed: u64,
) -> Result<Vec<SimplexViolation<D::Point>>>
where
    D: NDistance + ?Sized,
    S: Space<Point = D::Point>,
{
    if k <= Rational64::zero() || k > Rational64::from_integer(1) {
        return Err(Error::InvalidConfig(format!(
            "constant must lie in (0, 1], got {k}"
        )));
    }
    let kv = Value::Exact(k);
    let mut violations = Vec::new();
    let mut run = |config: Config<D::Point>| -> Result<()> {
        match simplex_ratio(d, config.clone()) {
            Ok(rs) => {
                if rs.ratio.exceeds(&kv, TOLERANCE) {
                    let rhs = kv.mul(&rs.denominator);
                    violations.push(SimplexViolation {
                        excess: rs.numerator.to_f64() - rhs.to_f64(),
                        config: rs.config,
                        k_tested: kv,
                        lhs: rs.numerator,
                        rhs,
                    });
                }
                Ok(())
            }
            // No finite constant works on this config; record it with
            // the full numerator as the excess.
            Err(Error::UnboundedRatio { numerator, .. }) => {
                violations.push(SimplexViolation {
                    config,
                    k_tested: kv,
                    lhs: Value::Approx(numerator),
                    rhs: Value::zero(),
                    excess: numerator,
                });
                Ok(())
            }
            Err(e) => Err(e),
        }
    };
    for w in witnesses {
        run(w.clone())?;
    }
    for i in 0..samples {
        let mut rng = space::stream(seed, tags::VERIFY, i as u64, 1);
        run(sample_config(space_def, d.arity(), &mut rng))?;
    }
    violations.sort_by(|a, b| b.excess.total_cmp(&a.excess));
    Ok(violations)
}
