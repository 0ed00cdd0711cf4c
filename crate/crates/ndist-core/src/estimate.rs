//! Best-constant estimation: the supremum of simplex ratios is bracketed
//! from below by evaluating registered witness configs, a budget of random
//! configs, and hill-climb refinements seeded from the best raw samples.
//!
//! Everything is keyed to `(seed, index)` streams, so reports are
//! bit-reproducible and independent of evaluation order. Refinement runs
//! at power-of-two checkpoints over the sample prefix: a longer budget
//! only ever *adds* checkpoints and samples, which makes the reported
//! maximum nondecreasing in the budget for a fixed seed.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;

use crate::distance::{simplex_ratio, Config, NDistance, RatioSample, SimplexViolation, TOLERANCE};
use crate::error::{Error, Result};
use crate::space::{self, perturb_config, sample_config, tags, Space};
use crate::value::{KBound, Value};

/// Hill-climb settings for [`estimate_best_constant`].
#[derive(Clone, Copy, Debug)]
pub struct RefineSettings {
    /// Climbs launched per checkpoint (from the best raw samples so far).
    pub starts: usize,
    /// Perturbation steps per climb.
    pub steps: usize,
    /// Consecutive non-improving steps before the step size halves.
    pub halve_after: usize,
    /// Initial step, relative to the space extent.
    pub initial_step: f64,
}

impl Default for RefineSettings {
    fn default() -> Self {
        RefineSettings {
            starts: 10,
            steps: 200,
            halve_after: 20,
            initial_step: 0.25,
        }
    }
}

impl RefineSettings {
    /// Disable refinement (raw sampling and witnesses only).
    pub fn none() -> Self {
        RefineSettings {
            starts: 0,
            steps: 0,
            halve_after: 1,
            initial_step: 0.0,
        }
    }
}

/// Result of a best-constant search. `best_ratio` is a certified lower
/// bound on `K*` up to evaluation tolerance, attained at `witness`.
#[derive(Clone, Debug)]
pub struct EstimateReport<P> {
    pub distance: String,
    pub arity: usize,
    pub budget: u64,
    pub seed: u64,
    pub best_ratio: Value,
    pub witness: Config<P>,
    pub theoretical: Option<KBound>,
    /// Configs whose ratio exceeded 1: impossible for a genuine
    /// n-distance, so anything here refutes the axioms.
    pub violations: Vec<SimplexViolation<P>>,
}

impl<P: Clone + PartialEq + core::fmt::Debug> EstimateReport<P> {
    pub fn map<Q: Clone + PartialEq + core::fmt::Debug>(
        &self,
        f: impl Fn(&P) -> Q,
    ) -> EstimateReport<Q> {
        EstimateReport {
            distance: self.distance.clone(),
            arity: self.arity,
            budget: self.budget,
            seed: self.seed,
            best_ratio: self.best_ratio,
            witness: self.witness.map(&f),
            theoretical: self.theoretical,
            violations: self.violations.iter().map(|v| v.map(&f)).collect(),
        }
    }
}

struct SearchState<P> {
    best: Option<(Value, Config<P>)>,
    violations: Vec<SimplexViolation<P>>,
}

impl<P: Clone + PartialEq + core::fmt::Debug> SearchState<P> {
    fn new() -> Self {
        SearchState {
            best: None,
            violations: Vec::new(),
        }
    }

    /// Strictly-greater replacement keeps the earliest attaining config,
    /// which makes the reduction order-independent.
    fn consider(&mut self, rs: &RatioSample<P>) {
        let one = Value::from_int(1);
        if rs.ratio.exceeds(&one, TOLERANCE) {
            let rhs = one.mul(&rs.denominator);
            self.violations.push(SimplexViolation {
                config: rs.config.clone(),
                k_tested: one,
                lhs: rs.numerator,
                rhs,
                excess: rs.numerator.to_f64() - rhs.to_f64(),
            });
        }
        match &self.best {
            Some((champion, _)) if rs.ratio.total_cmp(champion) != core::cmp::Ordering::Greater => {
            }
            _ => self.best = Some((rs.ratio, rs.config.clone())),
        }
    }
}

/// Estimate the best constant of `d` from below.
///
/// Evaluates the registered `witnesses`, then `budget` random configs
/// (sample `i` drawn from the `(seed, i)` stream), then hill climbs: at
/// every power-of-two checkpoint `c <= budget`, the top `starts` samples
/// among the first `c` (by ratio, ties to the earliest index) seed climbs
/// of `steps` coordinate-wise Gaussian perturbations whose step halves
/// after `halve_after` consecutive failures. Witness configs seed one
/// climb each as well.
pub fn estimate_best_constant<D, S>(
    d: &D,
    space_def: &S,
    witnesses: &[Config<D::Point>],
    budget: u64,
    refine: &RefineSettings,
    seed: u64,
) -> Result<EstimateReport<D::Point>>
where
    D: NDistance + ?Sized,
    S: Space<Point = D::Point>,
{
    if budget == 0 {
        return Err(Error::InvalidConfig("budget must be >= 1".into()));
    }
    let mut state = SearchState::new();

    for w in witnesses {
        let rs = simplex_ratio(d, w.clone())?;
        state.consider(&rs);
    }

    // raw sampling; ratios are kept (16 bytes each) so checkpoints can
    // re-rank prefixes, configs are regenerated from their index on demand
    let mut ratios: Vec<f64> = Vec::with_capacity(budget as usize);
    for i in 0..budget {
        let config = config_at(space_def, d.arity(), seed, i);
        let rs = simplex_ratio(d, config)?;
        ratios.push(rs.ratio.to_f64());
        state.consider(&rs);
    }

    if refine.starts > 0 && refine.steps > 0 {
        for (w_idx, w) in witnesses.iter().enumerate() {
            let rng = space::stream(seed, tags::CLIMB_WITNESS, w_idx as u64, 0);
            climb(d, space_def, w.clone(), rng, refine, &mut state)?;
        }
        let mut checkpoint = 1u64;
        while checkpoint <= budget {
            let top = top_indices(&ratios[..checkpoint as usize], refine.starts);
            for (rank, idx) in top.into_iter().enumerate() {
                let start = config_at(space_def, d.arity(), seed, idx as u64);
                let rng = space::stream(seed, tags::CLIMB, checkpoint, rank as u64);
                climb(d, space_def, start, rng, refine, &mut state)?;
            }
            checkpoint = checkpoint.saturating_mul(2);
        }
    }

    let (best_ratio, witness) = state.best.expect("budget >= 1 guarantees a candidate");
    Ok(EstimateReport {
        distance: d.name().to_string(),
        arity: d.arity(),
        budget,
        seed,
        best_ratio,
        witness,
        theoretical: d.theoretical_k(),
        violations: state.violations,
    })
}

fn config_at<S: Space>(space_def: &S, arity: usize, seed: u64, index: u64) -> Config<S::Point> {
    let mut rng = space::stream(seed, tags::SAMPLE, index, 0);
    sample_config(space_def, arity, &mut rng)
}

/// Indices of the `k` largest ratios, ordered by ratio descending with
/// ties broken toward the smaller index.
fn top_indices(ratios: &[f64], k: usize) -> Vec<usize> {
    let mut top: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
    for (i, &r) in ratios.iter().enumerate() {
        if top.len() < k || r > top[top.len() - 1].0 {
            let pos = top
                .iter()
                .position(|&(tr, _)| r > tr)
                .unwrap_or(top.len());
            top.insert(pos, (r, i));
            top.truncate(k);
        }
    }
    top.into_iter().map(|(_, i)| i).collect()
}

fn climb<D, S>(
    d: &D,
    space_def: &S,
    start: Config<D::Point>,
    mut rng: ChaCha8Rng,
    refine: &RefineSettings,
    state: &mut SearchState<D::Point>,
) -> Result<()>
where
    D: NDistance + ?Sized,
    S: Space<Point = D::Point>,
{
    let mut current = simplex_ratio(d, start)?;
    state.consider(&current);
    let mut step = refine.initial_step;
    let mut failures = 0usize;
    for _ in 0..refine.steps {
        let candidate = perturb_config(space_def, &current.config, step, &mut rng);
        let rs = simplex_ratio(d, candidate)?;
        state.consider(&rs);
        if rs.ratio.total_cmp(&current.ratio) == core::cmp::Ordering::Greater {
            current = rs;
            failures = 0;
        } else {
            failures += 1;
            if failures >= refine.halve_after {
                step *= 0.5;
                failures = 0;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::Drastic;
    use crate::geometry::DirectionDistance;
    use crate::registry::{self, SpaceParams};
    use crate::space::LabelSpace;
    use alloc::vec;
    use num_rational::Rational64;

    #[test]
    fn drastic_estimate_hits_the_constant_exactly() {
        let d = Drastic::<u32>::new(5).unwrap();
        let witness = Config::new(vec![0u32, 0, 0, 0, 1], 0);
        let report = estimate_best_constant(
            &d,
            &LabelSpace { universe: 10 },
            &[witness],
            500,
            &RefineSettings::default(),
            42,
        )
        .unwrap();
        assert_eq!(report.best_ratio, Value::from_ratio(1, 4));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn reports_are_bit_reproducible() {
        let d = registry::make_distance("sec_area", 4, &SpaceParams::default()).unwrap();
        let a = d.estimate(300, &RefineSettings::default(), 9).unwrap();
        let b = d.estimate(300, &RefineSettings::default(), 9).unwrap();
        assert_eq!(a.best_ratio.to_f64().to_bits(), b.best_ratio.to_f64().to_bits());
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn best_ratio_is_monotone_in_budget() {
        // raw sampling and the checkpoint ladder only ever extend the
        // candidate set, so the maximum cannot drop
        for name in ["directions", "fermat_euclidean"] {
            let d = registry::make_distance(name, 4, &SpaceParams::default()).unwrap();
            let mut last = -1.0f64;
            for budget in [50u64, 100, 400, 1000] {
                let r = d.estimate(budget, &RefineSettings::default(), 5).unwrap();
                let x = r.best_ratio.to_f64();
                assert!(
                    x >= last,
                    "{name}: best ratio dropped from {last} to {x} at budget {budget}"
                );
                last = x;
            }
        }
    }

    #[test]
    fn area_witness_dominates_and_estimate_matches_within_1e9() {
        let d = registry::make_distance("sec_area", 4, &SpaceParams::default()).unwrap();
        let report = d.estimate(2000, &RefineSettings::default(), 17).unwrap();
        assert!((report.best_ratio.to_f64() - 0.4).abs() <= 1e-9);
    }

    #[test]
    fn direction_estimate_stays_inside_the_bracket() {
        let d = DirectionDistance::new(5).unwrap();
        let kb = d.theoretical_k().unwrap();
        let d5 = registry::make_distance("directions", 5, &SpaceParams::default()).unwrap();
        let report = d5.estimate(3000, &RefineSettings::default(), 23).unwrap();
        let lo = Value::Exact(kb.lower());
        let hi = Value::Exact(kb.upper());
        assert!(!lo.exceeds(&report.best_ratio, 0.0), "witness floor missed");
        assert!(
            !report.best_ratio.exceeds(&hi, 0.0) && report.best_ratio != hi,
            "strict upper bound crossed"
        );
        // the circle witness value 5/17 must be attained exactly
        assert_eq!(report.best_ratio.as_exact(), Some(Rational64::new(5, 17)));
    }

    #[test]
    fn estimator_soundness_never_beats_theory() {
        for (name, n) in [
            ("drastic", 3usize),
            ("cardinality", 4),
            ("diameter", 4),
            ("sum", 3),
            ("arithmetic_mean", 4),
            ("sec_radius", 4),
            ("sec_area", 4),
            ("ap", 4),
        ] {
            let d = registry::make_distance(name, n, &SpaceParams::default()).unwrap();
            for seed in [1u64, 2, 3] {
                let report = d.estimate(400, &RefineSettings::default(), seed).unwrap();
                let hi = Value::Exact(d.theoretical_k().unwrap().upper());
                assert!(
                    !report.best_ratio.exceeds(&hi, 1e-9),
                    "{name} n={n} seed={seed}: {} > {}",
                    report.best_ratio,
                    hi
                );
                assert!(report.violations.is_empty());
            }
        }
    }

    #[test]
    fn zero_budget_rejected() {
        let d = Drastic::<u32>::new(3).unwrap();
        assert!(estimate_best_constant(
            &d,
            &LabelSpace { universe: 4 },
            &[],
            0,
            &RefineSettings::default(),
            1
        )
        .is_err());
    }

    #[test]
    fn top_indices_orders_by_ratio_then_index() {
        let r = [0.5, 0.9, 0.9, 0.1, 0.7];
        assert_eq!(top_indices(&r, 3), vec![1, 2, 4]);
        assert_eq!(top_indices(&r, 10), vec![1, 2, 4, 0, 3]);
    }
}
