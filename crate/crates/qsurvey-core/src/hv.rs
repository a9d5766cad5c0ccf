//! Non-local hidden-variable Monte Carlo for pair correlations.
//!
//! Each trial draws a hidden manifold point `h` from the manifold's
//! natural law (uniform solid angle on the sphere, the Maxwellian
//! `pi^-1 exp(-|lambda|^2)` for displacements) and declares a coincidence
//! exactly when `d(g) < d(h)`: the settings' relation diameter is beaten
//! by the hidden diameter.  Under both laws `d(h)^2` is uniform on
//! `[0, 1]`, so `P(d(h) < r) = r^2` and the coincidence rate reproduces
//! the quantum pair probability `1 - d(g)^2 = |<g1|g2>|^2` exactly.
//!
//! The rule is non-local by construction: it consumes the relation of
//! both settings at once.  It is also manifestly covariant: the decision
//! depends on the settings only through `d(g)`, so any common
//! transformation that leaves `d(g)` unchanged replays the identical
//! trial stream.  [`covariance_check`] verifies this literally, and
//! distinguishes transformations that preserve the stored coordinates bit
//! for bit (common phases, exact quarter turns) from generic ones that
//! perturb `d(g)` at the last ulp.
//!
//! All randomness is keyed by `(seed, trial_index)`, so any partition of
//! the trial range reproduces the serial stream.

use alloc::vec::Vec;

use crate::metric::{self, Manifold, ManifoldPoint};
use crate::rng::TrialRng;
use crate::su2::SpherePoint;
use crate::wh::WHPoint;
use crate::{C64, Error, Result};

/// Minimum trials accepted by [`run_epr_experiment`].
pub const MIN_TRIALS: u64 = 1000;

const STREAM_TRIALS: u64 = 0;

/// Sampling law of the hidden manifold point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HiddenVariableLaw {
    /// Uniform solid angle on the sphere.
    Su2Uniform,
    /// Complex Gaussian `pi^-1 exp(-|lambda|^2)` per point.
    WhMaxwellian,
}

impl HiddenVariableLaw {
    pub fn manifold(self) -> Manifold {
        match self {
            HiddenVariableLaw::Su2Uniform => Manifold::Su2,
            HiddenVariableLaw::WhMaxwellian => Manifold::WeylHeisenberg,
        }
    }

    pub fn for_manifold(manifold: Manifold) -> Self {
        match manifold {
            Manifold::Su2 => HiddenVariableLaw::Su2Uniform,
            Manifold::WeylHeisenberg => HiddenVariableLaw::WhMaxwellian,
        }
    }
}

/// The hidden point of trial `trial_index` under `law`.
pub fn sample_hidden(law: HiddenVariableLaw, seed: u64, trial_index: u64) -> ManifoldPoint {
    let mut rng = TrialRng::keyed(seed, STREAM_TRIALS, trial_index);
    match law {
        HiddenVariableLaw::Su2Uniform => {
            ManifoldPoint::Sphere(SpherePoint::sample_uniform(&mut rng))
        }
        HiddenVariableLaw::WhMaxwellian => {
            ManifoldPoint::Wh(WHPoint::single(rng.standard_complex()))
        }
    }
}

/// Distance of a hidden point from the manifold's reference point.
pub fn hidden_diameter(point: &ManifoldPoint) -> f64 {
    match point {
        ManifoldPoint::Sphere(p) => libm::sin(0.5 * p.theta()),
        ManifoldPoint::Wh(p) => libm::sqrt((1.0 - libm::exp(-p.norm_sqr())).max(0.0)),
    }
}

/// The coincidence rule: strict comparison, ties count as no
/// coincidence.
pub fn coincidence_rule(relation_diameter: f64, hidden_diameter: f64) -> bool {
    relation_diameter < hidden_diameter
}

/// Everything recorded about a single trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub hidden_diameter: f64,
    pub relation_diameter: f64,
    pub coincidence: bool,
}

/// The record of trial `trial_index` for settings at the given relation
/// diameter.
pub fn trial_record(
    law: HiddenVariableLaw,
    relation_diameter: f64,
    seed: u64,
    trial_index: u64,
) -> TrialRecord {
    let h = hidden_diameter(&sample_hidden(law, seed, trial_index));
    TrialRecord {
        trial_index,
        hidden_diameter: h,
        relation_diameter,
        coincidence: coincidence_rule(relation_diameter, h),
    }
}

/// Coincidences over a contiguous trial range.
///
/// Because trials are keyed individually, summing this over any partition
/// of `0..n` equals the serial count; this is the primitive a threaded
/// driver parallelizes over.
pub fn coincidence_count(
    law: HiddenVariableLaw,
    relation_diameter: f64,
    seed: u64,
    range: core::ops::Range<u64>,
) -> u64 {
    let mut count = 0;
    for trial_index in range {
        let h = hidden_diameter(&sample_hidden(law, seed, trial_index));
        if coincidence_rule(relation_diameter, h) {
            count += 1;
        }
    }
    count
}

/// Outcome of one fixed-settings experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentReport {
    pub law: HiddenVariableLaw,
    pub n_trials: u64,
    pub relation_diameter: f64,
    /// Quantum prediction `1 - d(g)^2`.
    pub predicted_rate: f64,
    pub coincidences: u64,
    pub observed_rate: f64,
    /// Binomial z-score of the observation; zero when the predicted
    /// variance vanishes and the observation agrees exactly.
    pub z_score: f64,
}

fn check_law_matches(law: HiddenVariableLaw, point: &ManifoldPoint) -> Result<()> {
    if law.manifold() != point.manifold() {
        return Err(Error::ManifoldMismatch {
            expected: law.manifold().name(),
            found: point.manifold().name(),
        });
    }
    Ok(())
}

/// Runs `n_trials` coincidence trials against the settings pair and
/// compares the rate with the quantum prediction.
pub fn run_epr_experiment(
    law: HiddenVariableLaw,
    g1: &ManifoldPoint,
    g2: &ManifoldPoint,
    n_trials: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    check_law_matches(law, g1)?;
    check_law_matches(law, g2)?;
    if n_trials < MIN_TRIALS {
        return Err(Error::InvalidParameter {
            what: alloc::format!("n_trials = {n_trials} below the minimum {MIN_TRIALS}"),
        });
    }
    let d = metric::relation_diameter(&metric::relation_between(g1, g2)?);
    let coincidences = coincidence_count(law, d, seed, 0..n_trials);
    Ok(summarize(law, n_trials, d, coincidences))
}

/// Assembles the report from a (possibly partitioned) coincidence count.
pub fn summarize(
    law: HiddenVariableLaw,
    n_trials: u64,
    relation_diameter: f64,
    coincidences: u64,
) -> ExperimentReport {
    let predicted = 1.0 - relation_diameter * relation_diameter;
    let observed = coincidences as f64 / n_trials as f64;
    let variance = predicted * (1.0 - predicted) / n_trials as f64;
    let z_score = if variance > 0.0 {
        (observed - predicted) / libm::sqrt(variance)
    } else if observed == predicted {
        0.0
    } else {
        f64::INFINITY
    };
    ExperimentReport {
        law,
        n_trials,
        relation_diameter,
        predicted_rate: predicted,
        coincidences,
        observed_rate: observed,
        z_score,
    }
}

/// A transformation applied identically to both settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CommonTransformation {
    /// Common fiber phase: moves the states, not the coordinates, so the
    /// stored settings are untouched on either manifold.
    Phase { angle: f64 },
    /// Exact quarter turn of phase space, `lambda -> -i lambda`,
    /// implemented as a component swap so the separation is preserved
    /// bit for bit (displacement manifold only).
    QuarterTurn,
    /// Number evolution `lambda -> exp(-i omega t) lambda`
    /// (displacement manifold only).
    NumberEvolution { omega: f64, t: f64 },
    /// Common displacement of both settings (displacement manifold
    /// only).
    Displacement { shift: C64 },
    /// Common rotation about the z axis (sphere only).
    ZRotation { psi: f64 },
}

impl CommonTransformation {
    pub fn describe(self) -> &'static str {
        match self {
            CommonTransformation::Phase { .. } => "common phase",
            CommonTransformation::QuarterTurn => "exact quarter turn",
            CommonTransformation::NumberEvolution { .. } => "number evolution",
            CommonTransformation::Displacement { .. } => "common displacement",
            CommonTransformation::ZRotation { .. } => "z rotation",
        }
    }

    /// Applies the transformation to one point.
    pub fn apply(self, point: &ManifoldPoint) -> Result<ManifoldPoint> {
        match (self, point) {
            (CommonTransformation::Phase { .. }, p) => Ok(p.clone()),
            (CommonTransformation::QuarterTurn, ManifoldPoint::Wh(p)) => {
                let modes = p.modes().iter().map(|z| C64::new(z.im, -z.re)).collect();
                Ok(ManifoldPoint::Wh(WHPoint::new(modes)?))
            }
            (CommonTransformation::NumberEvolution { omega, t }, ManifoldPoint::Wh(p)) => {
                let (s, c) = libm::sincos(-omega * t);
                let rot = C64::new(c, s);
                let modes = p.modes().iter().map(|z| z * rot).collect();
                Ok(ManifoldPoint::Wh(WHPoint::new(modes)?))
            }
            (CommonTransformation::Displacement { shift }, ManifoldPoint::Wh(p)) => {
                let modes = p.modes().iter().map(|z| z + shift).collect();
                Ok(ManifoldPoint::Wh(WHPoint::new(modes)?))
            }
            (CommonTransformation::ZRotation { psi }, ManifoldPoint::Sphere(p)) => {
                Ok(ManifoldPoint::Sphere(SpherePoint::new(p.theta(), p.phi() + psi)?))
            }
            (t, p) => Err(Error::ManifoldMismatch {
                expected: match t {
                    CommonTransformation::ZRotation { .. } => "su2",
                    _ => "wh",
                },
                found: p.manifold().name(),
            }),
        }
    }
}

/// Replay comparison for one transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceOutcome {
    pub transformation: CommonTransformation,
    pub d_before: f64,
    pub d_after: f64,
    /// Whether the coincidence decision stream replays identically.
    pub coincidences_identical: bool,
    /// Whether entire trial records replay bit for bit, which requires
    /// the recomputed relation diameter to be bitwise unchanged.
    pub records_bit_identical: bool,
    /// First trial whose coincidence decision changed, if any.
    pub first_divergence: Option<u64>,
}

/// Replay comparison across a set of common transformations.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceReport {
    pub law: HiddenVariableLaw,
    pub n_trials: u64,
    pub outcomes: Vec<CovarianceOutcome>,
}

/// Transforms both settings by each common transformation, reruns the
/// experiment with the same seed, and compares the trial streams.
///
/// The hidden stream depends only on `(seed, trial_index)`, so the trial
/// records replay bit for bit exactly when the recomputed relation
/// diameter is bitwise unchanged; otherwise the coincidence stream is
/// compared decision by decision.
pub fn covariance_check(
    law: HiddenVariableLaw,
    g1: &ManifoldPoint,
    g2: &ManifoldPoint,
    transformations: &[CommonTransformation],
    n_trials: u64,
    seed: u64,
) -> Result<CovarianceReport> {
    check_law_matches(law, g1)?;
    check_law_matches(law, g2)?;
    if n_trials == 0 {
        return Err(Error::InvalidParameter {
            what: "covariance check needs at least one trial".into(),
        });
    }
    let d_before = metric::relation_diameter(&metric::relation_between(g1, g2)?);
    let mut outcomes = Vec::with_capacity(transformations.len());
    for &transformation in transformations {
        let t1 = transformation.apply(g1)?;
        let t2 = transformation.apply(g2)?;
        let d_after = metric::relation_diameter(&metric::relation_between(&t1, &t2)?);
        let (coincidences_identical, first_divergence) = if d_after.to_bits() == d_before.to_bits()
        {
            (true, None)
        } else {
            let mut first = None;
            for trial_index in 0..n_trials {
                let h = hidden_diameter(&sample_hidden(law, seed, trial_index));
                if coincidence_rule(d_before, h) != coincidence_rule(d_after, h) {
                    first = Some(trial_index);
                    break;
                }
            }
            (first.is_none(), first)
        };
        outcomes.push(CovarianceOutcome {
            transformation,
            d_before,
            d_after,
            coincidences_identical,
            records_bit_identical: coincidences_identical
                && d_after.to_bits() == d_before.to_bits(),
            first_divergence,
        });
    }
    Ok(CovarianceReport { law, n_trials, outcomes })
}

/// Empirical-CDF diagnostics of the hidden diameter law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfReport {
    pub law: HiddenVariableLaw,
    pub n_samples: u64,
    /// Kolmogorov-Smirnov distance to the law `F(r) = r^2`.
    pub ks_statistic: f64,
    /// Significance band `1.95 / sqrt(n)`.
    pub ks_bound: f64,
    pub within_bound: bool,
    pub min_value: f64,
    pub max_value: f64,
}

/// Samples `n_samples` hidden diameters and compares their empirical CDF
/// with `F(r) = r^2`.
pub fn cdf_diagnostics(
    law: HiddenVariableLaw,
    n_samples: u64,
    seed: u64,
) -> Result<CdfReport> {
    if n_samples < 10 {
        return Err(Error::InvalidParameter {
            what: alloc::format!("CDF diagnostics need at least 10 samples, got {n_samples}"),
        });
    }
    let mut values: Vec<f64> = (0..n_samples)
        .map(|trial_index| hidden_diameter(&sample_hidden(law, seed, trial_index)))
        .collect();
    values.sort_unstable_by(|a, b| a.total_cmp(b));
    let n = n_samples as f64;
    let mut ks = 0.0f64;
    for (i, r) in values.iter().enumerate() {
        let f = (r * r).clamp(0.0, 1.0);
        ks = ks.max(f - i as f64 / n);
        ks = ks.max((i + 1) as f64 / n - f);
    }
    let ks_bound = 1.95 / libm::sqrt(n);
    Ok(CdfReport {
        law,
        n_samples,
        ks_statistic: ks,
        ks_bound,
        within_bound: ks <= ks_bound,
        min_value: values[0],
        max_value: values[values.len() - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sphere(theta: f64, phi: f64) -> ManifoldPoint {
        ManifoldPoint::Sphere(SpherePoint::new(theta, phi).unwrap())
    }

    fn wh_point(re: f64, im: f64) -> ManifoldPoint {
        ManifoldPoint::Wh(WHPoint::single(c(re, im)))
    }

    #[test]
    fn law_and_settings_must_share_a_manifold() {
        let err = run_epr_experiment(
            HiddenVariableLaw::Su2Uniform,
            &wh_point(0.0, 0.0),
            &wh_point(1.0, 0.0),
            10_000,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ManifoldMismatch { .. }));
    }

    #[test]
    fn trial_minimum_is_enforced() {
        let err = run_epr_experiment(
            HiddenVariableLaw::Su2Uniform,
            &sphere(0.0, 0.0),
            &sphere(1.0, 0.0),
            999,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
    }

    #[test]
    fn ties_are_not_coincidences() {
        assert!(!coincidence_rule(0.5, 0.5));
        assert!(coincidence_rule(0.4999, 0.5));
        assert!(!coincidence_rule(0.5, 0.4999));
    }

    #[test]
    fn identical_settings_always_coincide() {
        let report = run_epr_experiment(
            HiddenVariableLaw::Su2Uniform,
            &sphere(0.9, 0.3),
            &sphere(0.9, 0.3),
            5_000,
            7,
        )
        .unwrap();
        assert_eq!(report.coincidences, report.n_trials);
        assert_eq!(report.z_score, 0.0);
    }

    #[test]
    fn antipodal_settings_never_coincide() {
        let report = run_epr_experiment(
            HiddenVariableLaw::Su2Uniform,
            &sphere(0.0, 0.0),
            &sphere(core::f64::consts::PI, 0.0),
            5_000,
            7,
        )
        .unwrap();
        assert_eq!(report.coincidences, 0);
        assert_eq!(report.predicted_rate, 0.0);
        assert_eq!(report.z_score, 0.0);
    }

    #[test]
    fn rates_track_quantum_prediction_on_both_manifolds() {
        let su2 = run_epr_experiment(
            HiddenVariableLaw::Su2Uniform,
            &sphere(0.0, 0.0),
            &sphere(core::f64::consts::FRAC_PI_2, 0.0),
            200_000,
            42,
        )
        .unwrap();
        assert!((su2.predicted_rate - 0.5).abs() <= 1e-15);
        assert!(su2.z_score.abs() <= 3.89, "{su2:?}");

        let wh = run_epr_experiment(
            HiddenVariableLaw::WhMaxwellian,
            &wh_point(0.0, 0.0),
            &wh_point(1.0, 0.0),
            200_000,
            42,
        )
        .unwrap();
        let predicted = libm::exp(-1.0);
        assert!((wh.predicted_rate - predicted).abs() <= 1e-15);
        assert!(wh.z_score.abs() <= 3.89, "{wh:?}");
    }

    #[test]
    fn counts_are_partition_independent() {
        let law = HiddenVariableLaw::WhMaxwellian;
        let total = coincidence_count(law, 0.6, 3, 0..10_000);
        let split = coincidence_count(law, 0.6, 3, 0..2_500)
            + coincidence_count(law, 0.6, 3, 2_500..7_000)
            + coincidence_count(law, 0.6, 3, 7_000..10_000);
        assert_eq!(total, split);
    }

    #[test]
    fn identical_seeds_replay_identical_reports() {
        let a = run_epr_experiment(
            HiddenVariableLaw::WhMaxwellian,
            &wh_point(0.3, 0.1),
            &wh_point(-0.5, 0.8),
            50_000,
            9,
        )
        .unwrap();
        let b = run_epr_experiment(
            HiddenVariableLaw::WhMaxwellian,
            &wh_point(0.3, 0.1),
            &wh_point(-0.5, 0.8),
            50_000,
            9,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn phase_and_quarter_turn_replay_bit_identically() {
        let report = covariance_check(
            HiddenVariableLaw::WhMaxwellian,
            &wh_point(0.37, -0.21),
            &wh_point(-0.64, 0.55),
            &[
                CommonTransformation::Phase { angle: 0.7 },
                CommonTransformation::QuarterTurn,
            ],
            100_000,
            11,
        )
        .unwrap();
        for outcome in &report.outcomes {
            assert!(outcome.records_bit_identical, "{outcome:?}");
            assert!(outcome.first_divergence.is_none());
        }
    }

    #[test]
    fn generic_transformations_preserve_decisions() {
        let report = covariance_check(
            HiddenVariableLaw::WhMaxwellian,
            &wh_point(0.37, -0.21),
            &wh_point(-0.64, 0.55),
            &[
                CommonTransformation::NumberEvolution { omega: 1.0, t: 0.7 },
                CommonTransformation::Displacement { shift: c(0.4, -0.9) },
            ],
            100_000,
            11,
        )
        .unwrap();
        for outcome in &report.outcomes {
            assert!(outcome.coincidences_identical, "{outcome:?}");
            assert!((outcome.d_after - outcome.d_before).abs() <= 1e-14);
        }
    }

    #[test]
    fn sphere_rotation_preserves_decisions() {
        let report = covariance_check(
            HiddenVariableLaw::Su2Uniform,
            &sphere(0.9, 0.2),
            &sphere(2.1, 1.5),
            &[
                CommonTransformation::Phase { angle: 1.0 },
                CommonTransformation::ZRotation { psi: 0.7 },
            ],
            100_000,
            13,
        )
        .unwrap();
        assert!(report.outcomes[0].records_bit_identical);
        assert!(report.outcomes[1].coincidences_identical, "{:?}", report.outcomes[1]);
    }

    #[test]
    fn transformations_respect_manifolds() {
        let err = CommonTransformation::ZRotation { psi: 0.2 }
            .apply(&wh_point(1.0, 0.0))
            .unwrap_err();
        assert!(matches!(err, Error::ManifoldMismatch { .. }));
        let err = CommonTransformation::QuarterTurn
            .apply(&sphere(0.5, 0.5))
            .unwrap_err();
        assert!(matches!(err, Error::ManifoldMismatch { .. }));
    }

    #[test]
    fn hidden_diameter_squared_is_uniform() {
        for law in [HiddenVariableLaw::Su2Uniform, HiddenVariableLaw::WhMaxwellian] {
            let report = cdf_diagnostics(law, 20_000, 17).unwrap();
            assert!(report.within_bound, "{report:?}");
            assert!(report.min_value >= 0.0 && report.max_value <= 1.0);
        }
    }

    #[test]
    fn cdf_diagnostics_rejects_tiny_samples() {
        assert!(cdf_diagnostics(HiddenVariableLaw::Su2Uniform, 5, 0).is_err());
    }
}
