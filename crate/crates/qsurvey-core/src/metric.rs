//! The overlap metric on coherence relations.
//!
//! The distance between two points of a coherent-state manifold is
//! `d = sqrt(1 - p)` with `p = |<g1|g2>|^2`.  Because `p` depends only on
//! the relative group element modulo stability factors on both sides, `d`
//! has a closed form in the coherence relation alone: `sin(Theta/2)` for
//! the sphere (Bloch angle `Theta`) and `sqrt(1 - exp(-|delta|^2))` for
//! displacements with relative amplitude `delta`.
//!
//! Axiom checks run over random triples.  The identity axiom is measured
//! as the overlap deficit `d(g, g)^2`: the square root would amplify the
//! last-ulp noise of `p` near 1 to about `1e-8`, so `d^2` is the quantity
//! that honestly carries a `1e-12` slack.
//!
//! Short-time dynamics: evolving one endpoint for `dt` separates the pair
//! by `d = dt * Delta + O(dt^3)` where `Delta` is the generator's energy
//! dispersion in the state.  The deviation of `d / (dt * Delta)` from 1
//! is even in `dt`, so the linear law is verified through the fitted
//! constant `K(dt) = |d - dt * Delta| / dt^2`, which halves when `dt`
//! halves.

use alloc::format;
use alloc::vec::Vec;

use crate::hilbert::{self, StateVector};
use crate::rng::TrialRng;
use crate::su2::SpherePoint;
use crate::wh::{self, FockCutoff, WHPoint};
use crate::{C64, Error, Result};

/// Slack allowed when judging metric-axiom defects.
pub const AXIOM_SLACK: f64 = 1e-12;
/// Norm gate for [`distance`] inputs: `||v|^2 - 1|` up to this much is
/// accepted, which admits truncated coherent vectors at the default
/// truncation tolerance.
pub const DISTANCE_NORM_GATE: f64 = 1e-10;

const STREAM_AXIOMS: u64 = 2;
const STREAM_INVARIANCE: u64 = 3;

/// The two coherent-state manifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Manifold {
    Su2,
    WeylHeisenberg,
}

impl Manifold {
    pub fn name(self) -> &'static str {
        match self {
            Manifold::Su2 => "su2",
            Manifold::WeylHeisenberg => "wh",
        }
    }
}

/// A point of either manifold, for code that is generic over the two.
#[derive(Debug, Clone, PartialEq)]
pub enum ManifoldPoint {
    Sphere(SpherePoint),
    Wh(WHPoint),
}

impl ManifoldPoint {
    pub fn manifold(&self) -> Manifold {
        match self {
            ManifoldPoint::Sphere(_) => Manifold::Su2,
            ManifoldPoint::Wh(_) => Manifold::WeylHeisenberg,
        }
    }
}

/// Stability-invariant relation between two points: everything the
/// metric can depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoherenceRelation {
    /// Bloch angle in `[0, pi]` between two sphere points.
    Sphere { angle: f64 },
    /// Squared modulus of the relative displacement between two points.
    Displacement { separation_sqr: f64 },
}

/// The coherence relation of a pair of points (same manifold required).
pub fn relation_between(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<CoherenceRelation> {
    match (a, b) {
        (ManifoldPoint::Sphere(p), ManifoldPoint::Sphere(q)) => {
            let np = p.bloch_vector();
            let nq = q.bloch_vector();
            let dot = np[0] * nq[0] + np[1] * nq[1] + np[2] * nq[2];
            Ok(CoherenceRelation::Sphere { angle: libm::acos(dot.clamp(-1.0, 1.0)) })
        }
        (ManifoldPoint::Wh(p), ManifoldPoint::Wh(q)) => Ok(CoherenceRelation::Displacement {
            separation_sqr: wh::separation_sqr(p, q)?,
        }),
        (a, b) => Err(Error::ManifoldMismatch {
            expected: a.manifold().name(),
            found: b.manifold().name(),
        }),
    }
}

/// Closed-form distance of a coherence relation.
pub fn relation_diameter(rel: &CoherenceRelation) -> f64 {
    match rel {
        CoherenceRelation::Sphere { angle } => libm::sin(0.5 * angle),
        CoherenceRelation::Displacement { separation_sqr } => {
            libm::sqrt((1.0 - libm::exp(-separation_sqr)).max(0.0))
        }
    }
}

/// `sqrt(1 - |<a|b>|^2)` between two near-normalized kets.
///
/// Inputs must sit within [`DISTANCE_NORM_GATE`] of unit norm; anything
/// looser must be renormalized by the caller first, because the overlap
/// of unnormalized vectors is not a probability.
pub fn distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    for (label, v) in [("first", a), ("second", b)] {
        let dev = (v.norm_sqr() - 1.0).abs();
        if dev > DISTANCE_NORM_GATE {
            return Err(Error::InvalidParameter {
                what: format!(
                    "{label} argument norm^2 deviates from 1 by {dev:e}, beyond the {DISTANCE_NORM_GATE:e} gate"
                ),
            });
        }
    }
    let p = hilbert::inner(a, b)?.norm_sqr();
    Ok(libm::sqrt((1.0 - p).max(0.0)))
}

/// Result of a random-triple metric-axiom sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAxiomReport {
    pub manifold: Manifold,
    pub n_triples: usize,
    /// Triples violating any axiom beyond [`AXIOM_SLACK`].
    pub violations: usize,
    /// Largest observed `d(g, g)^2`.
    pub max_identity_defect: f64,
    /// Largest observed `|d(a, b) - d(b, a)|`.
    pub max_symmetry_defect: f64,
    /// Largest observed `d(a, c) - d(a, b) - d(b, c)` over all labelings
    /// (non-positive when the triangle inequality holds).
    pub max_triangle_defect: f64,
}

/// Sweeps `n_triples` random triples and measures the defect of each
/// metric axiom.
///
/// Sphere triples are uniform and measured through the state-vector
/// route; displacement triples are Gaussian (scaled to span separations
/// past the metric's saturation scale) and measured through the exact
/// closed form, which is the definition of the metric on that manifold.
pub fn verify_metric_axioms(
    manifold: Manifold,
    n_triples: usize,
    seed: u64,
) -> Result<MetricAxiomReport> {
    if n_triples == 0 {
        return Err(Error::InvalidParameter {
            what: "axiom sweep needs at least one triple".into(),
        });
    }
    let mut report = MetricAxiomReport {
        manifold,
        n_triples,
        violations: 0,
        max_identity_defect: 0.0,
        max_symmetry_defect: 0.0,
        max_triangle_defect: f64::NEG_INFINITY,
    };
    for index in 0..n_triples {
        let mut rng = TrialRng::keyed(seed, STREAM_AXIOMS, index as u64);
        let (d, identity_defect) = match manifold {
            Manifold::Su2 => sphere_triple(&mut rng)?,
            Manifold::WeylHeisenberg => displacement_triple(&mut rng),
        };
        // d = [d01, d12, d02] plus the reversed-order copies for symmetry.
        let (forward, backward) = d;
        let mut sym = 0.0f64;
        for k in 0..3 {
            sym = sym.max((forward[k] - backward[k]).abs());
        }
        let triangle = [
            forward[2] - forward[0] - forward[1],
            forward[0] - forward[2] - forward[1],
            forward[1] - forward[0] - forward[2],
        ];
        let tri_defect = triangle.iter().fold(f64::NEG_INFINITY, |m, t| m.max(*t));
        report.max_identity_defect = report.max_identity_defect.max(identity_defect);
        report.max_symmetry_defect = report.max_symmetry_defect.max(sym);
        report.max_triangle_defect = report.max_triangle_defect.max(tri_defect);
        if identity_defect > AXIOM_SLACK || sym > AXIOM_SLACK || tri_defect > AXIOM_SLACK {
            report.violations += 1;
        }
    }
    Ok(report)
}

type TripleDistances = ([f64; 3], [f64; 3]);

fn sphere_triple(rng: &mut TrialRng) -> Result<(TripleDistances, f64)> {
    let p0 = SpherePoint::sample_uniform(rng);
    let p1 = SpherePoint::sample_uniform(rng);
    let p2 = SpherePoint::sample_uniform(rng);
    let v0 = crate::su2::coherent_point(&p0);
    let v1 = crate::su2::coherent_point(&p1);
    let v2 = crate::su2::coherent_point(&p2);
    let forward = [distance(&v0, &v1)?, distance(&v1, &v2)?, distance(&v0, &v2)?];
    let backward = [distance(&v1, &v0)?, distance(&v2, &v1)?, distance(&v2, &v0)?];
    let p_self = hilbert::inner(&v0, &v0)?.norm_sqr();
    Ok(((forward, backward), (1.0 - p_self).abs()))
}

fn displacement_triple(rng: &mut TrialRng) -> (TripleDistances, f64) {
    let scale = 1.2;
    let l0 = rng.standard_complex() * scale;
    let l1 = rng.standard_complex() * scale;
    let l2 = rng.standard_complex() * scale;
    let d = |a: C64, b: C64| -> f64 {
        libm::sqrt((1.0 - libm::exp(-(a - b).norm_sqr())).max(0.0))
    };
    let forward = [d(l0, l1), d(l1, l2), d(l0, l2)];
    let backward = [d(l1, l0), d(l2, l1), d(l2, l0)];
    ((forward, backward), d(l0, l0) * d(l0, l0))
}

/// One step of the short-time diameter law at a fixed `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalDiameterRow {
    pub dt: f64,
    /// Measured `d(g, e^{-iH dt} g)`.
    pub distance: f64,
    /// First-order prediction `dt * Delta`.
    pub predicted: f64,
    /// `distance / predicted`.
    pub ratio: f64,
    /// `|distance - predicted| / dt^2`; halves when `dt` halves.
    pub fitted_k: f64,
}

/// Short-time diameter law for one displacement state under the number
/// Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalDiameterReport {
    /// Energy dispersion `Delta` of the state (the predicted slope).
    pub dispersion: f64,
    pub rows: Vec<LocalDiameterRow>,
}

impl LocalDiameterReport {
    /// Ratios of consecutive fitted constants `K(dt_i) / K(dt_{i+1})`;
    /// close to `dt_i / dt_{i+1}` when the linear law holds.
    pub fn fitted_k_ratios(&self) -> Vec<f64> {
        self.rows
            .windows(2)
            .map(|w| w[0].fitted_k / w[1].fitted_k)
            .collect()
    }
}

/// Measures `d(g, e^{-i omega N dt} g)` against `dt * Delta` for each
/// step in `dt_list`.
///
/// Requires a non-vacuum state (`lambda != 0`: the vacuum has zero
/// dispersion and the ratio is undefined) and strictly positive steps.
pub fn local_diameter_check(
    lambda: C64,
    omega: f64,
    dt_list: &[f64],
    cutoff: &FockCutoff,
) -> Result<LocalDiameterReport> {
    if dt_list.is_empty() {
        return Err(Error::InvalidParameter {
            what: "local diameter check needs at least one step".into(),
        });
    }
    if dt_list.iter().any(|dt| !(dt > &0.0 && dt.is_finite())) {
        return Err(Error::InvalidParameter {
            what: "all steps must be positive and finite".into(),
        });
    }
    if lambda.norm_sqr() == 0.0 || omega == 0.0 {
        return Err(Error::InvalidParameter {
            what: "vacuum state or zero frequency has no dispersion to compare against".into(),
        });
    }
    let delta = wh::dispersion(lambda, omega, cutoff)?;
    let v = wh::coherent_vector(lambda, cutoff)?;
    let n_op = wh::number_operator(cutoff);
    let h = crate::hilbert::Operator::hermitian(
        cutoff.dim(),
        n_op.entries().iter().map(|e| e * omega).collect(),
    )?;
    let mut rows = Vec::with_capacity(dt_list.len());
    for &dt in dt_list {
        let u = hilbert::matrix_exponential(&h, dt)?;
        let moved = u.apply(&v)?;
        let d = distance(&v, &moved)?;
        let predicted = dt * delta;
        rows.push(LocalDiameterRow {
            dt,
            distance: d,
            predicted,
            ratio: d / predicted,
            fitted_k: (d - predicted).abs() / (dt * dt),
        });
    }
    Ok(LocalDiameterReport { dispersion: delta, rows })
}

/// Result of a random sweep of common-transformation invariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceReport {
    pub manifold: Manifold,
    pub n_samples: usize,
    /// Largest observed `|d(T g1, T g2) - d(g1, g2)|`.
    pub max_deviation: f64,
}

/// Verifies that the distance depends only on the coherence relation:
/// applying a common group transformation to both points leaves it
/// unchanged.
///
/// Sphere pairs are transported by random common SU(2) rotations at the
/// state level; displacement pairs by random common displacements plus a
/// common phase-space rotation, through the closed form.
pub fn stability_invariance_check(
    manifold: Manifold,
    n_samples: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter {
            what: "invariance sweep needs at least one sample".into(),
        });
    }
    let mut max_dev = 0.0f64;
    for index in 0..n_samples {
        let mut rng = TrialRng::keyed(seed, STREAM_INVARIANCE, index as u64);
        let dev = match manifold {
            Manifold::Su2 => {
                let v1 = crate::su2::coherent_point(&SpherePoint::sample_uniform(&mut rng));
                let v2 = crate::su2::coherent_point(&SpherePoint::sample_uniform(&mut rng));
                let u = crate::su2::random_su2(&mut rng);
                let before = distance(&v1, &v2)?;
                let after = distance(&u.apply(&v1)?, &u.apply(&v2)?)?;
                (after - before).abs()
            }
            Manifold::WeylHeisenberg => {
                let l1 = rng.standard_complex() * 1.2;
                let l2 = rng.standard_complex() * 1.2;
                let shift = rng.standard_complex();
                let angle = 2.0 * core::f64::consts::PI * rng.uniform();
                let (s, c) = libm::sincos(angle);
                let rot = C64::new(c, s);
                let d = |a: C64, b: C64| -> f64 {
                    libm::sqrt((1.0 - libm::exp(-(a - b).norm_sqr())).max(0.0))
                };
                let before = d(l1, l2);
                let after = d(rot * l1 + shift, rot * l2 + shift);
                (after - before).abs()
            }
        };
        max_dev = max_dev.max(dev);
    }
    Ok(InvarianceReport { manifold, n_samples, max_deviation: max_dev })
}
