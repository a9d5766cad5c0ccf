//! Weyl-Heisenberg (Glauber) coherent states in a truncated number basis.
//!
//! The manifold is the orbit of the oscillator vacuum under displacements
//! `u(lambda) = exp(lambda a^dagger - conj(lambda) a)`; after quotienting
//! the phase stability subgroup the points are complex amplitudes, one per
//! mode.  The flat invariant measure is `pi^-1 d^2 lambda` per mode.
//!
//! Numerically everything lives below a Fock cutoff `n_max`.  Truncation
//! policy: a coherent vector is refused (with the smallest adequate
//! cutoff) when the Poisson weight above `n_max` exceeds the configured
//! tolerance, and the disk identity resolution is refused when the disk
//! does not cover the retained Fock weight (`R^2 < n_max`) or the angular
//! grid aliases the retained frequencies.
//!
//! Truncated displacement operators are exactly unitary (they are built by
//! the Hermitian-eigendecomposition exponential) but differ from the
//! projected infinite-dimensional operator near the cutoff boundary by
//! order one; comparisons against group-law predictions therefore look at
//! interior matrix blocks and vacuum columns, never at rows near `n_max`.

use alloc::format;
use alloc::vec::Vec;

use crate::hilbert::{self, Operator, StateVector};
use crate::quadrature::gauss_legendre_on;
use crate::{C64, Error, Result};

/// Default ceiling on the Fock weight allowed above the cutoff.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

/// Largest cutoff the error-reporting search will suggest.
const CUTOFF_SEARCH_LIMIT: usize = 100_000;

/// Fock-space truncation: states use levels `0 ..= n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCutoff {
    n_max: usize,
    truncation_tol: f64,
}

impl FockCutoff {
    pub fn new(n_max: usize) -> Result<Self> {
        FockCutoff::with_tolerance(n_max, DEFAULT_TRUNCATION_TOL)
    }

    pub fn with_tolerance(n_max: usize, truncation_tol: f64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidParameter {
                what: "cutoff must retain at least levels 0 and 1".into(),
            });
        }
        if !(truncation_tol > 0.0 && truncation_tol < 1.0) {
            return Err(Error::InvalidParameter {
                what: format!("truncation tolerance {truncation_tol} outside (0, 1)"),
            });
        }
        Ok(FockCutoff { n_max, truncation_tol })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn truncation_tol(&self) -> f64 {
        self.truncation_tol
    }

    /// Dimension of the truncated space, `n_max + 1`.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Manifold point: one complex displacement amplitude per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct WHPoint {
    modes: Vec<C64>,
}

impl WHPoint {
    pub fn new(modes: Vec<C64>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter {
                what: "a point needs at least one mode".into(),
            });
        }
        if modes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter {
                what: "mode amplitudes must be finite".into(),
            });
        }
        Ok(WHPoint { modes })
    }

    pub fn single(lambda: C64) -> Self {
        WHPoint { modes: alloc::vec![lambda] }
    }

    pub fn modes(&self) -> &[C64] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.modes.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `sum_j |lambda_j - mu_j|^2` between two points.
pub fn separation_sqr(p1: &WHPoint, p2: &WHPoint) -> Result<f64> {
    if p1.n_modes() != p2.n_modes() {
        return Err(Error::DimensionMismatch { left: p1.n_modes(), right: p2.n_modes() });
    }
    Ok(p1
        .modes
        .iter()
        .zip(&p2.modes)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum())
}

/// Poisson weight retained at or below level `n` for intensity `x`:
/// `exp(-x) sum_{k<=n} x^k / k!`.
fn poisson_mass_below(n: usize, x: f64) -> f64 {
    let mut term = libm::exp(-x);
    let mut sum = term;
    for k in 1..=n {
        term *= x / k as f64;
        sum += term;
    }
    sum
}

/// Smallest cutoff keeping the Poisson tail of intensity `x` at or below
/// `tol`, if one exists below the search limit.
fn minimal_adequate_cutoff(x: f64, tol: f64) -> Option<usize> {
    let mut term = libm::exp(-x);
    let mut sum = term;
    if 1.0 - sum <= tol {
        return Some(1);
    }
    for n in 1..=CUTOFF_SEARCH_LIMIT {
        term *= x / n as f64;
        sum += term;
        if 1.0 - sum <= tol {
            return Some(n);
        }
    }
    None
}

/// Truncated Glauber amplitudes `c_n = exp(-|lambda|^2 / 2) lambda^n /
/// sqrt(n!)` for levels `0 ..= n_max`.
///
/// Errors with the smallest adequate cutoff when more than the configured
/// tolerance of the state's weight would be cut off.  The amplitudes are
/// not renormalized: the missing tail is the honest record of the
/// truncation quality.
pub fn coherent_vector(lambda: C64, cutoff: &FockCutoff) -> Result<StateVector> {
    let intensity = lambda.norm_sqr();
    let tail = 1.0 - poisson_mass_below(cutoff.n_max, intensity);
    if tail > cutoff.truncation_tol {
        let required = minimal_adequate_cutoff(intensity, cutoff.truncation_tol)
            .unwrap_or(CUTOFF_SEARCH_LIMIT);
        return Err(Error::CutoffInsufficient { n_max: cutoff.n_max, required });
    }
    let mut amps = Vec::with_capacity(cutoff.dim());
    let mut c = C64::new(libm::exp(-0.5 * intensity), 0.0);
    amps.push(c);
    for n in 1..=cutoff.n_max {
        c = c * lambda / libm::sqrt(n as f64);
        amps.push(c);
    }
    let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() <= hilbert::NORMALIZED_TOL {
        StateVector::certified_normalized(amps)
    } else {
        Ok(StateVector::new(amps))
    }
}

/// Truncated annihilation operator: `a |n> = sqrt(n) |n-1>`.
pub fn annihilator(cutoff: &FockCutoff) -> Operator {
    Operator::from_fn(cutoff.dim(), |i, j| {
        if j == i + 1 {
            C64::new(libm::sqrt(j as f64), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Truncated number operator `a^dagger a`, Hermitian by construction.
pub fn number_operator(cutoff: &FockCutoff) -> Operator {
    let dim = cutoff.dim();
    let entries = Operator::from_fn(dim, |i, j| {
        C64::new(if i == j { i as f64 } else { 0.0 }, 0.0)
    });
    Operator::hermitian(dim, entries.entries().to_vec())
        .expect("diagonal real matrix is Hermitian")
}

/// Truncated displacement `u(lambda) = exp(lambda a^dagger -
/// conj(lambda) a)`, exactly unitary on the truncated space.
///
/// Interior matrix elements (levels well below `n_max`) agree with the
/// infinite-dimensional operator; elements near the cutoff do not.
pub fn displacement_operator(lambda: C64, cutoff: &FockCutoff) -> Result<Operator> {
    let dim = cutoff.dim();
    // u = exp(-i H) with H = i (lambda a^dagger - conj(lambda) a).
    let i_unit = C64::new(0.0, 1.0);
    let h = Operator::from_fn(dim, |r, c| {
        if r == c + 1 {
            i_unit * lambda * libm::sqrt(r as f64)
        } else if c == r + 1 {
            -i_unit * lambda.conj() * libm::sqrt(c as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let h = Operator::hermitian(dim, h.entries().to_vec())?;
    hilbert::matrix_exponential(&h, 1.0)
}

/// Group law of displacements: `u(mu) u(lambda) = exp(i phase)
/// u(lambda + mu)` with `phase = Im(conj(lambda) mu)`.
///
/// Returns the composed label and the phase.  The phase is antisymmetric
/// under swapping the order of application.
pub fn displacement_compose(lambda: C64, mu: C64) -> (C64, f64) {
    (lambda + mu, (lambda.conj() * mu).im)
}

/// Exact overlap probability `|<lambda|mu>|^2 = exp(-sum |lambda_j -
/// mu_j|^2)` of the untruncated states.
pub fn overlap_probability(p1: &WHPoint, p2: &WHPoint) -> Result<f64> {
    Ok(libm::exp(-separation_sqr(p1, p2)?))
}

/// Overlap probability computed from the truncated amplitudes.
pub fn overlap_probability_truncated(
    lambda: C64,
    mu: C64,
    cutoff: &FockCutoff,
) -> Result<f64> {
    let a = coherent_vector(lambda, cutoff)?;
    let b = coherent_vector(mu, cutoff)?;
    Ok(hilbert::inner(&a, &b)?.norm_sqr().clamp(0.0, 1.0))
}

/// Product rule on the disk `|lambda| <= R` with measure
/// `pi^-1 d^2 lambda`: Gauss-Legendre in `s = r^2` crossed with a uniform
/// angular grid.
#[derive(Debug, Clone)]
pub struct DiskQuadrature {
    points: Vec<(C64, f64)>,
    radius: f64,
    n_radial: usize,
    n_angular: usize,
}

impl DiskQuadrature {
    pub fn new(radius: f64, n_radial: usize, n_angular: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter {
                what: format!("disk radius {radius} must be positive and finite"),
            });
        }
        if n_radial == 0 || n_angular == 0 {
            return Err(Error::QuadratureTooCoarse {
                detail: "disk rule needs at least one node in each direction".into(),
            });
        }
        let (s_nodes, s_weights) = gauss_legendre_on(n_radial, 0.0, radius * radius)?;
        let mut points = Vec::with_capacity(n_radial * n_angular);
        for (s, ws) in s_nodes.iter().zip(&s_weights) {
            let r = libm::sqrt(*s);
            for j in 0..n_angular {
                let phi = 2.0 * core::f64::consts::PI * j as f64 / n_angular as f64;
                let (sp, cp) = libm::sincos(phi);
                points.push((C64::new(r * cp, r * sp), ws / n_angular as f64));
            }
        }
        Ok(DiskQuadrature { points, radius, n_radial, n_angular })
    }

    pub fn points(&self) -> &[(C64, f64)] {
        &self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_radial(&self) -> usize {
        self.n_radial
    }

    pub fn n_angular(&self) -> usize {
        self.n_angular
    }

    /// Total measure carried by the rule, `R^2`.
    pub fn total_weight(&self) -> f64 {
        self.points.iter().map(|(_, w)| w).sum()
    }
}

/// Exact diagonal of the disk-restricted identity resolution: the
/// regularized lower incomplete gamma `P(n + 1, R^2) = 1 - exp(-R^2)
/// sum_{k<=n} R^{2k} / k!`.
pub fn disk_identity_expected_diagonal(n: usize, radius_sq: f64) -> f64 {
    1.0 - poisson_mass_below(n, radius_sq)
}

/// `sum_k w_k |lambda_k><lambda_k|` over the disk rule, in the truncated
/// basis.
///
/// Preconditions: the disk must cover the retained Fock weight
/// (`R^2 >= n_max`) and the angular grid must not alias the retained
/// frequency content (`n_angular >= 2 n_max + 1`).  The diagonal
/// converges to `P(n + 1, R^2)` and the off-diagonal to zero.
pub fn identity_resolution(quad: &DiskQuadrature, cutoff: &FockCutoff) -> Result<Operator> {
    let radius_sq = quad.radius() * quad.radius();
    if radius_sq < cutoff.n_max() as f64 {
        return Err(Error::CoverageInsufficient { radius_sq, n_max: cutoff.n_max() });
    }
    if quad.n_angular() < 2 * cutoff.n_max() + 1 {
        return Err(Error::QuadratureTooCoarse {
            detail: format!(
                "angular grid {} aliases frequencies up to cutoff {}; need at least {}",
                quad.n_angular(),
                cutoff.n_max(),
                2 * cutoff.n_max() + 1
            ),
        });
    }
    let dim = cutoff.dim();
    let mut out = Operator::zeros(dim);
    let mut amps = Vec::with_capacity(dim);
    for (lambda, w) in quad.points() {
        amps.clear();
        let mut c = C64::new(libm::exp(-0.5 * lambda.norm_sqr()), 0.0);
        amps.push(c);
        for n in 1..=cutoff.n_max() {
            c = c * lambda / libm::sqrt(n as f64);
            amps.push(c);
        }
        for (i, &ai) in amps.iter().enumerate() {
            let scaled = ai * *w;
            for (j, aj) in amps.iter().enumerate() {
                let cur = out.get(i, j);
                out.set(i, j, cur + scaled * aj.conj());
            }
        }
    }
    Ok(out)
}

/// Anti-unitary Fock-basis conjugation (`tau v = conj(v)`, unitary part
/// `I`): sends `|lambda>` to `|conj(lambda)>` and squares to `+I`.
pub fn fock_conjugation(cutoff: &FockCutoff) -> crate::hilbert::TauMap {
    crate::hilbert::TauMap::new(Operator::identity(cutoff.dim()))
        .expect("identity is unitary and squares to +I")
}

/// Rotation of a single amplitude under the number Hamiltonian
/// `omega a^dagger a`: `lambda(t) = exp(-i omega t) lambda`.
pub fn evolve_amplitude(lambda: C64, omega: f64, t: f64) -> C64 {
    let (s, c) = libm::sincos(-omega * t);
    lambda * C64::new(c, s)
}

/// Evolution of an n-mode point under the quadratic Hamiltonian
/// `sum_jk Omega_jk a_j^dagger a_k`: `lambda(t) = exp(-i Omega t) lambda`.
///
/// `Omega` must carry the Hermitian certificate and match the mode count.
pub fn evolve_point(p: &WHPoint, omega: &Operator, t: f64) -> Result<WHPoint> {
    if omega.dim() != p.n_modes() {
        return Err(Error::DimensionMismatch { left: omega.dim(), right: p.n_modes() });
    }
    let u = hilbert::matrix_exponential(omega, t)?;
    let v = StateVector::new(p.modes().to_vec());
    let out = u.apply(&v)?;
    WHPoint::new(out.amps().to_vec())
}

/// Fidelity between the Schroedinger-evolved truncated coherent state and
/// the coherent state of the rotated label.
///
/// For the number Hamiltonian the two agree including phase, so the
/// result measures only truncation and eigensolver error.
pub fn evolve_state_fidelity(
    lambda: C64,
    omega: f64,
    t: f64,
    cutoff: &FockCutoff,
) -> Result<f64> {
    let h = number_operator(cutoff);
    let h = Operator::hermitian(
        cutoff.dim(),
        h.entries().iter().map(|e| e * omega).collect(),
    )?;
    let u = hilbert::matrix_exponential(&h, t)?;
    let evolved = u.apply(&coherent_vector(lambda, cutoff)?)?;
    let rotated = coherent_vector(evolve_amplitude(lambda, omega, t), cutoff)?;
    Ok(hilbert::inner(&rotated, &evolved)?.norm_sqr().clamp(0.0, 1.0))
}

/// Energy dispersion `sqrt(<H^2> - <H>^2)` of the truncated coherent
/// state under `H = omega a^dagger a`; analytically `omega |lambda|`.
pub fn dispersion(lambda: C64, omega: f64, cutoff: &FockCutoff) -> Result<f64> {
    let v = coherent_vector(lambda, cutoff)?;
    let n_op = number_operator(cutoff);
    let e1 = hilbert::expectation(&n_op, &v)?.re;
    let e2 = hilbert::expectation(&n_op.mul(&n_op)?, &v)?.re;
    Ok(omega.abs() * libm::sqrt((e2 - e1 * e1).max(0.0)))
}

/// Frobenius residual of the Heisenberg equation of motion for the
/// displacement `g(t) = U_t u(lambda) U_t^dagger` under `H = omega
/// a^dagger a`, with the time derivative replaced by a central difference
/// of step `dt`:
///
/// `|| (g(t+dt) - g(t-dt)) / (2 dt) + i [H, g(t)] ||_F`
///
/// The central difference makes the residual second order: it shrinks by
/// a factor of four when `dt` halves.
pub fn heisenberg_residual(
    lambda: C64,
    omega: f64,
    t: f64,
    dt: f64,
    cutoff: &FockCutoff,
) -> Result<f64> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            what: format!("central-difference step {dt} must be positive"),
        });
    }
    let dim = cutoff.dim();
    let n_op = number_operator(cutoff);
    let h = Operator::hermitian(dim, n_op.entries().iter().map(|e| e * omega).collect())?;
    let g0 = displacement_operator(lambda, cutoff)?;
    let at = |s: f64| -> Result<Operator> {
        let u = hilbert::matrix_exponential(&h, s)?;
        u.mul(&g0)?.mul(&u.adjoint())
    };
    let g_plus = at(t + dt)?;
    let g_minus = at(t - dt)?;
    let g_mid = at(t)?;
    let diff = g_plus
        .sub(&g_minus)?
        .scale(C64::new(1.0 / (2.0 * dt), 0.0));
    let comm = hilbert::commutator(&h, &g_mid)?.scale(C64::new(0.0, 1.0));
    Ok(diff.add(&comm)?.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::TrialRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn coherent_amplitudes_match_direct_formula() {
        let cutoff = FockCutoff::new(24).unwrap();
        let lambda = c(0.8, -0.4);
        let v = coherent_vector(lambda, &cutoff).unwrap();
        assert!(v.is_normalized());
        let mut factorial = 1.0;
        for n in 0..=6 {
            if n > 0 {
                factorial *= n as f64;
            }
            let expected = lambda.powu(n as u32) * libm::exp(-0.5 * lambda.norm_sqr())
                / libm::sqrt(factorial);
            assert!((v.amps()[n] - expected).norm() <= 1e-14, "level {n}");
        }
    }

    #[test]
    fn cutoff_error_reports_minimal_adequate_cutoff() {
        let cutoff = FockCutoff::new(8).unwrap();
        let err = coherent_vector(c(4.0, 0.0), &cutoff).unwrap_err();
        match err {
            Error::CutoffInsufficient { n_max, required } => {
                assert_eq!(n_max, 8);
                let tail_at = |n: usize| 1.0 - poisson_mass_below(n, 16.0);
                assert!(tail_at(required) <= DEFAULT_TRUNCATION_TOL);
                assert!(tail_at(required - 1) > DEFAULT_TRUNCATION_TOL);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn displacement_of_vacuum_matches_coherent_vector() {
        let cutoff = FockCutoff::new(32).unwrap();
        let lambda = c(0.7, 0.2);
        let u = displacement_operator(lambda, &cutoff).unwrap();
        let vac = StateVector::basis(cutoff.dim(), 0).unwrap();
        let displaced = u.apply(&vac).unwrap();
        let reference = coherent_vector(lambda, &cutoff).unwrap();
        let err: f64 = displaced
            .amps()
            .iter()
            .zip(reference.amps())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()));
        assert!(err <= 1e-12, "max column deviation {err}");
    }

    #[test]
    fn compose_phase_examples_and_antisymmetry() {
        let (sum, phase) = displacement_compose(c(1.0, 0.0), c(0.0, 1.0));
        assert_eq!(sum, c(1.0, 1.0));
        assert!((phase - 1.0).abs() <= 1e-15);
        let (_, swapped) = displacement_compose(c(0.0, 1.0), c(1.0, 0.0));
        assert!((swapped + 1.0).abs() <= 1e-15);
    }

    #[test]
    fn compose_matches_truncated_matrices_on_interior_block() {
        let cutoff = FockCutoff::new(32).unwrap();
        let lambda = c(0.5, 0.0);
        let mu = c(0.0, 0.3);
        let (sum, phase) = displacement_compose(lambda, mu);
        let lhs = displacement_operator(mu, &cutoff)
            .unwrap()
            .mul(&displacement_operator(lambda, &cutoff).unwrap())
            .unwrap();
        let (s, co) = libm::sincos(phase);
        let rhs = displacement_operator(sum, &cutoff).unwrap().scale(c(co, s));
        let mut worst = 0.0f64;
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((lhs.get(i, j) - rhs.get(i, j)).norm());
            }
        }
        assert!(worst <= 1e-12, "interior block deviation {worst}");
    }

    #[test]
    fn truncated_overlap_matches_analytic_law() {
        let cutoff = FockCutoff::new(48).unwrap();
        let mut rng = TrialRng::keyed(21, 0, 0);
        for _ in 0..20 {
            let lambda = rng.standard_complex() * 1.4;
            let mu = rng.standard_complex() * 1.4;
            let got = overlap_probability_truncated(lambda, mu, &cutoff).unwrap();
            let expected = libm::exp(-(lambda - mu).norm_sqr());
            assert!((got - expected).abs() <= 1e-12, "{got} vs {expected}");
        }
    }

    #[test]
    fn disk_identity_small_case() {
        let cutoff = FockCutoff::new(4).unwrap();
        let quad = DiskQuadrature::new(3.0, 32, 9).unwrap();
        let id = identity_resolution(&quad, &cutoff).unwrap();
        for n in 0..=4 {
            let expected = disk_identity_expected_diagonal(n, 9.0);
            assert!(
                (id.get(n, n).re - expected).abs() <= 1e-12,
                "diag {n}: {} vs {expected}",
                id.get(n, n).re
            );
        }
        let mut off = 0.0f64;
        for i in 0..=4 {
            for j in 0..=4 {
                if i != j {
                    off = off.max(id.get(i, j).norm());
                }
            }
        }
        assert!(off <= 1e-13, "off-diagonal {off}");
    }

    #[test]
    fn disk_identity_preconditions() {
        let cutoff = FockCutoff::new(4).unwrap();
        let small = DiskQuadrature::new(1.0, 16, 9).unwrap();
        assert!(matches!(
            identity_resolution(&small, &cutoff),
            Err(Error::CoverageInsufficient { .. })
        ));
        let aliased = DiskQuadrature::new(3.0, 16, 8).unwrap();
        assert!(matches!(
            identity_resolution(&aliased, &cutoff),
            Err(Error::QuadratureTooCoarse { .. })
        ));
    }

    #[test]
    fn number_evolution_rotates_labels() {
        let cutoff = FockCutoff::new(32).unwrap();
        let f = evolve_state_fidelity(c(1.0, 0.0), 1.0, 0.5, &cutoff).unwrap();
        assert!(f >= 1.0 - 1e-12, "fidelity {f}");
    }

    #[test]
    fn two_mode_quadratic_evolution() {
        // Beamsplitter coupling at a quarter period swaps the modes up to
        // a -i factor.
        let omega = Operator::hermitian(
            2,
            alloc::vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let p = WHPoint::new(alloc::vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let out = evolve_point(&p, &omega, core::f64::consts::FRAC_PI_2).unwrap();
        assert!((out.modes()[0]).norm() <= 1e-14);
        assert!((out.modes()[1] - c(0.0, -1.0)).norm() <= 1e-14);
    }

    #[test]
    fn dispersion_is_omega_times_radius() {
        let cutoff = FockCutoff::new(64).unwrap();
        let d1 = dispersion(c(1.0, 0.0), 1.0, &cutoff).unwrap();
        assert!((d1 - 1.0).abs() <= 1e-10, "{d1}");
        let d2 = dispersion(c(0.0, 1.5), 2.0, &cutoff).unwrap();
        assert!((d2 - 3.0).abs() <= 1e-10, "{d2}");
    }

    #[test]
    fn heisenberg_residual_is_second_order() {
        let cutoff = FockCutoff::new(24).unwrap();
        let r1 = heisenberg_residual(c(0.5, 0.0), 1.0, 0.3, 1e-2, &cutoff).unwrap();
        let r2 = heisenberg_residual(c(0.5, 0.0), 1.0, 0.3, 5e-3, &cutoff).unwrap();
        let ratio = r1 / r2;
        assert!((ratio - 4.0).abs() <= 0.3, "ratio {ratio}");
    }

    #[test]
    fn separation_requires_matching_modes() {
        let p1 = WHPoint::single(c(1.0, 0.0));
        let p2 = WHPoint::new(alloc::vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(
            separation_sqr(&p1, &p2),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
