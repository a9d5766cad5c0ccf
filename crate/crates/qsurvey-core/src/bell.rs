//! Generalized Bell pairs over the coherent-state manifolds.
//!
//! The pair state built by integrating `|g> (x) <g|` over the manifold is
//! maximally entangled in the resolution-of-identity sense.  Over the
//! sphere the integral is proper and the normalization constant is the
//! inverse square root of the manifold volume.  Over the displacement
//! manifold the flat measure has infinite volume, so the analogous state
//! is improper; the proper stand-in is the one-parameter squeezed family
//!
//! `|B, r>> = sqrt(1 - r^2) sum_n r^n |n> (x) <n|`,  `0 <= r < 1`,
//!
//! which is annihilated by the twisted-vacuum operators
//! `A1 = (1 - r^2)^{-1/2} (a (x) I - r I (x) a^dagger)` (and its mirror)
//! and whose pair amplitudes converge, after dividing out `1 - r^2`, to
//! the overlap law `exp(-|lambda - mu|^2)` as `r -> 1`.
//!
//! The r -> 1 limit is evaluated through the Schmidt series amplitude
//! rather than the normalized pair state: near `r = 1` no practical
//! cutoff retains the full Schmidt weight, but the series in
//! `r conj(lambda) mu` converges to machine precision at modest order
//! regardless of `r`.

use alloc::collections::BTreeMap;
use alloc::format;

use crate::hilbert::{self, PairState, Representation};
use crate::metric::Manifold;
use crate::su2::{self, SpherePoint, SphereQuadrature};
use crate::wh::{self, FockCutoff};
use crate::{C64, Error, Result};

/// Largest first-dropped Schmidt weight [`build_bell_wh`] accepts:
/// `r^(n_max + 1)` must not exceed this.
pub const SCHMIDT_TAIL_TOL: f64 = 1e-8;

/// Absolute tail bound enforced by [`bell_amplitude_series`].
pub const SERIES_TAIL_TOL: f64 = 1e-14;

/// Schmidt coefficient `sqrt(1 - r^2) r^n` of the squeezed pair.
pub fn schmidt_coefficient(r: f64, n: usize) -> f64 {
    libm::sqrt(1.0 - r * r) * libm::pow(r, n as f64)
}

fn check_r(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter {
            what: format!("squeezing parameter r = {r} outside [0, 1)"),
        });
    }
    Ok(())
}

/// Builds the squeezed Bell pair `|B, r>>` in ket-bra form on the
/// truncated space.
///
/// Requires `r^(n_max + 1) <= 1e-8` so the dropped Schmidt tail is
/// negligible; the error reports the smallest adequate cutoff otherwise.
pub fn build_bell_wh(r: f64, cutoff: &FockCutoff) -> Result<PairState> {
    check_r(r)?;
    if r > 0.0 {
        let tail = libm::pow(r, (cutoff.n_max() + 1) as f64);
        if tail > SCHMIDT_TAIL_TOL {
            let required = {
                let mut n = cutoff.n_max();
                let mut t = tail;
                while t > SCHMIDT_TAIL_TOL {
                    n += 1;
                    t *= r;
                }
                n
            };
            return Err(Error::CutoffInsufficient { n_max: cutoff.n_max(), required });
        }
    }
    let dim = cutoff.dim();
    let mut bell = PairState::zeros(dim, dim, Representation::KetBra);
    let mut coeff = libm::sqrt(1.0 - r * r);
    for n in 0..dim {
        bell.set(n, n, C64::new(coeff, 0.0));
        coeff *= r;
    }
    Ok(bell)
}

/// Pair amplitude `<<g1 (x) bra(g2) | B>>` computed from the truncated
/// coherent vectors and the stored pair matrix.
pub fn pair_amplitude(
    bell: &PairState,
    lambda: C64,
    mu: C64,
    cutoff: &FockCutoff,
) -> Result<C64> {
    if bell.dim_left() != cutoff.dim() || bell.dim_right() != cutoff.dim() {
        return Err(Error::DimensionMismatch { left: bell.dim_left(), right: cutoff.dim() });
    }
    let g1 = wh::coherent_vector(lambda, cutoff)?;
    let g2 = wh::coherent_vector(mu, cutoff)?;
    hilbert::pair_inner(&PairState::outer(&g1, &g2), bell)
}

/// Closed-form pair amplitude of the untruncated squeezed pair:
/// `sqrt(1 - r^2) exp(-(|lambda|^2 + |mu|^2)/2) exp(r conj(lambda) mu)`.
pub fn pair_amplitude_closed(r: f64, lambda: C64, mu: C64) -> C64 {
    let prefactor =
        libm::sqrt(1.0 - r * r) * libm::exp(-0.5 * (lambda.norm_sqr() + mu.norm_sqr()));
    (lambda.conj() * mu * r).exp() * prefactor
}

/// Pair amplitude summed as a truncated Schmidt series in
/// `x = r conj(lambda) mu`, valid for any `r` in `[0, 1)`.
///
/// Unlike [`build_bell_wh`] this makes no claim about retaining the full
/// Schmidt weight; it requires only that the dropped series tail
/// `|x|^(n+1) / (n+1)!` is below [`SERIES_TAIL_TOL`], which a modest
/// order achieves for moderate amplitudes regardless of `r`.  This is the
/// route that stays honest in the `r -> 1` limit.
pub fn bell_amplitude_series(r: f64, lambda: C64, mu: C64, n_terms: usize) -> Result<C64> {
    check_r(r)?;
    let x = lambda.conj() * mu * r;
    let x_abs = x.norm();
    let mut bound = 1.0;
    for k in 1..=(n_terms + 1) {
        bound *= x_abs / k as f64;
    }
    if bound > SERIES_TAIL_TOL {
        let mut n = n_terms;
        let mut t = bound;
        while t > SERIES_TAIL_TOL && n < 10_000 {
            n += 1;
            t *= x_abs / (n + 1) as f64;
        }
        return Err(Error::CutoffInsufficient { n_max: n_terms, required: n });
    }
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..=n_terms {
        term = term * x / k as f64;
        sum += term;
    }
    let prefactor =
        libm::sqrt(1.0 - r * r) * libm::exp(-0.5 * (lambda.norm_sqr() + mu.norm_sqr()));
    Ok(sum * prefactor)
}

/// Deviation of the rescaled pair probability from the overlap law:
/// `| |A(lambda, mu)|^2 / (1 - r^2) - exp(-|lambda - mu|^2) |`,
/// with the amplitude summed by series.  Tends to zero as `r -> 1`.
pub fn squeezed_limit_error(r: f64, lambda: C64, mu: C64, n_terms: usize) -> Result<f64> {
    let amp = bell_amplitude_series(r, lambda, mu, n_terms)?;
    let rescaled = amp.norm_sqr() / (1.0 - r * r);
    let target = libm::exp(-(lambda - mu).norm_sqr());
    Ok((rescaled - target).abs())
}

/// Closed-form conditional probability `p(lambda | mu) =
/// exp(-|lambda - r mu|^2)` of the squeezed pair.
///
/// Recovers the overlap law `exp(-|lambda - mu|^2)` as `r -> 1`.
pub fn conditional_probability_wh(lambda: C64, mu: C64, r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(libm::exp(-(lambda - mu * r).norm_sqr()))
}

/// Closed-form pair marginal `integral |A(lambda, mu)|^2 pi^-1 d^2
/// lambda = (1 - r^2) exp(-(1 - r^2) |mu|^2)`.
pub fn wh_pair_marginal(mu: C64, r: f64) -> Result<f64> {
    check_r(r)?;
    let s = 1.0 - r * r;
    Ok(s * libm::exp(-s * mu.norm_sqr()))
}

/// Conditional probability on the sphere, computed the long way: joint
/// probability against the quadrature-built Bell state divided by the
/// quadrature marginal of the conditioning point.
///
/// Analytically this collapses to the overlap probability because the
/// marginal is constant over the manifold.
pub fn conditional_probability_su2(
    g1: &SpherePoint,
    g2: &SpherePoint,
    quad: &SphereQuadrature,
) -> Result<f64> {
    let (bell, _) = su2::bell_state(quad)?;
    let v2 = su2::coherent_point(g2);
    let joint = hilbert::pair_inner(
        &PairState::outer(&su2::coherent_point(g1), &v2),
        &bell,
    )?
    .norm_sqr();
    let mut marginal = 0.0;
    for (point, w) in quad.nodes() {
        let amp = hilbert::pair_inner(
            &PairState::outer(&su2::coherent_point(point), &v2),
            &bell,
        )?;
        marginal += w * amp.norm_sqr();
    }
    if marginal <= 0.0 {
        return Err(Error::QuadratureTooCoarse {
            detail: "marginal integrated to zero".into(),
        });
    }
    Ok(joint / marginal)
}

/// Whether the manifold's Bell integral normalizes, and with what
/// constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationReport {
    pub manifold: Manifold,
    pub proper: bool,
    /// Manifold volume `Tr integral |g><g| d mu`, when finite.
    pub volume: Option<f64>,
    /// Bell normalization constant `volume^{-1/2}`, when defined.
    pub bell_constant: Option<f64>,
}

/// Sphere normalization from an explicit quadrature: volume is the trace
/// of the identity resolution (2), the Bell constant its inverse root.
pub fn normalization_volume_su2(quad: &SphereQuadrature) -> NormalizationReport {
    let volume = su2::identity_resolution(quad).trace().re;
    NormalizationReport {
        manifold: Manifold::Su2,
        proper: true,
        volume: Some(volume),
        bell_constant: Some(1.0 / libm::sqrt(volume)),
    }
}

/// The flat displacement measure has infinite volume: the Bell integral
/// is improper and the squeezed family plays its role.
pub fn normalization_volume_wh() -> NormalizationReport {
    NormalizationReport {
        manifold: Manifold::WeylHeisenberg,
        proper: false,
        volume: None,
        bell_constant: None,
    }
}

/// Norm and twisted-vacuum annihilator residuals of a squeezed pair in
/// ket-ket form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistedVacuumReport {
    pub norm: f64,
    /// `|A1 |B>>|` with `A1 = (1-r^2)^{-1/2} (a (x) I - r I (x) a^dagger)`.
    pub residual_mode1: f64,
    /// Mirror residual for `A2 = (1-r^2)^{-1/2} (I (x) a - r a^dagger (x) I)`.
    pub residual_mode2: f64,
}

/// Applies both twisted-vacuum annihilators to a ket-ket pair state and
/// reports the residual norms.
///
/// On the exact squeezed pair both vanish identically; the truncated
/// construction cancels term by term as well, so nonzero residuals point
/// at a genuinely wrong state rather than truncation noise.
pub fn twisted_vacuum_residuals(bell: &PairState, r: f64) -> Result<TwistedVacuumReport> {
    check_r(r)?;
    if bell.repr() != Representation::KetKet {
        return Err(Error::RepresentationMismatch { expected: "ket-ket", found: "ket-bra" });
    }
    if bell.dim_left() != bell.dim_right() {
        return Err(Error::DimensionMismatch {
            left: bell.dim_left(),
            right: bell.dim_right(),
        });
    }
    let dim = bell.dim_left();
    let scale = 1.0 / libm::sqrt(1.0 - r * r);
    let mut res1 = 0.0f64;
    let mut res2 = 0.0f64;
    // (a (x) I) T |_(n,m) = sqrt(n+1) T[n+1][m]; (I (x) a^dagger) T
    // |_(n,m) = sqrt(m) T[n][m-1]; the mirrors swap the roles.
    for n in 0..dim {
        for m in 0..dim {
            let lower = if n + 1 < dim {
                C64::new(libm::sqrt((n + 1) as f64), 0.0) * bell.get(n + 1, m)
            } else {
                C64::new(0.0, 0.0)
            };
            let raise = if m > 0 {
                C64::new(libm::sqrt(m as f64), 0.0) * bell.get(n, m - 1)
            } else {
                C64::new(0.0, 0.0)
            };
            res1 += (lower - raise * r).norm_sqr();

            let lower2 = if m + 1 < dim {
                C64::new(libm::sqrt((m + 1) as f64), 0.0) * bell.get(n, m + 1)
            } else {
                C64::new(0.0, 0.0)
            };
            let raise2 = if n > 0 {
                C64::new(libm::sqrt(n as f64), 0.0) * bell.get(n - 1, m)
            } else {
                C64::new(0.0, 0.0)
            };
            res2 += (lower2 - raise2 * r).norm_sqr();
        }
    }
    Ok(TwistedVacuumReport {
        norm: bell.frobenius_norm(),
        residual_mode1: scale * libm::sqrt(res1),
        residual_mode2: scale * libm::sqrt(res2),
    })
}

/// Commutator quality of the twisted-vacuum annihilator on the truncated
/// space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorDefectReport {
    /// Max `|<n,m| [A1, A1^dagger] |n,m> - 1|` over the interior block
    /// (`n, m < n_max`).
    pub max_interior_defect: f64,
    /// Max total weight the commutator scatters off a basis state.
    pub max_off_diagonal: f64,
}

/// Checks `[A1, A1^dagger] = I` on the interior of the truncated space.
///
/// Both operators are applied as index maps on two-mode basis states; the
/// truncation shows up only on the boundary levels, where the number
/// commutator collapses, so interior defects indicate real errors.
pub fn ar_commutator_defect(r: f64, cutoff: &FockCutoff) -> Result<CommutatorDefectReport> {
    check_r(r)?;
    let n_max = cutoff.n_max();
    let scale_sq = 1.0 / (1.0 - r * r);
    // A1 e(n,m) = scale [ sqrt(n) e(n-1,m) - r sqrt(m+1) e(n,m+1) ]
    // A1+ e(n,m) = scale [ sqrt(n+1) e(n+1,m) - r sqrt(m) e(n,m-1) ]
    // with raising truncated at n_max.
    let apply_a = |n: usize, m: usize, acc: &mut BTreeMap<(usize, usize), f64>, w: f64| {
        if n > 0 {
            *acc.entry((n - 1, m)).or_insert(0.0) += w * libm::sqrt(n as f64);
        }
        if m < n_max {
            *acc.entry((n, m + 1)).or_insert(0.0) -= w * r * libm::sqrt((m + 1) as f64);
        }
    };
    let apply_a_dag = |n: usize, m: usize, acc: &mut BTreeMap<(usize, usize), f64>, w: f64| {
        if n < n_max {
            *acc.entry((n + 1, m)).or_insert(0.0) += w * libm::sqrt((n + 1) as f64);
        }
        if m > 0 {
            *acc.entry((n, m - 1)).or_insert(0.0) -= w * r * libm::sqrt(m as f64);
        }
    };
    let mut max_diag = 0.0f64;
    let mut max_off = 0.0f64;
    for n in 0..n_max {
        for m in 0..n_max {
            let mut first = BTreeMap::new();
            apply_a_dag(n, m, &mut first, 1.0);
            let mut forward = BTreeMap::new();
            for (&(i, j), &w) in &first {
                apply_a(i, j, &mut forward, w);
            }
            let mut second = BTreeMap::new();
            apply_a(n, m, &mut second, 1.0);
            let mut backward = BTreeMap::new();
            for (&(i, j), &w) in &second {
                apply_a_dag(i, j, &mut backward, w);
            }
            for (key, w) in backward {
                *forward.entry(key).or_insert(0.0) -= w;
            }
            let mut off = 0.0f64;
            let mut diag = 0.0f64;
            for (&(i, j), &w) in &forward {
                let w = w * scale_sq;
                if (i, j) == (n, m) {
                    diag = w;
                } else {
                    off += w.abs();
                }
            }
            max_diag = max_diag.max((diag - 1.0).abs());
            max_off = max_off.max(off);
        }
    }
    Ok(CommutatorDefectReport { max_interior_defect: max_diag, max_off_diagonal: max_off })
}
