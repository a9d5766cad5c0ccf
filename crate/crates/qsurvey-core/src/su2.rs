//! Spin-1/2 coherent states on the sphere.
//!
//! The manifold is the orbit of `|up>` under SU(2); after quotienting the
//! phase stability subgroup it is the unit sphere, coordinatized by the
//! polar pair `(theta, phi)`.  The half-angle convention fixes the fiber
//! phase: a point maps to the ket `(cos(theta/2), e^{i phi} sin(theta/2))`
//! with real non-negative first amplitude.
//!
//! The invariant measure is solid angle scaled so the identity resolves
//! exactly: `d mu = d Omega / (2 pi)`, giving the manifold volume
//! `V = Tr I = 2`.  A Gauss-Legendre rule in `cos(theta)` crossed with a
//! uniform phi grid integrates the rank-one projectors exactly because
//! their entries are trigonometric polynomials of degree <= 2 in the
//! half angles.

use alloc::format;
use alloc::vec::Vec;

use crate::hilbert::{Operator, PairState, StateVector, TauMap};
use crate::quadrature::gauss_legendre;
use crate::rng::TrialRng;
use crate::{C64, Error, Result};

/// Point on the unit sphere: polar angle in `[0, pi]`, azimuth free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=core::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParameter {
                what: format!("polar angle {theta} outside [0, pi]"),
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                what: format!("azimuth {phi} is not finite"),
            });
        }
        Ok(SpherePoint { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Cartesian unit vector of the point.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let (st, ct) = libm::sincos(self.theta);
        let (sp, cp) = libm::sincos(self.phi);
        [st * cp, st * sp, ct]
    }

    /// Uniform draw on the sphere: `cos(theta) = 1 - 2u`, `phi = 2 pi v`.
    pub fn sample_uniform(rng: &mut TrialRng) -> Self {
        let u = rng.uniform();
        let v = rng.uniform();
        let cos_theta = 1.0 - 2.0 * u;
        SpherePoint {
            theta: libm::acos(cos_theta.clamp(-1.0, 1.0)),
            phi: 2.0 * core::f64::consts::PI * v,
        }
    }
}

/// Coherent ket of a sphere point in the half-angle convention.
pub fn coherent_point(p: &SpherePoint) -> StateVector {
    let (s, c) = libm::sincos(0.5 * p.theta);
    let (sp, cp) = libm::sincos(p.phi);
    StateVector::certified_normalized(alloc::vec![
        C64::new(c, 0.0),
        C64::new(cp, sp) * s,
    ])
    .expect("half-angle construction is normalized by the Pythagorean identity")
}

/// `|<g1|g2>|^2`, clamped into `[0, 1]`.
///
/// Equals `cos^2(Theta/2)` where `Theta` is the angle between the two
/// Bloch vectors.
pub fn overlap_probability(p1: &SpherePoint, p2: &SpherePoint) -> f64 {
    let a = coherent_point(p1);
    let b = coherent_point(p2);
    crate::hilbert::inner(&a, &b)
        .expect("coherent kets share dimension 2")
        .norm_sqr()
        .clamp(0.0, 1.0)
}

/// Product rule on the sphere with the normalized invariant measure.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    nodes: Vec<(SpherePoint, f64)>,
    n_theta: usize,
    n_phi: usize,
}

impl SphereQuadrature {
    /// Gauss-Legendre in `cos(theta)` times a uniform azimuth grid.
    ///
    /// `n_theta >= 2` and `n_phi >= 3` are required: below that the rule
    /// cannot integrate the degree-2 trigonometric entries of the
    /// projectors and the identity resolution is structurally wrong, not
    /// merely inaccurate.
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 3 {
            return Err(Error::QuadratureTooCoarse {
                detail: format!(
                    "sphere rule needs n_theta >= 2 and n_phi >= 3, got ({n_theta}, {n_phi})"
                ),
            });
        }
        let (u_nodes, u_weights) = gauss_legendre(n_theta)?;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (u, w) in u_nodes.iter().zip(&u_weights) {
            let theta = libm::acos(u.clamp(-1.0, 1.0));
            for j in 0..n_phi {
                let phi = 2.0 * core::f64::consts::PI * j as f64 / n_phi as f64;
                nodes.push((SpherePoint { theta, phi }, w / n_phi as f64));
            }
        }
        Ok(SphereQuadrature { nodes, n_theta, n_phi })
    }

    pub fn nodes(&self) -> &[(SpherePoint, f64)] {
        &self.nodes
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Total measure carried by the rule (the manifold volume, 2).
    pub fn total_weight(&self) -> f64 {
        self.nodes.iter().map(|(_, w)| w).sum()
    }
}

/// `sum_k w_k |g_k><g_k|`: the resolution of the identity.
pub fn identity_resolution(quad: &SphereQuadrature) -> Operator {
    let mut out = Operator::zeros(2);
    for (point, w) in quad.nodes() {
        let g = coherent_point(point);
        let amps = g.amps();
        for i in 0..2 {
            for j in 0..2 {
                let cur = out.get(i, j);
                out.set(i, j, cur + amps[i] * amps[j].conj() * *w);
            }
        }
    }
    out
}

/// Normalized Bell pair state in ket-bra form together with the computed
/// normalization constant `C`.
///
/// The unnormalized matrix is the identity resolution itself, so `C`
/// should land on `V^{-1/2} = 2^{-1/2}` and the matrix on `2^{-1/2} I`.
pub fn bell_state(quad: &SphereQuadrature) -> Result<(PairState, f64)> {
    let mut accum = PairState::zeros(2, 2, crate::hilbert::Representation::KetBra);
    for (point, w) in quad.nodes() {
        let g = coherent_point(point);
        accum.add_scaled(&PairState::outer(&g, &g), C64::new(*w, 0.0))?;
    }
    let norm = accum.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::QuadratureTooCoarse {
            detail: "sphere rule produced a vanishing Bell matrix".into(),
        });
    }
    let c = 1.0 / norm;
    Ok((accum.scale(C64::new(c, 0.0)), c))
}

/// Spin time reversal: `tau v = U conj(v)` with `U = [[0, -1], [1, 0]]`.
///
/// Sends `|up> -> |down>` and `|down> -> -|up>`; squares to `-I`.
pub fn time_reversal() -> TauMap {
    let u = Operator::unitary(
        2,
        alloc::vec![
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    )
    .expect("constant matrix is exactly unitary");
    TauMap::new(u).expect("spin time reversal squares to -I")
}

/// The Bell state transported to ket-ket form by time reversal: the
/// antisymmetric singlet `2^{-1/2} (|01> - |10>)`.
pub fn singlet_via_tau(quad: &SphereQuadrature) -> Result<PairState> {
    let (bell, _) = bell_state(quad)?;
    bell.to_ket_ket(&time_reversal())
}

/// The reference singlet ket for fidelity comparisons.
pub fn reference_singlet() -> PairState {
    let c = core::f64::consts::FRAC_1_SQRT_2;
    PairState::from_entries(
        2,
        2,
        alloc::vec![
            C64::new(0.0, 0.0),
            C64::new(c, 0.0),
            C64::new(-c, 0.0),
            C64::new(0.0, 0.0),
        ],
        crate::hilbert::Representation::KetKet,
    )
    .expect("2x2 entries")
}

/// Haar-ish random SU(2) element from a normalized quaternion.
pub fn random_su2(rng: &mut TrialRng) -> Operator {
    let (a, b) = rng.normal_pair();
    let (c, d) = rng.normal_pair();
    let n = libm::sqrt(a * a + b * b + c * c + d * d);
    let (a, b, c, d) = (a / n, b / n, c / n, d / n);
    Operator::unitary(
        2,
        alloc::vec![
            C64::new(a, b),
            C64::new(c, d),
            C64::new(-c, d),
            C64::new(a, -b),
        ],
    )
    .expect("unit quaternion embeds as an exact unitary")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{inner, pair_inner};

    const PI: f64 = core::f64::consts::PI;

    #[test]
    fn coherent_point_poles_and_equator() {
        let north = coherent_point(&SpherePoint::new(0.0, 0.0).unwrap());
        assert_eq!(north.amps()[0], C64::new(1.0, 0.0));
        assert_eq!(north.amps()[1], C64::new(0.0, 0.0));

        let south = coherent_point(&SpherePoint::new(PI, 0.3).unwrap());
        assert!(south.amps()[0].norm() <= 1e-15);
        assert!((south.amps()[1].norm() - 1.0).abs() <= 1e-15);

        let equator = coherent_point(&SpherePoint::new(PI / 2.0, PI / 2.0).unwrap());
        assert!((equator.amps()[0].re - core::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
        assert!((equator.amps()[1] - C64::new(0.0, core::f64::consts::FRAC_1_SQRT_2)).norm() <= 1e-15);
    }

    #[test]
    fn point_constructor_rejects_bad_angles() {
        assert!(SpherePoint::new(-0.1, 0.0).is_err());
        assert!(SpherePoint::new(PI + 0.1, 0.0).is_err());
        assert!(SpherePoint::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn overlap_matches_half_angle_law() {
        let mut rng = TrialRng::keyed(11, 0, 0);
        for _ in 0..100 {
            let p1 = SpherePoint::sample_uniform(&mut rng);
            let p2 = SpherePoint::sample_uniform(&mut rng);
            let n1 = p1.bloch_vector();
            let n2 = p2.bloch_vector();
            let cos_big = n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2];
            let expected = 0.5 * (1.0 + cos_big);
            let got = overlap_probability(&p1, &p2);
            assert!((got - expected).abs() <= 1e-14, "{got} vs {expected}");
        }
    }

    #[test]
    fn antipodal_points_are_orthogonal() {
        let p1 = SpherePoint::new(0.7, 1.1).unwrap();
        let p2 = SpherePoint::new(PI - 0.7, 1.1 + PI).unwrap();
        assert!(overlap_probability(&p1, &p2) <= 1e-15);
    }

    #[test]
    fn minimal_rule_resolves_identity_exactly() {
        let quad = SphereQuadrature::new(2, 3).unwrap();
        let id = identity_resolution(&quad);
        assert!(id.max_abs_diff(&Operator::identity(2)) <= 1e-15);
        assert!((id.trace().re - 2.0).abs() <= 1e-15);
        assert!((quad.total_weight() - 2.0).abs() <= 1e-14);
    }

    #[test]
    fn coarser_rules_are_rejected() {
        assert!(matches!(
            SphereQuadrature::new(1, 3),
            Err(Error::QuadratureTooCoarse { .. })
        ));
        assert!(matches!(
            SphereQuadrature::new(2, 2),
            Err(Error::QuadratureTooCoarse { .. })
        ));
    }

    #[test]
    fn bell_matrix_is_scaled_identity() {
        let quad = SphereQuadrature::new(4, 8).unwrap();
        let (bell, c) = bell_state(&quad).unwrap();
        let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
        assert!((c - inv_sqrt2).abs() <= 1e-14);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { inv_sqrt2 } else { 0.0 };
                assert!((bell.get(i, j) - C64::new(expected, 0.0)).norm() <= 1e-14);
            }
        }
        assert!((bell.frobenius_norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn time_reversal_action_on_basis() {
        let tau = time_reversal();
        let up = StateVector::basis(2, 0).unwrap();
        let down = StateVector::basis(2, 1).unwrap();
        let tu = tau.apply(&up).unwrap();
        let td = tau.apply(&down).unwrap();
        assert!((tu.amps()[1] - C64::new(1.0, 0.0)).norm() <= 1e-15);
        assert!((td.amps()[0] - C64::new(-1.0, 0.0)).norm() <= 1e-15);
        assert_eq!(tau.square_sign(), -1);
    }

    #[test]
    fn transported_bell_is_the_singlet() {
        let quad = SphereQuadrature::new(2, 3).unwrap();
        let singlet = singlet_via_tau(&quad).unwrap();
        let reference = reference_singlet();
        let fidelity = pair_inner(&reference, &singlet).unwrap().norm_sqr();
        assert!(fidelity >= 1.0 - 1e-14, "fidelity = {fidelity}");
    }

    #[test]
    fn singlet_is_invariant_under_common_rotation() {
        let quad = SphereQuadrature::new(2, 3).unwrap();
        let singlet = singlet_via_tau(&quad).unwrap();
        let mut rng = TrialRng::keyed(3, 1, 0);
        for _ in 0..20 {
            let u = random_su2(&mut rng);
            let rotated = singlet.apply_common(&u).unwrap();
            assert!(singlet.max_abs_diff(&rotated).unwrap() <= 1e-14);
        }
    }

    #[test]
    fn tau_reverses_overlaps_of_coherent_points() {
        let tau = time_reversal();
        let a = coherent_point(&SpherePoint::new(0.9, 2.0).unwrap());
        let b = coherent_point(&SpherePoint::new(2.1, -0.4).unwrap());
        let lhs = inner(&tau.apply(&a).unwrap(), &tau.apply(&b).unwrap()).unwrap();
        let rhs = inner(&a, &b).unwrap().conj();
        assert!((lhs - rhs).norm() <= 1e-15);
    }
}
