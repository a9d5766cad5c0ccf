//! Overlap laws, displacement composition, and identity resolutions
//! checked against independently computed references.

use qsurvey_core::hilbert::{Operator, StateVector};
use qsurvey_core::rng::TrialRng;
use qsurvey_core::su2::{self, SphereQuadrature};
use qsurvey_core::wh::{self, DiskQuadrature, FockCutoff};
use qsurvey_core::C64;

/// Uniform draw from the complex disk of the given radius.
fn disk_sample(rng: &mut TrialRng, radius: f64) -> C64 {
    let r = radius * rng.uniform().sqrt();
    let phi = 2.0 * std::f64::consts::PI * rng.uniform();
    C64::new(r * phi.cos(), r * phi.sin())
}

/// Reference regularized lower incomplete gamma `P(n + 1, x)` by the
/// elementary series, written out here independently of the library.
fn reference_gamma_p(n: usize, x: f64) -> f64 {
    let mut term = (-x).exp();
    let mut sum = term;
    for k in 1..=n {
        term *= x / k as f64;
        sum += term;
    }
    1.0 - sum
}

#[test]
fn sphere_identity_is_exact_with_tiny_rules() {
    for (n_theta, n_phi) in [(2, 3), (4, 8), (8, 16)] {
        let quad = SphereQuadrature::new(n_theta, n_phi).unwrap();
        let id = su2::identity_resolution(&quad);
        let dev = id.max_abs_diff(&Operator::identity(2));
        assert!(dev <= 1e-12, "rule ({n_theta}, {n_phi}): deviation {dev}");
        assert!((id.trace().re - 2.0).abs() <= 1e-12);
    }
}

#[test]
fn displacement_overlap_law_on_random_pairs() {
    let cutoff = FockCutoff::new(64).unwrap();
    let mut rng = TrialRng::keyed(20_240_001, 0, 0);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let lambda = disk_sample(&mut rng, 2.0);
        let mu = disk_sample(&mut rng, 2.0);
        let truncated = wh::overlap_probability_truncated(lambda, mu, &cutoff).unwrap();
        let analytic = (-(lambda - mu).norm_sqr()).exp();
        worst = worst.max((truncated - analytic).abs());
    }
    assert!(worst <= 1e-10, "worst deviation {worst}");
}

#[test]
fn displacement_composition_law_on_random_pairs() {
    // u(mu) u(lambda) = exp(i Im(conj(lambda) mu)) u(lambda + mu),
    // compared on the interior block and through the extracted vacuum
    // phase; rows near the cutoff are corrupted by truncation and carry
    // no information about the group law.
    let cutoff = FockCutoff::new(64).unwrap();
    let mut rng = TrialRng::keyed(20_240_002, 0, 0);
    let mut worst_block = 0.0f64;
    let mut worst_phase = 0.0f64;
    for _ in 0..50 {
        let lambda = disk_sample(&mut rng, 1.5);
        let mu = disk_sample(&mut rng, 1.5);
        let (sum, phase) = wh::displacement_compose(lambda, mu);
        assert_eq!(sum, lambda + mu);

        let product = wh::displacement_operator(mu, &cutoff)
            .unwrap()
            .mul(&wh::displacement_operator(lambda, &cutoff).unwrap())
            .unwrap();
        let composed = wh::displacement_operator(sum, &cutoff).unwrap();
        let predicted = composed.scale(C64::new(phase.cos(), phase.sin()));
        for i in 0..16 {
            for j in 0..16 {
                worst_block = worst_block.max((product.get(i, j) - predicted.get(i, j)).norm());
            }
        }

        // Phase extracted from the vacuum action: product |0> equals
        // exp(i phase) composed |0> up to truncation noise.
        let vac = StateVector::basis(cutoff.dim(), 0).unwrap();
        let via_product = product.apply(&vac).unwrap();
        let via_composed = composed.apply(&vac).unwrap();
        let overlap = qsurvey_core::hilbert::inner(&via_composed, &via_product).unwrap();
        let extracted = overlap.im.atan2(overlap.re);
        let mut diff = (extracted - phase).abs();
        diff = diff.min((diff - 2.0 * std::f64::consts::PI).abs());
        worst_phase = worst_phase.max(diff);
    }
    assert!(worst_block <= 1e-8, "worst interior-block deviation {worst_block}");
    assert!(worst_phase <= 1e-8, "worst extracted phase deviation {worst_phase}");
}

#[test]
fn composition_phase_is_antisymmetric_and_additive_on_axes() {
    let (_, p1) = wh::displacement_compose(C64::new(1.0, 0.0), C64::new(0.0, 1.0));
    assert!((p1 - 1.0).abs() <= 1e-15);
    let (_, p2) = wh::displacement_compose(C64::new(0.0, 1.0), C64::new(1.0, 0.0));
    assert!((p2 + 1.0).abs() <= 1e-15);
    // Collinear displacements commute with no phase.
    let (_, p3) = wh::displacement_compose(C64::new(0.7, 0.0), C64::new(-1.3, 0.0));
    assert!(p3.abs() <= 1e-15);
}

#[test]
fn disk_identity_matches_incomplete_gamma_diagonal() {
    let cutoff = FockCutoff::new(32).unwrap();
    let quad = DiskQuadrature::new(6.0, 64, 65).unwrap();
    let id = wh::identity_resolution(&quad, &cutoff).unwrap();
    let radius_sq = 36.0;
    let mut worst_diag = 0.0f64;
    for n in 0..=10 {
        let expected = reference_gamma_p(n, radius_sq);
        worst_diag = worst_diag.max((id.get(n, n).re - expected).abs());
        assert!((id.get(n, n).im).abs() <= 1e-14);
    }
    assert!(worst_diag <= 1e-10, "worst diagonal deviation {worst_diag}");

    let mut worst_off = 0.0f64;
    for i in 0..=10 {
        for j in 0..=10 {
            if i != j {
                worst_off = worst_off.max(id.get(i, j).norm());
            }
        }
    }
    assert!(worst_off <= 1e-10, "worst off-diagonal {worst_off}");
}

#[test]
fn disk_identity_expected_diagonal_agrees_with_reference() {
    for n in 0..=12 {
        for radius_sq in [4.0, 9.0, 36.0] {
            let lib = wh::disk_identity_expected_diagonal(n, radius_sq);
            let reference = reference_gamma_p(n, radius_sq);
            assert!((lib - reference).abs() <= 1e-14);
        }
    }
}

#[test]
fn overlap_laws_agree_between_routes_on_the_sphere() {
    let mut rng = TrialRng::keyed(20_240_003, 0, 0);
    for _ in 0..200 {
        let p1 = qsurvey_core::su2::SpherePoint::sample_uniform(&mut rng);
        let p2 = qsurvey_core::su2::SpherePoint::sample_uniform(&mut rng);
        let via_vectors = su2::overlap_probability(&p1, &p2);
        let n1 = p1.bloch_vector();
        let n2 = p2.bloch_vector();
        let cos_angle = n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2];
        let closed = 0.5 * (1.0 + cos_angle);
        assert!((via_vectors - closed).abs() <= 1e-13);
    }
}
