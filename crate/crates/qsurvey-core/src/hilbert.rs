//! Finite-dimensional Hilbert-space kernel.
//!
//! State vectors, dense operators with a certified kind (general,
//! Hermitian, unitary), pair states in ket-bra and ket-ket representation,
//! the anti-unitary conjugation maps that translate between them, and a
//! Hermitian-eigendecomposition matrix exponential.
//!
//! Conventions: `inner(a, b)` is conjugate-linear in `a`; operators are
//! dense row-major; an anti-unitary map acts as `v -> U conj(v)` with `U`
//! unitary, which is the general form of any anti-unitary on a
//! finite-dimensional space.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{C64, Error, Result};

/// `|v|^2` deviation accepted when certifying a state as normalized.
pub const NORMALIZED_TOL: f64 = 1e-12;
/// Entrywise deviation accepted when certifying `H = H^dagger`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Entrywise deviation of `U^dagger U` from identity accepted when
/// certifying a unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// A ket with an explicit record of whether it is certified normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
    normalized: bool,
}

impl StateVector {
    /// Wraps raw amplitudes with no normalization claim.
    pub fn new(amps: Vec<C64>) -> Self {
        StateVector { amps, normalized: false }
    }

    /// Wraps amplitudes and certifies `||v|^2 - 1| <= NORMALIZED_TOL`.
    pub fn certified_normalized(amps: Vec<C64>) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORMALIZED_TOL {
            return Err(Error::InvalidParameter {
                what: format!("state norm^2 = {norm_sqr} is not 1 within {NORMALIZED_TOL}"),
            });
        }
        Ok(StateVector { amps, normalized: true })
    }

    /// Standard basis ket `|k>` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidParameter {
                what: format!("basis index {k} out of range for dimension {dim}"),
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[k] = C64::new(1.0, 0.0);
        Ok(StateVector { amps, normalized: true })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    /// Whether this vector carries a normalization certificate.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales to unit norm; rejects the zero vector.
    pub fn renormalized(&self) -> Result<Self> {
        let n = libm::sqrt(self.norm_sqr());
        if n == 0.0 {
            return Err(Error::InvalidParameter {
                what: "cannot normalize the zero vector".into(),
            });
        }
        let amps = self.amps.iter().map(|a| a / n).collect();
        Ok(StateVector { amps, normalized: true })
    }
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y))
}

/// Certification level of an [`Operator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    General,
    Hermitian,
    Unitary,
}

impl OperatorKind {
    fn name(self) -> &'static str {
        match self {
            OperatorKind::General => "general",
            OperatorKind::Hermitian => "hermitian",
            OperatorKind::Unitary => "unitary",
        }
    }
}

/// Dense square operator, row-major, with a certified kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<C64>,
    kind: OperatorKind,
}

impl Operator {
    /// General operator from row-major entries.
    pub fn general(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { left: entries.len(), right: dim * dim });
        }
        Ok(Operator { dim, entries, kind: OperatorKind::General })
    }

    /// Builds an operator entry by entry from `f(row, col)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Operator { dim, entries, kind: OperatorKind::General }
    }

    /// Certifies the entries as Hermitian within [`HERMITIAN_TOL`]
    /// (scaled by the largest entry magnitude).
    pub fn hermitian(dim: usize, entries: Vec<C64>) -> Result<Self> {
        let op = Operator::general(dim, entries)?;
        let scale = op.max_abs().max(1.0);
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let dev = (op.get(i, j) - op.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        if worst > HERMITIAN_TOL * scale {
            return Err(Error::KindMismatch { expected: "hermitian", found: "general" });
        }
        Ok(Operator { kind: OperatorKind::Hermitian, ..op })
    }

    /// Certifies the entries as unitary within [`UNITARY_TOL`].
    pub fn unitary(dim: usize, entries: Vec<C64>) -> Result<Self> {
        let op = Operator::general(dim, entries)?;
        let gram = op.adjoint().mul(&op)?;
        let dev = gram.max_abs_diff(&Operator::identity(dim));
        if dev > UNITARY_TOL {
            return Err(Error::KindMismatch { expected: "unitary", found: "general" });
        }
        Ok(Operator { kind: OperatorKind::Unitary, ..op })
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Operator::from_fn(dim, |i, j| {
            C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        op.kind = OperatorKind::Unitary;
        op
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![C64::new(0.0, 0.0); dim * dim],
            kind: OperatorKind::General,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim + j] = v;
        self.kind = OperatorKind::General;
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Matrix product; the unitary certificate survives, anything else
    /// degrades to general.
    pub fn mul(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        let kind = if self.kind == OperatorKind::Unitary && other.kind == OperatorKind::Unitary {
            OperatorKind::Unitary
        } else {
            OperatorKind::General
        };
        Ok(Operator { dim: n, entries, kind })
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Operator { dim: self.dim, entries, kind: OperatorKind::General })
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Operator { dim: self.dim, entries, kind: OperatorKind::General })
    }

    pub fn scale(&self, c: C64) -> Operator {
        let entries = self.entries.iter().map(|a| a * c).collect();
        Operator { dim: self.dim, entries, kind: OperatorKind::General }
    }

    /// Conjugate transpose; Hermitian and unitary certificates survive.
    pub fn adjoint(&self) -> Operator {
        let mut out = Operator::from_fn(self.dim, |i, j| self.get(j, i).conj());
        out.kind = self.kind;
        out
    }

    pub fn transpose(&self) -> Operator {
        Operator::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Operator {
        let entries = self.entries.iter().map(|a| a.conj()).collect();
        Operator { dim: self.dim, entries, kind: OperatorKind::General }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).fold(C64::new(0.0, 0.0), |acc, i| acc + self.get(i, i))
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch { left: self.dim, right: v.dim() });
        }
        let n = self.dim;
        let mut amps = vec![C64::new(0.0, 0.0); n];
        for (i, amp) in amps.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.entries[i * n + j] * v.amps[j];
            }
            *amp = acc;
        }
        // Only a certified unitary provably preserves the norm.
        let normalized = v.normalized && self.kind == OperatorKind::Unitary;
        Ok(StateVector { amps, normalized })
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, a| m.max(a.norm()))
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|a| a.norm_sqr()).sum())
    }
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// `<v|A|v> / <v|v>`.
pub fn expectation(a: &Operator, v: &StateVector) -> Result<C64> {
    let av = a.apply(v)?;
    Ok(inner(v, &av)? / v.norm_sqr())
}

/// One cyclic-Jacobi eigendecomposition of a Hermitian matrix: returns the
/// eigenvalues and a unitary whose columns are the eigenvectors.
///
/// Each rotation annihilates one off-diagonal pair exactly and the sum of
/// squared off-diagonal magnitudes is monotonically driven to zero, so the
/// accumulated transform is a product of exactly unitary factors; this is
/// what lets [`matrix_exponential`] certify its output as unitary without a
/// separate correction step.
fn hermitian_eigen(h: &Operator) -> (Vec<f64>, Operator) {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = Operator::identity(n);
    let scale = h.frobenius_norm().max(1.0);
    let target = 1e-14 * scale;

    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if libm::sqrt(2.0 * off) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = a.get(p, q);
                let g_abs = gamma.norm();
                if g_abs < 1e-300 {
                    a.set(p, q, C64::new(0.0, 0.0));
                    a.set(q, p, C64::new(0.0, 0.0));
                    continue;
                }
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let phase = gamma / g_abs;
                // tan(2 theta) = 2|gamma| / (alpha - beta), stable form.
                let tau = (alpha - beta) / (2.0 * g_abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = phase.conj() * (t * c);
                // A <- U^dagger A U with U = [[c, -conj(s)], [s, c]] in the
                // (p, q) plane; columns of V accumulate U.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c + akq * s);
                    a.set(k, q, akp * (-s.conj()) + akq * c);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c + aqk * s.conj());
                    a.set(q, k, apk * (-s) + aqk * c);
                }
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * s);
                    v.set(k, q, vkp * (-s.conj()) + vkq * c);
                }
            }
        }
    }

    let eigenvalues = (0..n).map(|i| a.get(i, i).re).collect();
    v.kind = OperatorKind::Unitary;
    (eigenvalues, v)
}

/// `exp(-i t h)` for Hermitian `h`, certified unitary by construction.
///
/// The input must carry the Hermitian certificate; pass it through
/// [`Operator::hermitian`] first.
pub fn matrix_exponential(h: &Operator, t: f64) -> Result<Operator> {
    if h.kind() != OperatorKind::Hermitian {
        return Err(Error::KindMismatch { expected: "hermitian", found: h.kind().name() });
    }
    let n = h.dim();
    let (eigenvalues, v) = hermitian_eigen(h);
    // W = V diag(exp(-i t lambda)) V^dagger.
    let mut scaled = v.clone();
    for (j, lambda) in eigenvalues.iter().enumerate() {
        let (s, c) = libm::sincos(-t * lambda);
        let ph = C64::new(c, s);
        for i in 0..n {
            let x = scaled.get(i, j);
            scaled.set(i, j, x * ph);
        }
    }
    let mut w = scaled.mul(&v.adjoint())?;
    debug_assert!(
        w.adjoint().mul(&w).unwrap().max_abs_diff(&Operator::identity(n)) <= UNITARY_TOL,
        "eigendecomposition product drifted from unitarity"
    );
    w.kind = OperatorKind::Unitary;
    Ok(w)
}

/// Which tensor shape a [`PairState`] matrix encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Entries are `M[i][j] = <i| M |j>`: an operator-valued (ket-bra)
    /// pair state such as `|u><v|`.
    KetBra,
    /// Entries are `T[i][j] = amplitude on |i> (x) |j>`: a genuine
    /// two-party ket.
    KetKet,
}

impl Representation {
    fn name(self) -> &'static str {
        match self {
            Representation::KetBra => "ket-bra",
            Representation::KetKet => "ket-ket",
        }
    }
}

/// Two-party state stored as a `dim_left x dim_right` coefficient matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    dim_left: usize,
    dim_right: usize,
    entries: Vec<C64>,
    repr: Representation,
}

impl PairState {
    pub fn from_entries(
        dim_left: usize,
        dim_right: usize,
        entries: Vec<C64>,
        repr: Representation,
    ) -> Result<Self> {
        if entries.len() != dim_left * dim_right {
            return Err(Error::DimensionMismatch {
                left: entries.len(),
                right: dim_left * dim_right,
            });
        }
        Ok(PairState { dim_left, dim_right, entries, repr })
    }

    /// `|u><v|` in ket-bra form.
    pub fn outer(u: &StateVector, v: &StateVector) -> Self {
        let mut entries = Vec::with_capacity(u.dim() * v.dim());
        for a in u.amps() {
            for b in v.amps() {
                entries.push(a * b.conj());
            }
        }
        PairState {
            dim_left: u.dim(),
            dim_right: v.dim(),
            entries,
            repr: Representation::KetBra,
        }
    }

    /// `|u> (x) |v>` in ket-ket form.
    pub fn product(u: &StateVector, v: &StateVector) -> Self {
        let mut entries = Vec::with_capacity(u.dim() * v.dim());
        for a in u.amps() {
            for b in v.amps() {
                entries.push(a * b);
            }
        }
        PairState {
            dim_left: u.dim(),
            dim_right: v.dim(),
            entries,
            repr: Representation::KetKet,
        }
    }

    pub fn zeros(dim_left: usize, dim_right: usize, repr: Representation) -> Self {
        PairState {
            dim_left,
            dim_right,
            entries: vec![C64::new(0.0, 0.0); dim_left * dim_right],
            repr,
        }
    }

    pub fn dim_left(&self) -> usize {
        self.dim_left
    }

    pub fn dim_right(&self) -> usize {
        self.dim_right
    }

    pub fn repr(&self) -> Representation {
        self.repr
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim_right + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim_right + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn scale(&self, c: C64) -> PairState {
        let entries = self.entries.iter().map(|a| a * c).collect();
        PairState { entries, ..*self }
    }

    pub fn add_scaled(&mut self, other: &PairState, c: C64) -> Result<()> {
        self.check_compatible(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * c;
        }
        Ok(())
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn max_abs_diff(&self, other: &PairState) -> Result<f64> {
        self.check_compatible(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm())))
    }

    fn check_compatible(&self, other: &PairState) -> Result<()> {
        if self.dim_left != other.dim_left || self.dim_right != other.dim_right {
            return Err(Error::DimensionMismatch {
                left: self.dim_left * self.dim_right,
                right: other.dim_left * other.dim_right,
            });
        }
        if self.repr != other.repr {
            return Err(Error::RepresentationMismatch {
                expected: self.repr.name(),
                found: other.repr.name(),
            });
        }
        Ok(())
    }

    /// Transports a ket-bra pair state to ket-ket form using the
    /// anti-unitary `tau` on the right factor: `T = P U^T` where `U` is
    /// the unitary part of `tau`.
    pub fn to_ket_ket(&self, tau: &TauMap) -> Result<PairState> {
        if self.repr != Representation::KetBra {
            return Err(Error::RepresentationMismatch {
                expected: "ket-bra",
                found: self.repr.name(),
            });
        }
        if self.dim_right != tau.dim() {
            return Err(Error::DimensionMismatch { left: self.dim_right, right: tau.dim() });
        }
        let t = self.matrix_times(&tau.unitary.transpose());
        Ok(PairState { repr: Representation::KetKet, ..t })
    }

    /// Inverse of [`PairState::to_ket_ket`]: `P = T conj(U)`.
    pub fn to_ket_bra(&self, tau: &TauMap) -> Result<PairState> {
        if self.repr != Representation::KetKet {
            return Err(Error::RepresentationMismatch {
                expected: "ket-ket",
                found: self.repr.name(),
            });
        }
        if self.dim_right != tau.dim() {
            return Err(Error::DimensionMismatch { left: self.dim_right, right: tau.dim() });
        }
        let p = self.matrix_times(&tau.unitary.conj());
        Ok(PairState { repr: Representation::KetBra, ..p })
    }

    /// Applies the same unitary to both parties: `U P U^dagger` in ket-bra
    /// form, `U T U^T` in ket-ket form.  The two actions agree under the
    /// transport whenever `U conj(U_tau)` commutes suitably with the
    /// tau map, which holds for the manifolds built here.
    pub fn apply_common(&self, u: &Operator) -> Result<PairState> {
        if self.dim_left != u.dim() || self.dim_right != u.dim() {
            return Err(Error::DimensionMismatch { left: self.dim_left, right: u.dim() });
        }
        let left = matrix_product(u, self);
        let out = match self.repr {
            Representation::KetBra => left.matrix_times(&u.adjoint()),
            Representation::KetKet => left.matrix_times(&u.transpose()),
        };
        Ok(out)
    }

    /// `self * m` treating the pair state as a `dim_left x dim_right`
    /// matrix; preserves the stored representation tag.
    fn matrix_times(&self, m: &Operator) -> PairState {
        debug_assert_eq!(self.dim_right, m.dim());
        let (nl, nr) = (self.dim_left, self.dim_right);
        let mut entries = vec![C64::new(0.0, 0.0); nl * nr];
        for i in 0..nl {
            for k in 0..nr {
                let a = self.entries[i * nr + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..nr {
                    entries[i * nr + j] += a * m.get(k, j);
                }
            }
        }
        PairState { dim_left: nl, dim_right: nr, entries, repr: self.repr }
    }
}

/// `m * p` treating the pair state as a matrix acting from the left index.
fn matrix_product(m: &Operator, p: &PairState) -> PairState {
    debug_assert_eq!(m.dim(), p.dim_left);
    let (nl, nr) = (p.dim_left, p.dim_right);
    let mut entries = vec![C64::new(0.0, 0.0); nl * nr];
    for i in 0..nl {
        for k in 0..nl {
            let a = m.get(i, k);
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..nr {
                entries[i * nr + j] += a * p.entries[k * nr + j];
            }
        }
    }
    PairState { dim_left: nl, dim_right: nr, entries, repr: p.repr }
}

/// `<<a|b>>`: entrywise Hilbert-Schmidt pairing, valid in either
/// representation as long as both sides use the same one.
pub fn pair_inner(a: &PairState, b: &PairState) -> Result<C64> {
    a.check_compatible(b)?;
    Ok(a.entries
        .iter()
        .zip(&b.entries)
        .fold(C64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y))
}

/// Anti-unitary map in canonical form `v -> U conj(v)`.
///
/// The unitary part must satisfy `U conj(U) = +I` or `-I`, which is the
/// condition for the map to square to plus or minus the identity; the sign
/// is recorded at construction.
#[derive(Debug, Clone)]
pub struct TauMap {
    unitary: Operator,
    square_sign: i8,
}

impl TauMap {
    pub fn new(unitary: Operator) -> Result<Self> {
        if unitary.kind() != OperatorKind::Unitary {
            return Err(Error::KindMismatch {
                expected: "unitary",
                found: unitary.kind().name(),
            });
        }
        let n = unitary.dim();
        let square = unitary.mul(&unitary.conj())?;
        let id = Operator::identity(n);
        let square_sign = if square.max_abs_diff(&id) <= UNITARY_TOL {
            1
        } else if square.max_abs_diff(&id.scale(C64::new(-1.0, 0.0))) <= UNITARY_TOL {
            -1
        } else {
            return Err(Error::InvalidParameter {
                what: "anti-unitary square U conj(U) is neither +I nor -I".into(),
            });
        };
        Ok(TauMap { unitary, square_sign })
    }

    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    /// `+1` if the map squares to `+I`, `-1` if to `-I`.
    pub fn square_sign(&self) -> i8 {
        self.square_sign
    }

    pub fn unitary_part(&self) -> &Operator {
        &self.unitary
    }

    /// `tau v = U conj(v)`; normalization certificates survive.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let conj = StateVector {
            amps: v.amps.iter().map(|a| a.conj()).collect(),
            normalized: v.normalized,
        };
        self.unitary.apply(&conj)
    }
}
