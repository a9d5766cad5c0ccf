//! Error taxonomy shared by every module.
//!
//! Errors are reserved for precondition violations and for numerical
//! regimes the truncated representations cannot support; quantities that
//! are merely inaccurate are returned as values and judged by the caller.

use alloc::string::String;
use core::fmt;

/// Failure modes of the numerical kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch { left: usize, right: usize },
    /// An operation required a specific operator kind (e.g. Hermitian
    /// input to the matrix exponential) and got something weaker.
    KindMismatch { expected: &'static str, found: &'static str },
    /// A pair-state operation mixed ket-bra and ket-ket representations.
    RepresentationMismatch { expected: &'static str, found: &'static str },
    /// A quadrature rule is structurally too coarse for the integrand
    /// class it is asked to handle.
    QuadratureTooCoarse { detail: String },
    /// A truncated Fock computation would leave more than the permitted
    /// weight above the cutoff; `required` is the smallest adequate cutoff.
    CutoffInsufficient { n_max: usize, required: usize },
    /// The disk quadrature domain does not cover the region where the
    /// retained Fock weight lives (radius^2 < n_max).
    CoverageInsufficient { radius_sq: f64, n_max: usize },
    /// A scalar parameter is outside its documented domain.
    InvalidParameter { what: String },
    /// Two manifold-tagged objects (points, laws, settings) belong to
    /// different manifolds.
    ManifoldMismatch { expected: &'static str, found: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::KindMismatch { expected, found } => {
                write!(f, "operator kind mismatch: expected {expected}, found {found}")
            }
            Error::RepresentationMismatch { expected, found } => {
                write!(f, "pair representation mismatch: expected {expected}, found {found}")
            }
            Error::QuadratureTooCoarse { detail } => {
                write!(f, "quadrature too coarse: {detail}")
            }
            Error::CutoffInsufficient { n_max, required } => {
                write!(
                    f,
                    "Fock cutoff n_max = {n_max} insufficient: smallest adequate cutoff is {required}"
                )
            }
            Error::CoverageInsufficient { radius_sq, n_max } => {
                write!(
                    f,
                    "disk quadrature coverage insufficient: radius^2 = {radius_sq} < n_max = {n_max}"
                )
            }
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::ManifoldMismatch { expected, found } => {
                write!(f, "manifold mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
