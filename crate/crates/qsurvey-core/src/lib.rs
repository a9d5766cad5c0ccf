//! Coherent-state manifolds and the geometry they induce.
//!
//! A coherent-state manifold is the orbit of a reference state under a
//! unitary group, labelled by points of the coset space that remains after
//! quotienting out the stability subgroup of the reference.  Two manifolds
//! are provided:
//!
//! * [`su2`]: the spin-1/2 orbit of `|up>` under SU(2), labelled by points
//!   of the unit sphere,
//! * [`wh`]: the displacement orbit of the oscillator vacuum, labelled by a
//!   complex amplitude per mode and realized numerically in a truncated
//!   number basis.
//!
//! On top of the manifolds sit:
//!
//! * [`hilbert`]: state vectors, operators, pair states in ket-bra and
//!   ket-ket form, and the anti-unitary conjugation maps that connect them,
//! * [`metric`]: the overlap distance `d = sqrt(1 - |<g1|g2>|^2)`, its
//!   closed-form dependence on the relative group element, and checks of the
//!   metric axioms and short-time dispersion law,
//! * [`bell`]: maximally entangled pair states built by integrating
//!   `|g><g|` over the manifold, including the two-mode squeezed family and
//!   its r -> 1 limit,
//! * [`hv`]: a non-local hidden-variable Monte Carlo that reproduces the
//!   pair correlations of those Bell states exactly, with deterministic
//!   per-trial random streams,
//! * [`quadrature`]: Gauss-Legendre rules used by the identity-resolution
//!   and normalization integrals,
//! * [`rng`]: the keyed counter-based generator behind every sampled
//!   quantity.
//!
//! The crate is `no_std` (with `alloc`) so the numerical kernel can be
//! embedded anywhere; everything IO-shaped lives in the companion CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bell;
pub mod error;
pub mod hilbert;
pub mod hv;
pub mod metric;
pub mod quadrature;
pub mod rng;
pub mod su2;
pub mod wh;

pub use error::Error;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Convenience result alias for fallible kernel operations.
pub type Result<T> = core::result::Result<T, Error>;
