//! Gauss-Legendre quadrature.
//!
//! Nodes are Newton-refined roots of the Legendre polynomial `P_n`; an
//! `n`-point rule integrates polynomials up to degree `2n - 1` exactly,
//! which is what makes the identity-resolution integrals over compact
//! coordinates exact rather than approximate.

use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            what: "Gauss-Legendre rule needs at least one node".into(),
        });
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = libm::cos(
            core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5),
        );
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-15 {
                let (_, d2) = legendre_with_derivative(n, x);
                dp = d2;
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    // The cosine guesses enumerate roots from +1 downwards; present them
    // ascending.
    nodes.reverse();
    weights.reverse();
    Ok((nodes, weights))
}

/// Same rule affinely mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::InvalidParameter {
            what: format!("interval [{a}, {b}] is empty"),
        });
    }
    let (nodes, weights) = gauss_legendre(n)?;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    Ok((
        nodes.iter().map(|x| mid + half * x).collect(),
        weights.iter().map(|w| half * w).collect(),
    ))
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    let d = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, d)
}
