//! Fixed `C^∞` cutoff profiles built from the standard `exp(-1/x)` glue.
//!
//! Everything smooth in the crate comes from the same construction: the
//! Littlewood–Paley ring bump, the dyadic partition of unity, and the
//! compactly supported mollifier used for wave-packet data. The profiles
//! are elementary closed forms, so derivatives and primitives needed by the
//! oracles are exact.

use crate::math;

/// `e^{-1/x}` for `x > 0`, else `0`.
fn glue(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        math::exp(-1.0 / x)
    }
}

/// Derivative of [`glue`].
fn glue_prime(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        math::exp(-1.0 / x) / (x * x)
    }
}

/// Monotone `C^∞` step: `0` for `x ≤ 0`, `1` for `x ≥ 1`.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = glue(x);
        let b = glue(1.0 - x);
        a / (a + b)
    }
}

/// Derivative of [`smooth_step`]; symmetric about `x = 1/2`.
pub fn smooth_step_derivative(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        let a = glue(x);
        let b = glue(1.0 - x);
        let da = glue_prime(x);
        let db = glue_prime(1.0 - x);
        (da * b + a * db) / ((a + b) * (a + b))
    }
}

/// `C^∞` transition from `0` at `v = -1` to `1` at `v = +1`.
pub fn transition(v: f64) -> f64 {
    smooth_step(0.5 * (v + 1.0))
}

/// Unit-mass symmetric bump with support in `(-1, 1)`: the derivative of
/// [`transition`]. `bump(0) = 1` exactly.
pub fn bump(v: f64) -> f64 {
    0.5 * smooth_step_derivative(0.5 * (v + 1.0))
}

/// Radial low-pass profile: `1` on `ρ ≤ 1`, `0` on `ρ ≥ 2`.
pub fn low_pass(rho: f64) -> f64 {
    if rho <= 1.0 {
        1.0
    } else if rho >= 2.0 {
        0.0
    } else {
        1.0 - smooth_step(rho - 1.0)
    }
}

/// Littlewood–Paley ring bump `ψ(ρ) = low_pass(ρ) - low_pass(2ρ)`.
///
/// Support is `[1/2, 2]`, `ψ(1) = 1`, and the dyadic dilates telescope to a
/// partition of unity: `Σ_{N ∈ 2^ℤ} ψ(ρ/N) = 1` for every `ρ > 0`.
pub fn dyadic_ring(rho: f64) -> f64 {
    low_pass(rho) - low_pass(2.0 * rho)
}
