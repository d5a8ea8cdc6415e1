//! Frequency multipliers of the free evolution: the solution operator
//! `û(t) = e^{-it|ξ|^a} û₀`, its co-moving variant, fractional derivatives
//! `|ξ|^s`, and smooth dyadic Littlewood–Paley projections.
//!
//! The phase sign matches the stationary-phase computation that drives the
//! wave-packet experiments (`e^{i(x·ξ - t|ξ|²)}` for `a = 2`); all norms in
//! the crate are invariant under conjugating the multiplier.

use alloc::format;

use num_complex::Complex64;

use crate::grid::{DispersionParams, Field, Point, Representation};
use crate::math;
use crate::{bump, Error, Result};

fn to_frequency(u0: &Field) -> Result<Field> {
    match u0.representation() {
        Representation::Frequency => Ok(u0.clone()),
        Representation::Space => u0.forward_transform(),
    }
}

/// Solution at time `t`: coefficients multiplied by `e^{-it|ξ|^a}`.
///
/// Accepts either representation (space data is transformed first); the
/// result is in frequency representation. The multiplier is unimodular, so
/// the `L²` norm is preserved exactly.
pub fn propagate(u0: &Field, t: f64, params: &DispersionParams) -> Result<Field> {
    propagate_comoving(u0, t, params, [0.0, 0.0, 0.0])
}

/// Solution in a frame moving with velocity `v`: multiplier
/// `e^{-it(|ξ|^a - v·ξ)}`, i.e. the [`propagate`] output translated by `v t`.
pub fn propagate_comoving(
    u0: &Field,
    t: f64,
    params: &DispersionParams,
    v: Point,
) -> Result<Field> {
    if !t.is_finite() {
        return Err(Error::Parameter(format!("time t = {t} must be finite")));
    }
    let a = params.exponent();
    let hat = to_frequency(u0)?;
    let half_a = 0.5 * a;
    let quadratic = half_a == 1.0;
    hat.multiply_frequency(|xi, rho2| {
        let dispersion = if quadratic {
            rho2
        } else if rho2 == 0.0 {
            0.0
        } else {
            math::pow(rho2, half_a)
        };
        let drift = v[0] * xi[0] + v[1] * xi[1] + v[2] * xi[2];
        math::cis(-t * (dispersion - drift))
    })
}

/// Fractional derivative `D^s`: coefficients multiplied by `|ξ|^s`.
///
/// The zero mode is annihilated for `s > 0`; for `s < 0` the input must have
/// a vanishing zero mode (within `1e-12` of its `L²` size) or the operation
/// fails with [`Error::SingularMultiplier`].
pub fn fractional_derivative(f: &Field, s: f64) -> Result<Field> {
    let hat = to_frequency(f)?;
    if s == 0.0 {
        return Ok(hat);
    }
    if s < 0.0 {
        let mean = hat.zero_mode()?;
        if mean.norm_sqr() > 1e-24 * (1.0 + hat.l2_norm() * hat.l2_norm()) {
            return Err(Error::SingularMultiplier);
        }
    }
    hat.multiply_frequency(|_, rho2| {
        if rho2 == 0.0 {
            Complex64::default()
        } else {
            Complex64::new(math::pow(rho2, 0.5 * s), 0.0)
        }
    })
}

/// Checks that `n` is an exact dyadic `2^j` and returns `j`.
fn dyadic_exponent(n_dyadic: f64) -> Result<i32> {
    if !(n_dyadic.is_finite() && n_dyadic > 0.0) {
        return Err(Error::Parameter(format!(
            "Littlewood–Paley scale N = {n_dyadic} must be a positive dyadic"
        )));
    }
    let j = math::round(math::log2(n_dyadic)) as i32;
    let back = math::pow(2.0, j as f64);
    if back != n_dyadic {
        return Err(Error::Parameter(format!(
            "Littlewood–Paley scale N = {n_dyadic} is not an exact power of two"
        )));
    }
    Ok(j)
}

/// Littlewood–Paley projection `P_N`: coefficients multiplied by `ψ(|ξ|/N)`
/// with the ring bump of [`bump::dyadic_ring`] (support `[N/2, 2N]`).
pub fn littlewood_paley(f: &Field, n_dyadic: f64) -> Result<Field> {
    dyadic_exponent(n_dyadic)?;
    let hat = to_frequency(f)?;
    hat.multiply_frequency(|_, rho2| {
        Complex64::new(bump::dyadic_ring(math::sqrt(rho2) / n_dyadic), 0.0)
    })
}

/// Pointwise weight of `P_N` at radius `ρ` (exposed for fixtures and tests).
pub fn littlewood_paley_weight(rho: f64, n_dyadic: f64) -> f64 {
    bump::dyadic_ring(rho / n_dyadic)
}
