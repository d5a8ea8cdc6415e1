//! Thin wrappers over `libm` so the crate builds without `std`.

use num_complex::Complex64;

pub const PI: f64 = core::f64::consts::PI;
pub const TAU: f64 = 2.0 * core::f64::consts::PI;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn sincos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = sincos(theta);
    Complex64::new(c, s)
}

/// `x^p` for `x ≥ 0` with fast paths for small even/integer exponents.
///
/// `mag2` is `x²`; callers in norm loops have the squared magnitude at hand.
#[inline]
pub fn pow_mag(mag2: f64, p: f64) -> f64 {
    let half = 0.5 * p;
    let k = half as i32;
    if k as f64 == half && (0..=32).contains(&k) {
        // p even integer: (x²)^{p/2}
        powi(mag2, k)
    } else {
        pow(mag2, half)
    }
}

#[inline]
fn powi(x: f64, mut k: i32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}
