//! Gauss–Legendre quadrature rules.

use alloc::vec::Vec;

use crate::math;

/// Nodes and weights on `[-1, 1]`, exact for polynomials of degree `2n - 1`.
///
/// Newton iteration on the Legendre polynomial with the usual Chebyshev-like
/// initial guesses; accurate to machine precision for the desk-scale sizes
/// used here (up to a few thousand nodes).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let m = n.div_ceil(2);
    // Nonnegative roots in decreasing order (i = 0 is the largest).
    let mut roots = Vec::with_capacity(m);
    let mut root_weights = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = libm::cos(math::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if math::abs(dx) < 1e-15 {
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            x = 0.0;
            dp = legendre_with_derivative(n, 0.0).1;
        }
        roots.push(x);
        root_weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..m {
        nodes[i] = -roots[i];
        weights[i] = root_weights[i];
        nodes[n - 1 - i] = roots[i];
        weights[n - 1 - i] = root_weights[i];
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

/// Integrates `f` over `[a, b]` with an `n`-point rule.
pub fn integrate(n: usize, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre_on(n, a, b);
    x.iter().zip(&w).map(|(xi, wi)| wi * f(*xi)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1usize, 2, 3, 7, 32, 129] {
            let (_, w) = gauss_legendre(n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        // degree 2n-1 exactness
        for n in [2usize, 5, 16] {
            for k in 0..2 * n {
                let got = integrate(n, -1.0, 1.0, |x| libm::pow(x, k as f64));
                let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((got - want).abs() < 1e-12, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        for n in [4usize, 5, 64, 65] {
            let (x, w) = gauss_legendre(n);
            assert_eq!(x.len(), n);
            for i in 1..n {
                assert!(x[i] > x[i - 1]);
            }
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-14);
                assert!((w[i] - w[n - 1 - i]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mapped_rule_integrates_exponential() {
        let got = integrate(48, 0.0, 2.0, libm::exp);
        let want = libm::exp(2.0) - 1.0;
        assert!((got - want).abs() < 1e-12);
    }
}
