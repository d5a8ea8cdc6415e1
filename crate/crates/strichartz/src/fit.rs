//! Log-log least-squares power-law fits for `ε`-sweeps.

use alloc::format;
use alloc::vec::Vec;

use crate::math;
use crate::{Error, Result};

/// Result of fitting `value ≈ e^{intercept} · ε^{exponent}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub intercept: f64,
    /// Coefficient of determination in log-log space, clamped to `[0, 1]`.
    pub r_squared: f64,
    /// The abscissae the fit was taken over.
    pub epsilons: Vec<f64>,
    /// Log-space residuals `ln v_i − (intercept + exponent·ln ε_i)`.
    pub residuals: Vec<f64>,
}

impl PowerLawFit {
    /// Whether two fits were taken over the same sweep.
    pub fn same_sweep(&self, other: &PowerLawFit) -> bool {
        self.epsilons.len() == other.epsilons.len()
            && self
                .epsilons
                .iter()
                .zip(&other.epsilons)
                .all(|(a, b)| a == b)
    }
}

/// Ordinary least squares in `(ln ε, ln value)`.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<PowerLawFit> {
    if samples.len() < 2 {
        return Err(Error::Resolution(format!(
            "power-law fit needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    for &(eps, value) in samples {
        if !(eps > 0.0 && value > 0.0 && eps.is_finite() && value.is_finite()) {
            return Err(Error::Parameter(format!(
                "power-law fit needs positive finite samples, got ({eps}, {value})"
            )));
        }
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|(e, _)| math::ln(*e)).collect();
    let ys: Vec<f64> = samples.iter().map(|(_, v)| math::ln(*v)).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    if sxx == 0.0 {
        return Err(Error::Parameter(
            "power-law fit needs at least two distinct ε values".into(),
        ));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let residuals: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (intercept + exponent * x))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let r_squared = if ss_tot <= 1e-30 {
        // flat data: perfect fit iff the residuals vanish too
        if ss_res <= 1e-24 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(PowerLawFit {
        exponent,
        intercept,
        r_squared,
        epsilons: samples.iter().map(|(e, _)| *e).collect(),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let samples: Vec<(f64, f64)> = [0.125, 0.0625, 0.03125, 0.015625]
            .iter()
            .map(|&e| (e, 3.7 * math::pow(e, 1.5)))
            .collect();
        let fit = fit_power_law(&samples).unwrap();
        assert!((fit.exponent - 1.5).abs() < 1e-12);
        assert!((math::exp(fit.intercept) - 3.7).abs() < 1e-10);
        assert!(fit.r_squared > 1.0 - 1e-12);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn r_squared_degrades_with_noise() {
        let samples = [
            (0.5, 1.0),
            (0.25, 3.0),
            (0.125, 2.0),
            (0.0625, 9.0),
        ];
        let fit = fit_power_law(&samples).unwrap();
        assert!((0.0..=1.0).contains(&fit.r_squared));
        assert!(fit.r_squared < 0.98);
    }

    #[test]
    fn constant_data_fits_zero_exponent() {
        let samples = [(0.5, 2.0), (0.25, 2.0), (0.125, 2.0)];
        let fit = fit_power_law(&samples).unwrap();
        assert!(fit.exponent.abs() < 1e-14);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(fit_power_law(&[(0.5, 1.0)]).is_err());
        assert!(fit_power_law(&[(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(fit_power_law(&[(0.5, 0.0), (0.25, 1.0)]).is_err());
        assert!(fit_power_law(&[(-0.5, 1.0), (0.25, 1.0)]).is_err());
    }

    #[test]
    fn same_sweep_detection() {
        let a = fit_power_law(&[(0.5, 1.0), (0.25, 2.0)]).unwrap();
        let b = fit_power_law(&[(0.5, 3.0), (0.25, 4.0)]).unwrap();
        let c = fit_power_law(&[(0.5, 1.0), (0.125, 2.0)]).unwrap();
        assert!(a.same_sweep(&b));
        assert!(!a.same_sweep(&c));
    }
}
