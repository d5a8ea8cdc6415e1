//! Norm functionals: spatial `L^p`, mixed `L^q_t L^p_x`, the spherically
//! averaged `L^q_t 𝓛^p_r L²_ω`, and the angular Sobolev norm
//! `‖Λ_ω^α D^s f‖_{L²}`.
//!
//! Time integration is composite midpoint on `[-T, T]`; `p = ∞` and `q = ∞`
//! are maxima over nodes. The angular Sobolev norm is evaluated on the
//! frequency side (rotations commute with the Fourier transform, so the two
//! sides agree; the equivalence is exercised in the integration tests).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::angular::{self, SphericalGrid};
use crate::grid::{DispersionParams, Field, Representation};
use crate::math;
use crate::propagator;
use crate::{Error, Result};

/// Uniform composite-midpoint sampling of `[-T, T]`.
#[derive(Debug, Clone)]
pub struct TimeSampling {
    nodes: Vec<f64>,
    dt: f64,
    t_max: f64,
}

impl TimeSampling {
    pub fn symmetric(t_max: f64, count: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::Parameter(format!(
                "time horizon T = {t_max} must be positive"
            )));
        }
        if count == 0 {
            return Err(Error::Parameter("time sampling needs nodes".into()));
        }
        let dt = 2.0 * t_max / count as f64;
        let nodes = (0..count)
            .map(|m| -t_max + (m as f64 + 0.5) * dt)
            .collect();
        Ok(TimeSampling { nodes, dt, t_max })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }
}

fn check_exponent(name: &str, value: f64, minimum: f64) -> Result<()> {
    if value.is_nan() || value < minimum {
        return Err(Error::Parameter(format!(
            "exponent {name} = {value} must be ≥ {minimum} (or ∞)"
        )));
    }
    Ok(())
}

/// Spatial `L^p` quadrature norm `(Σ |f|^p h^n)^{1/p}`; `p = ∞` is the
/// maximum over lattice nodes.
pub fn lebesgue_norm(f: &Field, p: f64) -> Result<f64> {
    f.expect_representation(Representation::Space)?;
    check_exponent("p", p, 1.0)?;
    if p == f64::INFINITY {
        let mut best = 0.0f64;
        for c in f.values() {
            best = best.max(c.norm_sqr());
        }
        return Ok(math::sqrt(best));
    }
    let sum: f64 = f.values().iter().map(|c| math::pow_mag(c.norm_sqr(), p)).sum();
    Ok(math::pow(sum * f.measure(), 1.0 / p))
}

/// Discrete `L^q` in time of precomputed per-node values.
fn time_lq(values: &[f64], dt: f64, q: f64) -> f64 {
    if q == f64::INFINITY {
        return values.iter().fold(0.0f64, |acc, v| acc.max(*v));
    }
    let sum: f64 = values.iter().map(|v| math::pow(*v, q)).sum();
    math::pow(sum * dt, 1.0 / q)
}

/// Mixed norm `‖u‖_{L^q_t L^p_x}` of the evolution of `u0`.
///
/// With `comoving` set the spatial norms are taken in the frame moving at
/// the carrier group velocity `φ'(1) = a` along the first axis; spatial
/// `L^p` norms are translation invariant, so this only matters for keeping
/// the packet away from the periodic boundary.
pub fn mixed_time_norm(
    u0: &Field,
    params: &DispersionParams,
    sampling: &TimeSampling,
    q: f64,
    p: f64,
    comoving: bool,
) -> Result<f64> {
    check_exponent("q", q, 2.0)?;
    check_exponent("p", p, 2.0)?;
    let velocity = if comoving {
        params.carrier_velocity()
    } else {
        [0.0, 0.0, 0.0]
    };
    let mut per_node = Vec::with_capacity(sampling.nodes().len());
    for &t in sampling.nodes() {
        let hat = propagator::propagate_comoving(u0, t, params, velocity)?;
        let u = hat.inverse_transform()?;
        per_node.push(lebesgue_norm(&u, p)?);
    }
    Ok(time_lq(&per_node, sampling.dt(), q))
}

/// Spherically averaged norm `‖u‖_{L^q_t 𝓛^p_r L²_ω}`: per time node the
/// solution is resampled onto `sg`, the `L²_ω` average is taken per shell,
/// then the radial `L^p` with weight `r^{n-1}`, then the discrete `L^q` in
/// time.
pub fn spherically_averaged_norm(
    u0: &Field,
    params: &DispersionParams,
    sampling: &TimeSampling,
    sg: &SphericalGrid,
    q: f64,
    p: f64,
) -> Result<f64> {
    check_exponent("q", q, 2.0)?;
    check_exponent("p", p, 2.0)?;
    let mut per_node = Vec::with_capacity(sampling.nodes().len());
    for &t in sampling.nodes() {
        let hat = propagator::propagate(u0, t, params)?;
        let spectrum = angular::to_polar(&hat, sg)?;
        per_node.push(radial_lp_of_averages(&spectrum, sg, p));
    }
    Ok(time_lq(&per_node, sampling.dt(), q))
}

/// `( Σ_j w_j (L²_ω avg at shell j)^p )^{1/p}` with `r^{n-1}` inside `w_j`.
pub fn radial_lp_of_averages(
    spectrum: &angular::AngularSpectrum,
    sg: &SphericalGrid,
    p: f64,
) -> f64 {
    if p == f64::INFINITY {
        let mut best = 0.0f64;
        for j in 0..spectrum.shells() {
            best = best.max(angular::spherical_l2_average(spectrum, j));
        }
        return best;
    }
    let sum: f64 = (0..spectrum.shells())
        .map(|j| {
            let avg2: f64 = spectrum.shell_coeffs(j).iter().map(|c| c.norm_sqr()).sum();
            math::pow_mag(avg2, p) * sg.radial_weights()[j]
        })
        .sum();
    math::pow(sum, 1.0 / p)
}

/// Angular Sobolev norm `‖f‖_{Ḣ^{s,α}_ω} = ‖Λ_ω^α D^s f‖_{L²}`.
///
/// Computed on the frequency side: the multiplier `|ξ|^s` is applied to the
/// coefficients, the spectrum is resampled onto the polar grid `sg` (which
/// lives in frequency space and must cover the spectral support), each shell
/// is expanded in harmonics, and the weighted `L²` over shells and harmonics
/// is returned.
pub fn angular_sobolev_norm(
    f: &Field,
    s: f64,
    alpha: f64,
    sg: &SphericalGrid,
) -> Result<f64> {
    let hat = match f.representation() {
        Representation::Frequency => f.clone(),
        Representation::Space => f.forward_transform()?,
    };
    let weighted = propagator::fractional_derivative(&hat, s)?;
    let spectrum = spectrum_to_polar(&weighted, sg)?;
    Ok(angular::sobolev_l2_norm(&spectrum, alpha, sg))
}

/// Polar expansion of the *spectrum* of a frequency-side field: the dual of
/// [`angular::to_polar`], sampling `f̂` at frequency-space polar nodes.
pub fn spectrum_to_polar(
    hat: &Field,
    sg: &SphericalGrid,
) -> Result<angular::AngularSpectrum> {
    hat.expect_representation(Representation::Frequency)?;
    if sg.dimension() != hat.grid().dimension() {
        return Err(Error::Parameter(
            "spherical grid dimension does not match the field".into(),
        ));
    }
    let space = hat.inverse_transform()?;
    let nodes = sg.cartesian_nodes();
    let values = space.evaluate_spectrum_at(&nodes)?;
    let nh = sg.num_harmonics();
    let per_shell = sg.angular_node_count();
    let mut coeffs = vec![Complex64::default(); sg.shells() * nh];
    for j in 0..sg.shells() {
        sg.analyze_shell(
            &values[j * per_shell..(j + 1) * per_shell],
            &mut coeffs[j * nh..(j + 1) * nh],
        );
    }
    angular::spectrum_from_parts(sg, coeffs)
}
