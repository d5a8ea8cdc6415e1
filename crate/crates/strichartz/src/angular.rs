//! Polar resampling and angular operators.
//!
//! A [`SphericalGrid`] couples a Gauss–Legendre radial rule on `[0, R]` (with
//! the `r^{n-1}` volume weight folded into the radial weights) with an
//! angular quadrature that integrates products of harmonics up to the stated
//! degree exactly. Fields are resampled onto the polar nodes and expanded in
//! the orthonormal harmonic basis shell by shell; the `Λ_ω^α = (1-Δ_ω)^{α/2}`
//! multiplier and the spherical `L²` averages act on those expansions.
//!
//! The rotation fields `Ω_ij = x_i ∂_j − x_j ∂_i` act on the Cartesian grid
//! instead: derivatives spectrally, coordinates pointwise. Experiments must
//! keep the field supported away from the box boundary, since the periodic
//! coordinate has a jump there.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::grid::{Field, Point, Representation};
use crate::harmonics::AngularBasis;
use crate::math;
use crate::quadrature;
use crate::{Error, Result};

pub struct SphericalGrid {
    radial_nodes: Vec<f64>,
    /// Gauss–Legendre weight times `r^{n-1}`.
    radial_weights: Vec<f64>,
    basis: AngularBasis,
}

impl fmt::Debug for SphericalGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SphericalGrid")
            .field("dimension", &self.dimension())
            .field("radial_nodes", &self.radial_nodes.len())
            .field("max_degree", &self.max_degree())
            .finish()
    }
}

impl SphericalGrid {
    /// Polar grid in the plane: `radial` Gauss–Legendre nodes on `[0, r_max]`
    /// and equispaced angles resolving circular harmonics up to `max_degree`.
    pub fn circle(radial: usize, r_max: f64, max_degree: usize) -> Result<Self> {
        Self::build(2, radial, r_max, max_degree)
    }

    /// Spherical grid: Gauss–Legendre latitudes × equispaced longitudes,
    /// exact for products of harmonics of degree up to `max_degree`.
    pub fn sphere(radial: usize, r_max: f64, max_degree: usize) -> Result<Self> {
        Self::build(3, radial, r_max, max_degree)
    }

    fn build(n: usize, radial: usize, r_max: f64, max_degree: usize) -> Result<Self> {
        if radial == 0 || !(r_max.is_finite() && r_max > 0.0) {
            return Err(Error::Parameter(format!(
                "radial rule needs nodes and positive extent, got {radial} on [0, {r_max}]"
            )));
        }
        let (nodes, gl_weights) = quadrature::gauss_legendre_on(radial, 0.0, r_max);
        let radial_weights = nodes
            .iter()
            .zip(&gl_weights)
            .map(|(r, w)| w * math::pow(*r, (n - 1) as f64))
            .collect();
        let basis = if n == 2 {
            AngularBasis::circle(max_degree)
        } else {
            AngularBasis::sphere(max_degree)
        };
        Ok(SphericalGrid {
            radial_nodes: nodes,
            radial_weights,
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn radial_nodes(&self) -> &[f64] {
        &self.radial_nodes
    }

    /// Radial quadrature weights with `r^{n-1}` folded in.
    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn shells(&self) -> usize {
        self.radial_nodes.len()
    }

    pub fn max_degree(&self) -> usize {
        self.basis.max_degree()
    }

    pub fn num_harmonics(&self) -> usize {
        self.basis.harmonic_count()
    }

    pub fn angular_node_count(&self) -> usize {
        self.basis.node_count()
    }

    /// Eigenvalue of `-Δ_ω` for harmonic index `k` (`m²` or `ℓ(ℓ+1)`).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.basis.eigenvalue(k)
    }

    pub fn harmonic_degree(&self, k: usize) -> usize {
        self.basis.degree(k)
    }

    pub fn surface_area(&self) -> f64 {
        self.basis.surface_area()
    }

    /// Unit sphere nodes and weights (weights sum to the surface area).
    pub fn angular_nodes(&self) -> (Vec<Point>, Vec<f64>) {
        self.basis.nodes()
    }

    /// All Cartesian nodes `r_j ω_k`, shell-major.
    pub fn cartesian_nodes(&self) -> Vec<Point> {
        let (omega, _) = self.basis.nodes();
        let mut pts = Vec::with_capacity(self.shells() * omega.len());
        for &r in &self.radial_nodes {
            for w in &omega {
                pts.push([r * w[0], r * w[1], r * w[2]]);
            }
        }
        pts
    }

    /// Harmonic expansion of one shell of samples.
    pub fn analyze_shell(&self, values: &[Complex64], coeffs: &mut [Complex64]) {
        self.basis.analyze(values, coeffs);
    }

    /// Node samples from one shell of harmonic coefficients.
    pub fn synthesize_shell(&self, coeffs: &[Complex64], values: &mut [Complex64]) {
        self.basis.synthesize(coeffs, values);
    }
}

/// Per-shell harmonic coefficients `c_{j,k}` of a resampled field.
#[derive(Debug, Clone)]
pub struct AngularSpectrum {
    shells: usize,
    harmonics: usize,
    /// shell-major
    coeffs: Vec<Complex64>,
    eigenvalues: Vec<f64>,
    surface_area: f64,
}

impl AngularSpectrum {
    pub fn shells(&self) -> usize {
        self.shells
    }

    pub fn num_harmonics(&self) -> usize {
        self.harmonics
    }

    pub fn shell_coeffs(&self, shell: usize) -> &[Complex64] {
        &self.coeffs[shell * self.harmonics..(shell + 1) * self.harmonics]
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }
}

/// Assembles an [`AngularSpectrum`] from shell-major coefficients produced
/// with [`SphericalGrid::analyze_shell`].
pub fn spectrum_from_parts(
    sg: &SphericalGrid,
    coeffs: Vec<Complex64>,
) -> Result<AngularSpectrum> {
    let nh = sg.num_harmonics();
    if coeffs.len() != sg.shells() * nh {
        return Err(Error::Parameter(format!(
            "coefficient buffer has {} entries, grid wants {}",
            coeffs.len(),
            sg.shells() * nh
        )));
    }
    Ok(AngularSpectrum {
        shells: sg.shells(),
        harmonics: nh,
        coeffs,
        eigenvalues: (0..nh).map(|k| sg.eigenvalue(k)).collect(),
        surface_area: sg.surface_area(),
    })
}

/// Samples an arbitrary function at the polar nodes and expands every shell
/// in the harmonic basis. This is the closed-form twin of [`to_polar`].
pub fn to_polar_with(
    mut sampler: impl FnMut(Point) -> Complex64,
    sg: &SphericalGrid,
) -> AngularSpectrum {
    let (omega, _) = sg.angular_nodes();
    let nh = sg.num_harmonics();
    let mut coeffs = vec![Complex64::default(); sg.shells() * nh];
    let mut shell_values = vec![Complex64::default(); omega.len()];
    for (j, &r) in sg.radial_nodes().iter().enumerate() {
        for (slot, w) in shell_values.iter_mut().zip(&omega) {
            *slot = sampler([r * w[0], r * w[1], r * w[2]]);
        }
        sg.analyze_shell(&shell_values, &mut coeffs[j * nh..(j + 1) * nh]);
    }
    AngularSpectrum {
        shells: sg.shells(),
        harmonics: nh,
        coeffs,
        eigenvalues: (0..nh).map(|k| sg.eigenvalue(k)).collect(),
        surface_area: sg.surface_area(),
    }
}

/// Resamples the spatial function of `f` (frequency representation, so the
/// band-limited interpolant is available) onto the polar nodes and expands
/// each shell. All nodes must lie inside the box.
pub fn to_polar(f: &Field, sg: &SphericalGrid) -> Result<AngularSpectrum> {
    f.expect_representation(Representation::Frequency)?;
    if sg.dimension() != f.grid().dimension() {
        return Err(Error::Parameter(
            "spherical grid dimension does not match the field".into(),
        ));
    }
    let nodes = sg.cartesian_nodes();
    let values = f.evaluate_at_points(&nodes)?;
    let nh = sg.num_harmonics();
    let per_shell = sg.angular_node_count();
    let mut coeffs = vec![Complex64::default(); sg.shells() * nh];
    for j in 0..sg.shells() {
        sg.analyze_shell(
            &values[j * per_shell..(j + 1) * per_shell],
            &mut coeffs[j * nh..(j + 1) * nh],
        );
    }
    Ok(AngularSpectrum {
        shells: sg.shells(),
        harmonics: nh,
        coeffs,
        eigenvalues: (0..nh).map(|k| sg.eigenvalue(k)).collect(),
        surface_area: sg.surface_area(),
    })
}

/// `L²_ω` norm of shell `j`: `(Σ_k |c_{j,k}|²)^{1/2}`.
pub fn spherical_l2_average(spectrum: &AngularSpectrum, shell: usize) -> f64 {
    let sum: f64 = spectrum
        .shell_coeffs(shell)
        .iter()
        .map(|c| c.norm_sqr())
        .sum();
    math::sqrt(sum)
}

/// `Λ_ω^α`: multiplies `c_{j,k}` by `(1 + λ_k)^{α/2}`.
pub fn lambda_omega(spectrum: &AngularSpectrum, alpha: f64) -> AngularSpectrum {
    let mut out = spectrum.clone();
    let nh = out.harmonics;
    let weights: Vec<f64> = out
        .eigenvalues
        .iter()
        .map(|l| math::pow(1.0 + l, 0.5 * alpha))
        .collect();
    for shell in 0..out.shells {
        for (c, w) in out.coeffs[shell * nh..(shell + 1) * nh]
            .iter_mut()
            .zip(&weights)
        {
            *c *= *w;
        }
    }
    out
}

/// Angular mean of the spatial function of `f` per shell.
pub fn radial_projection(f: &Field, sg: &SphericalGrid) -> Result<Vec<Complex64>> {
    let spectrum = to_polar(f, sg)?;
    Ok(radial_projection_of(&spectrum))
}

/// Angular mean per shell of an existing expansion.
pub fn radial_projection_of(spectrum: &AngularSpectrum) -> Vec<Complex64> {
    // mean = ⟨f, Y₀⟩·Y₀ with Y₀ the constant harmonic |S|^{-1/2}
    let scale = 1.0 / math::sqrt(spectrum.surface_area);
    let constant_index = spectrum
        .eigenvalues
        .iter()
        .position(|l| *l == 0.0)
        .expect("constant harmonic present");
    (0..spectrum.shells)
        .map(|j| spectrum.shell_coeffs(j)[constant_index] * scale)
        .collect()
}

/// `L²(ℝ^n)` norm of a radial profile given per shell:
/// `(|𝕊^{n-1}| Σ_j w_j |g_j|²)^{1/2}` with the `r^{n-1}` weight inside `w_j`.
pub fn radial_l2_norm(profile: &[Complex64], sg: &SphericalGrid) -> f64 {
    let sum: f64 = profile
        .iter()
        .zip(sg.radial_weights())
        .map(|(g, w)| g.norm_sqr() * w)
        .sum();
    math::sqrt(sum * sg.surface_area())
}

/// Weighted `L²` of a full expansion with `Λ_ω^α` applied spectrally:
/// `(Σ_j w_j Σ_k (1+λ_k)^α |c_{j,k}|²)^{1/2}`.
pub fn sobolev_l2_norm(spectrum: &AngularSpectrum, alpha: f64, sg: &SphericalGrid) -> f64 {
    let nh = spectrum.num_harmonics();
    let weights: Vec<f64> = spectrum
        .eigenvalues
        .iter()
        .map(|l| math::pow(1.0 + l, alpha))
        .collect();
    let mut total = 0.0;
    for (j, w_r) in sg.radial_weights().iter().enumerate() {
        let shell: f64 = spectrum.coeffs[j * nh..(j + 1) * nh]
            .iter()
            .zip(&weights)
            .map(|(c, w)| c.norm_sqr() * w)
            .sum();
        total += shell * w_r;
    }
    math::sqrt(total)
}

/// Rotation field `Ω_ij f = x_i ∂_j f − x_j ∂_i f` (0-based axes, `i < j
/// < n`). Derivatives are spectral; coordinate multiplication uses the
/// periodic grid coordinates, so the field must decay inside the box.
pub fn rotation_vector_field(f: &Field, axis_i: usize, axis_j: usize) -> Result<Field> {
    let n = f.grid().dimension();
    if axis_i >= axis_j || axis_j >= n {
        return Err(Error::Parameter(format!(
            "rotation axes must satisfy i < j < n, got ({axis_i}, {axis_j}) with n = {n}"
        )));
    }
    let hat = match f.representation() {
        Representation::Frequency => f.clone(),
        Representation::Space => f.forward_transform()?,
    };
    let d_i = hat
        .multiply_frequency(|xi, _| Complex64::new(0.0, xi[axis_i]))?
        .inverse_transform()?;
    let d_j = hat
        .multiply_frequency(|xi, _| Complex64::new(0.0, xi[axis_j]))?
        .inverse_transform()?;
    let grid = *f.grid();
    let mut values = Vec::with_capacity(grid.len());
    for flat in 0..grid.len() {
        let x = grid.coordinate_at(flat);
        values.push(x[axis_i] * d_j.values()[flat] - x[axis_j] * d_i.values()[flat]);
    }
    Field::from_values(grid, Representation::Space, values)
}
