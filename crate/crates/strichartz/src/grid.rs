//! Periodic Cartesian grids and complex fields with a unitary Fourier pair.
//!
//! The box is `[-L, L)^n` with `M` samples per axis (`M` a power of two), so
//! the spatial lattice is `x = h·(j - M/2)` with `h = 2L/M` and the dual
//! frequency lattice is `ξ = (π/L)·(k - M/2)`. The transform pair mimics the
//! continuum convention `û(ξ) = (2π)^{-n/2} ∫ u e^{-iξ·x} dx`: space samples
//! carry the measure `h^n`, frequency samples carry `(π/L)^n`, and discrete
//! Plancherel holds exactly between the two quadrature norms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_complex::Complex64;

use crate::fft;
use crate::math;
use crate::{Error, Result};

/// Point in the box; for `n = 2` the third coordinate is ignored.
pub type Point = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Space,
    Frequency,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Space => write!(f, "space"),
            Representation::Frequency => write!(f, "frequency"),
        }
    }
}

/// Dimension and dispersion exponent of `φ(ρ) = ρ^a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionParams {
    n: usize,
    a: f64,
}

impl DispersionParams {
    /// `a = 1` is accepted for the wave variant; anything below is rejected.
    pub fn new(n: usize, a: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("dimension n = {n} must be ≥ 2")));
        }
        if !a.is_finite() || a < 1.0 {
            return Err(Error::Parameter(format!(
                "dispersion exponent a = {a} must be ≥ 1"
            )));
        }
        Ok(Self { n, a })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn exponent(&self) -> f64 {
        self.a
    }

    /// Group velocity `φ'(1)` of a unit-frequency carrier, directed along the
    /// first axis.
    pub fn carrier_velocity(&self) -> Point {
        [self.a, 0.0, 0.0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    samples: usize,
    half_length: f64,
}

impl Grid {
    pub fn new(n: usize, samples_per_axis: usize, half_length: f64) -> Result<Self> {
        if !(n == 2 || n == 3) {
            return Err(Error::Parameter(format!(
                "grid dimension n = {n} must be 2 or 3"
            )));
        }
        if samples_per_axis < 4 || !samples_per_axis.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "samples per axis M = {samples_per_axis} must be a power of two ≥ 4"
            )));
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::Parameter(format!(
                "box half-length L = {half_length} must be positive"
            )));
        }
        Ok(Self {
            n,
            samples: samples_per_axis,
            half_length,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn samples_per_axis(&self) -> usize {
        self.samples
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Spatial spacing `h = 2L/M`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.samples as f64
    }

    /// Frequency spacing `π/L`.
    pub fn frequency_spacing(&self) -> f64 {
        math::PI / self.half_length
    }

    /// Largest resolved frequency `(π/L)·(M/2)`.
    pub fn nyquist(&self) -> f64 {
        self.frequency_spacing() * (self.samples / 2) as f64
    }

    /// Total number of lattice points `M^n`.
    pub fn len(&self) -> usize {
        self.samples.pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        self.spacing() * (index as f64 - (self.samples / 2) as f64)
    }

    pub fn frequency(&self, index: usize) -> f64 {
        self.frequency_spacing() * (index as f64 - (self.samples / 2) as f64)
    }

    /// Splits a flat index into per-axis indices (axis 0 fastest).
    pub fn unravel(&self, flat: usize) -> [usize; 3] {
        let m = self.samples;
        [flat % m, (flat / m) % m, if self.n == 3 { flat / (m * m) } else { 0 }]
    }

    pub fn coordinate_at(&self, flat: usize) -> Point {
        let idx = self.unravel(flat);
        [
            self.coordinate(idx[0]),
            self.coordinate(idx[1]),
            if self.n == 3 { self.coordinate(idx[2]) } else { 0.0 },
        ]
    }

    pub fn frequency_at(&self, flat: usize) -> Point {
        let idx = self.unravel(flat);
        [
            self.frequency(idx[0]),
            self.frequency(idx[1]),
            if self.n == 3 { self.frequency(idx[2]) } else { 0.0 },
        ]
    }

    pub fn contains(&self, point: &Point) -> bool {
        let l = self.half_length;
        (0..self.n).all(|d| point[d] >= -l && point[d] < l)
    }

    fn contains_frequency(&self, point: &Point) -> bool {
        let nyq = self.nyquist();
        (0..self.n).all(|d| point[d] >= -nyq && point[d] < nyq)
    }
}

#[derive(Debug, Clone)]
pub struct Field {
    grid: Grid,
    repr: Representation,
    values: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: Grid, repr: Representation) -> Field {
        Field {
            grid,
            repr,
            values: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_values(
        grid: Grid,
        repr: Representation,
        values: Vec<Complex64>,
    ) -> Result<Field> {
        if values.len() != grid.len() {
            return Err(Error::Parameter(format!(
                "value buffer has {} entries, grid wants {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Field { grid, repr, values })
    }

    /// Samples `f` on the spatial lattice.
    pub fn from_space_fn(grid: Grid, f: impl FnMut(Point) -> Complex64) -> Field {
        let mut field = Field::zeros(grid, Representation::Space);
        field.fill(f, false);
        field
    }

    /// Samples `f` on the frequency lattice.
    pub fn from_frequency_fn(grid: Grid, f: impl FnMut(Point) -> Complex64) -> Field {
        let mut field = Field::zeros(grid, Representation::Frequency);
        field.fill(f, true);
        field
    }

    fn fill(&mut self, mut f: impl FnMut(Point) -> Complex64, frequency_side: bool) {
        let m = self.grid.samples;
        let planes = if self.grid.n == 3 { m } else { 1 };
        let value = |g: &Grid, i: usize| {
            if frequency_side {
                g.frequency(i)
            } else {
                g.coordinate(i)
            }
        };
        let mut flat = 0;
        for i2 in 0..planes {
            let x2 = if self.grid.n == 3 { value(&self.grid, i2) } else { 0.0 };
            for i1 in 0..m {
                let x1 = value(&self.grid, i1);
                for i0 in 0..m {
                    let x0 = value(&self.grid, i0);
                    self.values[flat] = f([x0, x1, x2]);
                    flat += 1;
                }
            }
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub(crate) fn expect_representation(&self, expected: Representation) -> Result<()> {
        if self.repr != expected {
            return Err(Error::Representation {
                expected,
                found: self.repr,
            });
        }
        Ok(())
    }

    /// Quadrature cell measure of the current side (`h^n` or `(π/L)^n`).
    pub fn measure(&self) -> f64 {
        let step = match self.repr {
            Representation::Space => self.grid.spacing(),
            Representation::Frequency => self.grid.frequency_spacing(),
        };
        math::pow(step, self.grid.n as f64)
    }

    /// Quadrature `L²` norm on the current side.
    pub fn l2_norm(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|c| c.norm_sqr()).sum();
        math::sqrt(sum * self.measure())
    }

    /// Quadrature inner product `⟨self, other⟩` on the current side.
    pub fn l2_inner(&self, other: &Field) -> Result<Complex64> {
        if self.grid != other.grid || self.repr != other.repr {
            return Err(Error::Parameter(
                "inner product needs matching grids and representations".into(),
            ));
        }
        let sum: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(sum * self.measure())
    }

    /// `self += c · other` (same grid and representation).
    pub fn add_assign_scaled(&mut self, c: Complex64, other: &Field) -> Result<()> {
        if self.grid != other.grid || self.repr != other.repr {
            return Err(Error::Parameter(
                "field sum needs matching grids and representations".into(),
            ));
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
        Ok(())
    }

    /// Unitary forward transform: space samples to frequency coefficients.
    pub fn forward_transform(&self) -> Result<Field> {
        self.expect_representation(Representation::Space)?;
        let mut values = self.values.clone();
        transform(&self.grid, &mut values, false);
        let scale = math::pow(self.grid.spacing(), self.grid.n as f64)
            / math::pow(math::TAU, self.grid.n as f64 / 2.0);
        apply_parity_and_scale(&self.grid, &mut values, scale);
        Ok(Field {
            grid: self.grid,
            repr: Representation::Frequency,
            values,
        })
    }

    /// Unitary inverse transform: frequency coefficients to space samples.
    pub fn inverse_transform(&self) -> Result<Field> {
        self.expect_representation(Representation::Frequency)?;
        let mut values = self.values.clone();
        transform(&self.grid, &mut values, true);
        let scale = math::pow(self.grid.frequency_spacing(), self.grid.n as f64)
            / math::pow(math::TAU, self.grid.n as f64 / 2.0);
        apply_parity_and_scale(&self.grid, &mut values, scale);
        Ok(Field {
            grid: self.grid,
            repr: Representation::Space,
            values,
        })
    }

    /// Band-limited evaluation `u(x) = (2π)^{-n/2} Δξ^n Σ_ξ û(ξ) e^{iξ·x}` at
    /// arbitrary points of the box.
    ///
    /// Zero coefficients are skipped, so frequency-localized fields evaluate
    /// in time proportional to their support.
    pub fn evaluate_at_points(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        self.expect_representation(Representation::Frequency)?;
        for p in points {
            if !self.grid.contains(p) {
                return Err(Error::PointOutsideBox(p[0], p[1], p[2]));
            }
        }
        let scale = math::pow(self.grid.frequency_spacing(), self.grid.n as f64)
            / math::pow(math::TAU, self.grid.n as f64 / 2.0);
        Ok(self.evaluate_general(points, self.grid.frequency_spacing(), 1.0, scale))
    }

    pub fn evaluate_at_point(&self, point: Point) -> Result<Complex64> {
        Ok(self.evaluate_at_points(&[point])?[0])
    }

    /// Trigonometric interpolation of the spectrum at arbitrary frequencies:
    /// `f̂(ξ) = (2π)^{-n/2} h^n Σ_x f(x) e^{-iξ·x}`, for `ξ` below Nyquist.
    pub fn evaluate_spectrum_at(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        self.expect_representation(Representation::Space)?;
        for p in points {
            if !self.grid.contains_frequency(p) {
                return Err(Error::PointOutsideBox(p[0], p[1], p[2]));
            }
        }
        let scale = math::pow(self.grid.spacing(), self.grid.n as f64)
            / math::pow(math::TAU, self.grid.n as f64 / 2.0);
        Ok(self.evaluate_general(points, self.grid.spacing(), -1.0, scale))
    }

    fn evaluate_general(
        &self,
        points: &[Point],
        lattice_step: f64,
        sign: f64,
        scale: f64,
    ) -> Vec<Complex64> {
        let m = self.grid.samples;
        let n = self.grid.n;
        // Parallel arrays of the nonzero support, split per axis.
        let mut nz_val = Vec::new();
        let mut nz_i0: Vec<u32> = Vec::new();
        let mut nz_i1: Vec<u32> = Vec::new();
        let mut nz_i2: Vec<u32> = Vec::new();
        for (flat, &c) in self.values.iter().enumerate() {
            if c != Complex64::default() {
                let idx = self.grid.unravel(flat);
                nz_val.push(c);
                nz_i0.push(idx[0] as u32);
                nz_i1.push(idx[1] as u32);
                nz_i2.push(idx[2] as u32);
            }
        }
        let offset = -((m / 2) as f64) * lattice_step;
        let mut table = vec![Complex64::default(); m * n];
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            for d in 0..n {
                let base_phase = sign * offset * p[d];
                let step_phase = sign * lattice_step * p[d];
                let ratio = math::cis(step_phase);
                let row = &mut table[d * m..(d + 1) * m];
                let mut cur = math::cis(base_phase);
                for (k, slot) in row.iter_mut().enumerate() {
                    // Resync the recurrence to keep rounding drift bounded.
                    if k % 64 == 0 {
                        cur = math::cis(base_phase + step_phase * k as f64);
                    }
                    *slot = cur;
                    cur *= ratio;
                }
            }
            let t0 = &table[0..m];
            let t1 = &table[m..2 * m];
            let mut acc = Complex64::default();
            if n == 2 {
                for i in 0..nz_val.len() {
                    acc += nz_val[i] * t0[nz_i0[i] as usize] * t1[nz_i1[i] as usize];
                }
            } else {
                let t2 = &table[2 * m..3 * m];
                for i in 0..nz_val.len() {
                    acc += nz_val[i]
                        * t0[nz_i0[i] as usize]
                        * t1[nz_i1[i] as usize]
                        * t2[nz_i2[i] as usize];
                }
            }
            out.push(acc * scale);
        }
        out
    }

    /// Applies a frequency multiplier, skipping zero coefficients. The closure
    /// receives the lattice frequency and `|ξ|²`.
    pub fn multiply_frequency(
        &self,
        mut multiplier: impl FnMut(Point, f64) -> Complex64,
    ) -> Result<Field> {
        self.expect_representation(Representation::Frequency)?;
        let m = self.grid.samples;
        let planes = if self.grid.n == 3 { m } else { 1 };
        let mut values = self.values.clone();
        let mut flat = 0;
        for i2 in 0..planes {
            let xi2 = if self.grid.n == 3 { self.grid.frequency(i2) } else { 0.0 };
            for i1 in 0..m {
                let xi1 = self.grid.frequency(i1);
                let partial = xi1 * xi1 + xi2 * xi2;
                for i0 in 0..m {
                    let c = values[flat];
                    if c != Complex64::default() {
                        let xi0 = self.grid.frequency(i0);
                        values[flat] = c * multiplier([xi0, xi1, xi2], xi0 * xi0 + partial);
                    }
                    flat += 1;
                }
            }
        }
        Ok(Field {
            grid: self.grid,
            repr: Representation::Frequency,
            values,
        })
    }

    /// The coefficient at `ξ = 0` (frequency representation).
    pub fn zero_mode(&self) -> Result<Complex64> {
        self.expect_representation(Representation::Frequency)?;
        let m = self.grid.samples;
        let half = m / 2;
        let flat = if self.grid.n == 3 {
            half + m * (half + m * half)
        } else {
            half + m * half
        };
        Ok(self.values[flat])
    }
}

/// Per-axis unnormalized DFT passes (without the lattice-offset parity fix).
fn transform(grid: &Grid, values: &mut [Complex64], inverse: bool) {
    let m = grid.samples;
    apply_parity(grid, values);
    let plan = fft::Plan::new(m);
    let run = |plan: &fft::Plan, buf: &mut [Complex64]| {
        if inverse {
            plan.inverse(buf);
        } else {
            plan.forward(buf);
        }
    };
    // Axis 0: contiguous lines.
    for line in values.chunks_exact_mut(m) {
        if !all_zero(line) {
            run(&plan, line);
        }
    }
    if grid.n == 2 {
        // Axis 1 via transpose so lines stay contiguous.
        let mut scratch = vec![Complex64::default(); values.len()];
        fft::transpose_square(values, &mut scratch, m);
        for line in scratch.chunks_exact_mut(m) {
            if !all_zero(line) {
                run(&plan, line);
            }
        }
        fft::transpose_square(&scratch, values, m);
    } else {
        // Axes 1 and 2 via strided gather; 3-D grids stay small.
        let mut line = vec![Complex64::default(); m];
        for axis in 1..3 {
            let stride = if axis == 1 { m } else { m * m };
            for o in 0..m {
                for i in 0..m {
                    let base = if axis == 1 { o * m * m + i } else { o * m + i };
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = values[base + k * stride];
                    }
                    if all_zero(&line) {
                        continue;
                    }
                    run(&plan, &mut line);
                    for (k, &v) in line.iter().enumerate() {
                        values[base + k * stride] = v;
                    }
                }
            }
        }
    }
}

fn all_zero(line: &[Complex64]) -> bool {
    line.iter().all(|c| *c == Complex64::default())
}

fn apply_parity(grid: &Grid, values: &mut [Complex64]) {
    apply_parity_and_scale(grid, values, 1.0);
}

/// Multiplies by `(-1)^{i0+i1+i2}` and a global scale. Together with the
/// plain DFT this realizes the lattice offset `j - M/2` on both sides; the
/// residual constant `e^{-iπM/2}` is `+1` because `M/2` is even.
fn apply_parity_and_scale(grid: &Grid, values: &mut [Complex64], scale: f64) {
    let m = grid.samples;
    let planes = if grid.n == 3 { m } else { 1 };
    let mut flat = 0;
    for i2 in 0..planes {
        for i1 in 0..m {
            let row_parity = (i1 + i2) & 1;
            for i0 in 0..m {
                let sign = if (i0 + row_parity) & 1 == 0 { scale } else { -scale };
                values[flat] *= sign;
                flat += 1;
            }
        }
    }
}
