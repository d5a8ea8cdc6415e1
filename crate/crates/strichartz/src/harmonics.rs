//! Orthonormal angular bases: circular harmonics `e^{imθ}/√(2π)` on `𝕊¹` and
//! fully normalized spherical harmonics `Y_ℓ^m` on `𝕊²`, with quadrature
//! analysis/synthesis per radial shell.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::fft;
use crate::grid::Point;
use crate::math;

pub(crate) enum AngularBasis {
    Circle {
        n_theta: usize,
        max_degree: usize,
        plan: fft::Plan,
    },
    Sphere {
        n_lon: usize,
        /// Gauss–Legendre nodes in `x = cos θ`, ascending.
        lat_nodes: Vec<f64>,
        lat_weights: Vec<f64>,
        max_degree: usize,
    },
}

impl AngularBasis {
    pub fn circle(max_degree: usize) -> Self {
        let n_theta = (2 * max_degree + 2).next_power_of_two().max(8);
        AngularBasis::Circle {
            n_theta,
            max_degree,
            plan: fft::Plan::new(n_theta),
        }
    }

    pub fn sphere(max_degree: usize) -> Self {
        let (lat_nodes, lat_weights) = crate::quadrature::gauss_legendre(max_degree + 1);
        AngularBasis::Sphere {
            n_lon: 2 * max_degree + 2,
            lat_nodes,
            lat_weights,
            max_degree,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            AngularBasis::Circle { .. } => 2,
            AngularBasis::Sphere { .. } => 3,
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            AngularBasis::Circle { max_degree, .. } => *max_degree,
            AngularBasis::Sphere { max_degree, .. } => *max_degree,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            AngularBasis::Circle { n_theta, .. } => *n_theta,
            AngularBasis::Sphere {
                n_lon, lat_nodes, ..
            } => n_lon * lat_nodes.len(),
        }
    }

    pub fn harmonic_count(&self) -> usize {
        match self {
            AngularBasis::Circle { max_degree, .. } => 2 * max_degree + 1,
            AngularBasis::Sphere { max_degree, .. } => (max_degree + 1) * (max_degree + 1),
        }
    }

    /// Eigenvalue of `-Δ_ω` for harmonic index `k`.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        match self {
            AngularBasis::Circle { max_degree, .. } => {
                let m = k as i64 - *max_degree as i64;
                (m * m) as f64
            }
            AngularBasis::Sphere { .. } => {
                let l = self.degree(k) as f64;
                l * (l + 1.0)
            }
        }
    }

    /// Angular degree (`|m|` on the circle, `ℓ` on the sphere).
    pub fn degree(&self, k: usize) -> usize {
        match self {
            AngularBasis::Circle { max_degree, .. } => {
                (k as i64 - *max_degree as i64).unsigned_abs() as usize
            }
            AngularBasis::Sphere { .. } => math::sqrt(k as f64) as usize,
        }
    }

    /// Index of the constant harmonic.
    #[cfg(test)]
    pub fn constant_index(&self) -> usize {
        match self {
            AngularBasis::Circle { max_degree, .. } => *max_degree,
            AngularBasis::Sphere { .. } => 0,
        }
    }

    pub fn surface_area(&self) -> f64 {
        match self {
            AngularBasis::Circle { .. } => math::TAU,
            AngularBasis::Sphere { .. } => 2.0 * math::TAU,
        }
    }

    /// Unit vectors and quadrature weights; weights sum to the surface area.
    pub fn nodes(&self) -> (Vec<Point>, Vec<f64>) {
        match self {
            AngularBasis::Circle { n_theta, .. } => {
                let w = math::TAU / *n_theta as f64;
                let mut pts = Vec::with_capacity(*n_theta);
                for k in 0..*n_theta {
                    let (s, c) = math::sincos(math::TAU * k as f64 / *n_theta as f64);
                    pts.push([c, s, 0.0]);
                }
                (pts, vec![w; *n_theta])
            }
            AngularBasis::Sphere {
                n_lon,
                lat_nodes,
                lat_weights,
                ..
            } => {
                let mut pts = Vec::with_capacity(lat_nodes.len() * n_lon);
                let mut ws = Vec::with_capacity(lat_nodes.len() * n_lon);
                let w_lon = math::TAU / *n_lon as f64;
                for (x, wl) in lat_nodes.iter().zip(lat_weights) {
                    let sin_theta = math::sqrt((1.0 - x) * (1.0 + x));
                    for j in 0..*n_lon {
                        let (s, c) = math::sincos(math::TAU * j as f64 / *n_lon as f64);
                        pts.push([sin_theta * c, sin_theta * s, *x]);
                        ws.push(wl * w_lon);
                    }
                }
                (pts, ws)
            }
        }
    }

    /// Harmonic coefficients of shell samples (node ordering of [`Self::nodes`]).
    pub fn analyze(&self, values: &[Complex64], coeffs: &mut [Complex64]) {
        debug_assert_eq!(values.len(), self.node_count());
        debug_assert_eq!(coeffs.len(), self.harmonic_count());
        match self {
            AngularBasis::Circle {
                n_theta,
                max_degree,
                plan,
            } => {
                let mut buf = values.to_vec();
                plan.forward(&mut buf);
                let scale = math::sqrt(math::TAU) / *n_theta as f64;
                let k_max = *max_degree as i64;
                for (idx, slot) in coeffs.iter_mut().enumerate() {
                    let m = idx as i64 - k_max;
                    let bin = m.rem_euclid(*n_theta as i64) as usize;
                    *slot = buf[bin] * scale;
                }
            }
            AngularBasis::Sphere {
                n_lon,
                lat_nodes,
                lat_weights,
                max_degree,
            } => {
                let k_max = *max_degree;
                let n_lat = lat_nodes.len();
                // longitude transform: g[i][m + K]
                let m_count = 2 * k_max + 1;
                let mut g = vec![Complex64::default(); n_lat * m_count];
                let w_lon = math::TAU / *n_lon as f64;
                for i in 0..n_lat {
                    let row = &values[i * n_lon..(i + 1) * n_lon];
                    for mi in 0..m_count {
                        let m = mi as i64 - k_max as i64;
                        let mut acc = Complex64::default();
                        for (j, &v) in row.iter().enumerate() {
                            let phase = -math::TAU * (m * j as i64) as f64 / *n_lon as f64;
                            acc += v * math::cis(phase);
                        }
                        g[i * m_count + mi] = acc * w_lon;
                    }
                }
                // latitude projection against normalized Legendre functions
                for c in coeffs.iter_mut() {
                    *c = Complex64::default();
                }
                for i in 0..n_lat {
                    let x = lat_nodes[i];
                    let w = lat_weights[i];
                    for m_abs in 0..=k_max {
                        let mut table = LegendreColumn::start(m_abs, x);
                        for l in m_abs..=k_max {
                            let p = table.next_value(l);
                            for &sign in &[1i64, -1] {
                                let m = sign * m_abs as i64;
                                if m_abs == 0 && sign == -1 {
                                    continue;
                                }
                                let parity = if m < 0 && m_abs % 2 == 1 { -1.0 } else { 1.0 };
                                let mi = (m + k_max as i64) as usize;
                                let k_idx = l * l + (m + l as i64) as usize;
                                coeffs[k_idx] += g[i * m_count + mi] * (w * p * parity);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Shell samples from harmonic coefficients (adjoint of [`Self::analyze`]).
    pub fn synthesize(&self, coeffs: &[Complex64], values: &mut [Complex64]) {
        debug_assert_eq!(values.len(), self.node_count());
        debug_assert_eq!(coeffs.len(), self.harmonic_count());
        match self {
            AngularBasis::Circle {
                n_theta,
                max_degree,
                plan,
            } => {
                let mut buf = vec![Complex64::default(); *n_theta];
                let k_max = *max_degree as i64;
                let scale = 1.0 / math::sqrt(math::TAU);
                for (idx, &c) in coeffs.iter().enumerate() {
                    let m = idx as i64 - k_max;
                    let bin = m.rem_euclid(*n_theta as i64) as usize;
                    buf[bin] += c * scale;
                }
                plan.inverse(&mut buf);
                values.copy_from_slice(&buf);
            }
            AngularBasis::Sphere {
                n_lon,
                lat_nodes,
                max_degree,
                ..
            } => {
                let k_max = *max_degree;
                let n_lat = lat_nodes.len();
                let m_count = 2 * k_max + 1;
                let mut g = vec![Complex64::default(); n_lat * m_count];
                for (i, &x) in lat_nodes.iter().enumerate() {
                    for m_abs in 0..=k_max {
                        let mut table = LegendreColumn::start(m_abs, x);
                        for l in m_abs..=k_max {
                            let p = table.next_value(l);
                            for &sign in &[1i64, -1] {
                                let m = sign * m_abs as i64;
                                if m_abs == 0 && sign == -1 {
                                    continue;
                                }
                                let parity = if m < 0 && m_abs % 2 == 1 { -1.0 } else { 1.0 };
                                let mi = (m + k_max as i64) as usize;
                                let k_idx = l * l + (m + l as i64) as usize;
                                g[i * m_count + mi] += coeffs[k_idx] * (p * parity);
                            }
                        }
                    }
                }
                for i in 0..n_lat {
                    for j in 0..*n_lon {
                        let mut acc = Complex64::default();
                        for mi in 0..m_count {
                            let m = mi as i64 - k_max as i64;
                            let phase = math::TAU * (m * j as i64) as f64 / *n_lon as f64;
                            acc += g[i * m_count + mi] * math::cis(phase);
                        }
                        values[i * n_lon + j] = acc;
                    }
                }
            }
        }
    }
}

/// Upward `ℓ`-recurrence for the orthonormalized associated Legendre
/// functions `P̄_ℓ^m` (normalized so `Y_ℓ^m = P̄_ℓ^m(cos θ) e^{imφ}` has unit
/// `L²(𝕊²)` norm), including the Condon–Shortley phase.
struct LegendreColumn {
    m: usize,
    x: f64,
    prev: f64,
    cur: f64,
    l_next: usize,
}

impl LegendreColumn {
    fn start(m: usize, x: f64) -> Self {
        // P̄_m^m = (-1)^m sqrt((2m+1)!!/(2m)!! / 4π) (1-x²)^{m/2}
        let sin_theta = math::sqrt((1.0 - x) * (1.0 + x));
        let mut p_mm = math::sqrt(1.0 / (2.0 * math::TAU));
        for k in 1..=m {
            p_mm *= -math::sqrt((2.0 * k as f64 + 1.0) / (2.0 * k as f64)) * sin_theta;
        }
        LegendreColumn {
            m,
            x,
            prev: 0.0,
            cur: p_mm,
            l_next: m,
        }
    }

    /// Value of `P̄_ℓ^m`; successive calls must use `ℓ = m, m+1, …`.
    fn next_value(&mut self, l: usize) -> f64 {
        debug_assert_eq!(l, self.l_next);
        let value = self.cur;
        let lf = (l + 1) as f64;
        let mf = self.m as f64;
        // advance to ℓ + 1
        let next = if l == self.m {
            math::sqrt(2.0 * mf + 3.0) * self.x * self.cur
        } else {
            let a = math::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
            let b = math::sqrt(((lf - 1.0) * (lf - 1.0) - mf * mf)
                / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0));
            a * (self.x * self.cur - b * self.prev)
        };
        self.prev = self.cur;
        self.cur = next;
        self.l_next = l + 1;
        value
    }
}
