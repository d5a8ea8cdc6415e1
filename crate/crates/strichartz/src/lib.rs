//! Spectral toolkit for constant-coefficient dispersive equations on periodic
//! boxes.
//!
//! The crate provides the building blocks needed to study space-time
//! integrability of solutions to `i u_t + (-Δ)^{a/2} u = 0` numerically:
//!
//! * [`grid`] — periodic Cartesian grids, complex fields, and a unitary
//!   discrete Fourier pair with trigonometric point evaluation;
//! * [`propagator`] — the frequency multipliers `e^{-it|ξ|^a}`, fractional
//!   derivatives `|ξ|^s`, and smooth Littlewood–Paley projections;
//! * [`angular`] — polar resampling, spherical-harmonic analysis, the
//!   `(1-Δ_ω)^{α/2}` multiplier, and the rotation fields `x_i ∂_j − x_j ∂_i`;
//! * [`norms`] — spatial `L^p`, mixed `L^q_t L^p_x`, spherically averaged,
//!   and angular Sobolev norms;
//! * [`admissibility`] — exact rational classification of `(n, a, q, p, α)`
//!   against the classical and extended Strichartz ranges;
//! * [`knapp`] — anisotropic wave-packet data, stationary-phase region
//!   checks, dyadic `ε`-sweeps, and power-law exponent fits.
//!
//! Everything here is pure computation over immutable inputs; the companion
//! `strichartz-cli` crate carries file formats and the command-line driver.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

use alloc::string::String;

pub mod admissibility;
pub mod angular;
pub mod bump;
pub mod fit;
pub mod grid;
pub mod knapp;
pub mod norms;
pub mod propagator;
pub mod quadrature;
pub mod rational;
pub mod rng;

pub(crate) mod fft;
pub(crate) mod harmonics;
pub(crate) mod math;

pub use grid::{DispersionParams, Field, Grid, Point, Representation};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A field was handed to an operation in the wrong representation.
    #[error("expected field in {expected} representation, found {found}")]
    Representation {
        expected: Representation,
        found: Representation,
    },
    /// An evaluation point (or quadrature node) left the periodic box.
    #[error("point [{0}, {1}, {2}] lies outside the periodic box")]
    PointOutsideBox(f64, f64, f64),
    /// A scalar argument violated its contract.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The grid cannot resolve the requested scale, or a sweep cannot be fit.
    #[error("under-resolved: {0}")]
    Resolution(String),
    /// Negative-order fractional derivative applied to a field with mean.
    #[error("singular multiplier: |ξ|^s with s < 0 needs a vanishing zero mode")]
    SingularMultiplier,
    /// An integrability pair fell outside the range required by the caller.
    #[error("pair not admissible: {0}")]
    NotAdmissible(String),
}

pub type Result<T> = core::result::Result<T, Error>;
