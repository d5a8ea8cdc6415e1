//! Exact classification of integrability pairs `(q, p)` against the
//! classical and extended (angularly regularized) admissible ranges.
//!
//! All range decisions compare rationals, so boundary membership is exact.
//! Pairs are stored through their reciprocals (`1/∞ = 0`), which also makes
//! the classification manifestly scale-free in `(1/q, 1/p)`.
//!
//! For the Schrödinger-like family `φ(ρ) = ρ^a`, `a > 1`:
//!
//! * classical range: `1/q ≤ (n/2)(1/2 − 1/p)`, `q, p ≥ 2`, `p ≠ ∞`;
//! * extended range: `(n/2)(1/2 − 1/p) < 1/q ≤ ((2n−1)/2)(1/2 − 1/p)` with
//!   the endpoint exclusions `(n,q,p) = (2,2,∞)` and
//!   `(q,p) = (2,(4n−2)/(2n−3))`;
//! * necessary angular regularity: `α ≥ 2/q + n/p − n/2`;
//! * sufficient: `α > ((2n−1)/(2n−2))·(2/q + n/p − n/2)`, and for general
//!   dispersion relations `α > ((5n−1)/(5n−5))·(2/q + n/p − n/2)`;
//! * the sharp value `α = 2/q + n/p − n/2` is attained for `n > 2`, `q ≠ 2`.
//!
//! The wave variant (`a = 1`) replaces `n` by `n − 1` in the range slopes and
//! keeps `p ≠ ∞`; its endpoint behaviour on the range boundaries is not
//! asserted, only flagged.

use alloc::format;
use alloc::string::String;
use core::fmt;

use crate::rational::Ratio;
use crate::{Error, Result};

/// An integrability pair stored as exact reciprocals; `1/q = 0` encodes
/// `q = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegrabilityPair {
    inv_q: Ratio,
    inv_p: Ratio,
    /// Set when built from floating-point input; boundary hits are then
    /// reported with a warning instead of being trusted as exact.
    approximate: bool,
}

impl IntegrabilityPair {
    /// From exact exponents (`q, p ≥ 2`).
    pub fn new(q: Ratio, p: Ratio) -> Result<Self> {
        if q < Ratio::integer(2) || p < Ratio::integer(2) {
            return Err(Error::Parameter(format!(
                "integrability pair needs q, p ≥ 2, got q = {q}, p = {p}"
            )));
        }
        Ok(Self {
            inv_q: q.recip(),
            inv_p: p.recip(),
            approximate: false,
        })
    }

    /// From exact reciprocals in `[0, 1/2]` (`0` encodes `∞`).
    pub fn from_inverses(inv_q: Ratio, inv_p: Ratio) -> Result<Self> {
        let half = Ratio::new(1, 2);
        if inv_q < Ratio::ZERO || inv_q > half || inv_p < Ratio::ZERO || inv_p > half {
            return Err(Error::Parameter(format!(
                "reciprocals must lie in [0, 1/2], got 1/q = {inv_q}, 1/p = {inv_p}"
            )));
        }
        Ok(Self {
            inv_q,
            inv_p,
            approximate: false,
        })
    }

    /// From floating-point exponents. Values within `1e-12` of a small
    /// rational are snapped to it and the pair is marked approximate, so
    /// boundary membership is reported with a warning flag.
    pub fn from_reals(q: f64, p: f64) -> Result<Self> {
        let conv = |v: f64, name: &str| -> Result<Ratio> {
            if v == f64::INFINITY {
                return Ok(Ratio::ZERO);
            }
            if !v.is_finite() || v < 2.0 {
                return Err(Error::Parameter(format!(
                    "exponent {name} = {v} must be ≥ 2 or ∞"
                )));
            }
            let inv = 1.0 / v;
            Ratio::approximate(inv, 1e-12, 1 << 26).ok_or_else(|| {
                Error::Parameter(format!("cannot rationalize 1/{name} = {inv}"))
            })
        };
        let mut pair = Self::from_inverses(conv(q, "q")?, conv(p, "p")?)?;
        pair.approximate = true;
        Ok(pair)
    }

    pub fn inv_q(&self) -> Ratio {
        self.inv_q
    }

    pub fn inv_p(&self) -> Ratio {
        self.inv_p
    }

    pub fn q_is_infinite(&self) -> bool {
        self.inv_q.is_zero()
    }

    pub fn p_is_infinite(&self) -> bool {
        self.inv_p.is_zero()
    }

    pub fn is_approximate(&self) -> bool {
        self.approximate
    }
}

impl fmt::Display for IntegrabilityPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |inv: Ratio| -> String {
            if inv.is_zero() {
                String::from("inf")
            } else {
                format!("{}", inv.recip())
            }
        };
        write!(f, "(q, p) = ({}, {})", show(self.inv_q), show(self.inv_p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Classical,
    Extended,
    Outside,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Classical => write!(f, "classical"),
            Region::Extended => write!(f, "extended"),
            Region::Outside => write!(f, "outside"),
        }
    }
}

/// Endpoint cases the theorems exclude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedEndpoint {
    /// `(n, q, p) = (2, 2, ∞)`.
    TwoTwoInfinity,
    /// `(q, p) = (2, (4n−2)/(2n−3))`.
    DualKeelTao,
    /// `p = ∞` (excluded from the classical and wave statements).
    PInfinity,
}

impl fmt::Display for ExcludedEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExcludedEndpoint::TwoTwoInfinity => write!(f, "(n,q,p) = (2,2,inf)"),
            ExcludedEndpoint::DualKeelTao => write!(f, "(q,p) = (2,(4n-2)/(2n-3))"),
            ExcludedEndpoint::PInfinity => write!(f, "p = inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub region: Region,
    /// The pair sits exactly on a defining boundary line.
    pub on_boundary: bool,
    /// Boundary hit reached through floating-point input; treat with care.
    pub boundary_warning: bool,
    pub excluded_endpoint: Option<ExcludedEndpoint>,
    /// Scaling regularity `s = n(1/2 − 1/p) − a/q`.
    pub s: Ratio,
    /// Necessary angular regularity `2/q + n/p − n/2`.
    pub alpha_sharp: Ratio,
    /// Sufficient threshold `((2n−1)/(2n−2))·alpha_sharp` for `ρ^a`.
    pub alpha_sufficient_cho_lee: Ratio,
    /// Sufficient threshold `((5n−1)/(5n−5))·alpha_sharp` for general
    /// dispersion relations.
    pub alpha_sufficient_general: Ratio,
    /// Whether `α = alpha_sharp` itself is attained (`n > 2` and `q ≠ 2`
    /// inside the extended range).
    pub sharp_alpha_attained: bool,
    /// Wave-range boundary whose endpoint behaviour is not asserted.
    pub unverified_endpoint: bool,
}

/// Scaling exponent `s = n(1/2 − 1/p) − a/q`.
pub fn scaling_exponent(pair: &IntegrabilityPair, n: u32, a: Ratio) -> Ratio {
    let half = Ratio::new(1, 2);
    Ratio::integer(n as i64) * (half - pair.inv_p()) - a * pair.inv_q()
}

pub fn scaling_exponent_f64(pair: &IntegrabilityPair, n: u32, a: f64) -> f64 {
    let n = n as f64;
    n * (0.5 - pair.inv_p().to_f64()) - a * pair.inv_q().to_f64()
}

fn validate_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("dimension n = {n} must be ≥ 2")));
    }
    Ok(())
}

fn alpha_thresholds(pair: &IntegrabilityPair, n: u32) -> (Ratio, Ratio, Ratio) {
    let n_r = Ratio::integer(n as i64);
    let half = Ratio::new(1, 2);
    let sharp = Ratio::integer(2) * pair.inv_q() + n_r * pair.inv_p() - n_r * half;
    let cho_lee = Ratio::new(2 * n as i64 - 1, 2 * n as i64 - 2) * sharp;
    let general = Ratio::new(5 * n as i64 - 1, 5 * n as i64 - 5) * sharp;
    (sharp, cho_lee, general)
}

/// Classification for the Schrödinger-like family `φ(ρ) = ρ^a`, `a > 1`.
pub fn classify_schrodinger(
    pair: &IntegrabilityPair,
    n: u32,
    a: Ratio,
) -> Result<Classification> {
    validate_dimension(n)?;
    let half = Ratio::new(1, 2);
    let gap = half - pair.inv_p();
    let classical_line = Ratio::new(n as i64, 2) * gap;
    let extended_line = Ratio::new(2 * n as i64 - 1, 2) * gap;

    let mut region = if pair.inv_q() <= classical_line && !pair.p_is_infinite() {
        Region::Classical
    } else if classical_line < pair.inv_q() && pair.inv_q() <= extended_line {
        Region::Extended
    } else {
        Region::Outside
    };

    let mut excluded = None;
    if n == 2 && pair.inv_q() == half && pair.p_is_infinite() {
        excluded = Some(ExcludedEndpoint::TwoTwoInfinity);
        region = Region::Outside;
    } else if pair.inv_q() == half
        && pair.inv_p() == Ratio::new(2 * n as i64 - 3, 4 * n as i64 - 2)
    {
        // the dual Keel–Tao point: p = (4n−2)/(2n−3), i.e. 6 for n = 2,
        // 10/3 for n = 3
        excluded = Some(ExcludedEndpoint::DualKeelTao);
    }

    let on_boundary = pair.inv_q() == classical_line || pair.inv_q() == extended_line;
    let (alpha_sharp, cho_lee, general) = alpha_thresholds(pair, n);

    // α = alpha_sharp attained for n > 2, q ≠ 2 (strict range for n = 2)
    let in_sharp_range = if n == 2 {
        classical_line < pair.inv_q() && pair.inv_q() < extended_line
    } else {
        classical_line < pair.inv_q()
            && pair.inv_q() <= extended_line
            && excluded.is_none()
    };
    let sharp_alpha_attained = n > 2 && pair.inv_q() != half && in_sharp_range;

    Ok(Classification {
        region,
        on_boundary,
        boundary_warning: on_boundary && pair.is_approximate(),
        excluded_endpoint: excluded,
        s: scaling_exponent(pair, n, a),
        alpha_sharp,
        alpha_sufficient_cho_lee: cho_lee,
        alpha_sufficient_general: general,
        sharp_alpha_attained,
        unverified_endpoint: false,
    })
}

/// Classification for the wave variant `a = 1`: classical range
/// `1/q ≤ ((n−1)/2)(1/2 − 1/p)`, extended range
/// `((n−1)/2)(1/2 − 1/p) < 1/q < (n−1)(1/2 − 1/p)`, both with `p ≠ ∞`.
pub fn classify_wave(pair: &IntegrabilityPair, n: u32) -> Result<Classification> {
    validate_dimension(n)?;
    let half = Ratio::new(1, 2);
    let gap = half - pair.inv_p();
    let classical_line = Ratio::new(n as i64 - 1, 2) * gap;
    let extended_line = Ratio::integer(n as i64 - 1) * gap;

    let mut excluded = None;
    let region = if pair.p_is_infinite() {
        excluded = Some(ExcludedEndpoint::PInfinity);
        Region::Outside
    } else if pair.inv_q() <= classical_line {
        Region::Classical
    } else if pair.inv_q() < extended_line {
        Region::Extended
    } else {
        Region::Outside
    };

    let on_boundary = pair.inv_q() == classical_line || pair.inv_q() == extended_line;
    let (alpha_sharp, cho_lee, general) = alpha_thresholds(pair, n);
    Ok(Classification {
        region,
        on_boundary,
        boundary_warning: on_boundary && pair.is_approximate(),
        excluded_endpoint: excluded,
        s: scaling_exponent(pair, n, Ratio::ONE),
        alpha_sharp,
        alpha_sufficient_cho_lee: cho_lee,
        alpha_sufficient_general: general,
        sharp_alpha_attained: false,
        unverified_endpoint: on_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(q: i64, p: i64) -> IntegrabilityPair {
        IntegrabilityPair::new(Ratio::integer(q), Ratio::integer(p)).unwrap()
    }

    fn pair_r(q: Ratio, p: Ratio) -> IntegrabilityPair {
        IntegrabilityPair::new(q, p).unwrap()
    }

    fn pair_p_inf(q: i64) -> IntegrabilityPair {
        IntegrabilityPair::from_inverses(Ratio::new(1, q), Ratio::ZERO).unwrap()
    }

    #[test]
    fn rejects_small_exponents() {
        assert!(IntegrabilityPair::new(Ratio::integer(1), Ratio::integer(4)).is_err());
        assert!(IntegrabilityPair::from_reals(2.0, 1.5).is_err());
    }

    #[test]
    fn scaling_exponent_examples() {
        let a2 = Ratio::integer(2);
        // n = 2, (4,4) → 0
        assert_eq!(scaling_exponent(&pair(4, 4), 2, a2), Ratio::ZERO);
        // (∞, 2) → 0
        let qp = IntegrabilityPair::from_inverses(Ratio::ZERO, Ratio::new(1, 2)).unwrap();
        assert_eq!(scaling_exponent(&qp, 3, a2), Ratio::ZERO);
        // n = 3, (2,4) → -1/4
        assert_eq!(scaling_exponent(&pair(2, 4), 3, a2), Ratio::new(-1, 4));
    }

    #[test]
    fn classical_boundary_case() {
        let c = classify_schrodinger(&pair(4, 4), 2, Ratio::integer(2)).unwrap();
        assert_eq!(c.region, Region::Classical);
        assert!(c.on_boundary);
        assert_eq!(c.alpha_sharp, Ratio::ZERO);
        assert!(c.excluded_endpoint.is_none());
    }

    #[test]
    fn two_two_infinity_is_excluded() {
        let c = classify_schrodinger(&pair_p_inf(2), 2, Ratio::integer(2)).unwrap();
        assert_eq!(c.excluded_endpoint, Some(ExcludedEndpoint::TwoTwoInfinity));
        // not excluded in higher dimension: (3, 2, ∞) is simply outside
        let c3 = classify_schrodinger(&pair_p_inf(2), 3, Ratio::integer(2)).unwrap();
        assert_eq!(c3.excluded_endpoint, None);
        assert_eq!(c3.region, Region::Outside);
    }

    #[test]
    fn dual_keel_tao_exclusion() {
        // n = 3: (q, p) = (2, 10/3)
        let c = classify_schrodinger(
            &pair_r(Ratio::integer(2), Ratio::new(10, 3)),
            3,
            Ratio::integer(2),
        )
        .unwrap();
        assert_eq!(c.excluded_endpoint, Some(ExcludedEndpoint::DualKeelTao));
        assert_eq!(c.region, Region::Extended);
        assert!(c.on_boundary);
        // n = 2: (q, p) = (2, 6)
        let c2 = classify_schrodinger(&pair(2, 6), 2, Ratio::integer(2)).unwrap();
        assert_eq!(c2.excluded_endpoint, Some(ExcludedEndpoint::DualKeelTao));
    }

    #[test]
    fn extended_example_n3() {
        let c = classify_schrodinger(&pair(2, 4), 3, Ratio::integer(2)).unwrap();
        assert_eq!(c.region, Region::Extended);
        assert_eq!(c.alpha_sharp, Ratio::new(1, 4));
        assert_eq!(c.s, Ratio::new(-1, 4));
        // q = 2 ⇒ the endpoint α is not attained
        assert!(!c.sharp_alpha_attained);
        // (4,4) at n = 3 sits inside classical: line = (3/2)(1/4) = 3/8 ≥ 1/4
        let c2 = classify_schrodinger(&pair(4, 4), 3, Ratio::integer(2)).unwrap();
        assert_eq!(c2.region, Region::Classical);
        // (q, p) = (5, 5/2): lines are 3/20 < 1/5 ≤ 1/4 ⇒ extended with q ≠ 2
        let c3 = classify_schrodinger(
            &pair_r(Ratio::integer(5), Ratio::new(5, 2)),
            3,
            Ratio::integer(2),
        )
        .unwrap();
        assert_eq!(c3.region, Region::Extended);
        assert!(c3.sharp_alpha_attained);
    }

    #[test]
    fn thresholds_scale_alpha_sharp() {
        let c = classify_schrodinger(&pair(2, 8), 2, Ratio::integer(2)).unwrap();
        assert_eq!(c.alpha_sharp, Ratio::new(1, 4));
        assert_eq!(c.alpha_sufficient_cho_lee, Ratio::new(3, 8));
        assert_eq!(c.alpha_sufficient_general, Ratio::new(9, 20));
        assert_eq!(c.region, Region::Extended);
    }

    #[test]
    fn wave_examples() {
        // n = 3, (4,4): classical boundary
        let c = classify_wave(&pair(4, 4), 3).unwrap();
        assert_eq!(c.region, Region::Classical);
        assert!(c.on_boundary && c.unverified_endpoint);
        // n = 2, (2,∞): p = ∞ excluded
        let c2 = classify_wave(&pair_p_inf(2), 2).unwrap();
        assert_eq!(c2.excluded_endpoint, Some(ExcludedEndpoint::PInfinity));
        // n = 3, (2,4): upper line is strict → outside
        let c3 = classify_wave(&pair(2, 4), 3).unwrap();
        assert_eq!(c3.region, Region::Outside);
    }

    #[test]
    fn boundary_warning_only_for_float_input() {
        let exact = classify_schrodinger(&pair(4, 4), 2, Ratio::integer(2)).unwrap();
        assert!(exact.on_boundary && !exact.boundary_warning);
        let float_pair = IntegrabilityPair::from_reals(4.0, 4.0).unwrap();
        let approx = classify_schrodinger(&float_pair, 2, Ratio::integer(2)).unwrap();
        assert!(approx.on_boundary && approx.boundary_warning);
    }
}
