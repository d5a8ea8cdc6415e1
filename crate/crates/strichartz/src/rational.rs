//! Exact rational arithmetic for admissibility classification.
//!
//! Boundary membership in the exponent ranges is decided by equalities of
//! rationals, so classification must not go through floating point. The type
//! here is deliberately small: `i64` numerator and denominator, normalized,
//! panicking on overflow (range classification never leaves tiny numbers).

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: i64,
    den: i64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// `num / den`, normalized. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Ratio {
            num: sign * num / g,
            den: den.abs() / g,
        }
    }

    pub const fn integer(n: i64) -> Ratio {
        Ratio { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn recip(&self) -> Ratio {
        assert!(self.num != 0, "reciprocal of zero");
        Ratio::new(self.den, self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Nearest rational with small denominator (continued fractions).
    ///
    /// Returns `None` for non-finite input or when no denominator up to
    /// `max_den` approximates `x` within `tol`.
    pub fn approximate(x: f64, tol: f64, max_den: i64) -> Option<Ratio> {
        if !x.is_finite() {
            return None;
        }
        let negative = x < 0.0;
        let mut v = crate::math::abs(x);
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        for _ in 0..64 {
            let a = v as i64;
            let p2 = a.checked_mul(p1)?.checked_add(p0)?;
            let q2 = a.checked_mul(q1)?.checked_add(q0)?;
            if q2 > max_den {
                break;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            let approx = p1 as f64 / q1 as f64;
            if crate::math::abs(approx - crate::math::abs(x)) <= tol {
                let num = if negative { -p1 } else { p1 };
                return Some(Ratio::new(num, q1));
            }
            let frac = v - a as f64;
            if frac <= f64::EPSILON {
                break;
            }
            v = 1.0 / frac;
        }
        None
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        Ratio::new(
            self.num * rhs.den + rhs.num * self.den,
            self.den * rhs.den,
        )
    }
}

impl Sub for Ratio {
    type Output = Ratio;
    fn sub(self, rhs: Ratio) -> Ratio {
        self + (-rhs)
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        Ratio::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        assert!(rhs.num != 0, "division by zero rational");
        Ratio::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Parses `"3"`, `"-3/4"`, `"2.5"`, or `"inf"` (reciprocal-zero encoding is
/// the caller's concern) into an exact rational.
pub fn parse_ratio(text: &str) -> core::result::Result<Ratio, String> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {t:?}"))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {t:?}"))?;
        if d == 0 {
            return Err(format!("zero denominator in {t:?}"));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let i: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| format!("bad number {t:?}"))?
        };
        if frac.len() > 15 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return Err(format!("bad decimal {t:?}"));
        }
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| format!("bad decimal {t:?}"))?
        };
        let mag = i.unsigned_abs() as i64 * scale + f;
        return Ok(Ratio::new(if negative { -mag } else { mag }, scale));
    }
    t.parse::<i64>()
        .map(Ratio::integer)
        .map_err(|_| format!("bad number {t:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Ratio::new(2, 4), Ratio::new(1, 2));
        assert_eq!(Ratio::new(-2, -4), Ratio::new(1, 2));
        assert_eq!(Ratio::new(2, -4), Ratio::new(-1, 2));
    }

    #[test]
    fn arithmetic() {
        let a = Ratio::new(1, 2);
        let b = Ratio::new(1, 3);
        assert_eq!(a + b, Ratio::new(5, 6));
        assert_eq!(a - b, Ratio::new(1, 6));
        assert_eq!(a * b, Ratio::new(1, 6));
        assert_eq!(a / b, Ratio::new(3, 2));
        assert!(b < a);
    }

    #[test]
    fn approximates_dyadics_exactly() {
        let r = Ratio::approximate(0.375, 1e-12, 1 << 20).unwrap();
        assert_eq!(r, Ratio::new(3, 8));
        let r = Ratio::approximate(10.0 / 3.0, 1e-12, 1 << 20).unwrap();
        assert_eq!(r, Ratio::new(10, 3));
    }

    #[test]
    fn parses() {
        assert_eq!(parse_ratio("10/3").unwrap(), Ratio::new(10, 3));
        assert_eq!(parse_ratio("2.5").unwrap(), Ratio::new(5, 2));
        assert_eq!(parse_ratio("-0.25").unwrap(), Ratio::new(-1, 4));
        assert_eq!(parse_ratio("4").unwrap(), Ratio::integer(4));
        assert!(parse_ratio("x").is_err());
    }
}
