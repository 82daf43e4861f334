//! Circle-valued phases `e^{2πiq}` stored by their angle `q ∈ [0,1)`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::rational::Ratio;
use num::{Complex, Integer, One, Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i64>;

/// Tolerance used when comparing float phases on the circle.
pub const FLOAT_PHASE_TOL: f64 = 1e-9;

/// An element of the circle group written additively: `Phase(q)` denotes
/// `e^{2πiq}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Phase {
    Exact(Rational),
    Float(f64),
}

impl Phase {
    pub fn identity() -> Self {
        Phase::Exact(Rational::zero())
    }

    pub fn exact(q: Rational) -> Self {
        Phase::Exact(reduce_mod_one(q))
    }

    pub fn float(x: f64) -> Self {
        let r = x.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        Phase::Float(if r >= 1.0 { 0.0 } else { r })
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Phase::exact(Rational::new(num, den))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Phase::Exact(_))
    }

    pub fn as_exact(&self) -> Option<Rational> {
        match self {
            Phase::Exact(q) => Some(*q),
            Phase::Float(_) => None,
        }
    }

    pub fn angle(&self) -> f64 {
        match self {
            Phase::Exact(q) => q.to_f64().unwrap_or(0.0),
            Phase::Float(x) => *x,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Phase::Exact(q) => q.is_zero(),
            Phase::Float(x) => circle_distance(*x, 0.0) < FLOAT_PHASE_TOL,
        }
    }

    /// Complex conjugate, i.e. the group inverse.
    pub fn conj(&self) -> Self {
        -*self
    }

    pub fn scale(&self, n: i64) -> Self {
        match self {
            Phase::Exact(q) => Phase::exact(*q * n),
            Phase::Float(x) => Phase::float(*x * n as f64),
        }
    }

    pub fn scale_rational(&self, r: Rational) -> Self {
        match self {
            Phase::Exact(q) => Phase::exact(*q * r),
            Phase::Float(x) => Phase::float(*x * r.to_f64().unwrap_or(0.0)),
        }
    }

    /// `e^{2πiq}`, exact at quarter turns.
    pub fn to_complex(&self) -> Complex<f64> {
        if let Phase::Exact(q) = self {
            if (*q * 4).is_integer() {
                return match (*q * 4).to_integer() {
                    0 => Complex::new(1.0, 0.0),
                    1 => Complex::new(0.0, 1.0),
                    2 => Complex::new(-1.0, 0.0),
                    _ => Complex::new(0.0, -1.0),
                };
            }
        }
        Complex::from_polar(1.0, std::f64::consts::TAU * self.angle())
    }

    /// Denominator of an exact phase; `None` for float phases.
    pub fn denominator(&self) -> Option<i64> {
        self.as_exact().map(|q| *q.denom())
    }

    /// Equality on the circle: exact when both sides are exact, otherwise
    /// within [`FLOAT_PHASE_TOL`].
    pub fn same_as(&self, other: &Phase) -> bool {
        match (self, other) {
            (Phase::Exact(a), Phase::Exact(b)) => a == b,
            _ => circle_distance(self.angle(), other.angle()) < FLOAT_PHASE_TOL,
        }
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::identity()
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        match (self, rhs) {
            (Phase::Exact(a), Phase::Exact(b)) => Phase::exact(a + b),
            (a, b) => Phase::float(a.angle() + b.angle()),
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        match self {
            Phase::Exact(q) => Phase::exact(-q),
            Phase::Float(x) => Phase::float(-x),
        }
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::identity(), |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Exact(q) => write!(f, "{}", format_rational(q)),
            Phase::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Representative of `q mod 1` in `[0,1)`.
pub fn reduce_mod_one(q: Rational) -> Rational {
    let fl = q.floor();
    q - fl
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.abs().lcm(&b.abs()).max(1)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// `|r|` for a rational, convenience for callers that do not import `Signed`.
pub fn abs_rational(r: &Rational) -> Rational {
    if r.is_negative() {
        -*r
    } else {
        *r
    }
}

pub fn rational_one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_phases_wrap() {
        let a = Phase::from_ratio(2, 3);
        let b = Phase::from_ratio(2, 3);
        assert_eq!(a + b, Phase::from_ratio(1, 3));
        assert_eq!(a.conj(), Phase::from_ratio(1, 3));
        assert!((a + a.conj()).is_identity());
        assert_eq!(Phase::from_ratio(-1, 4), Phase::from_ratio(3, 4));
    }

    #[test]
    fn float_phases_stay_in_unit_interval() {
        let p = Phase::float(-1e-18);
        assert!(p.angle() >= 0.0 && p.angle() < 1.0);
        assert!(Phase::float(0.3).same_as(&Phase::from_ratio(3, 10)));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/3"), Some(Rational::new(1, 3)));
        assert_eq!(parse_rational(" -2/4 "), Some(Rational::new(-1, 2)));
        assert_eq!(parse_rational("7"), Some(Rational::from_integer(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
