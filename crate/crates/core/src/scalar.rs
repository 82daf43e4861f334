//! Coefficient fields for algebra elements: exact cyclotomic or complex float.

use std::fmt::{Debug, Display};

use num::{BigInt, BigRational, Complex, ToPrimitive, Zero};

use crate::cyclo::Cyclo;
use crate::phase::{Phase, Rational};

/// Absolute size below which float coefficients are treated as zero.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;

pub type Complex64 = Complex<f64>;

pub trait Scalar: Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// `e^{2πiq}`. Exact scalars accept exact phases only.
    fn from_phase(p: &Phase) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Whether the scalar type does exact arithmetic.
    fn is_exact() -> bool;
    /// Parses an unsigned decimal literal such as `12` or `0.375`.
    fn from_decimal(s: &str) -> Option<Self>;
    /// Multiplicative inverse where the element parser supports division:
    /// nonzero rationals for exact scalars, any nonzero value for floats.
    fn try_inv(&self) -> Option<Self>;
    /// A string the element parser reads back to the same value.
    fn literal(&self) -> String;
}

/// Splits `m[.f][e±x]` into its digit string and the power of ten dividing it.
fn decimal_digits(s: &str) -> Option<(String, i32)> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !ok(int) || !ok(frac) {
        return None;
    }
    Some((format!("{int}{frac}"), frac.len() as i32 - exp))
}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Cyclo::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclo::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn conj(&self) -> Self {
        Cyclo::conj(self)
    }
    fn from_phase(p: &Phase) -> Option<Self> {
        Cyclo::from_phase(p)
    }
    fn from_rational(q: Rational) -> Self {
        Cyclo::from_rational(q)
    }
    fn to_complex(&self) -> Complex64 {
        Cyclo::to_complex(self)
    }
    fn is_exact() -> bool {
        true
    }
    fn from_decimal(s: &str) -> Option<Self> {
        let (digits, scale) = decimal_digits(s)?;
        let n: BigInt = digits.parse().ok()?;
        let ten = BigInt::from(10u8).pow(scale.unsigned_abs());
        let q = if scale >= 0 { BigRational::new(n, ten) } else { BigRational::from_integer(n * ten) };
        Some(Cyclo::from_big_rational(q))
    }
    fn try_inv(&self) -> Option<Self> {
        let q = self.as_rational()?;
        (!q.is_zero()).then(|| Cyclo::from_big_rational(q.recip()))
    }
    fn literal(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() < FLOAT_ZERO_TOL
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_phase(p: &Phase) -> Option<Self> {
        Some(p.to_complex())
    }
    fn from_rational(q: Rational) -> Self {
        Complex::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
    fn from_decimal(s: &str) -> Option<Self> {
        decimal_digits(s)?;
        s.parse::<f64>().ok().map(|x| Complex::new(x, 0.0))
    }
    fn try_inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| self.inv())
    }
    fn literal(&self) -> String {
        match (self.re == 0.0, self.im == 0.0) {
            (_, true) => format!("{:?}", self.re),
            (true, false) => format!("{:?}*i", self.im),
            (false, false) if self.im < 0.0 => format!("{:?} - {:?}*i", self.re, -self.im),
            (false, false) => format!("{:?} + {:?}*i", self.re, self.im),
        }
    }
}
