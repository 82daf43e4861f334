//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! An element is a polynomial in `ζ_N = e^{2πi/N}` of degree below `φ(N)`,
//! kept reduced modulo the cyclotomic polynomial `Φ_N`. Elements of
//! different conductors are combined in `ℚ(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, Complex, Integer, One, Signed, ToPrimitive, Zero};

use crate::phase::{Phase, Rational};

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first, computed as
/// `(xⁿ − 1) / ∏_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// Quotient of integer polynomials when the divisor is monic and divides.
fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|x| *x == 0));
    q
}

/// Euler's totient, the degree of `Φ_n`.
pub fn totient(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of `ℚ(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyclo {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Cyclo::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclo {
            conductor: 1,
            coeffs: vec![BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))],
        }
    }

    pub fn from_big_rational(q: BigRational) -> Self {
        Cyclo { conductor: 1, coeffs: vec![q] }
    }

    /// `ζ_n^j`.
    pub fn root_of_unity(j: i64, n: u64) -> Self {
        let e = j.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclo::reduce(n, poly)
    }

    /// `e^{2πiq}` for an exact phase; `None` for float phases.
    pub fn from_phase(p: &Phase) -> Option<Self> {
        let q = p.as_exact()?;
        Some(Cyclo::root_of_unity(*q.numer(), *q.denom() as u64))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in the basis `1, ζ_N, …, ζ_N^{φ(N)−1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn reduce(n: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if *pj != 0 {
                    poly[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(*pj));
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        Cyclo { conductor: n, coeffs: poly }
    }

    /// The same element written in `ℚ(ζ_m)`; `m` must be a multiple of the
    /// conductor.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m % self.conductor == 0, "conductor {} does not divide {m}", self.conductor);
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyclo::reduce(m, poly)
    }

    fn common(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclo { conductor: a.conductor, coeffs }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        if self.conductor == 1 || other.conductor == 1 {
            let (r, x) = if self.conductor == 1 { (&self.coeffs[0], other) } else { (&other.coeffs[0], self) };
            return Cyclo { conductor: x.conductor, coeffs: x.coeffs.iter().map(|c| c * r).collect() };
        }
        let (a, b) = self.common(other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclo::reduce(a.conductor, poly)
    }

    /// Complex conjugation `ζ_N ↦ ζ_N^{N−1}`.
    pub fn conj(&self) -> Cyclo {
        let n = self.conductor as usize;
        if n == 1 {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Cyclo::reduce(self.conductor, poly)
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let w = c.to_f64().unwrap_or(f64::NAN);
                Complex::from_polar(w, std::f64::consts::TAU * i as f64 / n)
            })
            .sum()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclo {}

fn format_big_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Printed as a sum `c₀ + c₁*zeta(N) + c₂*zeta(N)^2 + …`.
impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let root = match i {
                0 => String::new(),
                1 => format!("zeta({})", self.conductor),
                _ => format!("zeta({})^{i}", self.conductor),
            };
            let body = match (root.is_empty(), mag.is_one()) {
                (true, _) => format_big_rational(&mag),
                (false, true) => root,
                (false, false) => format!("{}*{root}", format_big_rational(&mag)),
            };
            parts.push((c.is_negative(), body));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
