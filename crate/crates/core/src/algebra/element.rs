use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::kgraph::Path;
use crate::scalar::Scalar;

/// The basis element `t_λ t_μ*`, with `s(λ) = s(μ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    lambda: Path,
    mu: Path,
}

impl Term {
    /// Callers guarantee `s(λ) = s(μ)`; see `TwistContext::term` for the
    /// checked constructor.
    pub(crate) fn new_unchecked(lambda: Path, mu: Path) -> Self {
        debug_assert_eq!(lambda.source(), mu.source());
        Term { lambda, mu }
    }

    pub fn lambda(&self) -> &Path {
        &self.lambda
    }

    pub fn mu(&self) -> &Path {
        &self.mu
    }

    /// `d(λ) − d(μ)`.
    pub fn weight(&self) -> Vec<i64> {
        self.lambda.degree().iter().zip(self.mu.degree()).map(|(a, b)| *a as i64 - *b as i64).collect()
    }

    /// True for vertex projections `q_v`.
    pub fn is_projection(&self) -> bool {
        self.lambda.is_vertex() && self.mu.is_vertex()
    }

    pub fn adjoint(&self) -> Term {
        Term { lambda: self.mu.clone(), mu: self.lambda.clone() }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.lambda.cmp(&other.lambda))
            .then_with(|| self.mu.cmp(&other.mu))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of basis terms; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S: Scalar> {
    terms: BTreeMap<Term, S>,
}

impl<S: Scalar> Default for AlgebraElement<S> {
    fn default() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(term: Term, coeff: S) -> Self {
        let mut a = Self::zero();
        a.add_term(term, coeff);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> Option<&S> {
        self.terms.get(t)
    }

    /// Adds `c·t` in place.
    pub fn add_term(&mut self, t: Term, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        AlgebraElement { terms: self.terms.iter().map(|(t, c)| (t.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (t, c) in self.iter() {
            out.add_term(t.clone(), c.mul(s));
        }
        out
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Term) -> bool) -> Self {
        AlgebraElement {
            terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Term, &S) -> S) -> Self {
        let mut out = Self::zero();
        for (t, c) in self.iter() {
            out.add_term(t.clone(), f(t, c));
        }
        out
    }

    /// Converts to complex float coefficients.
    pub fn to_float(&self) -> AlgebraElement<crate::scalar::Complex64> {
        let mut out = AlgebraElement::zero();
        for (t, c) in self.iter() {
            out.add_term(t.clone(), c.to_complex());
        }
        out
    }
}

impl<S: Scalar> FromIterator<(Term, S)> for AlgebraElement<S> {
    fn from_iter<I: IntoIterator<Item = (Term, S)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}
