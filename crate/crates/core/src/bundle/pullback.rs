use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::algebra::{random::random_term, AlgebraElement, AlgebraError, Term, TwistContext};
use crate::grp::{
    ext_inv, ext_mul, sample_triples, CoeffGroup, Coefficient, Cocycle, ExtElement, GroupElem,
};
use crate::kgraph::{Functor, KGraph};
use crate::phase::Phase;
use crate::scalar::Scalar;

use super::{BundleError, Character};

/// A spanning element `(h, t_λ t_μ*)` of the pullback bundle, where the
/// extension element `h = (z, g)` projects to the grade `g = η(λ)η(μ)⁻¹` of
/// the base term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PullbackTerm {
    z: Vec<i64>,
    g: GroupElem,
    term: Term,
}

impl PullbackTerm {
    pub fn ext(&self) -> ExtElement {
        ExtElement { z: Coefficient::Int(self.z.clone()), g: self.g.clone() }
    }

    /// The central coordinate `z` of `h = (z, g)`.
    pub fn central(&self) -> &[i64] {
        &self.z
    }

    pub fn projection(&self) -> &GroupElem {
        &self.g
    }

    pub fn base(&self) -> &Term {
        &self.term
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PullbackElement<S: Scalar> {
    terms: BTreeMap<PullbackTerm, S>,
}

impl<S: Scalar> Default for PullbackElement<S> {
    fn default() -> Self {
        PullbackElement { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> PullbackElement<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: PullbackTerm, c: S) -> Self {
        let mut a = Self::zero();
        a.add_term(t, c);
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

    pub fn iter(&self) -> impl Iterator<Item = (&PullbackTerm, &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, t: PullbackTerm, c: S) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&t) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&t);
        } else {
            self.terms.insert(t, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in other.iter() {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> FromIterator<(PullbackTerm, S)> for PullbackElement<S> {
    fn from_iter<I: IntoIterator<Item = (PullbackTerm, S)>>(iter: I) -> Self {
        let mut a = Self::zero();
        for (t, c) in iter {
            a.add_term(t, c);
        }
        a
    }
}

/// The untwisted algebra graded by `η: Λ → G`, pulled back along the central
/// extension of `G` by ℤ^d defined by an integer cocycle `σ`.
#[derive(Clone, Debug)]
pub struct PullbackContext {
    base: TwistContext,
    sigma: Cocycle,
    rank: usize,
}

impl PullbackContext {
    pub fn new(graph: Arc<KGraph>, functor: Functor, sigma: Cocycle) -> Result<Self, BundleError> {
        let CoeffGroup::Int(rank) = sigma.coeff_group() else {
            return Err(BundleError::NotIntegerValued);
        };
        let report = sigma.check(&sample_triples(sigma.group(), 64, 3, 0));
        if !report.passed() {
            return Err(AlgebraError::InvalidCocycle(report.to_string()).into());
        }
        let trivial = Cocycle::trivial(sigma.group().clone(), CoeffGroup::Circle);
        let base = TwistContext::new(graph, functor, trivial)?;
        Ok(PullbackContext { base, sigma, rank })
    }

    /// The untwisted context carrying the base terms.
    pub fn base(&self) -> &TwistContext {
        &self.base
    }

    pub fn sigma(&self) -> &Cocycle {
        &self.sigma
    }

    /// `d`, the rank of the coefficient group ℤ^d.
    pub fn coeff_rank(&self) -> usize {
        self.rank
    }

    pub fn term(&self, h: ExtElement, term: Term) -> Result<PullbackTerm, BundleError> {
        let z = match h.z {
            Coefficient::Int(z) if z.len() == self.rank => z,
            Coefficient::Int(z) => {
                return Err(BundleError::DimensionMismatch { expected: self.rank, found: z.len() })
            }
            Coefficient::Circle(_) => return Err(BundleError::NotIntegerValued),
        };
        let grade = self.base.term_grade(&term);
        if grade != h.g {
            return Err(BundleError::ProjectionMismatch { term: grade.to_string(), ext: h.g.to_string() });
        }
        Ok(PullbackTerm { z, g: h.g, term })
    }

    /// `((z, g), b)` with `g` read off from `b`.
    pub fn lift(&self, z: Vec<i64>, term: Term) -> Result<PullbackTerm, BundleError> {
        let g = self.base.term_grade(&term);
        self.term(ExtElement { z: Coefficient::Int(z), g }, term)
    }

    /// `(h, b)(k, c) = (hk, bc)` with `bc` the untwisted product.
    pub fn mul_terms<S: Scalar>(&self, x: &PullbackTerm, y: &PullbackTerm) -> PullbackElement<S> {
        let h = ext_mul(&self.sigma, &x.ext(), &y.ext()).expect("projections lie in the group");
        let Coefficient::Int(z) = h.z else { unreachable!("integer cocycle") };
        self.base
            .term_product(&x.term, &y.term)
            .into_iter()
            .map(|(t, p)| {
                debug_assert_eq!(self.base.term_grade(&t), h.g);
                (PullbackTerm { z: z.clone(), g: h.g.clone(), term: t }, self.base.scalar::<S>(&p))
            })
            .collect()
    }

    pub fn mul<S: Scalar>(&self, a: &PullbackElement<S>, b: &PullbackElement<S>) -> PullbackElement<S> {
        let mut out = PullbackElement::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                let c = cx.mul(cy);
                for (t, p) in self.mul_terms::<S>(x, y).terms {
                    out.add_term(t, c.mul(&p));
                }
            }
        }
        out
    }

    /// `(h, b)* = (h⁻¹, b*)`.
    pub fn star_term(&self, x: &PullbackTerm) -> PullbackTerm {
        let h = ext_inv(&self.sigma, &x.ext()).expect("projection lies in the group");
        let Coefficient::Int(z) = h.z else { unreachable!("integer cocycle") };
        PullbackTerm { z, g: h.g, term: x.term.adjoint() }
    }

    pub fn star<S: Scalar>(&self, a: &PullbackElement<S>) -> PullbackElement<S> {
        a.iter().map(|(t, c)| (self.star_term(t), c.conj())).collect()
    }

    /// The fibre at `γ`: the algebra twisted by `γ∘σ`.
    pub fn fiber(&self, gamma: &Character) -> Result<Fiber, BundleError> {
        if gamma.dim() != self.rank {
            return Err(BundleError::DimensionMismatch { expected: self.rank, found: gamma.dim() });
        }
        let cocycle = self.sigma.compose_character(gamma.angles())?;
        let ctx = TwistContext::new(self.base.graph_arc().clone(), self.base.functor().clone(), cocycle)?;
        Ok(Fiber { gamma: gamma.clone(), ctx })
    }

    /// A random base term lifted with central part in `[-radius, radius]^d`.
    pub fn random_term<R: Rng>(&self, rng: &mut R, max: &[u32], radius: i64) -> PullbackTerm {
        let term = random_term(&self.base, rng, max);
        let z = (0..self.rank).map(|_| rng.random_range(-radius..=radius)).collect();
        self.lift(z, term).expect("grade of the base term")
    }

    pub fn label(&self, x: &PullbackTerm) -> String {
        let g = self.base.graph();
        format!(
            "({}, {}) t[{}].t*[{}]",
            Coefficient::Int(x.z.clone()),
            x.g,
            g.path_label(x.term.lambda()),
            g.path_label(x.term.mu())
        )
    }
}

/// Evaluation of pullback terms in the fibre over a character `γ`, using
/// the section `g ↦ (0, g)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    gamma: Character,
    ctx: TwistContext,
}

impl Fiber {
    pub fn character(&self) -> &Character {
        &self.gamma
    }

    /// The twisted context of the fibre.
    pub fn ctx(&self) -> &TwistContext {
        &self.ctx
    }

    /// The phase `ω` with `ρ^γ((z,g), t_λ t_μ*) = ω · t_λ t_μ*` in the fibre.
    ///
    /// The untwisted `s_λ s_μ*` is `σ'(m, m⁻¹) σ̄'(l, m⁻¹) t_λ t_μ*` in the
    /// algebra of `σ' = γ∘σ`, where `l = η(λ)` and `m = η(μ)`.
    pub fn phase(&self, x: &PullbackTerm) -> Phase {
        let grp = self.ctx.functor().target();
        let l = self.ctx.eta(x.term.lambda());
        let m = self.ctx.eta(x.term.mu());
        let mi = grp.inv(&m).expect("functor value");
        self.gamma.eval(&x.z) + self.ctx.sigma(&m, &mi) - self.ctx.sigma(&l, &mi)
    }

    pub fn eval<S: Scalar>(&self, a: &PullbackElement<S>) -> Result<AlgebraElement<S>, BundleError> {
        if S::is_exact() {
            self.ctx.require_exact()?;
            if !self.gamma.is_exact() {
                return Err(AlgebraError::InexactCocycle.into());
            }
        }
        Ok(a.iter()
            .map(|(t, c)| (t.term.clone(), c.mul(&self.ctx.scalar::<S>(&self.phase(t)))))
            .collect())
    }
}

pub fn pullback_mul<S: Scalar>(pb: &PullbackContext, x: &PullbackTerm, y: &PullbackTerm) -> PullbackElement<S> {
    pb.mul_terms(x, y)
}

pub fn fiber_eval<S: Scalar>(
    pb: &PullbackContext,
    gamma: &Character,
    a: &PullbackElement<S>,
) -> Result<AlgebraElement<S>, BundleError> {
    pb.fiber(gamma)?.eval(a)
}
