use std::sync::Arc;

use crate::grp::{sample_triples, CheckSample, CoeffGroup, Cocycle, Group, GroupElem};
use crate::kgraph::{join, Functor, KGraph, Path};
use crate::phase::Phase;
use crate::scalar::Scalar;

use super::{AlgebraElement, AlgebraError, Term};

/// The data `(Λ, η, σ)` defining a twisted algebra: a validated k-graph, a
/// functor into a group `G`, and a circle-valued cocycle on `G`.
#[derive(Clone, Debug)]
pub struct TwistContext {
    graph: Arc<KGraph>,
    functor: Functor,
    cocycle: Cocycle,
    phase_fault: Option<Phase>,
}

impl TwistContext {
    pub fn new(graph: Arc<KGraph>, functor: Functor, cocycle: Cocycle) -> Result<Self, AlgebraError> {
        functor.check_compatible(&graph)?;
        TwistContext::without_functor_check(graph, functor, cocycle)
    }

    /// Twisting along the degree functor `d: Λ → ℤ^k`.
    pub fn degree(graph: Arc<KGraph>, cocycle: Cocycle) -> Result<Self, AlgebraError> {
        let d = Functor::degree(&graph);
        TwistContext::new(graph, d, cocycle)
    }

    /// The untwisted algebra, graded by the degree functor.
    pub fn untwisted(graph: Arc<KGraph>) -> Result<Self, AlgebraError> {
        let k = graph.rank();
        TwistContext::degree(graph, Cocycle::trivial(Group::Zk(k), CoeffGroup::Circle))
    }

    /// Like [`TwistContext::new`] but accepts a functor that is not compatible
    /// with the squares. Products are still computed; the grading suite is
    /// what detects the inconsistency.
    pub fn without_functor_check(
        graph: Arc<KGraph>,
        functor: Functor,
        cocycle: Cocycle,
    ) -> Result<Self, AlgebraError> {
        let report = graph.validate();
        if !report.passed() {
            return Err(AlgebraError::InvalidGraph(report.to_string()));
        }
        if functor.target() != cocycle.group() {
            return Err(AlgebraError::GroupMismatch {
                functor: functor.target().to_string(),
                cocycle: cocycle.group().to_string(),
            });
        }
        if cocycle.coeff_group() != CoeffGroup::Circle {
            return Err(AlgebraError::NotCircleValued);
        }
        let sample = match cocycle.group() {
            Group::Finite(g) if g.order() <= 40 => CheckSample::Exhaustive,
            g => sample_triples(g, 64, 3, 0),
        };
        let check = cocycle.check(&sample);
        if !check.passed() {
            return Err(AlgebraError::InvalidCocycle(check.to_string()));
        }
        Ok(TwistContext { graph, functor, cocycle, phase_fault: None })
    }

    /// Adds a fixed error to the phase of every product `t_λ t_α` with both
    /// paths nontrivial. Only for testing that the verifiers notice.
    #[doc(hidden)]
    pub fn with_phase_fault(mut self, fault: Phase) -> Self {
        self.phase_fault = Some(fault);
        self
    }

    pub fn graph(&self) -> &KGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<KGraph> {
        &self.graph
    }

    pub fn functor(&self) -> &Functor {
        &self.functor
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    /// Whether exact cyclotomic scalars can be used.
    pub fn is_exact(&self) -> bool {
        self.cocycle.is_exact() && self.phase_fault.is_none_or(|p| p.is_exact())
    }

    pub fn require_exact(&self) -> Result<(), AlgebraError> {
        if self.is_exact() {
            Ok(())
        } else {
            Err(AlgebraError::InexactCocycle)
        }
    }

    pub fn eta(&self, p: &Path) -> GroupElem {
        self.functor.eval(p)
    }

    pub fn sigma(&self, g: &GroupElem, h: &GroupElem) -> Phase {
        self.cocycle.eval_phase(g, h).expect("functor values lie in the cocycle's group")
    }

    /// `c_σ(λ, μ) = σ(η(λ), η(μ))` for composable `λ, μ`.
    pub fn categorical_cocycle(&self, lambda: &Path, mu: &Path) -> Result<Phase, AlgebraError> {
        if lambda.source() != mu.range() {
            return Err(crate::kgraph::KGraphError::NotComposable(format!(
                "{} then {}",
                self.graph.path_label(lambda),
                self.graph.path_label(mu)
            ))
            .into());
        }
        Ok(self.sigma(&self.eta(lambda), &self.eta(mu)))
    }

    /// `η(λ)η(μ)⁻¹`, the fibre containing `t_λ t_μ*`.
    pub fn term_grade(&self, t: &Term) -> GroupElem {
        let g = self.functor.target();
        let inv = g.inv(&self.eta(t.mu())).expect("value in target");
        g.mul(&self.eta(t.lambda()), &inv).expect("value in target")
    }

    pub fn scalar<S: Scalar>(&self, p: &Phase) -> S {
        S::from_phase(p).expect("exact scalars need exact phases; check TwistContext::is_exact")
    }

    pub fn term(&self, lambda: Path, mu: Path) -> Result<Term, AlgebraError> {
        if lambda.source() != mu.source() {
            return Err(AlgebraError::SourceMismatch(
                self.graph.path_label(&lambda),
                self.graph.path_label(&mu),
            ));
        }
        Ok(Term::new_unchecked(lambda, mu))
    }

    /// `t_λ = t_λ t_{s(λ)}*`.
    pub fn t(&self, lambda: &Path) -> Term {
        Term::new_unchecked(lambda.clone(), Path::vertex(&self.graph, lambda.source()))
    }

    pub fn t_star(&self, lambda: &Path) -> Term {
        self.t(lambda).adjoint()
    }

    pub fn q(&self, v: usize) -> Term {
        let p = Path::vertex(&self.graph, v);
        Term::new_unchecked(p.clone(), p)
    }

    pub fn elem<S: Scalar>(&self, t: Term) -> AlgebraElement<S> {
        AlgebraElement::from_term(t, S::one())
    }

    /// The identity when the graph has finitely many vertices: `Σ_v q_v`.
    pub fn unit<S: Scalar>(&self) -> AlgebraElement<S> {
        (0..self.graph.num_vertices()).map(|v| (self.q(v), S::one())).collect()
    }

    /// `(t_λ t_μ*)(t_ν t_τ*)` as a list of terms with phases:
    /// `Σ_{(α,β) ∈ Λ^min(μ,ν)} σ(η(λ),η(α)) σ̄(η(μ),η(α)) σ(η(ν),η(β)) σ̄(η(τ),η(β)) t_{λα} t_{τβ}*`.
    pub fn term_product(&self, x: &Term, y: &Term) -> Vec<(Term, Phase)> {
        let g = &*self.graph;
        let (lambda, mu, nu, tau) = (x.lambda(), x.mu(), y.lambda(), y.mu());
        let mins = g.lambda_min(mu, nu).expect("paths of a validated graph");
        let (el, em, en, et) = (self.eta(lambda), self.eta(mu), self.eta(nu), self.eta(tau));
        mins.into_iter()
            .map(|(alpha, beta)| {
                let (ea, eb) = (self.eta(&alpha), self.eta(&beta));
                let mut phase = self.sigma(&el, &ea) - self.sigma(&em, &ea) + self.sigma(&en, &eb)
                    - self.sigma(&et, &eb);
                if let Some(fault) = self.phase_fault {
                    if !lambda.is_vertex() && !alpha.is_vertex() {
                        phase = phase + fault;
                    }
                }
                let la = lambda.compose(g, &alpha).expect("s(λ) = s(μ) = r(α)");
                let tb = tau.compose(g, &beta).expect("s(τ) = s(ν) = r(β)");
                (Term::new_unchecked(la, tb), phase)
            })
            .collect()
    }

    pub fn term_mul<S: Scalar>(&self, x: &Term, y: &Term) -> AlgebraElement<S> {
        self.term_product(x, y).into_iter().map(|(t, p)| (t, self.scalar::<S>(&p))).collect()
    }

    pub fn mul<S: Scalar>(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                let c = cx.mul(cy);
                for (t, p) in self.term_product(x, y) {
                    out.add_term(t, c.mul(&self.scalar::<S>(&p)));
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn mul_all<S: Scalar>(&self, factors: &[&AlgebraElement<S>]) -> AlgebraElement<S> {
        let mut it = factors.iter();
        let first = it.next().map(|a| (*a).clone()).unwrap_or_else(|| self.unit());
        it.fold(first, |acc, b| self.mul(&acc, b))
    }

    /// `(c t_λ t_μ*)* = c̄ t_μ t_λ*`.
    pub fn star<S: Scalar>(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        a.iter().map(|(t, c)| (t.adjoint(), c.conj())).collect()
    }

    /// Rewrites every term with `d(μ) ≤ n` as a combination of terms whose
    /// second path has degree exactly `n`, using
    /// `t_λ t_μ* = Σ_{α ∈ s(μ)Λ^{n−d(μ)}} σ(η(λ),η(α)) σ̄(η(μ),η(α)) t_{λα} t_{μα}*`.
    pub fn expand_to<S: Scalar>(&self, a: &AlgebraElement<S>, n: &[u32]) -> AlgebraElement<S> {
        let g = &*self.graph;
        let mut out = AlgebraElement::zero();
        for (t, c) in a.iter() {
            let (lambda, mu) = (t.lambda(), t.mu());
            let rest: Vec<u32> = n.iter().zip(mu.degree()).map(|(x, y)| x - y).collect();
            let (el, em) = (self.eta(lambda), self.eta(mu));
            for alpha in g.enumerate(mu.source(), &rest).expect("vertex of the graph") {
                let ea = self.eta(&alpha);
                let phase = self.sigma(&el, &ea) - self.sigma(&em, &ea);
                let term = Term::new_unchecked(
                    lambda.compose(g, &alpha).expect("composable"),
                    mu.compose(g, &alpha).expect("composable"),
                );
                out.add_term(term, c.mul(&self.scalar::<S>(&phase)));
            }
        }
        out
    }

    /// Canonical representative modulo `q_v = Σ_{λ∈vΛ^n} t_λ t_λ*`: all terms
    /// expanded to the join of the degrees of their second paths. Terms
    /// `t_λ t_μ*` with `d(μ)` fixed are linearly independent in the algebra.
    pub fn canonical<S: Scalar>(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        let n = a.iter().fold(vec![0; self.graph.rank()], |acc, (t, _)| join(&acc, t.mu().degree()));
        self.expand_to(a, &n)
    }

    pub fn is_zero_mod_relations<S: Scalar>(&self, a: &AlgebraElement<S>) -> bool {
        self.canonical(a).is_zero()
    }

    pub fn eq_mod_relations<S: Scalar>(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> bool {
        self.is_zero_mod_relations(&a.sub(b))
    }
}
