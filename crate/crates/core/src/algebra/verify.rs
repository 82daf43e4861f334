use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kgraph::{Degree, Path};
use crate::phase::Rational;
use crate::scalar::Scalar;

use super::analysis::{fejer_defect, fejer_mean, grade};
use super::random::random_element;
use super::{AlgebraElement, Term, TwistContext};

/// Outcome of a verification suite.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl VerifyReport {
    fn new(suite: &str) -> Self {
        VerifyReport { suite: suite.into(), ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: pass ({} checks)", self.suite, self.checks);
        }
        writeln!(f, "{}: FAIL ({} of {} checks violated)", self.suite, self.violations.len(), self.checks)?;
        for v in self.violations.iter().take(20) {
            writeln!(f, "  {v}")?;
        }
        if self.violations.len() > 20 {
            writeln!(f, "  ... {} more", self.violations.len() - 20)?;
        }
        Ok(())
    }
}

fn degrees_upto(bound: &[u32]) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for b in bound {
        out = out.into_iter().flat_map(|p: Degree| (0..=*b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Every path of degree at most `bound`.
pub(crate) fn paths_upto(ctx: &TwistContext, bound: &[u32]) -> Vec<Path> {
    let g = ctx.graph();
    let mut out = Vec::new();
    for v in 0..g.num_vertices() {
        for n in degrees_upto(bound) {
            out.extend(g.enumerate(v, &n).expect("vertex in range"));
        }
    }
    out
}

fn label(ctx: &TwistContext, p: &Path) -> String {
    ctx.graph().path_label(p)
}

/// Checks the twisted Cuntz–Krieger relations on all paths of degree at most
/// `bound`: orthogonal projections, `t_λ t_μ = σ(η(λ),η(μ)) t_{λμ}`,
/// `t_λ* t_μ = δ_{λ,μ} q_{s(λ)}` for `d(λ) = d(μ)`, and
/// `q_v = Σ_{λ∈vΛ^n} t_λ t_λ*`.
pub fn ck_verify<S: Scalar>(ctx: &TwistContext, bound: &[u32]) -> VerifyReport {
    let g = ctx.graph();
    let mut r = VerifyReport::new("ck");
    let el = |t: Term| ctx.elem::<S>(t);

    for v in 0..g.num_vertices() {
        let qv = el(ctx.q(v));
        r.record(ctx.star(&qv) == qv, || format!("CK1: q[{}] is not self-adjoint", g.vertices()[v]));
        for w in 0..g.num_vertices() {
            let expected = if v == w { qv.clone() } else { AlgebraElement::zero() };
            r.record(ctx.mul(&qv, &el(ctx.q(w))) == expected, || {
                format!("CK1: q[{}] q[{}] has the wrong value", g.vertices()[v], g.vertices()[w])
            });
        }
    }

    let paths = paths_upto(ctx, bound);
    for lambda in &paths {
        let tl = el(ctx.t(lambda));
        for mu in &paths {
            let prod = ctx.mul(&tl, &el(ctx.t(mu)));
            let expected = if lambda.source() == mu.range() {
                let lm = lambda.compose(g, mu).expect("composable");
                let c = ctx.scalar::<S>(&ctx.sigma(&ctx.eta(lambda), &ctx.eta(mu)));
                AlgebraElement::from_term(ctx.t(&lm), c)
            } else {
                AlgebraElement::zero()
            };
            r.record(prod == expected, || {
                format!("CK2: t[{}] t[{}] differs from the twisted composite", label(ctx, lambda), label(ctx, mu))
            });
        }
    }

    for lambda in &paths {
        let ts = el(ctx.t_star(lambda));
        for mu in paths.iter().filter(|m| m.degree() == lambda.degree()) {
            let prod = ctx.mul(&ts, &el(ctx.t(mu)));
            let expected = if lambda == mu { el(ctx.q(lambda.source())) } else { AlgebraElement::zero() };
            let tag = if lambda == mu { "CK3" } else { "CK3+" };
            r.record(prod == expected, || {
                format!("{tag}: t*[{}] t[{}] has the wrong value", label(ctx, lambda), label(ctx, mu))
            });
        }
    }

    for v in 0..g.num_vertices() {
        for n in degrees_upto(bound) {
            let sum: AlgebraElement<S> = g
                .enumerate(v, &n)
                .expect("vertex in range")
                .into_iter()
                .map(|l| (ctx.term(l.clone(), l).expect("same source"), S::one()))
                .collect();
            let qv = el(ctx.q(v));
            r.record(ctx.eq_mod_relations(&qv, &sum), || {
                format!("CK4: q[{}] differs from the degree-{n:?} sum", g.vertices()[v])
            });
            // the same relation acting on every longer path from v
            for mu in paths.iter().filter(|m| m.range() == v && n.iter().zip(m.degree()).all(|(a, b)| a <= b)) {
                let tm = el(ctx.t(mu));
                r.record(ctx.mul(&sum, &tm) == tm, || {
                    format!("CK4: degree-{n:?} sum at {} does not fix t[{}]", g.vertices()[v], label(ctx, mu))
                });
            }
        }
    }
    r
}

/// `(t_λ t_μ*)(t_ν t_τ*) = δ_{μ,ν} t_λ t_τ*` for all `λ, μ, ν, τ ∈ Λ^n v`.
pub fn matrix_units_check<S: Scalar>(ctx: &TwistContext, v: usize, n: &[u32]) -> VerifyReport {
    let g = ctx.graph();
    let mut r = VerifyReport::new("matrix-units");
    let mut ps = Vec::new();
    for w in 0..g.num_vertices() {
        ps.extend(g.enumerate(w, n).expect("vertex in range").into_iter().filter(|p| p.source() == v));
    }
    for l in &ps {
        for m in &ps {
            let x = ctx.elem::<S>(ctx.term(l.clone(), m.clone()).expect("common source"));
            for nu in &ps {
                for t in &ps {
                    let y = ctx.elem::<S>(ctx.term(nu.clone(), t.clone()).expect("common source"));
                    let expected = if m == nu {
                        ctx.elem(ctx.term(l.clone(), t.clone()).expect("common source"))
                    } else {
                        AlgebraElement::zero()
                    };
                    r.record(ctx.mul(&x, &y) == expected, || {
                        format!(
                            "(t[{}] t*[{}])(t[{}] t*[{}]) is not a matrix-unit product",
                            label(ctx, l),
                            label(ctx, m),
                            label(ctx, nu),
                            label(ctx, t)
                        )
                    });
                }
            }
        }
    }
    r
}

/// Square compatibility of the functor, then for random pairs: the graded
/// components sum back to the element, and products of components over `g`
/// and `h` land in the component over `gh`.
pub fn grading_check<S: Scalar>(ctx: &TwistContext, samples: usize, max: &[u32], seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("grading");
    for sq in ctx.functor().compatibility_violations(ctx.graph()) {
        r.record(false, || format!("functor is not compatible with the square {sq}"));
    }
    let target = ctx.functor().target().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a: AlgebraElement<S> = random_element(ctx, &mut rng, 3, max);
        let b: AlgebraElement<S> = random_element(ctx, &mut rng, 3, max);
        let (ga, gb) = (grade(ctx, &a), grade(ctx, &b));
        let resum = ga.values().fold(AlgebraElement::zero(), |acc, x| acc.add(x));
        r.record(resum == a, || "graded components do not sum to the element".into());
        for (g, x) in &ga {
            for (h, y) in &gb {
                let gh = target.mul(g, h).expect("grades lie in the target");
                for (t, _) in ctx.mul(x, y).iter() {
                    let got = ctx.term_grade(t);
                    r.record(got == gh, || format!("product of grades {g} and {h} has a term in grade {got}"));
                }
            }
        }
    }
    r
}

/// For each `(ν, τ)` with `s(ν) = s(τ)` and `n = d(ν) − d(τ) = n₊ − n₋`:
/// `t_λ* t_ν t_τ* t_μ ≠ 0` with `λ ∈ Λ^{n₊}`, `μ ∈ Λ^{n₋}` forces
/// `λ = ν(0,n₊)` and `μ = τ(0,n₋)`.
pub fn intocore_check<S: Scalar>(ctx: &TwistContext, samples: &[(Path, Path)]) -> VerifyReport {
    let g = ctx.graph();
    let mut r = VerifyReport::new("intocore");
    for (nu, tau) in samples {
        let Ok(term) = ctx.term(nu.clone(), tau.clone()) else { continue };
        let mid = ctx.elem::<S>(term);
        let n_plus: Degree = nu.degree().iter().zip(tau.degree()).map(|(a, b)| a.saturating_sub(*b)).collect();
        let n_minus: Degree = nu.degree().iter().zip(tau.degree()).map(|(a, b)| b.saturating_sub(*a)).collect();
        let zero = vec![0; g.rank()];
        let head_nu = nu.segment(g, &zero, &n_plus).expect("n₊ ≤ d(ν)");
        let head_tau = tau.segment(g, &zero, &n_minus).expect("n₋ ≤ d(τ)");
        let all = |n: &[u32]| -> Vec<Path> {
            (0..g.num_vertices()).flat_map(|v| g.enumerate(v, n).expect("vertex in range")).collect()
        };
        for lambda in all(&n_plus) {
            let left = ctx.mul(&ctx.elem::<S>(ctx.t_star(&lambda)), &mid);
            for mu in all(&n_minus) {
                let prod = ctx.mul(&left, &ctx.elem::<S>(ctx.t(&mu)));
                let nonzero = !ctx.is_zero_mod_relations(&prod);
                r.record(!nonzero || (lambda == head_nu && mu == head_tau), || {
                    format!(
                        "t*[{}] t[{}] t*[{}] t[{}] is nonzero",
                        label(ctx, &lambda),
                        label(ctx, nu),
                        label(ctx, tau),
                        label(ctx, &mu)
                    )
                });
            }
        }
    }
    r
}

/// All pairs `(ν, τ)` of paths of degree at most `bound` with a common source.
pub fn intocore_samples(ctx: &TwistContext, bound: &[u32]) -> Vec<(Path, Path)> {
    let paths = paths_upto(ctx, bound);
    let mut out = Vec::new();
    for nu in &paths {
        for tau in paths.iter().filter(|t| t.source() == nu.source()) {
            out.push((nu.clone(), tau.clone()));
        }
    }
    out
}

/// `Σ_{0≤n≤N} s_n(a) / Π(N_j+1)` with `s_n(a) = Σ_{|m_j|≤n_j} a_m`, summed
/// term by term.
fn cesaro_literal<S: Scalar>(a: &AlgebraElement<S>, big_n: &[u32]) -> AlgebraElement<S> {
    let count: i64 = big_n.iter().map(|x| *x as i64 + 1).product();
    let mut out = AlgebraElement::zero();
    for n in degrees_upto(big_n) {
        let partial = a.filter(|t| t.weight().iter().zip(&n).all(|(w, b)| w.unsigned_abs() <= *b as u64));
        out = out.add(&partial);
    }
    out.scale(&S::from_rational(Rational::new(1, count)))
}

/// On random elements with terms of degree at most `max`, for `N = (t,…,t)`
/// with `t = 0..=t_max`: the closed-form mean agrees with the literal Cesàro
/// sum, the coefficient defect does not increase with `t`, and once `t`
/// exceeds every weight no Fourier mode of the element is lost.
pub fn fejer_check<S: Scalar>(ctx: &TwistContext, samples: usize, max: &[u32], t_max: u32, seed: u64) -> VerifyReport {
    let mut r = VerifyReport::new("fejer");
    let k = ctx.graph().rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let a: AlgebraElement<S> = random_element(ctx, &mut rng, 4, max);
        let top = a.iter().flat_map(|(t, _)| t.weight()).map(i64::unsigned_abs).max().unwrap_or(0);
        let mut prev = f64::INFINITY;
        for t in 0..=t_max {
            let n = vec![t; k];
            let mean = fejer_mean(&a, &n);
            r.record(mean == cesaro_literal(&a, &n), || format!("sample {i}: closed form differs from the Cesàro sum at N={n:?}"));
            let d = fejer_defect(&a, &n);
            r.record(d <= prev + 1e-12, || format!("sample {i}: defect rose from {prev} to {d} at N={n:?}"));
            prev = d;
            if t as u64 >= top {
                r.record(mean.len() == a.len(), || format!("sample {i}: Fourier modes lost at N={n:?}"));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::grp::Cocycle;
    use crate::kgraph::examples::{e2, t2};
    use crate::phase::{Phase, Rational};
    use std::sync::Arc;

    #[test]
    fn t2_twisted_passes_ck() {
        let ctx = TwistContext::degree(Arc::new(t2()), Cocycle::rotation(Rational::new(1, 3))).unwrap();
        let r = ck_verify::<Cyclo>(&ctx, &[2, 2]);
        assert!(r.passed(), "{r}");
        assert!(r.checks > 100);
    }

    #[test]
    fn e2_untwisted_passes_ck() {
        let ctx = TwistContext::untwisted(Arc::new(e2())).unwrap();
        assert!(ck_verify::<Cyclo>(&ctx, &[2]).passed());
        let r = matrix_units_check::<Cyclo>(&ctx, 0, &[1]);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks, 16);
    }

    #[test]
    fn phase_fault_is_reported_as_ck2() {
        let ctx = TwistContext::degree(Arc::new(t2()), Cocycle::rotation(Rational::new(1, 3)))
            .unwrap()
            .with_phase_fault(Phase::from_ratio(1, 7));
        let r = ck_verify::<Cyclo>(&ctx, &[1, 1]);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.starts_with("CK2")));
    }

    #[test]
    fn fejer_suite_on_t2() {
        let ctx = TwistContext::degree(Arc::new(t2()), Cocycle::rotation(Rational::new(1, 5))).unwrap();
        let r = fejer_check::<Cyclo>(&ctx, 10, &[2, 2], 4, 1);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn intocore_on_e2() {
        let ctx = TwistContext::untwisted(Arc::new(e2())).unwrap();
        let samples = intocore_samples(&ctx, &[2]);
        let r = intocore_check::<Cyclo>(&ctx, &samples);
        assert!(r.passed(), "{r}");
    }
}
