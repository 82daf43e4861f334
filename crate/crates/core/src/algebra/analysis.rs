use std::collections::BTreeMap;

use num::{One, Zero};

use crate::grp::GroupElem;
use crate::phase::{Phase, Rational};
use crate::scalar::Scalar;

use super::{AlgebraElement, AlgebraError, TwistContext};

/// Homogeneous components with respect to the functor grading: the term
/// `t_λ t_μ*` lies in the fibre over `η(λ)η(μ)⁻¹`.
pub fn grade<S: Scalar>(ctx: &TwistContext, a: &AlgebraElement<S>) -> BTreeMap<GroupElem, AlgebraElement<S>> {
    let mut out: BTreeMap<GroupElem, AlgebraElement<S>> = BTreeMap::new();
    for (t, c) in a.iter() {
        out.entry(ctx.term_grade(t)).or_default().add_term(t.clone(), c.clone());
    }
    out
}

/// The gauge action `β_z(t_λ t_μ*) = z^{d(λ)−d(μ)} t_λ t_μ*`.
pub fn gauge<S: Scalar>(ctx: &TwistContext, z: &[Phase], a: &AlgebraElement<S>) -> Result<AlgebraElement<S>, AlgebraError> {
    let k = ctx.graph().rank();
    if z.len() != k {
        return Err(AlgebraError::GaugeLength { k, found: z.len() });
    }
    if S::is_exact() && !z.iter().all(Phase::is_exact) {
        return Err(AlgebraError::InexactCocycle);
    }
    Ok(a.map_coeffs(|t, c| {
        let p: Phase = t.weight().iter().zip(z).map(|(w, zi)| zi.scale(*w)).sum();
        c.mul(&ctx.scalar::<S>(&p))
    }))
}

/// The part of `a` of weight `d(λ) − d(μ) = n`.
pub fn fourier_component<S: Scalar>(a: &AlgebraElement<S>, n: &[i64]) -> AlgebraElement<S> {
    a.filter(|t| t.weight() == n)
}

/// `w_N(n) = ∏_j max(0, 1 − |n_j|/(N_j + 1))`.
pub fn fejer_weight(big_n: &[u32], n: &[i64]) -> Rational {
    big_n.iter().zip(n).fold(Rational::one(), |acc, (nn, x)| {
        let w = Rational::one() - Rational::new(x.abs(), *nn as i64 + 1);
        if w <= Rational::zero() {
            Rational::zero()
        } else {
            acc * w
        }
    })
}

/// The Cesàro mean `σ_N(a) = Σ_n w_N(n) a_n`.
pub fn fejer_mean<S: Scalar>(a: &AlgebraElement<S>, big_n: &[u32]) -> AlgebraElement<S> {
    a.map_coeffs(|t, c| c.mul(&S::from_rational(fejer_weight(big_n, &t.weight()))))
}

/// `Σ_T |c_T| (1 − w_N(n_T))`, the total coefficient mass removed by `σ_N`.
pub fn fejer_defect<S: Scalar>(a: &AlgebraElement<S>, big_n: &[u32]) -> f64 {
    a.iter()
        .map(|(t, c)| {
            let w = fejer_weight(big_n, &t.weight());
            let w = *w.numer() as f64 / *w.denom() as f64;
            c.to_complex().norm() * (1.0 - w)
        })
        .sum()
}
