use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num::Complex;

use crate::algebra::{AlgebraElement, TwistContext};
use crate::grp::{lattice_box, CoeffGroup, Cocycle, Group, GroupElem};
use crate::kgraph::KGraph;
use crate::phase::{reduce_mod_one, Phase, Rational};
use crate::scalar::Scalar;

use super::BundleError;

type C64 = Complex<f64>;

/// Resolution settings for numeric fibre norms: `grid` points per circle of
/// the dual torus and the half-width of the box `[-radius, radius]^k` for the
/// regular representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepConfig {
    pub grid: usize,
    pub radius: i64,
}

impl Default for RepConfig {
    fn default() -> Self {
        RepConfig { grid: 64, radius: 12 }
    }
}

impl RepConfig {
    pub fn validate(&self) -> Result<(), BundleError> {
        if self.grid < 8 {
            return Err(BundleError::Config(format!("grid {} below 8", self.grid)));
        }
        if self.radius < 0 {
            return Err(BundleError::Config(format!("negative box radius {}", self.radius)));
        }
        Ok(())
    }
}

/// An element `Σ c_g δ_g` of a twisted group algebra of ℤ^k.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GroupAlgebraElement {
    coeffs: BTreeMap<Vec<i64>, C64>,
}

impl GroupAlgebraElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, g: Vec<i64>, c: C64) {
        *self.coeffs.entry(g).or_insert(C64::new(0.0, 0.0)) += c;
    }

    pub fn with(mut self, g: Vec<i64>, c: C64) -> Self {
        self.add(g, c);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &C64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, g: &[i64]) -> C64 {
        self.coeffs.get(g).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Group rank, or `None` for the empty element.
    pub fn rank(&self) -> Option<usize> {
        self.coeffs.keys().next().map(Vec::len)
    }

    /// Rewrites an element of the algebra of a single-vertex graph with one
    /// loop per color, twisted by `σ` along the degree functor, in the basis
    /// `δ_g`: `t_λ t_μ* = σ̄(m,−m) σ(l,−m) δ_{l−m}` with `l = d(λ)`, `m = d(μ)`.
    pub fn from_terms<S: Scalar>(
        graph: &KGraph,
        sigma: &Cocycle,
        a: &AlgebraElement<S>,
    ) -> Result<Self, BundleError> {
        let k = graph.rank();
        if !is_single_loop_graph(graph) {
            return Err(BundleError::UnsupportedShape(
                "need a single vertex with exactly one loop of each color".into(),
            ));
        }
        if sigma.group() != &Group::Zk(k) || sigma.coeff_group() != CoeffGroup::Circle {
            return Err(BundleError::UnsupportedShape(format!(
                "need a circle-valued cocycle on Z^{k}, got {} with {:?} values",
                sigma.group(),
                sigma.coeff_group()
            )));
        }
        let mut out = GroupAlgebraElement::new();
        for (t, c) in a.iter() {
            let l: Vec<i64> = t.lambda().degree().iter().map(|x| *x as i64).collect();
            let m: Vec<i64> = t.mu().degree().iter().map(|x| *x as i64).collect();
            let neg_m = GroupElem::Zk(m.iter().map(|x| -x).collect());
            let (lg, mg) = (GroupElem::Zk(l.clone()), GroupElem::Zk(m.clone()));
            let phase = sigma.eval_phase(&lg, &neg_m)? - sigma.eval_phase(&mg, &neg_m)?;
            let g: Vec<i64> = l.iter().zip(&m).map(|(x, y)| x - y).collect();
            out.add(g, c.to_complex() * phase.to_complex());
        }
        out.coeffs.retain(|_, c| c.norm() > 0.0);
        Ok(out)
    }

    /// [`GroupAlgebraElement::from_terms`] for a context twisted along the
    /// degree functor.
    pub fn from_context<S: Scalar>(ctx: &TwistContext, a: &AlgebraElement<S>) -> Result<Self, BundleError> {
        let g = ctx.graph();
        for (e, edge) in g.edges().iter().enumerate() {
            let mut unit = vec![0; g.rank()];
            unit[edge.color] = 1;
            if ctx.functor().edge_value(e) != &GroupElem::Zk(unit) {
                return Err(BundleError::UnsupportedShape("functor is not the degree functor".into()));
            }
        }
        GroupAlgebraElement::from_terms(g, ctx.cocycle(), a)
    }

    /// `Σ c_{ab} u^a v^b` for the rotation cocycle `A = [[0, θ], [0, 0]]`,
    /// where `u^a v^b = e^{2πiθab} δ_{(a,b)}`.
    pub fn from_monomials(theta: Rational, monomials: &[((i64, i64), C64)]) -> Self {
        let mut out = GroupAlgebraElement::new();
        for ((a, b), c) in monomials {
            let p = Phase::exact(theta).scale(a * b);
            out.add(vec![*a, *b], c * p.to_complex());
        }
        out
    }
}

fn is_single_loop_graph(g: &KGraph) -> bool {
    g.num_vertices() == 1 && (0..g.rank()).all(|c| g.edges_into(0, c).len() == 1)
}

/// Largest singular value of a dense complex matrix, via the top eigenvalue
/// of `M^H M`.
pub(crate) fn operator_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let h = m.adjoint() * m;
    let top = h.symmetric_eigenvalues().iter().copied().fold(0.0f64, f64::max);
    top.max(0.0).sqrt()
}

/// The norm of the left regular representation
/// `λ(δ_s)δ_h = σ(s,h) δ_{s+h}` compressed to the box `[-radius, radius]^k`.
/// The matrix entry at `(g₂, g₁)` is `σ(g₂−g₁, g₁) c_{g₂−g₁}`.
pub fn trunc_regular_norm(a: &GroupAlgebraElement, sigma: &Cocycle, radius: i64) -> Result<f64, BundleError> {
    if radius < 0 {
        return Err(BundleError::Config("empty box".into()));
    }
    let Group::Zk(k) = *sigma.group() else {
        return Err(BundleError::UnsupportedShape("regular representation needs Z^k".into()));
    };
    if sigma.coeff_group() != CoeffGroup::Circle {
        return Err(BundleError::UnsupportedShape("cocycle must be circle-valued".into()));
    }
    if let Some(r) = a.rank() {
        if r != k {
            return Err(BundleError::DimensionMismatch { expected: k, found: r });
        }
    }
    let points = lattice_box(k, radius);
    let index: HashMap<&[i64], usize> = points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = points.len();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for (j, h) in points.iter().enumerate() {
        for (s, c) in a.iter() {
            let target: Vec<i64> = s.iter().zip(h).map(|(x, y)| x + y).collect();
            if let Some(&i) = index.get(target.as_slice()) {
                let p = sigma.eval_phase(&GroupElem::Zk(s.clone()), &GroupElem::Zk(h.clone()))?;
                m[(i, j)] += c * p.to_complex();
            }
        }
    }
    Ok(operator_norm(&m))
}

/// Grid maximum over `(z₁, z₂) ∈ 𝕋²` of the norm of the `q×q` matrix obtained
/// from `a` (in the `δ` basis of the rotation cocycle with angle `θ = p/q`)
/// by `δ_{(a,b)} ↦ z₁^a z₂^b S^b C^a`, where `C = diag(ω^j)`, `S` is the cyclic
/// shift and `CS = ωSC` with `ω = e^{2πiθ}`.
pub fn torus_fiber_norm(a: &GroupAlgebraElement, theta: Rational, grid: usize) -> Result<f64, BundleError> {
    if grid < 8 {
        return Err(BundleError::Config(format!("grid {grid} below 8")));
    }
    if let Some(r) = a.rank() {
        if r != 2 {
            return Err(BundleError::UnsupportedShape(format!("fibre norms need rank 2, got {r}")));
        }
    }
    let theta = reduce_mod_one(theta);
    let q = *theta.denom() as usize;
    let omega = Phase::exact(theta);
    // δ_{(a,b)} e_j = ω^{aj} e_{j+b}, before the torus phases
    let blocks: Vec<(i64, i64, Vec<(usize, usize, C64)>)> = a
        .iter()
        .map(|(g, c)| {
            let (ea, eb) = (g[0], g[1]);
            let entries = (0..q)
                .map(|j| {
                    let row = (j as i64 + eb).rem_euclid(q as i64) as usize;
                    (row, j, c * omega.scale(ea * j as i64).to_complex())
                })
                .collect();
            (ea, eb, entries)
        })
        .collect();
    let mut best = 0.0f64;
    for s in 0..grid {
        for t in 0..grid {
            let mut m = DMatrix::<C64>::zeros(q, q);
            for (ea, eb, entries) in &blocks {
                let z = (Phase::from_ratio(s as i64, grid as i64).scale(*ea)
                    + Phase::from_ratio(t as i64, grid as i64).scale(*eb))
                .to_complex();
                for (i, j, c) in entries {
                    m[(*i, *j)] += z * c;
                }
            }
            best = best.max(operator_norm(&m));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::kgraph::examples::{e2, t2};
    use crate::kgraph::KGraph;
    use std::sync::Arc;

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    fn hofstadter() -> GroupAlgebraElement {
        [vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
            .into_iter()
            .fold(GroupAlgebraElement::new(), |a, g| a.with(g, one()))
    }

    #[test]
    fn unitary_generator_has_norm_one() {
        let u = GroupAlgebraElement::new().with(vec![1, 0], one());
        let sigma = Cocycle::rotation(Rational::new(2, 7));
        assert!((trunc_regular_norm(&u, &sigma, 1).unwrap() - 1.0).abs() < 1e-12);
        for theta in [Rational::new(0, 1), Rational::new(1, 3), Rational::new(3, 5)] {
            assert!((torus_fiber_norm(&u, theta, 8).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn commutative_hofstadter_is_four() {
        let n = torus_fiber_norm(&hofstadter(), Rational::new(0, 1), 16).unwrap();
        assert!((n - 4.0).abs() < 1e-6);
    }

    #[test]
    fn half_rotation_hofstadter() {
        let n = torus_fiber_norm(&hofstadter(), Rational::new(1, 2), 64).unwrap();
        assert!((n - 2.0 * 2f64.sqrt()).abs() < 1e-4, "{n}");
    }

    #[test]
    fn empty_and_bad_configs() {
        let u = GroupAlgebraElement::new().with(vec![1, 0], one());
        let sigma = Cocycle::rotation(Rational::new(1, 2));
        assert!(trunc_regular_norm(&u, &sigma, -1).is_err());
        assert!(torus_fiber_norm(&u, Rational::new(1, 2), 4).is_err());
        assert!(RepConfig { grid: 7, radius: 3 }.validate().is_err());
        assert!(RepConfig::default().validate().is_ok());
        let w = GroupAlgebraElement::new().with(vec![1], one());
        assert!(trunc_regular_norm(&w, &sigma, 2).is_err());
    }

    #[test]
    fn conversion_from_terms() {
        let theta = Rational::new(1, 3);
        let ctx = TwistContext::degree(Arc::new(t2()), Cocycle::rotation(theta)).unwrap();
        let g = ctx.graph();
        let ef: AlgebraElement<Cyclo> = ctx.elem(ctx.t(&g.path(&["e", "f"]).unwrap()));
        let fe: AlgebraElement<Cyclo> =
            ctx.mul(&ctx.elem(ctx.t(&g.path(&["f"]).unwrap())), &ctx.elem(ctx.t(&g.path(&["e"]).unwrap())));
        let a = GroupAlgebraElement::from_context(&ctx, &ef).unwrap();
        assert!((a.coeff(&[1, 1]) - one()).norm() < 1e-15);
        // uv = e^{2πiθ} δ_{(1,1)}
        let uv = GroupAlgebraElement::from_monomials(theta, &[((1, 1), one())]);
        let b = GroupAlgebraElement::from_context(&ctx, &fe).unwrap();
        assert!((uv.coeff(&[1, 1]) - Phase::exact(theta).to_complex()).norm() < 1e-15);
        assert!((b.coeff(&[1, 1]) - one()).norm() < 1e-15);
        let star: AlgebraElement<Cyclo> = ctx.elem(ctx.t_star(&g.path(&["e"]).unwrap()));
        let s = GroupAlgebraElement::from_context(&ctx, &star).unwrap();
        assert!((s.coeff(&[-1, 0]) - one()).norm() < 1e-15);
    }

    #[test]
    fn conversion_rejects_other_shapes() {
        let ctx = TwistContext::untwisted(Arc::new(e2())).unwrap();
        let a: AlgebraElement<Cyclo> = ctx.unit();
        assert!(matches!(
            GroupAlgebraElement::from_context(&ctx, &a),
            Err(BundleError::UnsupportedShape(_))
        ));
        let g = KGraph::one_loop_per_color(2);
        let sigma = Cocycle::trivial(Group::Zk(1), CoeffGroup::Circle);
        assert!(GroupAlgebraElement::from_terms(&g, &sigma, &a).is_err());
    }

    #[test]
    fn regrep_monotone_in_box() {
        let a = GroupAlgebraElement::new()
            .with(vec![0, 0], C64::new(0.5, 0.0))
            .with(vec![1, 2], C64::new(0.0, 1.0))
            .with(vec![-1, 1], C64::new(-1.0, 0.5));
        let sigma = Cocycle::rotation(Rational::new(2, 5));
        let mut prev = 0.0;
        for r in 0..5 {
            let n = trunc_regular_norm(&a, &sigma, r).unwrap();
            assert!(n + 1e-12 >= prev);
            prev = n;
        }
    }
}
