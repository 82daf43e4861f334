#![allow(dead_code)]

use nalgebra::DMatrix;
use num::Complex;

use kgraph_twist::algebra::{fourier_component, AlgebraElement, Term};
use kgraph_twist::kgraph::{KGraph, Path};
use kgraph_twist::phase::Rational;
use kgraph_twist::scalar::Scalar;

pub type C64 = Complex<f64>;

fn omega(theta: Rational, n: i64) -> C64 {
    let x = std::f64::consts::TAU * (*theta.numer() as f64) * (n as f64) / (*theta.denom() as f64);
    C64::new(x.cos(), x.sin())
}

/// Clock `C = diag(ω^j)` and shift `S e_j = e_{j+1}` for `θ = p/q`, so that
/// `CS = ω SC`.
pub fn clock_shift(theta: Rational) -> (DMatrix<C64>, DMatrix<C64>) {
    let q = *theta.denom() as usize;
    let c = DMatrix::from_fn(q, q, |i, j| if i == j { omega(theta, i as i64) } else { C64::new(0.0, 0.0) });
    let s = DMatrix::from_fn(q, q, |i, j| if i == (j + 1) % q { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    (c, s)
}

fn power(m: &DMatrix<C64>, n: u32) -> DMatrix<C64> {
    (0..n).fold(DMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

/// `t_λ ↦ ω^{−ab} C^a S^b` for `d(λ) = (a,b)`: a representation of the
/// torus graph twisted by `σ(m,n) = e^{2πiθ m₁n₂}`.
pub fn path_matrix(theta: Rational, p: &Path) -> DMatrix<C64> {
    let (c, s) = clock_shift(theta);
    let (a, b) = (p.degree()[0], p.degree()[1]);
    (power(&c, a) * power(&s, b)).map(|x| x * omega(theta, -(a as i64) * (b as i64)))
}

pub fn term_matrix(theta: Rational, t: &Term) -> DMatrix<C64> {
    path_matrix(theta, t.lambda()) * path_matrix(theta, t.mu()).adjoint()
}

pub fn element_matrix<S: Scalar>(theta: Rational, a: &AlgebraElement<S>) -> DMatrix<C64> {
    let q = *theta.denom() as usize;
    a.iter().fold(DMatrix::zeros(q, q), |acc, (t, c)| acc + term_matrix(theta, t).map(|x| x * c.to_complex()))
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `σ_N(a)` as the literal Cesàro average of the partial sums
/// `Σ_{|n_j| ≤ M_j} a_n` over `0 ≤ M ≤ N`.
pub fn cesaro_mean<S: Scalar>(a: &AlgebraElement<S>, big_n: &[u32]) -> AlgebraElement<S> {
    let mut boxes: Vec<Vec<u32>> = vec![vec![]];
    for n in big_n {
        boxes = boxes.into_iter().flat_map(|b| (0..=*n).map(move |x| [b.clone(), vec![x]].concat())).collect();
    }
    let weights: Vec<Vec<i64>> = {
        let mut w: Vec<Vec<i64>> = a.iter().map(|(t, _)| t.weight()).collect();
        w.sort();
        w.dedup();
        w
    };
    let mut total = AlgebraElement::zero();
    for m in &boxes {
        for n in &weights {
            if n.iter().zip(m).all(|(x, y)| x.unsigned_abs() <= *y as u64) {
                total = total.add(&fourier_component(a, n));
            }
        }
    }
    let count: i64 = big_n.iter().map(|n| *n as i64 + 1).product();
    total.scale(&S::from_rational(Rational::new(1, count)))
}

/// Products in the untwisted Cuntz algebra of a 1-graph by prefix matching:
/// `t_μ* t_ν` is `t_α` when `ν = μα`, `t_β*` when `μ = νβ` and zero otherwise.
pub fn cuntz_product(g: &KGraph, x: (&Path, &Path), y: (&Path, &Path)) -> Option<(Path, Path)> {
    let ((lambda, mu), (nu, tau)) = (x, y);
    let tail = |long: &Path, short: &Path| -> Option<Path> {
        if !long.edges().starts_with(short.edges()) || long.range() != short.range() {
            return None;
        }
        let rest = &long.edges()[short.len()..];
        Some(if rest.is_empty() { Path::vertex(g, short.source()) } else { Path::from_word(g, rest).unwrap() })
    };
    if let Some(alpha) = tail(nu, mu) {
        return Some((lambda.compose(g, &alpha).unwrap(), tau.clone()));
    }
    if let Some(beta) = tail(mu, nu) {
        return Some((lambda.clone(), tau.compose(g, &beta).unwrap()));
    }
    None
}

/// Every path of total length at most `n` in a 1-graph.
pub fn paths_upto(g: &KGraph, n: u32) -> Vec<Path> {
    (0..=n).flat_map(|l| (0..g.num_vertices()).flat_map(move |v| g.enumerate(v, &[l]).unwrap())).collect()
}
