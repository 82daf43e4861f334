//! Seeded random paths, terms and elements for property checks.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::kgraph::{KGraph, Path};
use crate::phase::{Phase, Rational};
use crate::scalar::Scalar;

use super::{AlgebraElement, Term, TwistContext};

fn random_degree<R: Rng>(rng: &mut R, max: &[u32]) -> Vec<u32> {
    max.iter().map(|m| rng.random_range(0..=*m)).collect()
}

/// A random path with range `v` and degree at most `max`, built edge by edge
/// in color order.
pub fn random_path_from<R: Rng>(graph: &KGraph, rng: &mut R, v: usize, max: &[u32]) -> Path {
    let d = random_degree(rng, max);
    let mut word = Vec::new();
    let mut cur = v;
    for (c, n) in d.iter().enumerate() {
        for _ in 0..*n {
            let e = *graph.edges_into(cur, c).choose(rng).expect("no sources");
            word.push(e);
            cur = graph.edge(e).source;
        }
    }
    if word.is_empty() {
        Path::vertex(graph, v)
    } else {
        Path::from_word(graph, &word).expect("walk is composable")
    }
}

pub fn random_path<R: Rng>(graph: &KGraph, rng: &mut R, max: &[u32]) -> Path {
    let v = rng.random_range(0..graph.num_vertices());
    random_path_from(graph, rng, v, max)
}

/// A random path with source `w`, walking backwards from `w`. Falls back to
/// shorter paths when `w` emits no edge of a needed color.
pub fn random_path_to<R: Rng>(graph: &KGraph, rng: &mut R, w: usize, max: &[u32]) -> Path {
    let d = random_degree(rng, max);
    let mut rev = Vec::new();
    let mut cur = w;
    for c in (0..graph.rank()).rev() {
        for _ in 0..d[c] {
            let out: Vec<usize> =
                (0..graph.edges().len()).filter(|e| graph.edge(*e).source == cur && graph.edge(*e).color == c).collect();
            let Some(e) = out.choose(rng) else { break };
            rev.push(*e);
            cur = graph.edge(*e).range;
        }
    }
    if rev.is_empty() {
        return Path::vertex(graph, w);
    }
    rev.reverse();
    Path::from_word(graph, &rev).expect("backward walk is composable")
}

pub fn random_term<R: Rng>(ctx: &TwistContext, rng: &mut R, max: &[u32]) -> Term {
    let g = ctx.graph();
    let lambda = random_path(g, rng, max);
    let mu = random_path_to(g, rng, lambda.source(), max);
    ctx.term(lambda, mu).expect("sources agree")
}

/// A scalar `(p/q)·e^{2πi j/N}` with small `p`, `q` and `N` the cocycle's
/// conductor.
pub fn random_scalar<S: Scalar, R: Rng>(ctx: &TwistContext, rng: &mut R) -> S {
    let n = ctx.cocycle().conductor().max(2);
    let p = rng.random_range(-3i64..=3);
    let q = rng.random_range(1i64..=3);
    let p = if p == 0 { 1 } else { p };
    let j = rng.random_range(0..n);
    S::from_rational(Rational::new(p, q)).mul(&S::from_phase(&Phase::from_ratio(j, n)).expect("rational phase"))
}

pub fn random_element<S: Scalar, R: Rng>(ctx: &TwistContext, rng: &mut R, terms: usize, max: &[u32]) -> AlgebraElement<S> {
    (0..terms).map(|_| (random_term(ctx, rng, max), random_scalar(ctx, rng))).collect()
}
