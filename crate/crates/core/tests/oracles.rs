mod common;

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use kgraph_twist::algebra::{fejer_mean, random::random_element, random::random_term, AlgebraElement, TwistContext};
use kgraph_twist::bundle::{trunc_regular_norm, GroupAlgebraElement};
use kgraph_twist::cyclo::Cyclo;
use kgraph_twist::grp::{CoeffGroup, Cocycle, Group};
use kgraph_twist::kgraph::examples::{c3, e2, t2};
use kgraph_twist::phase::Rational;

#[test]
fn term_mul_matches_clock_shift() {
    for (p, q) in [(1, 2), (1, 3), (2, 5), (3, 7)] {
        let theta = Rational::new(p, q);
        let ctx = TwistContext::degree(Arc::new(t2()), Cocycle::rotation(theta)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        for _ in 0..60 {
            let (x, y) = (random_term(&ctx, &mut rng, &[3, 3]), random_term(&ctx, &mut rng, &[3, 3]));
            let got = element_matrix(theta, &ctx.term_mul::<Cyclo>(&x, &y));
            let want = term_matrix(theta, &x) * term_matrix(theta, &y);
            assert!(max_abs(&(got - want)) < 1e-10, "θ = {theta}");
        }
    }
}

#[test]
fn clock_shift_commutation() {
    let theta = Rational::new(2, 5);
    let (c, s) = clock_shift(theta);
    let w = num::Complex::from_polar(1.0, std::f64::consts::TAU * 0.4);
    assert!(max_abs(&(&c * &s - (&s * &c).map(|x| x * w))) < 1e-12);
}

#[test]
fn cuntz_products_by_prefix() {
    let g = Arc::new(e2());
    let ctx = TwistContext::untwisted(g.clone()).unwrap();
    let paths = paths_upto(&g, 2);
    let terms: Vec<_> = paths.iter().flat_map(|l| paths.iter().map(move |m| (l, m))).collect();
    for x in &terms {
        for y in &terms {
            let got = ctx.term_mul::<Cyclo>(&ctx.term(x.0.clone(), x.1.clone()).unwrap(), &ctx.term(y.0.clone(), y.1.clone()).unwrap());
            let want = match cuntz_product(&g, *x, *y) {
                Some((l, m)) => ctx.elem(ctx.term(l, m).unwrap()),
                None => AlgebraElement::zero(),
            };
            assert!(ctx.eq_mod_relations(&got, &want), "{} {}", g.path_label(x.1), g.path_label(y.0));
        }
    }
}

#[test]
fn fejer_mean_is_the_cesaro_average() {
    for (g, max) in [(t2(), vec![3, 3]), (c3(), vec![4]), (e2(), vec![3])] {
        let ctx = TwistContext::untwisted(Arc::new(g)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a: AlgebraElement<Cyclo> = random_element(&ctx, &mut rng, 5, &max);
            for n in 0..4u32 {
                let big_n = vec![n; max.len()];
                assert_eq!(fejer_mean(&a, &big_n), cesaro_mean(&a, &big_n));
            }
        }
    }
}

fn dense_norm(m: &DMatrix<C64>) -> f64 {
    m.clone().svd(false, false).singular_values.iter().copied().fold(0.0, f64::max)
}

#[test]
fn regular_norm_matches_dense_svd() {
    let one = C64::new(1.0, 0.0);
    let a = GroupAlgebraElement::new().with(vec![0], one).with(vec![1], one);
    let sigma = Cocycle::trivial(Group::Zk(1), CoeffGroup::Circle);
    let m = DMatrix::from_fn(21, 21, |i, j| if i == j || i == j + 1 { one } else { C64::new(0.0, 0.0) });
    let got = trunc_regular_norm(&a, &sigma, 10).unwrap();
    assert!((got - dense_norm(&m)).abs() < 1e-10);
    assert!(got < 2.0 && got > 1.98);
}

#[test]
fn twisted_regular_norm_matches_dense_svd() {
    let theta = Rational::new(1, 3);
    let r = 3i64;
    let sigma = Cocycle::rotation(theta);
    let one = C64::new(1.0, 0.0);
    let a = GroupAlgebraElement::new()
        .with(vec![1, 0], one)
        .with(vec![-1, 0], one)
        .with(vec![0, 1], one)
        .with(vec![0, -1], one);
    let pts: Vec<(i64, i64)> = (-r..=r).flat_map(|x| (-r..=r).map(move |y| (x, y))).collect();
    let n = pts.len();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let (s, h) = ((pts[i].0 - pts[j].0, pts[i].1 - pts[j].1), pts[j]);
        let c = a.coeff(&[s.0, s.1]);
        let phase = std::f64::consts::TAU * (s.0 * h.1) as f64 / 3.0;
        c * C64::from_polar(1.0, phase)
    });
    let got = trunc_regular_norm(&a, &sigma, r).unwrap();
    assert!((got - dense_norm(&m)).abs() < 1e-10);
}
