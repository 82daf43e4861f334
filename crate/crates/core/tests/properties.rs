use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kgraph_twist::algebra::random::{random_element, random_path, random_path_from};
use kgraph_twist::algebra::{AlgebraElement, TwistContext};
use kgraph_twist::bundle::{torus_fiber_norm, trunc_regular_norm, GroupAlgebraElement};
use kgraph_twist::cyclo::Cyclo;
use kgraph_twist::grp::{Cocycle, FiniteGroup, Group, GroupElem};
use kgraph_twist::kgraph::examples::{c3, e2, flip2, t2, t3};
use kgraph_twist::kgraph::{Functor, KGraph, Path};
use kgraph_twist::phase::Rational;

fn rotation_ctx(g: KGraph, theta: Rational) -> TwistContext {
    let k = g.rank();
    let mut a = vec![vec![Rational::from_integer(0); k]; k];
    if k > 1 {
        a[0][1] = theta;
    } else {
        a[0][0] = theta;
    }
    TwistContext::degree(Arc::new(g), Cocycle::matrix_circle_rational(&a).unwrap()).unwrap()
}

fn graph(i: usize) -> KGraph {
    [t2(), e2(), c3(), flip2(), t3()][i].clone()
}

fn thetas() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![Rational::new(0, 1), Rational::new(1, 2), Rational::new(1, 3), Rational::new(2, 5)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(gi in 0usize..5, theta in thetas(), seed in any::<u64>()) {
        let ctx = rotation_ctx(graph(gi), theta);
        let max = vec![2; ctx.graph().rank()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c]: [AlgebraElement<Cyclo>; 3] = std::array::from_fn(|_| random_element(&ctx, &mut rng, 2, &max));
        let left = ctx.mul(&ctx.mul(&a, &b), &c);
        let right = ctx.mul(&a, &ctx.mul(&b, &c));
        prop_assert!(ctx.eq_mod_relations(&left, &right));
    }

    #[test]
    fn star_reverses_products(gi in 0usize..5, theta in thetas(), seed in any::<u64>()) {
        let ctx = rotation_ctx(graph(gi), theta);
        let max = vec![2; ctx.graph().rank()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: AlgebraElement<Cyclo> = random_element(&ctx, &mut rng, 3, &max);
        let b: AlgebraElement<Cyclo> = random_element(&ctx, &mut rng, 3, &max);
        prop_assert!(ctx.eq_mod_relations(&ctx.star(&ctx.mul(&a, &b)), &ctx.mul(&ctx.star(&b), &ctx.star(&a))));
        prop_assert_eq!(ctx.star(&ctx.star(&a)), a);
    }

    #[test]
    fn composition_and_factorization(gi in 0usize..5, seed in any::<u64>()) {
        let g = graph(gi);
        let max = vec![2; g.rank()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_path(&g, &mut rng, &max);
        let m = random_path_from(&g, &mut rng, l.source(), &max);
        let n = random_path_from(&g, &mut rng, m.source(), &max);
        let lm = l.compose(&g, &m).unwrap();
        prop_assert_eq!(lm.compose(&g, &n).unwrap(), l.compose(&g, &m.compose(&g, &n).unwrap()).unwrap());
        let (head, tail) = lm.split(&g, l.degree()).unwrap();
        prop_assert_eq!(&head, &l);
        prop_assert_eq!(&tail, &m);
        let d: Vec<u32> = l.degree().iter().zip(m.degree()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lm.degree(), &d[..]);
    }

    #[test]
    fn minimal_extensions_are_symmetric(gi in 0usize..5, seed in any::<u64>()) {
        let g = graph(gi);
        let max = vec![2; g.rank()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_path(&g, &mut rng, &max);
        let m = random_path_from(&g, &mut rng, l.range(), &max);
        let mut forward = g.lambda_min(&l, &m).unwrap();
        let mut backward: Vec<(Path, Path)> = g.lambda_min(&m, &l).unwrap().into_iter().map(|(a, b)| (b, a)).collect();
        forward.sort();
        backward.sort();
        prop_assert_eq!(&forward, &backward);
        for (a, b) in &forward {
            prop_assert_eq!(l.compose(&g, a).unwrap(), m.compose(&g, b).unwrap());
        }
    }

    #[test]
    fn functor_is_multiplicative(values in prop::collection::vec(0usize..6, 2), seed in any::<u64>()) {
        let s3 = FiniteGroup::new(vec![
            vec![0, 1, 2, 3, 4, 5], vec![1, 2, 0, 4, 5, 3], vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1], vec![4, 3, 5, 1, 0, 2], vec![5, 4, 3, 2, 1, 0],
        ]).unwrap();
        let target = Group::finite(s3);
        let g = e2();
        let eta = Functor::new(&g, target.clone(), values.into_iter().map(GroupElem::Finite).collect()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_path(&g, &mut rng, &[3]);
        let m = random_path_from(&g, &mut rng, l.source(), &[3]);
        let lm = l.compose(&g, &m).unwrap();
        prop_assert_eq!(eta.eval(&lm), target.mul(&eta.eval(&l), &eta.eval(&m)).unwrap());
    }

    #[test]
    fn enumeration_counts(a in 0u32..4, b in 0u32..4) {
        let g = flip2();
        let paths = g.enumerate(0, &[a, b]).unwrap();
        prop_assert_eq!(paths.len(), 1usize << (a + b));
        let mut seen = paths.clone();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), paths.len());
        for p in &paths {
            prop_assert_eq!(p.degree(), &[a, b][..]);
        }
        prop_assert_eq!(t2().enumerate(0, &[a, b]).unwrap().len(), 1);
        prop_assert_eq!(c3().enumerate(1, &[a]).unwrap().len(), 1);
    }

    #[test]
    fn regular_norm_grows_with_the_box(theta in thetas(), coeffs in prop::collection::vec(-2i32..=2, 9)) {
        let sigma = Cocycle::rotation(theta);
        let mut a = GroupAlgebraElement::new();
        for (i, c) in coeffs.iter().enumerate() {
            a.add(vec![i as i64 / 3 - 1, i as i64 % 3 - 1], num::Complex::new(*c as f64, 0.0));
        }
        let mut prev = 0.0;
        for r in 0..5 {
            let n = trunc_regular_norm(&a, &sigma, r).unwrap();
            prop_assert!(n >= prev - 1e-9);
            prev = n;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn regular_norm_below_fibre_norm(q in 2i64..=6, coeffs in prop::collection::vec(-2i32..=2, 9)) {
        let theta = Rational::new(1, q);
        let sigma = Cocycle::rotation(theta);
        let mut a = GroupAlgebraElement::new();
        for (i, c) in coeffs.iter().enumerate() {
            a.add(vec![i as i64 / 3 - 1, i as i64 % 3 - 1], num::Complex::new(*c as f64, 0.0));
        }
        let fibre = torus_fiber_norm(&a, theta, 64).unwrap();
        let regular = trunc_regular_norm(&a, &sigma, 16).unwrap();
        prop_assert!(regular <= fibre + 0.05, "regular {regular} fibre {fibre}");
    }
}
