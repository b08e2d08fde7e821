mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{ctx_factored, ctx_from, small_element};
use supell::centext::{
    ce_basis, ce_cocycle, ce_partial, ce_reduce, ce_shape, lie_bracket, BasisLabel, CentralClass,
};
use supell::field::Field;
use supell::liealg::delta;
use supell::oracle::{o_cokernel_coords, o_cokernel_dim};
use supell::poly::p_has_multiple_roots;
use supell::ring::{Ctx, RingElement, Variant};
use supell::simplicity::{simp_check, simp_verify_witness, Reason, WitnessIdeal, WitnessKind};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn centext_contexts() -> Vec<Ctx> {
    vec![
        ctx_factored(2, 1, &[1, -1], 1, Variant::R),
        ctx_factored(3, 0, &[1], 1, Variant::R),
        ctx_factored(2, 2, &[1, 2], 1, Variant::R),
        ctx_factored(3, 1, &[-1, 2], 1, Variant::R),
        ctx_factored(4, 1, &[1], 1, Variant::R),
        ctx_from(2, &[0, -1, 0, 1], Variant::S),
        ctx_from(3, &[2, 0, 1], Variant::S),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simplicity_matches_root_predicate(
        m in 2usize..=4,
        l in 0usize..=3,
        roots in prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 2, 3]), 0..4),
    ) {
        prop_assume!(l + roots.len() >= 1);
        let distinct = roots.iter().enumerate().all(|(i, r)| !roots[..i].contains(r));
        for v in [Variant::R, Variant::S] {
            let ctx = ctx_factored(m, l, &roots, 1, v);
            let report = simp_check(&ctx).unwrap();
            let expected = match v {
                Variant::S => !p_has_multiple_roots(ctx.p()).unwrap(),
                Variant::R if roots.is_empty() => gcd(l, m) == 1,
                Variant::R => distinct,
            };
            prop_assert_eq!(report.simple, expected, "m={} l={} roots={:?} {:?}", m, l, &roots, v);
            if !report.simple {
                let w = report.witness.expect("witness over Q");
                let window = 3 * (ctx.deg_p() + m) as i64;
                prop_assert!(simp_verify_witness(&ctx, &w, window).unwrap());
            }
        }
    }

    #[test]
    fn reduce_is_linear_and_kills_images(ci in 0usize..7, seed in any::<u64>()) {
        let ctx = &centext_contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (small_element(ctx, &mut rng, 3), small_element(ctx, &mut rng, 3));
        prop_assert!(ce_reduce(&ce_partial(&x)).unwrap().is_zero());
        let c = ctx.field().from_ratio(-3, 2);
        let lhs = ce_reduce(&(&x + &y.scale(&c))).unwrap();
        let rhs = ce_reduce(&x).unwrap().add(&ce_reduce(&y).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_matches_dense_oracle(ci in 0usize..7, seed in any::<u64>()) {
        let ctx = &centext_contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = small_element(ctx, &mut rng, 3);
        let basis = ce_basis(ctx).unwrap();
        let labels: Vec<(usize, i64)> = basis.labels.iter().map(|l| (l.u, l.t)).collect();
        let shape = ce_shape(ctx).unwrap();
        let w = 2 * (shape.n + shape.l) as i64 + 8;
        let coords = o_cokernel_coords(ctx, &labels, x.comps(), w).expect("solvable in the window");
        let class = ce_reduce(&x).unwrap();
        for (label, c) in basis.labels.iter().zip(&coords) {
            prop_assert_eq!(class.get(label).cloned().unwrap_or_else(|| ctx.field().zero()), c.clone());
        }
    }

    #[test]
    fn cocycle_laws(ci in 0usize..7, seed in any::<u64>()) {
        let ctx = &centext_contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g, h) = (small_element(ctx, &mut rng, 2), small_element(ctx, &mut rng, 2), small_element(ctx, &mut rng, 2));
        let w = |a: &RingElement, b: &RingElement| ce_cocycle(a, b).unwrap();
        prop_assert!(w(&f, &g).add(&w(&g, &f)).is_zero());
        prop_assert!(w(&f, &f).is_zero());
        let sum = [w(&lie_bracket(&f, &g), &h), w(&lie_bracket(&g, &h), &f), w(&lie_bracket(&h, &f), &g)]
            .iter()
            .fold(CentralClass::zero(), |acc, c| acc.add(c));
        prop_assert!(sum.is_zero());
        prop_assert!(w(&RingElement::one(ctx), &g).is_zero());
    }
}

#[test]
fn dimensions_stabilise() {
    for ctx in centext_contexts() {
        let dims: Vec<usize> = [10, 14, 18].iter().map(|&w| o_cokernel_dim(&ctx, w)).collect();
        assert!(dims.windows(2).all(|p| p[0] == p[1]), "{dims:?}");
        assert_eq!(dims[0], ce_basis(&ctx).unwrap().labels.len());
    }
}

#[test]
fn declared_bases_are_complements() {
    let all_roots = [1, -1, 2];
    for m in 2..=4 {
        for n in 1..=3 {
            for l in 0..=2 {
                let ctx = ctx_factored(m, l, &all_roots[..n], 1, Variant::R);
                let labels: Vec<(usize, i64)> = ce_basis(&ctx).unwrap().labels.iter().map(|b| (b.u, b.t)).collect();
                // Solving for x = 0 still runs the oracle's independence check.
                assert!(o_cokernel_coords(&ctx, &labels, &[], 2 * (n + l) as i64 + 6).is_some(), "m={m} n={n} l={l}");
            }
        }
    }
}

#[test]
fn basis_elements_reduce_to_themselves() {
    for ctx in centext_contexts() {
        let k = ctx.field().clone();
        for label in ce_basis(&ctx).unwrap().labels {
            let x = RingElement::monomial(&ctx, k.one(), label.t, label.u).unwrap();
            let class = ce_reduce(&x).unwrap();
            assert_eq!(class, CentralClass::from_coords([(label, k.one())]), "{label}");
        }
    }
}

#[test]
fn kernel_element_of_monomial_trap() {
    let ctx = ctx_from(2, &[0, 0, 1], Variant::R);
    let report = simp_check(&ctx).unwrap();
    assert_eq!(report.reason, Reason::MonomialGcdTrap);
    match report.witness.unwrap().kind {
        WitnessKind::KernelElement(x) => assert!(delta(&ctx).apply(&x).is_zero()),
        other => panic!("{other:?}"),
    }
    let ctx = ctx_from(4, &[0, 0, 0, 0, 0, 0, 1], Variant::R);
    match simp_check(&ctx).unwrap().witness.unwrap().kind {
        WitnessKind::KernelElement(x) => assert!(delta(&ctx).apply(&x).is_zero()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bogus_witnesses_are_rejected() {
    let k = Field::rationals();
    // (t − 1, u) is not stable when 1 is a simple root.
    let ctx = ctx_factored(2, 1, &[1, -1], 1, Variant::R);
    let w = WitnessIdeal::root_ideal(&ctx, k.one());
    assert!(!simp_verify_witness(&ctx, &w, 20).unwrap());
    // The unit ideal is stable but not proper.
    let w = WitnessIdeal { kind: WitnessKind::RootIdeal(k.one()), generators: vec![RingElement::one(&ctx)] };
    assert!(!simp_verify_witness(&ctx, &w, 20).unwrap());
}

#[test]
fn central_class_labels_parse() {
    let l = BasisLabel { u: 2, t: -3 };
    assert_eq!(BasisLabel::parse(&l.to_string()), Some(l));
}
