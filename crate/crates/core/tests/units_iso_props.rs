mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{ints, nonzero_fe, small_element};
use supell::field::{Field, FieldElement};
use supell::isomorph::{aut_group, ctx_from_roots, image_of_p, iso_apply, iso_decide, iso_decide_all, AutGenerator, IsoKind};
use supell::oracle::o_pell_search;
use supell::poly::Poly;
use supell::ring::{AlgebraCtx, RingElement, Variant};
use supell::units::{pell_power, u_djkm_factor, u_pell, u_tau, DjkmCtx, PellOutcome};

fn djkm() -> DjkmCtx {
    DjkmCtx::new(Field::quadratic(2).unwrap().from_int(3)).unwrap()
}

fn same_multiset(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort();
    y.sort();
    x == y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pell_matches_oracle(low in prop::collection::vec(-3i64..=3, 4), quartic in any::<bool>()) {
        let k = Field::rationals();
        let deg = if quartic { 4 } else { 2 };
        let mut cs = low[..deg].to_vec();
        cs.push(1);
        let p = Poly::from_ints(&k, &cs);
        let all = o_pell_search(&p, 5);
        prop_assert!(all.iter().all(|s| s.verify(&p)));
        let oracle: Vec<_> = all.into_iter().filter(|s| s.k == 0).collect();
        match u_pell(&p, 5).unwrap() {
            PellOutcome::Found(s) => {
                prop_assert!(s.verify(&p));
                let least = oracle.iter().filter_map(|s| s.g.degree()).min();
                prop_assert_eq!(s.g.degree(), least);
            }
            PellOutcome::NotWithinBound { .. } | PellOutcome::NoSolution(_) => prop_assert!(oracle.is_empty()),
        }
    }

    #[test]
    fn pell_powers_are_solutions(n in 1u32..6, beta in 2i64..6) {
        let k = Field::rationals();
        // P = (t² − β)² − 1 has the unit (t² − β) + √P.
        let p = &Poly::from_ints(&k, &[-beta, 0, 1]).pow(2) - &Poly::one(&k);
        let PellOutcome::Found(s) = u_pell(&p, 4).unwrap() else { panic!("fundamental unit expected") };
        let (f, g) = pell_power(&p, &s.f, &s.g, n);
        prop_assert_eq!(&(&f * &f) - &(&(&g * &g) * &p), Poly::one(&k));
    }

    #[test]
    fn djkm_round_trip(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4, d in -4i64..=4) {
        let dctx = djkm();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = nonzero_fe(dctx.ctx.field(), &mut rng);
        let x = (dctx.lambda[1].pow_signed(b).unwrap() * dctx.lambda[2].pow_signed(d).unwrap()).shift(a).scale(&c);
        let f = u_djkm_factor(&dctx, &x).unwrap();
        prop_assert_eq!((f.e_t, f.e_1, f.e_2), (a, b, d));
        prop_assert_eq!(&f.scalar, &c);
        prop_assert!(f.reconstruct(&dctx) == x);
    }

    #[test]
    fn tau_laws(seed in any::<u64>()) {
        let dctx = djkm();
        let ctx = AlgebraCtx::new(2, dctx.p().clone(), Variant::S).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = small_element(&ctx, &mut rng, 3);
        let y = small_element(&ctx, &mut rng, 3);
        let t_divides = |z: &RingElement| z.comps().iter().all(|c| c.is_zero() || c.l_deg().unwrap().0 >= 1);
        prop_assume!(!x.is_zero() && !y.is_zero());
        if !t_divides(&x) {
            prop_assert!(u_tau(&u_tau(&x).unwrap()).unwrap() == x);
        }
        let lhs = u_tau(&(&x * &y)).unwrap();
        let rhs = &u_tau(&x).unwrap() * &u_tau(&y).unwrap();
        prop_assume!(!lhs.is_zero());
        // τ(xy) = t^k τ(x)τ(y) for some k.
        let shift = rhs.comps().iter().zip(lhs.comps()).find(|(r, _)| !r.is_zero()).map(|(r, l)| l.l_deg().unwrap().0 - r.l_deg().unwrap().0).unwrap();
        prop_assert!(rhs.shift(shift) == lhs);
    }

    #[test]
    fn iso_sound_and_complete(seed in any::<u64>(), size in prop::sample::select(vec![2usize, 4, 6]), gaussian in any::<bool>()) {
        let field = if gaussian { Field::gaussian() } else { Field::rationals() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Vec::new();
        while a.len() < size {
            let x = nonzero_fe(&field, &mut rng);
            if !a.contains(&x) {
                a.push(x);
            }
        }
        let c = nonzero_fe(&field, &mut rng);
        let mut scaled: Vec<_> = a.iter().map(|x| &c * x).collect();
        scaled.shuffle(&mut rng);
        let mut inverted: Vec<_> = a.iter().map(|x| &c * &x.inv().unwrap()).collect();
        inverted.shuffle(&mut rng);
        for b in [&scaled, &inverted] {
            let all = iso_decide_all(&a, b).unwrap();
            prop_assert!(!all.is_empty());
            let first = iso_decide(&a, b).unwrap();
            prop_assert_eq!(first.as_ref(), all.first());
            let (ca, cb) = (ctx_from_roots(&a).unwrap(), ctx_from_roots(b).unwrap());
            for w in &all {
                prop_assert!(w.verify(&a, b));
                prop_assert!(!w.sqrt_scalar.radicand.is_zero());
                let img = iso_apply(w, &RingElement::u(&ca), &cb).unwrap().square();
                prop_assert!(img.odd.is_zero());
                prop_assert_eq!(&img.even, &image_of_p(w, ca.p()));
                let tx = iso_apply(w, &RingElement::t(&ca), &cb).unwrap();
                prop_assert_eq!(&tx.even, &w.image_of_t());
            }
        }
        prop_assert!(all_kinds_present(&a, &scaled, &inverted, &c));
    }

    #[test]
    fn aut_group_consistency(seed in any::<u64>(), k in 1i64..=4, extra in any::<bool>()) {
        // Roots of unity of order 2k, optionally scaled by a random c.
        let cyclo: [&[i64]; 4] = [&[0, 1], &[1, 0, 1], &[1, -1, 1], &[1, 0, 0, 0, 1]];
        let field = Field::from_ints(cyclo[(k - 1) as usize]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zeta = if k == 1 { -field.one() } else { field.generator() };
        let s = if extra { nonzero_fe(&field, &mut rng) } else { field.one() };
        let roots: Vec<_> = (0..2 * k).map(|j| &s * &zeta.pow(j).unwrap()).collect();
        let g = aut_group(&roots).unwrap();
        let n = roots.len() as i64 / 2;
        prop_assert_eq!(g.k, 2 * k as u64);
        prop_assert!(((2 * n) as u64).is_multiple_of(g.k));
        for gen in &g.generators {
            match gen {
                AutGenerator::Scaling { zeta, order } => {
                    prop_assert!(zeta.pow(2 * n).unwrap().is_one());
                    prop_assert_eq!(zeta.root_of_unity_order(*order), Some(*order));
                    let moved: Vec<_> = roots.iter().map(|a| zeta * a).collect();
                    prop_assert!(same_multiset(&moved, &roots));
                }
                AutGenerator::Inversion { c, sign, radicand } => {
                    let prod = roots.iter().fold(field.one(), |acc, a| &acc * a);
                    let cn = c.pow(n).unwrap();
                    prop_assert_eq!(&prod, &if *sign == 1 { cn.clone() } else { -&cn });
                    let expected = if *sign == 1 { c.pow(n + 1).unwrap() } else { -&c.pow(n + 1).unwrap() };
                    prop_assert_eq!(radicand, &expected);
                }
                AutGenerator::Delta => {}
            }
        }
        // τ_ζ σ_c = σ_c τ_{ζ⁻¹}: ζ{a} = {a} and {a} = {c/a} give {a} = {(c/ζ)/a}.
        for c in &g.inversion_scalars {
            for j in 0..2 * k {
                let z = zeta.pow(j).unwrap();
                let cz = c * &z.inv().unwrap();
                let inv: Vec<_> = roots.iter().map(|a| &cz * &a.inv().unwrap()).collect();
                prop_assert!(same_multiset(&inv, &roots));
            }
        }
    }
}

fn all_kinds_present(a: &[FieldElement], scaled: &[FieldElement], inverted: &[FieldElement], c: &FieldElement) -> bool {
    let s = iso_decide_all(a, scaled).unwrap();
    let i = iso_decide_all(a, inverted).unwrap();
    s.iter().any(|w| w.kind == IsoKind::Scale(c.inv().unwrap())) && i.iter().any(|w| w.kind == IsoKind::Invert(c.clone()))
}

#[test]
fn aut_examples() {
    let q = Field::rationals();
    let g = aut_group(&ints(&q, &[1, 2])).unwrap();
    assert_eq!((g.k, g.has_inversion), (1, true));
    assert_eq!(g.inversion_scalars, ints(&q, &[2]));
    assert!(aut_group(&ints(&q, &[0, 1])).is_err());
}
