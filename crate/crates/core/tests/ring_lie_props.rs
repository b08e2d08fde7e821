mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{ctx_from, small_element};
use supell::field::Field;
use supell::liealg::{d_basis, d_bracket, d_bracket_m2, Derivation, M2Vector};
use supell::oracle::{o_is_derivation, o_ring_mul};
use supell::poly::LaurentPoly;
use supell::ring::{r_conj, r_is_unit, r_norm, Ctx, RingElement, Variant};

fn contexts() -> Vec<Ctx> {
    vec![
        ctx_from(2, &[0, -1, 0, 1], Variant::R),
        ctx_from(3, &[-1, 1], Variant::R),
        ctx_from(2, &[1, 0, -2, 1], Variant::S),
        ctx_from(4, &[0, 0, 1, 1], Variant::R),
        ctx_from(3, &[0, 1, -2, 1], Variant::S),
    ]
}

fn derivation(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Derivation {
    let mut d = Derivation::zero(ctx);
    for b in d_basis(ctx) {
        d = d.try_add(&b.mul_ring(&small_element(ctx, rng, 1))).unwrap();
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(ci in 0usize..5, seed in any::<u64>()) {
        let ctx = &contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (small_element(ctx, &mut rng, 2), small_element(ctx, &mut rng, 2), small_element(ctx, &mut rng, 2));
        prop_assert!(&(&x * &y) * &z == &x * &(&y * &z));
        prop_assert!(&x * &(&y + &z) == &(&x * &y) + &(&x * &z));
        prop_assert!(&x * &y == &y * &x);
        let naive = o_ring_mul(ctx.m(), ctx.p(), x.comps(), y.comps());
        prop_assert!((&x * &y).comps() == &naive[..]);
    }

    #[test]
    fn norm_is_multiplicative(ci in 0usize..5, seed in any::<u64>()) {
        let ctx = &contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (small_element(ctx, &mut rng, 2), small_element(ctx, &mut rng, 2));
        prop_assert_eq!(r_norm(&(&x * &y)), &r_norm(&x) * &r_norm(&y));
    }

    #[test]
    fn inverses_and_conjugation(seed in any::<u64>(), a in -3i64..=3, e in -3i64..=3) {
        let ctx = ctx_from(2, &[-1, 0, 1], Variant::R);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = ctx.field().clone();
        // (t + u)^e·t^a·c is a unit of R_2(t² − 1).
        let unit = (&RingElement::t(&ctx) + &RingElement::u(&ctx)).pow_signed(e).unwrap().shift(a).scale(&k.from_int(3));
        let inv = r_is_unit(&unit).expect("a unit");
        prop_assert!((&unit * &inv) == RingElement::one(&ctx));
        let x = small_element(&ctx, &mut rng, 2);
        if let Some(y) = r_is_unit(&x) {
            prop_assert!((&x * &y) == RingElement::one(&ctx));
        }
        let y = small_element(&ctx, &mut rng, 2);
        let cx = r_conj(&x).unwrap();
        prop_assert!(r_conj(&(&x * &y)).unwrap() == &cx * &r_conj(&y).unwrap());
        prop_assert!(r_conj(&(&x + &y)).unwrap() == &cx + &r_conj(&y).unwrap());
        prop_assert!(r_conj(&cx).unwrap() == x);
    }

    #[test]
    fn brackets(ci in 0usize..5, seed in any::<u64>()) {
        let ctx = &contexts()[ci];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (derivation(ctx, &mut rng), derivation(ctx, &mut rng), derivation(ctx, &mut rng));
        let br = |x: &Derivation, y: &Derivation| d_bracket(x, y).unwrap();
        let ab = br(&a, &b);
        prop_assert!(ab.try_add(&br(&b, &a)).unwrap().is_zero());
        prop_assert!(ab.is_valid());
        prop_assert!(o_is_derivation(ctx.m(), ctx.p(), ab.f().comps(), ab.h().comps()));
        let jac = br(&ab, &c).try_add(&br(&br(&b, &c), &a)).unwrap().try_add(&br(&br(&c, &a), &b)).unwrap();
        prop_assert!(jac.is_zero());
        // A bracket acts as the commutator of the two actions.
        let x = small_element(ctx, &mut rng, 2);
        prop_assert!(ab.apply(&x) == &a.apply(&b.apply(&x)) - &b.apply(&a.apply(&x)));
    }

    #[test]
    fn m2_tables_commute_with_conversion(seed in any::<u64>()) {
        let ctx = ctx_from(2, &[0, -1, 0, 1], Variant::R);
        let k = Field::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vec2 = || {
            M2Vector::new(
                common::sparse_laurent(&k, &mut rng, -3, 3, 2),
                common::sparse_laurent(&k, &mut rng, -3, 3, 2),
            )
        };
        let (v, w) = (vec2(), vec2());
        let table = d_bracket_m2(&ctx, &v, &w).unwrap();
        let generic = d_bracket(&v.to_derivation(&ctx).unwrap(), &w.to_derivation(&ctx).unwrap()).unwrap();
        prop_assert_eq!(table.to_derivation(&ctx).unwrap(), generic.clone());
        prop_assert_eq!(M2Vector::from_derivation(&generic).unwrap(), table);
        prop_assert!(d_bracket_m2(&ctx, &v, &v).unwrap().is_zero());
    }
}

#[test]
fn bracket_examples() {
    let ctx = ctx_from(2, &[0, -1, 0, 1], Variant::R);
    let k = Field::rationals();
    let b = |i, w| M2Vector::basis(k.one(), i, w);
    let got = d_bracket_m2(&ctx, &b(1, 1), &b(2, 1)).unwrap();
    assert_eq!(got, M2Vector::new(LaurentPoly::zero(&k), LaurentPoly::monomial(k.one(), 2)));
    let got = d_bracket_m2(&ctx, &b(0, 2), &b(1, 2)).unwrap();
    assert_eq!(got, M2Vector::new(LaurentPoly::zero(&k), ctx.p_laurent().clone()));
    let got = d_bracket_m2(&ctx, &b(0, 1), &b(0, 2)).unwrap();
    let half_pp = LaurentPoly::from_poly(ctx.p_prime()).scale(&k.from_ratio(1, 2));
    assert_eq!(got, M2Vector::new(half_pp, LaurentPoly::zero(&k)));
}
