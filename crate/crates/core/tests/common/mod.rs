#![allow(dead_code)]

use rand::Rng;
use supell::field::{Field, FieldElement};
use supell::poly::{LaurentPoly, Poly};
use supell::ring::{AlgebraCtx, Ctx, RingElement, RootData, Variant};

pub fn ints(k: &Field, xs: &[i64]) -> Vec<FieldElement> {
    xs.iter().map(|&x| k.from_int(x)).collect()
}

pub fn ctx_from(m: usize, p: &[i64], v: Variant) -> Ctx {
    let k = Field::rationals();
    AlgebraCtx::new(m, Poly::from_ints(&k, p), v).unwrap()
}

pub fn ctx_factored(m: usize, l: usize, roots: &[i64], scale: i64, v: Variant) -> Ctx {
    let k = Field::rationals();
    let rd = RootData::new(l, ints(&k, roots), k.from_int(scale)).unwrap();
    AlgebraCtx::with_rootdata(m, rd, v).unwrap()
}

/// Small element of `field`: integer or half-integer coordinates in `[−3, 3]`.
pub fn small_fe<R: Rng>(field: &Field, rng: &mut R) -> FieldElement {
    let coords = (0..field.degree())
        .map(|_| supell::field::Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=2).into()))
        .collect();
    field.element(coords).unwrap()
}

pub fn nonzero_fe<R: Rng>(field: &Field, rng: &mut R) -> FieldElement {
    loop {
        let x = small_fe(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Laurent polynomial with at most `terms` terms, exponents in `lo..=hi`.
pub fn sparse_laurent<R: Rng>(field: &Field, rng: &mut R, lo: i64, hi: i64, terms: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(field);
    for _ in 0..terms {
        let c = field.from_int(rng.gen_range(-2..=2));
        out = &out + &LaurentPoly::monomial(c, rng.gen_range(lo..=hi));
    }
    out
}

/// Ring element whose components have support in `[−3, 3]` (`[0, 3]` for `S`).
pub fn small_element<R: Rng>(ctx: &Ctx, rng: &mut R, terms: usize) -> RingElement {
    let lo = match ctx.variant() {
        Variant::R => -3,
        Variant::S => 0,
    };
    let comps = (0..ctx.m()).map(|_| sparse_laurent(ctx.field(), rng, lo, 3, terms)).collect();
    RingElement::new(ctx, comps).unwrap()
}
