//! Derivations of `R_m(P)` / `S_m(P)` stored by their action on the generators.
//!
//! A derivation `D` is determined by `f = D(t)` and `h = D(u)`; it is well
//! defined exactly when it kills the relation, `−f·P′ + m·h·u^{m−1} = 0`.

use thiserror::Error;

use crate::field::FieldElement;
use crate::poly::{LaurentPoly, Poly};
use crate::ring::{Ctx, RingElement, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("(f, h) does not preserve u^m = P")]
    NotADerivation,
    #[error("derivations belong to different algebra contexts")]
    ContextMismatch,
    #[error("operation requires m = 2")]
    RequiresM2,
    #[error("derivation is not a Laurent combination of ∂₁, ∂₂")]
    NotInM2Span,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    f: RingElement,
    h: RingElement,
}

fn relation(ctx: &Ctx, f: &RingElement, h: &RingElement) -> RingElement {
    let m = ctx.field().from_int(ctx.m() as i64);
    let p_prime = LaurentPoly::from_poly(ctx.p_prime());
    &h.mul_u_pow(ctx.m() - 1).scale(&m) - &f.mul_coefficient(&p_prime)
}

/// Builds `D` with `D(t) = f`, `D(u) = h`, if it is a derivation.
pub fn d_make(ctx: &Ctx, f: RingElement, h: RingElement) -> Result<Derivation, LieError> {
    if f.ctx() != ctx || h.ctx() != ctx {
        return Err(LieError::ContextMismatch);
    }
    if !relation(ctx, &f, &h).is_zero() {
        return Err(LieError::NotADerivation);
    }
    Ok(Derivation { f, h })
}

/// `Δ = P′ ∂/∂u + m u^{m−1} ∂/∂t`.
pub fn delta(ctx: &Ctx) -> Derivation {
    let m = ctx.field().from_int(ctx.m() as i64);
    Derivation {
        f: RingElement::u(ctx).pow(ctx.m() as u32 - 1).scale(&m),
        h: RingElement::from_coefficient(ctx, LaurentPoly::from_poly(ctx.p_prime()), 0),
    }
}

/// `∂ = Δ/m`: `∂(t) = u^{m−1}`, `∂(u) = P′/m`.
pub fn partial(ctx: &Ctx) -> Derivation {
    let m_inv = ctx.field().from_ratio(1, ctx.m() as i64);
    delta(ctx).scale(&m_inv)
}

/// Module generators `Δ, uΔ/a, …, u^{m−1}Δ/a` with `a = gcd(P, P′)`.
pub fn d_basis(ctx: &Ctx) -> Vec<Derivation> {
    let a = ctx.p().gcd(ctx.p_prime()).expect("P is nonzero");
    let d = delta(ctx);
    let mut out = vec![d.clone()];
    for i in 1..ctx.m() {
        let g = d.mul_u_pow(i);
        let g = g
            .div_poly(&a)
            .expect("a divides both P and P′, hence every component of u^iΔ");
        debug_assert!(d_make(ctx, g.f.clone(), g.h.clone()).is_ok());
        out.push(g);
    }
    out
}

impl Derivation {
    pub fn zero(ctx: &Ctx) -> Self {
        Derivation {
            f: RingElement::zero(ctx),
            h: RingElement::zero(ctx),
        }
    }

    pub fn ctx(&self) -> &Ctx {
        self.f.ctx()
    }

    /// `D(t)`.
    pub fn f(&self) -> &RingElement {
        &self.f
    }

    /// `D(u)`.
    pub fn h(&self) -> &RingElement {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.h.is_zero()
    }

    pub fn is_valid(&self) -> bool {
        relation(self.ctx(), &self.f, &self.h).is_zero()
    }

    /// Chain rule: `D(Σ x_i u^i) = Σ x_i′·f·u^i + i·x_i·u^{i−1}·h`.
    pub fn apply(&self, x: &RingElement) -> RingElement {
        let ctx = self.ctx();
        let field = ctx.field();
        let mut dt_part = vec![LaurentPoly::zero(field); ctx.m()];
        let mut du_part = vec![LaurentPoly::zero(field); ctx.m()];
        for (i, c) in x.comps().iter().enumerate() {
            dt_part[i] = c.derivative();
            if i > 0 {
                du_part[i - 1] = c.scale(&field.from_int(i as i64));
            }
        }
        let dt = RingElement::new(ctx, dt_part).expect("derivative stays in the ring");
        let du = RingElement::new(ctx, du_part).expect("same shape as x");
        &(&dt * &self.f) + &(&du * &self.h)
    }

    /// `x·D`.
    pub fn mul_ring(&self, x: &RingElement) -> Self {
        Derivation {
            f: x * &self.f,
            h: x * &self.h,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Derivation {
            f: self.f.scale(c),
            h: self.h.scale(c),
        }
    }

    pub fn mul_u_pow(&self, j: usize) -> Self {
        Derivation {
            f: self.f.mul_u_pow(j),
            h: self.h.mul_u_pow(j),
        }
    }

    /// Divides every component by a polynomial, if exact.
    pub fn div_poly(&self, a: &Poly) -> Option<Self> {
        let a = LaurentPoly::from_poly(a);
        let div = |x: &RingElement| -> Option<RingElement> {
            let comps = x
                .comps()
                .iter()
                .map(|c| c.exact_div(&a))
                .collect::<Option<Vec<_>>>()?;
            RingElement::new(x.ctx(), comps).ok()
        };
        Some(Derivation {
            f: div(&self.f)?,
            h: div(&self.h)?,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LieError> {
        Ok(Derivation {
            f: self.f.try_add(&other.f).map_err(|_| LieError::ContextMismatch)?,
            h: self.h.try_add(&other.h).map_err(|_| LieError::ContextMismatch)?,
        })
    }

    pub fn neg(&self) -> Self {
        Derivation {
            f: -&self.f,
            h: -&self.h,
        }
    }
}

/// Commutator `[D1, D2]`, re-validated.
pub fn d_bracket(d1: &Derivation, d2: &Derivation) -> Result<Derivation, LieError> {
    if d1.ctx() != d2.ctx() {
        return Err(LieError::ContextMismatch);
    }
    let f = &d1.apply(&d2.f) - &d2.apply(&d1.f);
    let h = &d1.apply(&d2.h) - &d2.apply(&d1.h);
    d_make(d1.ctx(), f, h)
}

/// `c1·∂₁ + c2·∂₂` for `m = 2`, where `∂₁ = √P d/dt` and `∂₂ = P d/dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Vector {
    pub c1: LaurentPoly,
    pub c2: LaurentPoly,
}

impl M2Vector {
    pub fn new(c1: LaurentPoly, c2: LaurentPoly) -> Self {
        M2Vector { c1, c2 }
    }

    /// `c·t^i ∂_which`, `which ∈ {1, 2}`.
    pub fn basis(c: FieldElement, i: i64, which: u8) -> Self {
        let field = c.field().clone();
        let term = LaurentPoly::monomial(c, i);
        match which {
            1 => M2Vector::new(term, LaurentPoly::zero(&field)),
            2 => M2Vector::new(LaurentPoly::zero(&field), term),
            _ => panic!("∂₁ or ∂₂ only"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    /// `∂₁ ↦ (D(t) = u, D(u) = P′/2)`, `∂₂ = u·∂₁ ↦ (P, P′u/2)`.
    pub fn to_derivation(&self, ctx: &Ctx) -> Result<Derivation, LieError> {
        if ctx.m() != 2 {
            return Err(LieError::RequiresM2);
        }
        let half_pp = LaurentPoly::from_poly(ctx.p_prime()).scale(&ctx.field().from_ratio(1, 2));
        let f = RingElement::new(ctx, vec![&self.c2 * ctx.p_laurent(), self.c1.clone()])?;
        let h = RingElement::new(ctx, vec![&self.c1 * &half_pp, &self.c2 * &half_pp])?;
        d_make(ctx, f, h)
    }

    /// Inverse of [`to_derivation`](Self::to_derivation); needs `P | D(t)_0`.
    pub fn from_derivation(d: &Derivation) -> Result<Self, LieError> {
        let ctx = d.ctx();
        if ctx.m() != 2 {
            return Err(LieError::RequiresM2);
        }
        let c1 = d.f.comp(1).clone();
        let c2 = d
            .f
            .comp(0)
            .exact_div(ctx.p_laurent())
            .ok_or(LieError::NotInM2Span)?;
        let v = M2Vector { c1, c2 };
        if &v.to_derivation(ctx)? != d {
            return Err(LieError::NotInM2Span);
        }
        Ok(v)
    }
}

/// Bilinear extension of the three structure tables
/// `[t^i∂₁, t^j∂₁] = (j−i)t^{i+j−1}∂₂`,
/// `[t^i∂₂, t^j∂₂] = (j−i)t^{i+j−1}P∂₂`,
/// `[t^i∂₁, t^j∂₂] = (j−i)t^{i+j−1}P∂₁ + ½t^{i+j}P′∂₁`.
pub fn d_bracket_m2(ctx: &Ctx, v: &M2Vector, w: &M2Vector) -> Result<M2Vector, LieError> {
    if ctx.m() != 2 {
        return Err(LieError::RequiresM2);
    }
    let field = ctx.field();
    let p = ctx.p_laurent();
    let half_pp = LaurentPoly::from_poly(ctx.p_prime()).scale(&field.from_ratio(1, 2));
    let mut out1 = LaurentPoly::zero(field);
    let mut out2 = LaurentPoly::zero(field);
    let mono = |c: FieldElement, e: i64| LaurentPoly::monomial(c, e);
    // Table entry for [t^i∂₁, t^j∂₂] as a ∂₁-coefficient.
    let mixed = |i: i64, j: i64, c: &FieldElement| -> LaurentPoly {
        &(p * &mono(c * &field.from_int(j - i), i + j - 1)) + &(&half_pp * &mono(c.clone(), i + j))
    };
    for (i, a) in v.c1.terms() {
        for (j, b) in w.c1.terms() {
            out2 = &out2 + &mono(&(a * b) * &field.from_int(j - i), i + j - 1);
        }
        for (j, b) in w.c2.terms() {
            out1 = &out1 + &mixed(i, j, &(a * b));
        }
    }
    for (i, a) in v.c2.terms() {
        for (j, b) in w.c2.terms() {
            out2 = &out2 + &(p * &mono(&(a * b) * &field.from_int(j - i), i + j - 1));
        }
        for (j, b) in w.c1.terms() {
            out1 = &out1 - &mixed(j, i, &(a * b));
        }
    }
    Ok(M2Vector::new(out1, out2))
}
