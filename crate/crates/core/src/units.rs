//! Units of the hyperelliptic ring `R_2(P)`: classification in odd degree,
//! the polynomial Pell equation, and the three-generator family
//! `P = (t⁴ − 2βt² + 1)/(β² − 1)` with its degree-descent factorization.

use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::poly::{p_has_multiple_roots, LaurentPoly, Poly};
use crate::ring::{r_conj, r_is_unit, r_norm, AlgebraCtx, Ctx, RingElement, RingError, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitsError {
    #[error("unsupported input: {0}")]
    ShapeUnsupported(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("degree descent failed: {0}")]
    DescentFailure(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("{0} is not a square in the coefficient field")]
    MissingRoot(String),
    #[error("generator identity failed: {0}")]
    IdentityFailed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddUnitClass {
    /// `F*·t^ℤ`.
    ScalarsTimesTPowers,
    /// `P = c·t`: `u` is a unit of norm `−c·t`, so units are `F*·u^ℤ`.
    HalfIntegerTower,
}

impl OddUnitClass {
    pub fn name(self) -> &'static str {
        match self {
            OddUnitClass::ScalarsTimesTPowers => "ScalarsTimesTPowers",
            OddUnitClass::HalfIntegerTower => "HalfIntegerTower",
        }
    }
}

/// Unit group of `R_2(P)` for odd-degree squarefree `P` with `P(0) = 0`.
/// In this case the polynomial ring `S_2(P)` has only scalar units.
pub fn u_classify_odd(ctx: &Ctx) -> Result<OddUnitClass, UnitsError> {
    let p = ctx.p();
    let d = ctx.deg_p();
    if ctx.m() != 2 {
        return Err(UnitsError::ShapeUnsupported("m must be 2".into()));
    }
    if d.is_multiple_of(2) {
        return Err(UnitsError::ShapeUnsupported("deg P must be odd".into()));
    }
    if p_has_multiple_roots(p).expect("nonconstant") {
        return Err(UnitsError::ShapeUnsupported("P must be squarefree".into()));
    }
    if !p.coeff(0).is_zero() {
        return Err(UnitsError::ShapeUnsupported("t must divide P".into()));
    }
    Ok(if d == 1 {
        OddUnitClass::HalfIntegerTower
    } else {
        OddUnitClass::ScalarsTimesTPowers
    })
}

/// `f² − g²P = c·t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub f: Poly,
    pub g: Poly,
    pub c: FieldElement,
    pub k: usize,
}

impl PellSolution {
    pub fn verify(&self, p: &Poly) -> bool {
        let lhs = &(&self.f * &self.f) - &(&(&self.g * &self.g) * p);
        !self.g.is_zero() && !self.c.is_zero() && lhs == Poly::monomial(self.c.clone(), self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoSolutionReason {
    /// Degrees of `f²` and `g²P` have different parity.
    OddDegree,
    /// `lc(f)² = lc(g)²·lc(P)` is impossible.
    LeadingCoefficientNotSquare,
    /// `f² − g²a² = const` forces `g = 0`.
    PerfectSquare,
}

impl NoSolutionReason {
    pub fn name(self) -> &'static str {
        match self {
            NoSolutionReason::OddDegree => "OddDegree",
            NoSolutionReason::LeadingCoefficientNotSquare => "LeadingCoefficientNotSquare",
            NoSolutionReason::PerfectSquare => "PerfectSquare",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PellOutcome {
    Found(PellSolution),
    /// Nothing with `deg g ≤ bound`; says nothing about larger degrees.
    NotWithinBound { bound: usize },
    /// No solution of any degree.
    NoSolution(NoSolutionReason),
}

/// Polynomial part of `√P` at infinity, given `s² = lc(P)`.
fn sqrt_polynomial_part(p: &Poly, s: &FieldElement) -> Poly {
    let field = p.field();
    let h = p.degree().expect("nonzero") / 2;
    let mut a = vec![field.zero(); h + 1];
    a[h] = s.clone();
    let two_s_inv = (s * &field.from_int(2)).inv().expect("s is nonzero");
    for j in (0..h).rev() {
        let mut rest = field.zero();
        for i in j + 1..=h {
            let kk = h + j - i;
            if kk > j && kk <= h {
                rest += &(&a[i] * &a[kk]);
            }
        }
        a[j] = &(&p.coeff(h + j) - &rest) * &two_s_inv;
    }
    Poly::new(field, a)
}

/// Fundamental solution of `f² − g²P = c` (`c` a nonzero constant) by the
/// continued fraction of `√P` over `F(t)`, searching `deg g ≤ degree_bound`.
pub fn u_pell(p: &Poly, degree_bound: usize) -> Result<PellOutcome, UnitsError> {
    let Some(d) = p.degree().filter(|&d| d >= 1) else {
        return Err(UnitsError::BadInput("P must be nonconstant".into()));
    };
    if d % 2 == 1 {
        return Ok(PellOutcome::NoSolution(NoSolutionReason::OddDegree));
    }
    let Some(s) = p.leading().expect("nonzero").sqrt()? else {
        return Ok(PellOutcome::NoSolution(NoSolutionReason::LeadingCoefficientNotSquare));
    };
    let a0 = sqrt_polynomial_part(p, &s);
    if &a0 * &a0 == *p {
        return Ok(PellOutcome::NoSolution(NoSolutionReason::PerfectSquare));
    }
    let field = p.field();
    let (mut pi, mut qi) = (Poly::zero(field), Poly::one(field));
    let (mut p_prev, mut p_cur) = (Poly::one(field), a0.clone());
    let (mut q_prev, mut q_cur) = (Poly::zero(field), Poly::one(field));
    let mut ai = a0.clone();
    let mut odd = true; // sign (−1)^{i+1} at i = 0
    loop {
        let p_next = &(&ai * &qi) - &pi;
        let q_next = (p - &(&p_next * &p_next))
            .exact_div(&qi)
            .expect("continued-fraction denominators divide exactly");
        if q_next.degree() == Some(0) {
            let c = if odd { -&q_next.coeff(0) } else { q_next.coeff(0) };
            let sol = PellSolution {
                f: p_cur,
                g: q_cur,
                c,
                k: 0,
            };
            debug_assert!(sol.verify(p));
            return Ok(PellOutcome::Found(sol));
        }
        ai = (&p_next + &a0).divrem(&q_next).expect("q_next is nonzero").0;
        let p_new = &(&ai * &p_cur) + &p_prev;
        let q_new = &(&ai * &q_cur) + &q_prev;
        if q_new.degree().unwrap_or(0) > degree_bound {
            return Ok(PellOutcome::NotWithinBound { bound: degree_bound });
        }
        p_prev = std::mem::replace(&mut p_cur, p_new);
        q_prev = std::mem::replace(&mut q_cur, q_new);
        pi = p_next;
        qi = q_next;
        odd = !odd;
    }
}

/// `(f + g√P)^n` as `(f_n, g_n)`.
pub fn pell_power(p: &Poly, f: &Poly, g: &Poly, n: u32) -> (Poly, Poly) {
    let field = p.field();
    let (mut a, mut b) = (Poly::one(field), Poly::zero(field));
    for _ in 0..n {
        let a2 = &(&a * f) + &(&(&b * g) * p);
        let b2 = &(&a * g) + &(&b * f);
        a = a2;
        b = b2;
    }
    (a, b)
}

fn is_reciprocal_quartic(p: &Poly) -> bool {
    p.degree() == Some(4) && (0..=4).all(|i| p.coeff(i) == p.coeff(4 - i))
}

fn reverse_into(c: &LaurentPoly, r: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero(c.field());
    for (e, a) in c.terms() {
        out = &out + &LaurentPoly::monomial(a.clone(), r - e);
    }
    out
}

/// `τ(f + g u) = t^r (f(1/t) + g(1/t) t^{−2} u)` with `r = max(deg f, deg g + 2)`.
pub fn u_tau(x: &RingElement) -> Result<RingElement, UnitsError> {
    let ctx = x.ctx();
    if ctx.m() != 2 {
        return Err(UnitsError::ShapeUnsupported("m must be 2".into()));
    }
    if !is_reciprocal_quartic(ctx.p()) {
        return Err(UnitsError::ShapeUnsupported("requires t⁴P(1/t) = P(t)".into()));
    }
    if !x.is_polynomial() {
        return Err(UnitsError::ShapeUnsupported("f and g must be polynomials".into()));
    }
    let deg = |c: &LaurentPoly| c.l_deg().ok().map(|(_, h)| h);
    let (f, g) = (x.comp(0), x.comp(1));
    let r = match (deg(f), deg(g)) {
        (None, None) => return Ok(x.clone()),
        (Some(a), None) => a,
        (None, Some(b)) => b + 2,
        (Some(a), Some(b)) => a.max(b + 2),
    };
    Ok(RingElement::new(ctx, vec![reverse_into(f, r), reverse_into(g, r - 2)])?)
}

/// The family `P = (t⁴ − 2βt² + 1)/(β² − 1)` with generators `λ0..λ3`.
#[derive(Clone, Debug)]
pub struct DjkmCtx {
    pub beta: FieldElement,
    /// `s1 = s2·s3/2`, a square root of `β² − 1`.
    pub s1: FieldElement,
    /// Square root of `2(β + 1)`.
    pub s2: FieldElement,
    /// Square root of `2(β − 1)`.
    pub s3: FieldElement,
    pub ctx: Ctx,
    pub lambda: [RingElement; 4],
}

impl DjkmCtx {
    /// Takes the square roots from the field.
    pub fn new(beta: FieldElement) -> Result<Self, UnitsError> {
        let field = beta.field().clone();
        let two = field.from_int(2);
        let one = field.one();
        let a = &two * &(&beta + &one);
        let b = &two * &(&beta - &one);
        let s2 = a.sqrt()?.ok_or_else(|| UnitsError::MissingRoot(format!("2(β+1) = {a}")))?;
        let s3 = b.sqrt()?.ok_or_else(|| UnitsError::MissingRoot(format!("2(β−1) = {b}")))?;
        Self::with_roots(beta, s2, s3)
    }

    /// Uses caller-supplied square roots of `2(β + 1)` and `2(β − 1)`, checked by squaring.
    pub fn with_roots(beta: FieldElement, s2: FieldElement, s3: FieldElement) -> Result<Self, UnitsError> {
        let field = beta.field().clone();
        let one = field.one();
        let two = field.from_int(2);
        if beta == one || beta == -&one {
            return Err(UnitsError::BadInput("β must differ from ±1".into()));
        }
        if &s2 * &s2 != &two * &(&beta + &one) {
            return Err(UnitsError::MissingRoot("supplied s2 does not square to 2(β+1)".into()));
        }
        if &s3 * &s3 != &two * &(&beta - &one) {
            return Err(UnitsError::MissingRoot("supplied s3 does not square to 2(β−1)".into()));
        }
        let half = field.from_ratio(1, 2);
        let s1 = &(&s2 * &s3) * &half;
        let denom_inv = (&(&beta * &beta) - &one).inv()?;
        let p = Poly::new(
            &field,
            vec![one.clone(), field.zero(), -&(&two * &beta), field.zero(), one.clone()],
        )
        .scale(&denom_inv);
        let ctx = AlgebraCtx::new(2, p, Variant::R)?;
        let t2 = |c0: &FieldElement, c2: &FieldElement, scale: &FieldElement| {
            Poly::new(&field, vec![c0.clone(), field.zero(), c2.clone()]).scale(scale)
        };
        let elt = |f: Poly, g: FieldElement| {
            RingElement::new(&ctx, vec![LaurentPoly::from_poly(&f), LaurentPoly::constant(g)])
                .expect("two components")
        };
        let l0 = elt(t2(&-&beta, &one, &s1.inv()?), one.clone());
        let l1 = elt(t2(&one, &one, &s2.inv()?), &s3 * &half);
        let l2 = elt(t2(&-&one, &one, &s3.inv()?), &s2 * &half);
        let l3 = elt(t2(&-&one, &beta, &s1.inv()?), -&one);
        let dctx = DjkmCtx {
            beta,
            s1,
            s2,
            s3,
            ctx,
            lambda: [l0, l1, l2, l3],
        };
        dctx.check_identities()?;
        Ok(dctx)
    }

    /// `λ0λ̄0 = 1`, `λ1λ̄1 = λ2λ̄2 = t²`, `λ1λ2 = t²λ0`, `λ1λ̄2 = λ3`.
    pub fn check_identities(&self) -> Result<(), UnitsError> {
        let [l0, l1, l2, l3] = &self.lambda;
        let one = RingElement::one(&self.ctx);
        let t2 = RingElement::t(&self.ctx).pow(2);
        let checks = [
            ("λ0·conj(λ0) = 1", (l0 * &r_conj(l0)?) == one),
            ("λ1·conj(λ1) = t²", (l1 * &r_conj(l1)?) == t2),
            ("λ2·conj(λ2) = t²", (l2 * &r_conj(l2)?) == t2),
            ("λ1·λ2 = t²·λ0", l1 * l2 == &t2 * l0),
            ("λ1·conj(λ2) = λ3", &(l1 * &r_conj(l2)?) == l3),
        ];
        for (name, ok) in checks {
            if !ok {
                return Err(UnitsError::IdentityFailed(name.into()));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> &Poly {
        self.ctx.p()
    }
}

/// `X = scalar · t^{e_t} · λ1^{e_1} · λ2^{e_2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFactorization {
    pub scalar: FieldElement,
    pub e_t: i64,
    pub e_1: i64,
    pub e_2: i64,
}

impl UnitFactorization {
    pub fn reconstruct(&self, dctx: &DjkmCtx) -> RingElement {
        let ctx = &dctx.ctx;
        let l1 = dctx.lambda[1].pow_signed(self.e_1).expect("λ1 is a unit");
        let l2 = dctx.lambda[2].pow_signed(self.e_2).expect("λ2 is a unit");
        debug_assert!(l1.ctx() == ctx);
        (&l1 * &l2).scale(&self.scalar).shift(self.e_t)
    }

    fn times(&self, e_t: i64, e_1: i64, e_2: i64) -> Self {
        UnitFactorization {
            scalar: self.scalar.clone(),
            e_t: self.e_t + e_t,
            e_1: self.e_1 + e_1,
            e_2: self.e_2 + e_2,
        }
    }
}

/// Writes a unit of `R_2(P)` in the generators `t, λ1, λ2` by degree descent.
pub fn u_djkm_factor(dctx: &DjkmCtx, x: &RingElement) -> Result<UnitFactorization, UnitsError> {
    if x.ctx() != &dctx.ctx {
        return Err(UnitsError::Ring(RingError::ContextMismatch));
    }
    if x.is_zero() || r_is_unit(x).is_none() {
        return Err(UnitsError::NotAUnit);
    }
    let size = |c: &LaurentPoly| c.l_deg().map(|(a, b)| (b - a).max(0)).unwrap_or(0);
    let k = r_norm(x).l_deg().map(|(a, _)| a).unwrap_or(0);
    let cap = 4 * (k.abs() + size(x.comp(0)) + size(x.comp(1))) + 16;
    let out = Descent { dctx, budget: cap }.run(x.clone(), 0)?;
    if out.reconstruct(dctx) != *x {
        return Err(UnitsError::DescentFailure("reconstruction mismatch".into()));
    }
    Ok(out)
}

struct Descent<'a> {
    dctx: &'a DjkmCtx,
    budget: i64,
}

impl Descent<'_> {
    fn run(&mut self, x: RingElement, depth: i64) -> Result<UnitFactorization, UnitsError> {
        if depth > self.budget {
            return Err(UnitsError::DescentFailure(format!("depth cap {} exceeded", self.budget)));
        }
        let ctx = &self.dctx.ctx;
        // Normalize to polynomial f, g with t ∤ gcd(f, g).
        let low = x
            .comps()
            .iter()
            .filter_map(|c| c.l_deg().ok().map(|(a, _)| a))
            .min()
            .ok_or(UnitsError::NotAUnit)?;
        let mut x = x.shift(-low);
        let mut acc = UnitFactorization {
            scalar: ctx.field().one(),
            e_t: low,
            e_1: 0,
            e_2: 0,
        };
        let k = r_norm(&x)
            .as_monomial()
            .ok_or(UnitsError::NotAUnit)?
            .1;
        // Multiply by λ0^{±1} while that lowers deg g. λ0 = t^{−2}λ1λ2.
        let [l0, ..] = &self.dctx.lambda;
        let l0_inv = r_conj(l0)?;
        let deg = |c: &LaurentPoly| c.l_deg().ok().map(|(_, h)| h);
        while let Some(dg) = deg(x.comp(1)) {
            let a = &x * l0;
            let b = &x * &l0_inv;
            if deg(a.comp(1)).is_none_or(|d| d < dg) {
                x = a;
                acc = acc.times(2, -1, -1);
            } else if deg(b.comp(1)).is_none_or(|d| d < dg) {
                x = b;
                acc = acc.times(-2, 1, 1);
            } else {
                break;
            }
        }
        let combine = |acc: UnitFactorization, inner: UnitFactorization| UnitFactorization {
            scalar: &acc.scalar * &inner.scalar,
            e_t: acc.e_t + inner.e_t,
            e_1: acc.e_1 + inner.e_1,
            e_2: acc.e_2 + inner.e_2,
        };
        if x.comp(1).is_zero() {
            let (c, e) = x
                .comp(0)
                .as_monomial()
                .ok_or_else(|| UnitsError::DescentFailure("u-free part is not a monomial".into()))?;
            return Ok(combine(acc, UnitFactorization { scalar: c, e_t: e, e_1: 0, e_2: 0 }));
        }
        if k == 0 {
            return Err(UnitsError::DescentFailure("norm-one element left after λ0 reduction".into()));
        }
        if k % 2 == 1 {
            return Err(UnitsError::DescentFailure(format!("odd norm exponent {k}")));
        }
        if k == 2 {
            return self
                .match_base(&x)
                .map(|inner| combine(acc, inner))
                .ok_or_else(|| UnitsError::DescentFailure("no base case matches".into()));
        }
        let y = u_tau(&x.shift(-x.comps().iter().filter_map(|c| c.l_deg().ok().map(|p| p.0)).min().unwrap_or(0)))?;
        let inner = self.run(y, depth + 1)?;
        // τ fixes λ1 and sends λ2 to −λ̄2 = −t²λ2^{−1}, so x ∝ t^e·λ1^b·λ2^{−d}.
        let z = UnitFactorization {
            scalar: ctx.field().one(),
            e_t: 0,
            e_1: inner.e_1,
            e_2: -inner.e_2,
        }
        .reconstruct(self.dctx);
        let rest = &x * &r_is_unit(&z).expect("products of generators are units");
        let (c, e) = rest
            .as_coefficient()
            .and_then(LaurentPoly::as_monomial)
            .ok_or_else(|| UnitsError::DescentFailure("τ-lift is not a monomial multiple".into()))?;
        Ok(combine(acc, UnitFactorization { scalar: c, e_t: e, e_1: inner.e_1, e_2: -inner.e_2 }))
    }

    /// Norm `c·t²` base cases: `{λ1, λ2, λ̄1, λ̄2}·λ0^i`, `|i| ≤ 2`, up to scalars.
    fn match_base(&self, x: &RingElement) -> Option<UnitFactorization> {
        let one = self.dctx.ctx.field().one();
        let base = [(0, 1, 0), (0, 0, 1), (2, -1, 0), (2, 0, -1)];
        for (bt, b1, b2) in base {
            for i in -2..=2i64 {
                let cand = UnitFactorization {
                    scalar: one.clone(),
                    e_t: bt - 2 * i,
                    e_1: b1 + i,
                    e_2: b2 + i,
                };
                let y = cand.reconstruct(self.dctx);
                if let Some(c) = proportional(x, &y) {
                    return Some(UnitFactorization { scalar: c, ..cand });
                }
            }
        }
        None
    }
}

/// `c` with `x = c·y`, if any.
fn proportional(x: &RingElement, y: &RingElement) -> Option<FieldElement> {
    let (i, lead) = y
        .comps()
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.terms().next().map(|(e, a)| (i, (e, a.clone()))))?;
    let c = &x.comp(i).coeff(lead.0) * &lead.1.inv().ok()?;
    (y.scale(&c) == *x && !c.is_zero()).then_some(c)
}
