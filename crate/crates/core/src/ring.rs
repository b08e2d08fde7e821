//! The rings `R_m(P) = F[t^{±1}, u]/(u^m − P)` and `S_m(P) = F[t, u]/(u^m − P)`.
//!
//! Elements are stored as `m` Laurent coefficients of `1, u, …, u^{m−1}`; in
//! the polynomial variant every coefficient is checked to be a polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};
use crate::poly::{LaurentPoly, Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("operation requires m = 2")]
    RequiresM2,
    #[error("bad algebra input: {0}")]
    BadInput(String),
    #[error("expected {expected} components, got {got}")]
    BadComponents { expected: usize, got: usize },
    #[error("component {0} has negative t-exponents in the polynomial variant")]
    NotPolynomial(usize),
    #[error("factored data does not expand to P")]
    RootDataMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Laurent coefficients, `t` invertible.
    R,
    /// Polynomial coefficients.
    S,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::R => "R",
            Variant::S => "S",
        }
    }
}

/// Factored form `scale · t^l · ∏(t − a_i)`; the `a_i` are nonzero and may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub l: usize,
    pub roots: Vec<FieldElement>,
    pub scale: FieldElement,
}

impl RootData {
    pub fn new(l: usize, roots: Vec<FieldElement>, scale: FieldElement) -> Result<Self, RingError> {
        if scale.is_zero() {
            return Err(RingError::BadInput("scale must be nonzero".into()));
        }
        if roots.iter().any(FieldElement::is_zero) {
            return Err(RingError::BadInput(
                "zero roots belong in the exponent l, not the root list".into(),
            ));
        }
        if roots.iter().any(|r| r.field() != scale.field()) {
            return Err(FieldError::FieldMismatch.into());
        }
        Ok(RootData { l, roots, scale })
    }

    pub fn expand(&self) -> Poly {
        Poly::from_roots(&self.scale, self.l, &self.roots)
    }

    pub fn has_distinct_roots(&self) -> bool {
        self.roots
            .iter()
            .enumerate()
            .all(|(i, a)| self.roots[..i].iter().all(|b| a != b))
    }

    /// A nonzero root occurring at least twice.
    pub fn repeated_root(&self) -> Option<&FieldElement> {
        self.roots
            .iter()
            .enumerate()
            .find(|(i, a)| self.roots[..*i].contains(a))
            .map(|(_, a)| a)
    }
}

#[derive(Debug)]
pub struct AlgebraCtx {
    m: usize,
    p: Poly,
    p_laurent: LaurentPoly,
    p_prime: Poly,
    variant: Variant,
    rootdata: Option<RootData>,
}

pub type Ctx = Arc<AlgebraCtx>;

impl PartialEq for AlgebraCtx {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.variant == other.variant && self.p == other.p
    }
}

impl Eq for AlgebraCtx {}

impl AlgebraCtx {
    pub fn new(m: usize, p: Poly, variant: Variant) -> Result<Ctx, RingError> {
        Self::build(m, p, variant, None)
    }

    pub fn with_rootdata(m: usize, rootdata: RootData, variant: Variant) -> Result<Ctx, RingError> {
        let p = rootdata.expand();
        Self::build(m, p, variant, Some(rootdata))
    }

    /// Accepts both a coefficient form and a factored form; they must agree.
    pub fn with_both(m: usize, p: Poly, rootdata: RootData, variant: Variant) -> Result<Ctx, RingError> {
        if rootdata.expand() != p {
            return Err(RingError::RootDataMismatch);
        }
        Self::build(m, p, variant, Some(rootdata))
    }

    fn build(m: usize, p: Poly, variant: Variant, rootdata: Option<RootData>) -> Result<Ctx, RingError> {
        if m < 2 {
            return Err(RingError::BadInput(format!("m must be >= 2, got {m}")));
        }
        if p.degree().unwrap_or(0) < 1 {
            return Err(RingError::BadInput("P must have degree >= 1".into()));
        }
        Ok(Arc::new(AlgebraCtx {
            m,
            p_laurent: LaurentPoly::from_poly(&p),
            p_prime: p.derivative(),
            p,
            variant,
            rootdata,
        }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn p_laurent(&self) -> &LaurentPoly {
        &self.p_laurent
    }

    pub fn p_prime(&self) -> &Poly {
        &self.p_prime
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn rootdata(&self) -> Option<&RootData> {
        self.rootdata.as_ref()
    }

    pub fn field(&self) -> &Field {
        self.p.field()
    }

    pub fn deg_p(&self) -> usize {
        self.p.degree().expect("P is nonconstant")
    }
}

#[derive(Clone, Debug)]
pub struct RingElement {
    ctx: Ctx,
    comps: Vec<LaurentPoly>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.comps == other.comps
    }
}

impl Eq for RingElement {}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElement {
    pub fn new(ctx: &Ctx, comps: Vec<LaurentPoly>) -> Result<Self, RingError> {
        if comps.len() != ctx.m {
            return Err(RingError::BadComponents {
                expected: ctx.m,
                got: comps.len(),
            });
        }
        if comps.iter().any(|c| c.field() != ctx.field()) {
            return Err(FieldError::FieldMismatch.into());
        }
        if ctx.variant == Variant::S {
            if let Some(i) = comps.iter().position(|c| !c.is_polynomial()) {
                return Err(RingError::NotPolynomial(i));
            }
        }
        Ok(RingElement {
            ctx: ctx.clone(),
            comps,
        })
    }

    fn raw(ctx: &Ctx, comps: Vec<LaurentPoly>) -> Self {
        RingElement {
            ctx: ctx.clone(),
            comps,
        }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::raw(ctx, vec![LaurentPoly::zero(ctx.field()); ctx.m])
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::scalar(ctx, ctx.field().one())
    }

    pub fn scalar(ctx: &Ctx, c: FieldElement) -> Self {
        Self::from_coefficient(ctx, LaurentPoly::constant(c), 0)
    }

    /// `c · u^j` with `c` a coefficient in `t`; `j` may exceed `m − 1`.
    pub fn from_coefficient(ctx: &Ctx, c: LaurentPoly, j: usize) -> Self {
        let mut comps = vec![LaurentPoly::zero(ctx.field()); ctx.m];
        let mut c = c;
        for _ in 0..j / ctx.m {
            c = &c * &ctx.p_laurent;
        }
        comps[j % ctx.m] = c;
        Self::raw(ctx, comps)
    }

    /// `c · t^s · u^j`. Negative `s` is rejected in the polynomial variant.
    pub fn monomial(ctx: &Ctx, c: FieldElement, s: i64, j: usize) -> Result<Self, RingError> {
        if ctx.variant == Variant::S && s < 0 {
            return Err(RingError::NotPolynomial(j % ctx.m));
        }
        Ok(Self::from_coefficient(ctx, LaurentPoly::monomial(c, s), j))
    }

    pub fn t(ctx: &Ctx) -> Self {
        Self::from_coefficient(ctx, LaurentPoly::monomial(ctx.field().one(), 1), 0)
    }

    pub fn u(ctx: &Ctx) -> Self {
        Self::from_coefficient(ctx, LaurentPoly::one(ctx.field()), 1)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn comps(&self) -> &[LaurentPoly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &LaurentPoly {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<LaurentPoly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(LaurentPoly::is_zero)
    }

    /// The element lies in `F[t^{±1}]` (no `u`-part) and equals this coefficient.
    pub fn as_coefficient(&self) -> Option<&LaurentPoly> {
        self.comps[1..]
            .iter()
            .all(LaurentPoly::is_zero)
            .then(|| &self.comps[0])
    }

    pub fn is_polynomial(&self) -> bool {
        self.comps.iter().all(LaurentPoly::is_polynomial)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::raw(&self.ctx, self.comps.iter().map(|x| x.scale(c)).collect())
    }

    pub fn mul_coefficient(&self, c: &LaurentPoly) -> Self {
        Self::raw(&self.ctx, self.comps.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `t^k`; in the polynomial variant only `k ≥ 0` keeps the element in the ring.
    pub fn shift(&self, k: i64) -> Self {
        Self::raw(&self.ctx, self.comps.iter().map(|x| x.shift(k)).collect())
    }

    /// Multiplication by `u^j`, reduced.
    pub fn mul_u_pow(&self, j: usize) -> Self {
        let m = self.ctx.m;
        let mut comps = vec![LaurentPoly::zero(self.ctx.field()); m];
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i + j;
            let mut c = c.clone();
            for _ in 0..e / m {
                c = &c * &self.ctx.p_laurent;
            }
            comps[e % m] = &comps[e % m] + &c;
        }
        Self::raw(&self.ctx, comps)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ctx(other)?;
        Ok(Self::raw(
            &self.ctx,
            self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ctx(other)?;
        let m = self.ctx.m;
        let field = self.ctx.field();
        // Collect products by raw u-degree first, then fold u^{m+j} = P·u^j once.
        let mut raw = vec![LaurentPoly::zero(field); 2 * m - 1];
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.comps.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = &raw[i + j] + &(a * b);
                }
            }
        }
        let mut comps: Vec<LaurentPoly> = raw[..m].to_vec();
        for j in 0..m - 1 {
            if !raw[m + j].is_zero() {
                comps[j] = &comps[j] + &(&raw[m + j] * &self.ctx.p_laurent);
            }
        }
        Ok(Self::raw(&self.ctx, comps))
    }

    fn check_ctx(&self, other: &Self) -> Result<(), RingError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(RingError::ContextMismatch)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_signed(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            Some(r_is_unit(self)?.pow(e.unsigned_abs() as u32))
        }
    }

    /// Matrix of multiplication by `self` on the basis `1, u, …, u^{m−1}`; column `j` is `self·u^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let m = self.ctx.m;
        let cols: Vec<RingElement> = (0..m).map(|j| self.mul_u_pow(j)).collect();
        (0..m)
            .map(|i| (0..m).map(|j| cols[j].comps[i].clone()).collect())
            .collect()
    }
}

/// Product, or `ContextMismatch`.
pub fn r_mul(x: &RingElement, y: &RingElement) -> Result<RingElement, RingError> {
    x.try_mul(y)
}

/// Determinant of multiplication by `x`.
pub fn r_norm(x: &RingElement) -> LaurentPoly {
    determinant(x.multiplication_matrix(), x.ctx.field())
}

/// The inverse of `x` when its norm is a unit of the coefficient ring.
pub fn r_is_unit(x: &RingElement) -> Option<RingElement> {
    let ctx = &x.ctx;
    let norm = r_norm(x);
    let (c, k) = norm.as_monomial()?;
    if ctx.variant == Variant::S && k != 0 {
        return None;
    }
    let m = ctx.m;
    let field = ctx.field();
    let mat = x.multiplication_matrix();
    // First column of the adjugate: y_i = (−1)^i · det(M without row 0 and column i).
    let c_inv = c.inv().ok()?;
    let comps = (0..m)
        .map(|i| {
            let minor: Vec<Vec<LaurentPoly>> = mat[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = determinant(minor, field);
            let d = if i % 2 == 1 { -&d } else { d };
            d.scale(&c_inv).shift(-k)
        })
        .collect();
    let inv = RingElement::raw(ctx, comps);
    debug_assert!((&inv * x) == RingElement::one(ctx));
    Some(inv)
}

/// `f + g·u ↦ f − g·u`.
pub fn r_conj(x: &RingElement) -> Result<RingElement, RingError> {
    if x.ctx.m != 2 {
        return Err(RingError::RequiresM2);
    }
    Ok(RingElement::raw(
        &x.ctx,
        vec![x.comps[0].clone(), -&x.comps[1]],
    ))
}

/// Fraction-free (Bareiss) determinant over `F[t, t^{-1}]`.
fn determinant(mut a: Vec<Vec<LaurentPoly>>, field: &Field) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one(field);
    }
    let mut sign = false;
    let mut prev = LaurentPoly::one(field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentPoly::zero(field);
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

impl Add<&RingElement> for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring elements from different contexts")
    }
}

impl Sub<&RingElement> for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring elements from different contexts")
    }
}

impl Mul<&RingElement> for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring elements from different contexts")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::raw(&self.ctx, self.comps.iter().map(|c| -c).collect())
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
