//! The operator `∂ = Δ/m`, the cokernel `R/∂(R)` (or `S/∂(S)`) that centrally
//! extends the Lie algebra `R∂`, and the cocycle `ω(f∂, g∂) = [∂f·∂²g]`.
//!
//! Reduction to the cokernel basis is a windowed exact linear solve; the
//! window grows until the solve closes.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg::{Echelon, SparseVec};
use crate::liealg::{partial, Derivation};
use crate::poly::{p_gcd_ext, LaurentPoly, Poly};
use crate::ring::{Ctx, RingElement, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentError {
    #[error("P does not have the required shape: {0}")]
    ShapeUnsupported(String),
    #[error("gcd(P, P′) is not a monomial, so no Laurent Bézout pair exists")]
    GcdNotMonomial,
    #[error("derivation is not of the form f·∂")]
    NotAMultiple,
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
}

/// `P = c·t^l·Q` with `Q(0) ≠ 0` squarefree of degree `n` (Laurent variant), or
/// `P` squarefree of degree `n` (polynomial variant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub variant: Variant,
    pub m: usize,
    pub n: usize,
    pub l: usize,
}

pub fn ce_shape(ctx: &Ctx) -> Result<Shape, CentError> {
    let p = ctx.p();
    let field = ctx.field();
    let l = p.t_adic_valuation().expect("P is nonzero");
    let n = ctx.deg_p() - l;
    let shape = Shape {
        variant: ctx.variant(),
        m: ctx.m(),
        n,
        l,
    };
    let squarefree = |q: &Poly| q.gcd(&q.derivative()).map(|g| g.degree() == Some(0)).unwrap_or(false);
    match ctx.variant() {
        Variant::R => {
            if n == 0 {
                return Err(CentError::ShapeUnsupported("P is a monomial".into()));
            }
            let q = p.exact_div(&Poly::monomial(field.one(), l)).expect("t^l divides P");
            if !squarefree(&q) {
                return Err(CentError::ShapeUnsupported(
                    "P has a repeated nonzero root".into(),
                ));
            }
        }
        Variant::S => {
            if !squarefree(p) {
                return Err(CentError::ShapeUnsupported("P has a repeated root".into()));
            }
            return Ok(Shape {
                n: ctx.deg_p(),
                ..shape
            });
        }
    }
    Ok(shape)
}

/// `∂(x) = x_0′·u^{m−1} + Σ_{k≥1} (P·x_k′ + (k/m)·P′·x_k)·u^{k−1}`.
pub fn ce_partial(x: &RingElement) -> RingElement {
    let ctx = x.ctx();
    let m = ctx.m();
    let field = ctx.field();
    let p = ctx.p_laurent();
    let pp = LaurentPoly::from_poly(ctx.p_prime());
    let mut out = vec![LaurentPoly::zero(field); m];
    for (k, c) in x.comps().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k == 0 {
            out[m - 1] = c.derivative();
        } else {
            let km = field.from_ratio(k as i64, m as i64);
            out[k - 1] = &(p * &c.derivative()) + &(&pp * c).scale(&km);
        }
    }
    RingElement::new(ctx, out).expect("∂ preserves the ring")
}

/// The image `∂(t^i u^k)` as a coefficient of `u^{k−1}` (or of `u^{m−1}` when `k = 0`).
pub fn image_vector(ctx: &Ctx, k: usize, i: i64) -> LaurentPoly {
    let field = ctx.field();
    let one = field.one();
    if k == 0 {
        return LaurentPoly::monomial(field.from_int(i), i - 1);
    }
    let km = field.from_ratio(k as i64, ctx.m() as i64);
    let pp_t = LaurentPoly::from_poly(ctx.p_prime()).shift(1).scale(&km);
    let inner = &ctx.p_laurent().scale(&field.from_int(i)) + &pp_t;
    &inner * &LaurentPoly::monomial(one, i - 1)
}

pub fn ce_dim(ctx: &Ctx) -> Result<usize, CentError> {
    let s = ce_shape(ctx)?;
    Ok(match s.variant {
        Variant::R => 1 + s.n * (s.m - 1),
        Variant::S => (s.n - 1) * (s.m - 1),
    })
}

/// The class of `t^t · u^u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub u: usize,
    pub t: i64,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}u^{}", self.t, self.u)
    }
}

impl BasisLabel {
    pub fn parse(s: &str) -> Option<Self> {
        let rest = s.strip_prefix("t^")?;
        let (t, u) = rest.split_once("u^")?;
        Some(BasisLabel {
            t: t.parse().ok()?,
            u: u.parse().ok()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelBasis {
    pub shape: Shape,
    pub labels: Vec<BasisLabel>,
}

/// Laurent variant: `[t^{−1}u^{m−1}]` and, for `k = 1..m−1`, the `n` classes
/// `t^{i_k+l−1+j} u^{k−1}` (`j = 0..n−1`).
/// Polynomial variant: `t^j u^{k−1}` for `j = 0..n−2`.
///
/// The image vector `(iP + (k/m)tP′)t^{i−1}` spans exponents `l+i−1 ..= l+i−1+n`;
/// its bottom coefficient vanishes at `i = −kl/m` and its top one at
/// `i = −k(l+n)/m`. With `i_k` chosen so that every `i ≥ i_k` has a live top and
/// every `i < i_k` a live bottom, the window is a complement by triangularity.
/// That is `i_k = ⌊−kl/m⌋`, moved up by one when `−k(l+n)/m` is exactly that
/// integer (otherwise the top-degenerate vector lies inside the window).
pub fn ce_basis(ctx: &Ctx) -> Result<CokernelBasis, CentError> {
    let shape = ce_shape(ctx)?;
    let Shape { m, n, l, .. } = shape;
    let mut labels = Vec::new();
    match shape.variant {
        Variant::R => {
            for k in 1..m {
                let mut ik = Integer::div_floor(&-((k * l) as i64), &(m as i64));
                if (k * (l + n)) % m == 0 && -((k * (l + n) / m) as i64) == ik {
                    ik += 1;
                }
                for j in 0..n as i64 {
                    labels.push(BasisLabel {
                        u: k - 1,
                        t: ik + l as i64 - 1 + j,
                    });
                }
            }
            labels.push(BasisLabel { u: m - 1, t: -1 });
        }
        Variant::S => {
            for k in 1..m {
                for j in 0..n as i64 - 1 {
                    labels.push(BasisLabel { u: k - 1, t: j });
                }
            }
        }
    }
    Ok(CokernelBasis { shape, labels })
}

/// A vector of the cokernel in basis coordinates; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CentralClass {
    coords: BTreeMap<BasisLabel, FieldElement>,
}

impl CentralClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (BasisLabel, FieldElement)>) -> Self {
        let mut c = Self::zero();
        for (k, v) in coords {
            c.add_term(k, &v);
        }
        c
    }

    pub fn coords(&self) -> &BTreeMap<BasisLabel, FieldElement> {
        &self.coords
    }

    pub fn get(&self, label: &BasisLabel) -> Option<&FieldElement> {
        self.coords.get(label)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_term(&mut self, k: BasisLabel, v: &FieldElement) {
        if v.is_zero() {
            return;
        }
        match self.coords.get_mut(&k) {
            Some(x) => {
                *x += v;
                if x.is_zero() {
                    self.coords.remove(&k);
                }
            }
            None => {
                self.coords.insert(k, v.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coords {
            out.add_term(*k, v);
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_coords(self.coords.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn neg(&self) -> Self {
        Self::from_coords(self.coords.iter().map(|(k, v)| (*k, -v)))
    }
}

const OFFSET: i64 = 1 << 40;

fn key(e: i64) -> usize {
    (e + OFFSET) as usize
}

fn sparse(c: &LaurentPoly) -> SparseVec {
    c.terms().map(|(e, a)| (key(e), a.clone())).collect()
}

const MAX_DOUBLINGS: u32 = 6;

/// Coordinates of `x` modulo `∂(R)` in [`ce_basis`].
pub fn ce_reduce(x: &RingElement) -> Result<CentralClass, CentError> {
    let ctx = x.ctx();
    let basis = ce_basis(ctx)?;
    let Shape { m, n, l, .. } = basis.shape;
    let deg_p = ctx.deg_p() as i64;
    let mut class = CentralClass::zero();
    for (c, y) in x.comps().iter().enumerate() {
        let Ok((s1, s2)) = y.l_deg() else { continue };
        // Output component c is hit by input component k = c + 1 (mod m).
        let k = (c + 1) % m;
        let (lo_shift, hi_shift) = if k == 0 { (1, 1) } else { (1 - deg_p, 1 - l as i64) };
        let labels: Vec<(usize, BasisLabel)> = basis
            .labels
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, b)| b.u == c)
            .collect();
        let mut widen = (n + l + 1) as i64;
        let mut solved = None;
        for _ in 0..=MAX_DOUBLINGS {
            let lo = s1.min(labels.iter().map(|b| b.1.t).min().unwrap_or(s1)) + lo_shift - widen;
            let hi = s2.max(labels.iter().map(|b| b.1.t).max().unwrap_or(s2)) + hi_shift + widen;
            let lo = if ctx.variant() == Variant::S { lo.max(0) } else { lo };
            let mut ech = Echelon::new();
            for i in lo..=hi {
                ech.insert(sparse(&image_vector(ctx, k, i)), SparseVec::new());
            }
            let independent = labels.iter().all(|(idx, b)| {
                let tag = SparseVec::from([(*idx, ctx.field().one())]);
                ech.insert(SparseVec::from([(key(b.t), ctx.field().one())]), tag)
            });
            if !independent {
                return Err(CentError::ShapeUnsupported(
                    "cokernel basis is dependent modulo the image".into(),
                ));
            }
            let (res, tag) = ech.reduce(sparse(y), SparseVec::new());
            if res.is_empty() {
                solved = Some(tag);
                break;
            }
            widen *= 2;
        }
        let tag = solved.ok_or_else(|| {
            CentError::ShapeUnsupported("reduction window did not close".into())
        })?;
        for (idx, v) in tag {
            class.add_term(basis.labels[idx], &-v);
        }
    }
    Ok(class)
}

/// `[f∂, g∂] = (f·∂g − g·∂f)∂`, on coefficients.
pub fn lie_bracket(f: &RingElement, g: &RingElement) -> RingElement {
    &(f * &ce_partial(g)) - &(g * &ce_partial(f))
}

/// `ω(f∂, g∂) = [∂f · ∂(∂g)]`.
pub fn ce_cocycle(f: &RingElement, g: &RingElement) -> Result<CentralClass, CentError> {
    if f.ctx() != g.ctx() {
        return Err(CentError::ContextMismatch);
    }
    ce_reduce(&(&ce_partial(f) * &ce_partial(&ce_partial(g))))
}

/// The cocycle on two derivations, each first written as `f·∂`.
pub fn ce_cocycle_derivations(d1: &Derivation, d2: &Derivation) -> Result<CentralClass, CentError> {
    let form = ce_oneform(d1.ctx())?;
    ce_cocycle(&coefficient_of(d1, &form)?, &coefficient_of(d2, &form)?)
}

/// `a, b` with `a·P′ + b·P = 1` in `F[t^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    pub m: usize,
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

impl OneForm {
    /// The coefficient `m·a` of `d(u)` in `T = m·a·du + b·u·dt`.
    pub fn ma(&self) -> LaurentPoly {
        self.a.scale(&self.a.field().from_int(self.m as i64))
    }

    pub fn verify(&self, ctx: &Ctx) -> bool {
        let pp = LaurentPoly::from_poly(ctx.p_prime());
        &(&self.a * &pp) + &(&self.b * ctx.p_laurent()) == LaurentPoly::one(ctx.field())
    }
}

pub fn ce_oneform(ctx: &Ctx) -> Result<OneForm, CentError> {
    let (g, s, t) = p_gcd_ext(ctx.p_prime(), ctx.p()).expect("P is nonzero");
    let (_, j) = g.as_monomial().ok_or(CentError::GcdNotMonomial)?;
    if ctx.variant() == Variant::S && j > 0 {
        return Err(CentError::GcdNotMonomial);
    }
    let form = OneForm {
        m: ctx.m(),
        a: LaurentPoly::from_poly(&s).shift(-(j as i64)),
        b: LaurentPoly::from_poly(&t).shift(-(j as i64)),
    };
    debug_assert!(form.verify(ctx));
    Ok(form)
}

/// `f` with `D = f·∂`, read off as `f = m·a·D(u) + b·u·D(t)`.
pub fn coefficient_of(d: &Derivation, form: &OneForm) -> Result<RingElement, CentError> {
    let ctx = d.ctx();
    let f = &d.h().mul_coefficient(&form.ma()) + &d.f().mul_u_pow(1).mul_coefficient(&form.b);
    if partial(ctx).mul_ring(&f) != *d {
        return Err(CentError::NotAMultiple);
    }
    if ctx.variant() == Variant::S && !f.is_polynomial() {
        return Err(CentError::NotAMultiple);
    }
    Ok(f)
}
