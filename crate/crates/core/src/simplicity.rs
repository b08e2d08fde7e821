//! Simplicity of the derivation Lie algebra, decided from the multiple-root
//! structure of `P`, with a stable proper ideal as certificate when it fails.

use std::collections::HashMap;

use num_integer::Integer;
use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg::{Echelon, SparseVec};
use crate::liealg::d_basis;
use crate::poly::{p_has_multiple_nonzero_roots, p_has_multiple_roots, LaurentPoly, Poly};
use crate::ring::{Ctx, RingElement, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimpError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("degree window {got} is below the {required} needed for a conclusive membership test")]
    WindowTooSmall { required: i64, got: i64 },
    #[error("witness was built for a different algebra")]
    ContextMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// No disqualifying multiple root.
    Squarefree,
    /// `S_m(P)` with a repeated root.
    MultipleRoot,
    /// `R_m(P)` with a repeated nonzero root.
    MultipleNonzeroRoot,
    /// `P = c·t^r` with `gcd(r, m) > 1`.
    MonomialGcdTrap,
    /// `P = c·t^r` with `gcd(r, m) = 1`: the centerless Virasoro algebra.
    VirasoroMonomial,
}

impl Reason {
    pub fn name(self) -> &'static str {
        match self {
            Reason::Squarefree => "Squarefree",
            Reason::MultipleRoot => "MultipleRoot",
            Reason::MultipleNonzeroRoot => "MultipleNonzeroRoot",
            Reason::MonomialGcdTrap => "MonomialGcdTrap",
            Reason::VirasoroMonomial => "VirasoroMonomial",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Reason::Squarefree,
            Reason::MultipleRoot,
            Reason::MultipleNonzeroRoot,
            Reason::MonomialGcdTrap,
            Reason::VirasoroMonomial,
        ]
        .into_iter()
        .find(|r| r.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `(t − λ) + (u)` for a multiple root `λ`.
    RootIdeal(FieldElement),
    /// The principal ideal of a zero divisor `x` with `Δ(x) = 0`.
    KernelElement(RingElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessIdeal {
    pub kind: WitnessKind,
    pub generators: Vec<RingElement>,
}

impl WitnessIdeal {
    pub fn root_ideal(ctx: &Ctx, lambda: FieldElement) -> Self {
        let t_minus = &RingElement::t(ctx) - &RingElement::scalar(ctx, lambda.clone());
        WitnessIdeal {
            kind: WitnessKind::RootIdeal(lambda),
            generators: vec![t_minus, RingElement::u(ctx)],
        }
    }

    pub fn kernel_element(x: RingElement) -> Self {
        WitnessIdeal {
            generators: vec![x.clone()],
            kind: WitnessKind::KernelElement(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub algebra: Variant,
    pub simple: bool,
    pub reason: Reason,
    pub witness: Option<WitnessIdeal>,
    /// Set when non-simple but no witness could be built inside the field
    /// (the multiple root, or the `d`-th root in the monomial case, is not available).
    pub witness_unavailable: bool,
}

pub fn simp_check(ctx: &Ctx) -> Result<SimplicityReport, SimpError> {
    let p = ctx.p();
    if ctx.m() < 2 || p.degree().unwrap_or(0) < 1 {
        return Err(SimpError::BadInput("need m >= 2 and nonconstant P".into()));
    }
    let verdict = |simple, reason, witness: Option<WitnessIdeal>| SimplicityReport {
        algebra: ctx.variant(),
        simple,
        reason,
        witness_unavailable: !simple && witness.is_none(),
        witness,
    };
    match ctx.variant() {
        Variant::S => {
            if !p_has_multiple_roots(p).expect("P is nonconstant") {
                return Ok(verdict(true, Reason::Squarefree, None));
            }
            let w = multiple_root(ctx, true).map(|l| WitnessIdeal::root_ideal(ctx, l));
            Ok(verdict(false, Reason::MultipleRoot, w))
        }
        Variant::R => {
            if let Some((c, r)) = p.as_monomial() {
                let d = (r as u64).gcd(&(ctx.m() as u64)) as usize;
                if d == 1 {
                    return Ok(verdict(true, Reason::VirasoroMonomial, None));
                }
                let w = monomial_kernel_element(ctx, &c, r, d).map(WitnessIdeal::kernel_element);
                return Ok(verdict(false, Reason::MonomialGcdTrap, w));
            }
            if !p_has_multiple_nonzero_roots(p).expect("P is nonconstant") {
                return Ok(verdict(true, Reason::Squarefree, None));
            }
            let w = multiple_root(ctx, false).map(|l| WitnessIdeal::root_ideal(ctx, l));
            Ok(verdict(false, Reason::MultipleNonzeroRoot, w))
        }
    }
}

/// `x = 1 − α·t^{−r/d}·u^{m/d}` with `α^d = 1/c`, so that `(α t^{−r/d} u^{m/d})^d = 1`.
pub fn monomial_kernel_element(ctx: &Ctx, c: &FieldElement, r: usize, d: usize) -> Option<RingElement> {
    let alpha = c.inv().ok()?.nth_root(d as u32).ok()??;
    let y = RingElement::monomial(ctx, alpha, -((r / d) as i64), ctx.m() / d).ok()?;
    Some(&RingElement::one(ctx) - &y)
}

/// A multiple root of `P` (nonzero unless `allow_zero`), from root data or a linear gcd factor.
fn multiple_root(ctx: &Ctx, allow_zero: bool) -> Option<FieldElement> {
    let field = ctx.field();
    if let Some(rd) = ctx.rootdata() {
        if allow_zero && rd.l >= 2 {
            return Some(field.zero());
        }
        if let Some(r) = rd.repeated_root() {
            return Some(r.clone());
        }
    }
    let mut g = ctx.p().gcd(ctx.p_prime()).ok()?;
    let v = g.t_adic_valuation().unwrap_or(0);
    if allow_zero && v > 0 {
        return Some(field.zero());
    }
    g = g.exact_div(&Poly::monomial(field.one(), v))?;
    if g.degree() != Some(1) {
        return None;
    }
    Some(-&(&g.coeff(0) * &g.coeff(1).inv().ok()?))
}

/// Windowed membership in an ideal of the ring: multipliers `t^s u^j` with
/// `|s| ≤ window` (or `0 ≤ s ≤ window` in the polynomial variant).
pub struct IdealWindow {
    echelon: Echelon,
    index: HashMap<(i64, usize), usize>,
    window: i64,
}

impl IdealWindow {
    pub fn new(ctx: &Ctx, generators: &[RingElement], window: i64) -> Self {
        let mut w = IdealWindow {
            echelon: Echelon::new(),
            index: HashMap::new(),
            window,
        };
        let lo = if ctx.variant() == Variant::S { 0 } else { -window };
        let one = ctx.field().one();
        for g in generators {
            for s in lo..=window {
                for j in 0..ctx.m() {
                    let mult = RingElement::monomial(ctx, one.clone(), s, j).expect("s in range");
                    let v = w.vectorize(&(g * &mult));
                    w.echelon.insert(v, SparseVec::new());
                }
            }
        }
        w
    }

    fn vectorize(&mut self, x: &RingElement) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in x.comps().iter().enumerate() {
            for (e, a) in c.terms() {
                let n = self.index.len();
                let k = *self.index.entry((e, j)).or_insert(n);
                out.insert(k, a.clone());
            }
        }
        out
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn contains(&mut self, x: &RingElement) -> bool {
        let v = self.vectorize(x);
        self.echelon.contains(v)
    }
}

fn max_abs_exponent(x: &RingElement) -> i64 {
    x.comps()
        .iter()
        .filter_map(|c| c.l_deg().ok())
        .map(|(a, b)| a.abs().max(b.abs()))
        .max()
        .unwrap_or(0)
}

/// Checks that every module generator of the derivations maps each ideal
/// generator back into the ideal, and that `1` is not in the ideal.
pub fn simp_verify_witness(ctx: &Ctx, w: &WitnessIdeal, degree_window: i64) -> Result<bool, SimpError> {
    if w.generators.iter().any(|g| g.ctx() != ctx) {
        return Err(SimpError::ContextMismatch);
    }
    let derivations = d_basis(ctx);
    let images: Vec<RingElement> = derivations
        .iter()
        .flat_map(|d| w.generators.iter().map(move |g| d.apply(g)))
        .collect();
    let slack = ctx.deg_p() as i64 + 1;
    let required = images
        .iter()
        .chain(&w.generators)
        .map(max_abs_exponent)
        .max()
        .unwrap_or(0)
        + slack;
    if degree_window < required {
        return Err(SimpError::WindowTooSmall {
            required,
            got: degree_window,
        });
    }
    let mut ideal = IdealWindow::new(ctx, &w.generators, degree_window);
    let stable = images.iter().all(|y| ideal.contains(y));
    let proper = !ideal.contains(&RingElement::one(ctx));
    Ok(stable && proper)
}

/// `(t − λ)`-adic check used by tests: `x ∈ (t − λ) + (u)` iff `x_0(λ) = 0`.
pub fn in_root_ideal(x: &RingElement, lambda: &FieldElement) -> bool {
    let c0: &LaurentPoly = x.comp(0);
    let mut acc = lambda.field().zero();
    for (e, a) in c0.terms() {
        acc += &(a * &lambda.pow(e).expect("λ nonzero when negative exponents occur"));
    }
    acc.is_zero()
}
