//! Isomorphisms between `R_2(P_A)` and `R_2(P_B)` for `P = t·∏(t − a_i)`
//! separable of odd degree, and the automorphism group of one such ring.
//!
//! Every map sends `t` to `c·t` or `c/t`, so detection reduces to multiset
//! identities among the roots; scalars never leave the field.

use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::poly::{LaurentPoly, Poly};
use crate::ring::{AlgebraCtx, Ctx, RingElement, RingError, RootData, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("roots must be nonzero, pairwise distinct, of even count ≥ 2, in one field: {0}")]
    BadRoots(String),
    #[error("√{0} is not in the coefficient field")]
    RadicandNotSquare(String),
    #[error("candidate scalar {0} lies outside the coefficient field")]
    FieldTooSmall(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoKind {
    /// `φ(t) = c·t`, `a_{γ(i)} = c·b_i`.
    Scale(FieldElement),
    /// `φ(t) = c/t`, `a_i·b_{γ(i)} = c`.
    Invert(FieldElement),
}

/// `sign · √radicand · t^monomial_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSqrt {
    pub radicand: FieldElement,
    pub monomial_exp: i64,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub kind: IsoKind,
    /// 0-based: `perm[i] = γ(i)`.
    pub perm: Vec<usize>,
    /// `φ(u) = sign·√s·t^e·u_B`.
    pub sqrt_scalar: SymbolicSqrt,
}

pub fn check_roots(roots: &[FieldElement]) -> Result<(), IsoError> {
    if roots.is_empty() || roots.len() % 2 == 1 {
        return Err(IsoError::BadRoots(format!("{} roots given", roots.len())));
    }
    if roots.iter().any(FieldElement::is_zero) {
        return Err(IsoError::BadRoots("zero root".into()));
    }
    let field = roots[0].field();
    if roots.iter().any(|r| r.field() != field) {
        return Err(IsoError::BadRoots("mixed fields".into()));
    }
    for (i, a) in roots.iter().enumerate() {
        if roots[..i].contains(a) {
            return Err(IsoError::BadRoots(format!("repeated root {a}")));
        }
    }
    Ok(())
}

/// `P = t·∏(t − a_i)` in `R_2`.
pub fn ctx_from_roots(roots: &[FieldElement]) -> Result<Ctx, IsoError> {
    check_roots(roots)?;
    let field = roots[0].field();
    let rd = RootData::new(1, roots.to_vec(), field.one())?;
    Ok(AlgebraCtx::with_rootdata(2, rd, Variant::R)?)
}

/// `γ` with `target[γ(i)] = image(i)` for all `i`, if the multisets agree.
fn matching(target: &[FieldElement], image: impl Fn(usize) -> FieldElement) -> Option<Vec<usize>> {
    let mut used = vec![false; target.len()];
    let mut perm = Vec::with_capacity(target.len());
    for i in 0..target.len() {
        let want = image(i);
        let j = (0..target.len()).find(|&j| !used[j] && target[j] == want)?;
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

fn product(xs: &[FieldElement]) -> FieldElement {
    xs.iter().fold(xs[0].field().one(), |acc, x| &acc * x)
}

/// All witnesses in candidate order: scalings by `a_j/b_1`, then inversions by `a_j·b_1`.
pub fn iso_decide_all(a: &[FieldElement], b: &[FieldElement]) -> Result<Vec<IsoWitness>, IsoError> {
    check_roots(a)?;
    check_roots(b)?;
    if a.len() != b.len() || a[0].field() != b[0].field() {
        return Ok(Vec::new());
    }
    let n = (a.len() / 2) as i64;
    let b0_inv = b[0].inv()?;
    let mut out = Vec::new();
    for aj in a {
        let c = aj * &b0_inv;
        if let Some(perm) = matching(a, |i| &c * &b[i]) {
            out.push(IsoWitness {
                sqrt_scalar: SymbolicSqrt {
                    radicand: c.pow(2 * n + 1)?,
                    monomial_exp: 0,
                    sign: 1,
                },
                kind: IsoKind::Scale(c),
                perm,
            });
        }
    }
    let prod_a = product(a);
    for aj in a {
        let c = aj * &b[0];
        // a_i·b_{γ(i)} = c  ⇔  b_{γ(i)} = c/a_i.
        if let Some(perm) = matching(b, |i| &c * &a[i].inv().expect("nonzero")) {
            out.push(IsoWitness {
                sqrt_scalar: SymbolicSqrt {
                    radicand: &c * &prod_a,
                    monomial_exp: -n - 1,
                    sign: 1,
                },
                kind: IsoKind::Invert(c),
                perm,
            });
        }
    }
    Ok(out)
}

/// First witness in candidate order, or `None` if the rings are not isomorphic.
pub fn iso_decide(a: &[FieldElement], b: &[FieldElement]) -> Result<Option<IsoWitness>, IsoError> {
    Ok(iso_decide_all(a, b)?.into_iter().next())
}

impl IsoWitness {
    /// The multiset identity that defines the witness.
    pub fn verify(&self, a: &[FieldElement], b: &[FieldElement]) -> bool {
        if self.perm.len() != a.len() || a.len() != b.len() {
            return false;
        }
        match &self.kind {
            IsoKind::Scale(c) => (0..a.len()).all(|i| a[self.perm[i]] == c * &b[i]),
            IsoKind::Invert(c) => (0..a.len()).all(|i| &a[i] * &b[self.perm[i]] == *c),
        }
    }

    /// `φ(t)` as a Laurent polynomial.
    pub fn image_of_t(&self) -> LaurentPoly {
        match &self.kind {
            IsoKind::Scale(c) => LaurentPoly::monomial(c.clone(), 1),
            IsoKind::Invert(c) => LaurentPoly::monomial(c.clone(), -1),
        }
    }
}

/// `E + O·(sign·√s·t^e)·u_B` in `R_2(P_B)`, with `√s` kept formal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicImage {
    pub even: LaurentPoly,
    /// Coefficient of `√s·u_B` (the sign and `t^e` are already folded in).
    pub odd: LaurentPoly,
    pub radicand: FieldElement,
    pub target: Ctx,
}

impl SymbolicImage {
    /// `(E + O√s u)² = E² + O²·s·P_B + 2EO·√s u`.
    pub fn square(&self) -> SymbolicImage {
        let two = self.radicand.field().from_int(2);
        let p = self.target.p_laurent();
        SymbolicImage {
            even: &(&self.even * &self.even) + &(&(&self.odd * &self.odd) * p).scale(&self.radicand),
            odd: (&self.even * &self.odd).scale(&two),
            radicand: self.radicand.clone(),
            target: self.target.clone(),
        }
    }

    /// A genuine ring element once `√s` is found in the field.
    pub fn embed(&self) -> Result<RingElement, IsoError> {
        let root = self
            .radicand
            .sqrt()?
            .ok_or_else(|| IsoError::RadicandNotSquare(self.radicand.to_string()))?;
        Ok(RingElement::new(
            &self.target,
            vec![self.even.clone(), self.odd.scale(&root)],
        )?)
    }
}

/// `φ(f + g·u) = f(φ t) + g(φ t)·φ(u)`.
pub fn iso_apply(w: &IsoWitness, x: &RingElement, target: &Ctx) -> Result<SymbolicImage, IsoError> {
    if x.ctx().m() != 2 || target.m() != 2 {
        return Err(RingError::RequiresM2.into());
    }
    let (c, sign) = match &w.kind {
        IsoKind::Scale(c) => (c, 1),
        IsoKind::Invert(c) => (c, -1),
    };
    let phi_u = LaurentPoly::monomial(
        target.field().from_int(w.sqrt_scalar.sign as i64),
        w.sqrt_scalar.monomial_exp,
    );
    Ok(SymbolicImage {
        even: x.comp(0).substitute(c, sign).map_err(|_| FieldError::DivisionByZero)?,
        odd: &x.comp(1).substitute(c, sign).map_err(|_| FieldError::DivisionByZero)? * &phi_u,
        radicand: w.sqrt_scalar.radicand.clone(),
        target: target.clone(),
    })
}

/// `φ(P_A)`, the value `φ(u)²` must take.
pub fn image_of_p(w: &IsoWitness, source: &Poly) -> LaurentPoly {
    let (c, sign) = match &w.kind {
        IsoKind::Scale(c) => (c, 1),
        IsoKind::Invert(c) => (c, -1),
    };
    LaurentPoly::from_poly(source)
        .substitute(c, sign)
        .expect("c is nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutGroup {
    ZkTimesZ2,
    DkTimesZ2,
}

impl AutGroup {
    pub fn name(self) -> &'static str {
        match self {
            AutGroup::ZkTimesZ2 => "ZkTimesZ2",
            AutGroup::DkTimesZ2 => "DkTimesZ2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutGenerator {
    /// `u ↦ −u`.
    Delta,
    /// `t ↦ ζt` with `ζ{a} = {a}`; `order` divides `2n`.
    Scaling { zeta: FieldElement, order: u64 },
    /// `t ↦ c/t` with `{a} = {c/a}`; `∏a_i = sign·c^n`, so `φ(u) = t^{−n−1}√(sign·c^{n+1})·u`.
    Inversion { c: FieldElement, sign: i8, radicand: FieldElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGroupDescriptor {
    pub k: u64,
    pub has_inversion: bool,
    pub group: AutGroup,
    pub generators: Vec<AutGenerator>,
    /// Every valid inversion scalar, ascending.
    pub inversion_scalars: Vec<FieldElement>,
}

pub fn aut_group(roots: &[FieldElement]) -> Result<AutGroupDescriptor, IsoError> {
    check_roots(roots)?;
    let n2 = roots.len();
    let n = (n2 / 2) as i64;
    let a0_inv = roots[0].inv()?;
    let mut best: Option<(FieldElement, u64)> = None;
    for aj in roots {
        let zeta = aj * &a0_inv;
        if matching(roots, |i| &zeta * &roots[i]).is_none() {
            continue;
        }
        let order = zeta
            .root_of_unity_order(n2 as u64)
            .expect("a root-set symmetry permutes 2n points, so ζ^{2n} = 1");
        if best.as_ref().is_none_or(|(_, o)| order > *o) {
            best = Some((zeta, order));
        }
    }
    let (zeta, k) = best.expect("ζ = 1 always qualifies");
    let mut scalars: Vec<FieldElement> = roots
        .iter()
        .map(|aj| &roots[0] * aj)
        .filter(|c| matching(roots, |i| c * &roots[i].inv().expect("nonzero")).is_some())
        .collect();
    scalars.sort();
    scalars.dedup();
    let mut generators = vec![AutGenerator::Delta];
    if k > 1 {
        generators.push(AutGenerator::Scaling { zeta, order: k });
    }
    if let Some(c) = scalars.first() {
        let prod = product(roots);
        let cn = c.pow(n)?;
        let sign: i8 = if prod == cn {
            1
        } else if prod == -&cn {
            -1
        } else {
            unreachable!("pairing a_i with c/a_i forces ∏a_i = ±c^n")
        };
        let radicand = c.pow(n + 1)?.scale(&crate::field::Rational::from_integer(sign.into()));
        generators.push(AutGenerator::Inversion {
            c: c.clone(),
            sign,
            radicand,
        });
    }
    let has_inversion = !scalars.is_empty();
    Ok(AutGroupDescriptor {
        k,
        has_inversion,
        group: if has_inversion {
            AutGroup::DkTimesZ2
        } else {
            AutGroup::ZkTimesZ2
        },
        generators,
        inversion_scalars: scalars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ints(k: &Field, xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| k.from_int(x)).collect()
    }

    #[test]
    fn scale_witness() {
        let k = Field::rationals();
        let (a, b) = (ints(&k, &[1, 2]), ints(&k, &[2, 4]));
        let w = iso_decide(&a, &b).unwrap().unwrap();
        assert_eq!(w.kind, IsoKind::Scale(k.from_ratio(1, 2)));
        assert_eq!(w.perm, vec![0, 1]);
        assert!(w.verify(&a, &b));
        assert_eq!(w.sqrt_scalar.radicand, k.from_ratio(1, 8));
        assert_eq!(w.image_of_t(), LaurentPoly::monomial(k.from_ratio(1, 2), 1));
    }

    #[test]
    fn inversion_witness_exists() {
        let k = Field::rationals();
        let a = ints(&k, &[1, -1]);
        let all = iso_decide_all(&a, &a).unwrap();
        assert!(all
            .iter()
            .any(|w| w.kind == IsoKind::Invert(k.from_int(-1)) && w.verify(&a, &a)));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let k = Field::rationals();
        assert!(iso_decide(&ints(&k, &[1, 3]), &ints(&k, &[1, 2, 3, 4])).unwrap().is_none());
        assert!(matches!(check_roots(&ints(&k, &[1])), Err(IsoError::BadRoots(_))));
        assert!(matches!(iso_decide(&ints(&k, &[1, 1]), &ints(&k, &[1, 2])), Err(IsoError::BadRoots(_))));
    }

    #[test]
    fn relation_is_preserved() {
        let k = Field::rationals();
        let (a, b) = (ints(&k, &[1, 2]), ints(&k, &[2, 4]));
        let (ca, cb) = (ctx_from_roots(&a).unwrap(), ctx_from_roots(&b).unwrap());
        for w in iso_decide_all(&a, &b).unwrap() {
            let img = iso_apply(&w, &RingElement::u(&ca), &cb).unwrap().square();
            assert!(img.odd.is_zero());
            assert_eq!(img.even, image_of_p(&w, ca.p()));
        }
        let w = iso_decide(&a, &b).unwrap().unwrap();
        let phi_u = iso_apply(&w, &RingElement::u(&ca), &cb).unwrap();
        assert_eq!(phi_u.odd, LaurentPoly::one(&k));
        assert!(matches!(phi_u.embed(), Err(IsoError::RadicandNotSquare(_))));
    }

    #[test]
    fn aut_examples() {
        let k = Field::rationals();
        let g = aut_group(&ints(&k, &[1, -1])).unwrap();
        assert_eq!((g.k, g.group), (2, AutGroup::DkTimesZ2));
        assert_eq!(g.inversion_scalars, ints(&k, &[-1, 1]));
        let g = aut_group(&ints(&k, &[1, 2, 3, 4])).unwrap();
        assert_eq!((g.k, g.has_inversion, g.group), (1, false, AutGroup::ZkTimesZ2));
        let g = aut_group(&ints(&k, &[1, 2])).unwrap();
        assert_eq!((g.k, g.group), (1, AutGroup::DkTimesZ2));
        assert_eq!(g.inversion_scalars, ints(&k, &[2]));
    }

    #[test]
    fn fourth_roots_of_unity() {
        let k = Field::gaussian();
        let i = k.generator();
        let roots = vec![k.one(), i.clone(), -k.one(), -&i];
        let g = aut_group(&roots).unwrap();
        assert_eq!((g.k, g.group), (4, AutGroup::DkTimesZ2));
    }
}
