//! Dense univariate polynomials and Laurent polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial must have degree >= 1")]
    ConstantInput,
    #[error("zero polynomial has no degree window")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn trim(coeffs: &mut Vec<FieldElement>) {
    while coeffs.last().is_some_and(FieldElement::is_zero) {
        coeffs.pop();
    }
}

fn dense_add(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => field.zero(),
        })
        .collect()
}

fn dense_mul(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Polynomial with coefficients indexed by degree; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Self {
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn monomial(c: FieldElement, e: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); e];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// `scale · t^l · ∏ (t - root)`.
    pub fn from_roots(scale: &FieldElement, l: usize, roots: &[FieldElement]) -> Self {
        let field = scale.field();
        let mut p = Self::monomial(scale.clone(), l);
        for r in roots {
            p = &p * &Self::new(field, vec![-r, field.one()]);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as i64))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let Some(db) = divisor.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let lead_inv = divisor.coeffs[db].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        while rem.len() > db {
            let shift = rem.len() - 1 - db;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &(&c * b);
            }
            quot[shift] = c;
            rem.pop();
            trim(&mut rem);
        }
        Ok((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// `Some((c, j))` when the polynomial is `c·t^j` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(FieldElement, usize)> {
        let d = self.degree()?;
        self.coeffs[..d]
            .iter()
            .all(FieldElement::is_zero)
            .then(|| (self.coeffs[d].clone(), d))
    }

    /// Order of vanishing at 0.
    pub fn t_adic_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        p_gcd_ext(self, other).map(|(g, _, _)| g)
    }
}

/// Extended Euclid: returns `(gcd, s, t)` with `s·f + t·g = gcd` and `gcd` monic.
pub fn p_gcd_ext(f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let field = f.field();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc_inv = r0.leading().expect("nonzero gcd").inv()?;
    Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
}

/// `gcd(P, P')` has positive degree.
pub fn p_has_multiple_roots(p: &Poly) -> Result<bool, PolyError> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(PolyError::ConstantInput);
    }
    Ok(p.gcd(&p.derivative())?.degree() != Some(0))
}

/// `gcd(P, P')` is not a monomial `c·t^j`.
pub fn p_has_multiple_nonzero_roots(p: &Poly) -> Result<bool, PolyError> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(PolyError::ConstantInput);
    }
    Ok(p.gcd(&p.derivative())?.as_monomial().is_none())
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(&self.field, dense_add(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::new(&self.field, dense_mul(&self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&LaurentPoly::from_poly(self), f)
    }
}

/// Laurent polynomial `Σ coeffs[i] t^{low+i}`; first and last coefficients are nonzero
/// unless the polynomial is zero (then `low = 0` and there are no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<FieldElement>,
}

impl LaurentPoly {
    pub fn new(field: &Field, low: i64, mut coeffs: Vec<FieldElement>) -> Self {
        trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero(field);
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            field: field.clone(),
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        LaurentPoly {
            field: field.clone(),
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: FieldElement, e: i64) -> Self {
        let field = c.field().clone();
        Self::new(&field, e, vec![c])
    }

    pub fn from_ints(field: &Field, low: i64, coeffs: &[i64]) -> Self {
        Self::new(field, low, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::new(p.field(), 0, p.coeffs().to_vec())
    }

    /// The polynomial with the same coefficients when no negative exponent occurs.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero(&self.field));
        }
        if self.low < 0 {
            return None;
        }
        let mut coeffs = vec![self.field.zero(); self.low as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        Some(Poly::new(&self.field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// Exponent of `coeffs()[0]`; `0` for the zero polynomial.
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `(lowest, highest)` exponent with nonzero coefficient.
    pub fn l_deg(&self) -> Result<(i64, i64), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok((self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    pub fn coeff(&self, e: i64) -> FieldElement {
        let idx = e - self.low;
        if idx < 0 {
            return self.field.zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &FieldElement)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            field: self.field.clone(),
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &self.field.from_int(self.low + i as i64))
            .collect();
        Self::new(&self.field, self.low - 1, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| &acc * self)
    }

    /// `Some((c, e))` when the Laurent polynomial is `c·t^e` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(FieldElement, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.low))
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        self.as_monomial().and_then(|(c, e)| (e == 0).then_some(c))
    }

    /// Exact quotient in `F[t, t^{-1}]`, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let num = Poly::new(&self.field, self.coeffs.clone());
        let den = Poly::new(&self.field, divisor.coeffs.clone());
        let q = num.exact_div(&den)?;
        Some(LaurentPoly::from_poly(&q).shift(self.low - divisor.low))
    }

    /// Substitutes `t ↦ c·t^sign`, `sign = ±1`.
    pub fn substitute(&self, c: &FieldElement, sign: i64) -> Result<Self, PolyError> {
        let mut out = Self::zero(&self.field);
        for (e, a) in self.terms() {
            out = &out + &Self::monomial(a * &c.pow(e)?, sign * e);
        }
        Ok(out)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let pad = |p: &LaurentPoly| {
            let mut v = vec![p.field.zero(); (p.low - low) as usize];
            v.extend(p.coeffs.iter().cloned());
            v
        };
        LaurentPoly::new(&self.field, low, dense_add(&self.field, &pad(self), &pad(rhs)))
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(&self.field);
        }
        LaurentPoly::new(
            &self.field,
            self.low + rhs.low,
            dense_mul(&self.field, &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Mul<&Poly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &Poly) -> LaurentPoly {
        self * &LaurentPoly::from_poly(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

owned_ops!(Poly);
owned_ops!(LaurentPoly);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.as_rational().is_some() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match e {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*t")?,
                _ => write!(f, "{coef}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn gcd_of_cubic_and_derivative_is_one() {
        let f = Poly::from_ints(&q(), &[0, -1, 0, 1]);
        let g = Poly::from_ints(&q(), &[-1, 0, 3]);
        let (d, s, t) = p_gcd_ext(&f, &g).unwrap();
        assert_eq!(d, Poly::one(&q()));
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn gcd_with_common_factor_t() {
        // t^2 (t - 1) and t (3t - 2)
        let f = Poly::from_ints(&q(), &[0, 0, -1, 1]);
        let g = Poly::from_ints(&q(), &[0, -2, 3]);
        let (d, s, t) = p_gcd_ext(&f, &g).unwrap();
        assert_eq!(d, Poly::t(&q()));
        assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn gcd_with_zero_second_argument() {
        let f = Poly::from_ints(&q(), &[2, 0, 4]);
        let (d, s, t) = p_gcd_ext(&f, &Poly::zero(&q())).unwrap();
        assert_eq!(d, f.monic());
        assert_eq!(s, Poly::constant(q().from_ratio(1, 4)));
        assert!(t.is_zero());
        assert_eq!(
            p_gcd_ext(&Poly::zero(&q()), &Poly::zero(&q())),
            Err(PolyError::BothZero)
        );
    }

    #[test]
    fn multiple_root_predicates() {
        let k = q();
        let one = k.one();
        let p1 = Poly::from_roots(&one, 1, &[k.from_int(1), k.from_int(-1)]);
        assert_eq!(p_has_multiple_roots(&p1), Ok(false));
        assert_eq!(p_has_multiple_nonzero_roots(&p1), Ok(false));
        let p2 = Poly::from_ints(&k, &[0, 0, 1]);
        assert_eq!(p_has_multiple_roots(&p2), Ok(true));
        assert_eq!(p_has_multiple_nonzero_roots(&p2), Ok(false));
        let p3 = Poly::from_roots(&one, 1, &[k.from_int(1), k.from_int(1)]);
        assert_eq!(p_has_multiple_roots(&p3), Ok(true));
        assert_eq!(p_has_multiple_nonzero_roots(&p3), Ok(true));
        assert_eq!(
            p_has_multiple_roots(&Poly::from_ints(&k, &[3])),
            Err(PolyError::ConstantInput)
        );
    }

    #[test]
    fn laurent_degree_window() {
        let k = q();
        let f = &LaurentPoly::monomial(k.one(), -2) + &LaurentPoly::monomial(k.from_int(3), 5);
        assert_eq!(f.l_deg(), Ok((-2, 5)));
        assert_eq!(LaurentPoly::constant(k.from_int(5)).l_deg(), Ok((0, 0)));
        assert_eq!(LaurentPoly::monomial(k.one(), 3).l_deg(), Ok((3, 3)));
        assert_eq!(LaurentPoly::zero(&k).l_deg(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn laurent_normalization_strips_both_ends() {
        let k = q();
        let f = LaurentPoly::from_ints(&k, -3, &[0, 0, 1, 2, 0]);
        assert_eq!(f.l_deg(), Ok((-1, 0)));
        assert_eq!(f, LaurentPoly::from_ints(&k, -1, &[1, 2]));
        let z = LaurentPoly::from_ints(&k, 4, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z, LaurentPoly::zero(&k));
    }

    #[test]
    fn laurent_exact_division() {
        let k = q();
        let a = LaurentPoly::from_ints(&k, -2, &[-1, 0, 1]); // t^-2 (t^2 - 1)
        let b = LaurentPoly::from_ints(&k, 0, &[-1, 1]);
        let quotient = a.exact_div(&b).unwrap();
        assert_eq!(&quotient * &b, a);
        assert!(LaurentPoly::from_ints(&k, 0, &[1, 1, 1]).exact_div(&b).is_none());
    }

    #[test]
    fn substitution_scales_and_inverts() {
        let k = q();
        let p = LaurentPoly::from_ints(&k, 0, &[1, 1]); // 1 + t
        assert_eq!(p.substitute(&k.from_int(2), 1).unwrap(), LaurentPoly::from_ints(&k, 0, &[1, 2]));
        assert_eq!(p.substitute(&k.from_int(2), -1).unwrap(), LaurentPoly::from_ints(&k, -1, &[2, 1]));
    }
}
