//! Exact coefficient arithmetic over Q and over one simple extension Q(θ).
//!
//! A [`Field`] is a cheap, shared handle on a monic irreducible minimal
//! polynomial. Elements store their coordinates in the power basis
//! `1, θ, …, θ^{d-1}` and a handle to the field they live in, so every
//! polynomial and ring element built on top can recover its field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("minimal polynomial is reducible (factor {0})")]
    Reducible(String),
    #[error("irreducibility of the minimal polynomial could not be verified within the search budget")]
    IrreducibilityUnverified,
    #[error("expected {expected} coordinates, got {got}")]
    BadCoordinates { expected: usize, got: usize },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("square roots of irrational elements are only decided in fields of degree <= 2")]
    SqrtUndecided,
}

/// The defining data of a field: a monic minimal polynomial, lowest degree first.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldData {
    minpoly: Vec<Rational>,
}

impl FieldData {
    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl Field {
    /// The field of rationals, presented as Q(θ) with θ = 0.
    pub fn rationals() -> Self {
        Field(Arc::new(FieldData {
            minpoly: vec![Rational::zero(), Rational::one()],
        }))
    }

    /// Builds Q(θ) from a monic minimal polynomial given lowest degree first.
    /// Irreducibility over Q is verified before the field is returned.
    pub fn new(minpoly: Vec<Rational>) -> Result<Self, FieldError> {
        let mut minpoly = minpoly;
        qpoly::trim(&mut minpoly);
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        if minpoly.len() >= 3 {
            irreducible::check(&minpoly)?;
        }
        Ok(Field(Arc::new(FieldData { minpoly })))
    }

    pub fn from_ints(minpoly: &[i64]) -> Result<Self, FieldError> {
        Self::new(minpoly.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Q(i).
    pub fn gaussian() -> Self {
        Self::from_ints(&[1, 0, 1]).expect("x^2+1 is irreducible")
    }

    /// Q(√d) for a non-square integer d.
    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        Self::from_ints(&[-d, 0, 1])
    }

    pub fn data(&self) -> &FieldData {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = q;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> FieldElement {
        self.from_rational(Rational::new(num.into(), den.into()))
    }

    /// The primitive element θ. In Q this is the root of the degree-one
    /// minimal polynomial, a rational number.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.from_rational(-self.0.minpoly[0].clone());
        }
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[1] = Rational::one();
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<FieldElement, FieldError> {
        if coords.len() != self.degree() {
            return Err(FieldError::BadCoordinates {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    fn reduce(&self, mut prod: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        let mp = &self.0.minpoly;
        if d == 1 {
            // θ is the rational root -mp[0].
            let root = -mp[0].clone();
            let mut acc = Rational::zero();
            for c in prod.iter().rev() {
                acc = acc * &root + c;
            }
            return vec![acc];
        }
        for idx in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[idx]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in mp.iter().take(d).enumerate() {
                prod[idx - d + j] -= &c * m;
            }
        }
        prod.truncate(d);
        prod.resize(d, Rational::zero());
        prod
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates. Not an ordered-field order; used only for
/// deterministic tie-breaking.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

/// Checked arithmetic with explicit error reporting.
pub fn fe_arith(
    x: &FieldElement,
    y: &FieldElement,
    kind: ArithKind,
) -> Result<FieldElement, FieldError> {
    if x.field != y.field {
        return Err(FieldError::FieldMismatch);
    }
    Ok(match kind {
        ArithKind::Add => x + y,
        ArithKind::Sub => x - y,
        ArithKind::Mul => x * y,
        ArithKind::Div => x.checked_div(y)?,
    })
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let mut a = self.coords.clone();
        qpoly::trim(&mut a);
        let (g, s) = qpoly::inverse_mod(&a, self.field.0.minpoly());
        debug_assert_eq!(g.len(), 1);
        let mut coords = s;
        coords.resize(self.field.degree(), Rational::zero());
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Smallest `N <= bound` with `self^N = 1`.
    pub fn root_of_unity_order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_one() {
                return Some(n);
            }
            acc = &acc * self;
        }
        None
    }

    /// A square root inside the field, if one exists.
    ///
    /// Decided exactly for rational elements and for quadratic fields. For
    /// irrational elements of higher-degree fields, `SqrtUndecided` is
    /// returned instead of a guess.
    pub fn sqrt(&self) -> Result<Option<FieldElement>, FieldError> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let d = self.field.degree();
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_sqrt(q) {
                return Ok(Some(self.field.from_rational(r)));
            }
            if d == 1 {
                return Ok(None);
            }
        }
        if d != 2 {
            return Err(FieldError::SqrtUndecided);
        }
        Ok(self.quadratic_sqrt())
    }

    fn quadratic_sqrt(&self) -> Option<FieldElement> {
        // minpoly x^2 + p x + q; w = 2θ + p satisfies w^2 = p^2 - 4q.
        let mp = self.field.0.minpoly();
        let (q0, p) = (&mp[0], &mp[1]);
        let two = Rational::from_integer(2.into());
        let disc = p * p - Rational::from_integer(4.into()) * q0;
        let (a, b) = (&self.coords[0], &self.coords[1]);
        let big_a = a - b * p / &two;
        let big_b = b / &two;
        let mut candidates: Vec<(Rational, Rational)> = Vec::new();
        if big_b.is_zero() {
            if let Some(x) = rational_sqrt(&big_a) {
                candidates.push((x, Rational::zero()));
            }
            if let Some(y) = rational_sqrt(&(&big_a / &disc)) {
                candidates.push((Rational::zero(), y));
            }
        } else if let Some(n) = rational_sqrt(&(&big_a * &big_a - &disc * &big_b * &big_b)) {
            for cand in [(&big_a + &n) / &two, (&big_a - &n) / &two] {
                if let Some(x) = rational_sqrt(&cand) {
                    if !x.is_zero() {
                        let y = &big_b / (&two * &x);
                        candidates.push((x, y));
                    }
                }
            }
        }
        for (x, y) in candidates {
            let root = FieldElement {
                field: self.field.clone(),
                coords: vec![&x + &y * p, &two * &y],
            };
            if &(&root * &root) == self {
                return Some(root);
            }
        }
        None
    }

    /// An `n`-th root inside the field, if one can be found. Even `n` goes
    /// through repeated square roots; odd `n` is supported for rational
    /// elements.
    pub fn nth_root(&self, n: u32) -> Result<Option<FieldElement>, FieldError> {
        if n == 0 {
            return Ok(None);
        }
        if n == 1 {
            return Ok(Some(self.clone()));
        }
        if let Some(q) = self.as_rational() {
            if let Some(r) = rational_nth_root(q, n) {
                return Ok(Some(self.field.from_rational(r)));
            }
        }
        if n.is_multiple_of(2) {
            let Some(s) = self.sqrt()? else {
                return Ok(None);
            };
            for cand in [s.clone(), -s] {
                if let Some(r) = cand.nth_root(n / 2)? {
                    return Ok(Some(r));
                }
            }
            return Ok(None);
        }
        if self.field.is_rationals() {
            Ok(None)
        } else {
            Err(FieldError::SqrtUndecided)
        }
    }

    fn assert_same(&self, other: &FieldElement) {
        assert!(self.field == other.field, "field mismatch in element arithmetic");
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    rational_nth_root(q, 2)
}

fn rational_nth_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |z: &BigInt| -> Option<BigInt> {
        let r = z.nth_root(n);
        (r.pow(n) == *z).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*θ")?,
                _ => write!(f, "({c})*θ^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        if self.field.degree() == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &rhs.coords[0]],
            };
        }
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement {
            field: self.field.clone(),
            coords: self.field.reduce(prod),
        }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        self.assert_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::BadRational(s.to_string());
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical string: `p` for integers, `p/q` with `q > 0` and `gcd(p, q) = 1` otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense polynomials over Q, lowest degree first. Only what the field
/// itself needs: inversion modulo the minimal polynomial and factor tests.
mod qpoly {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    pub fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, x) in b.iter().enumerate() {
            out[i] -= x;
        }
        trim(&mut out);
        out
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    /// Returns `(g, s)` with `s*a ≡ g (mod m)`, `g` monic gcd; for `a` coprime to `m`, `g = 1`.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![super::One::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let lead = r0.last().unwrap().clone();
        let g: Vec<Rational> = r0.iter().map(|c| c / &lead).collect();
        let s: Vec<Rational> = s0.iter().map(|c| c / &lead).collect();
        let (_, s) = divrem(&s, m);
        (g, s)
    }
}

/// Irreducibility of integer polynomials by the rational root test and
/// Kronecker's interpolation search for factors of degree `2..=d/2`.
mod irreducible {
    use super::{qpoly, FieldError, Rational};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive, Zero};

    const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;
    const COMBINATION_BUDGET: usize = 2_000_000;

    fn integer_primitive(p: &[Rational]) -> Vec<BigInt> {
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
        p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, FieldError> {
        let n = n.abs().to_u64().filter(|&v| v <= TRIAL_DIVISION_LIMIT).ok_or(FieldError::IrreducibilityUnverified)?;
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n % d == 0 {
                small.push(BigInt::from(d));
                if d * d != n {
                    large.push(BigInt::from(n / d));
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        Ok(small)
    }

    fn describe(g: &[Rational]) -> String {
        let terms: Vec<String> = g
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*x^{i}"))
            .collect();
        terms.join(" + ")
    }

    pub fn check(minpoly: &[Rational]) -> Result<(), FieldError> {
        let f = integer_primitive(minpoly);
        let d = f.len() - 1;
        let frat: Vec<Rational> = f.iter().cloned().map(Rational::from_integer).collect();
        if f[0].is_zero() {
            return Err(FieldError::Reducible("x".into()));
        }
        // degree one factors
        for p in positive_divisors(&f[0])? {
            for q in positive_divisors(&f[d])? {
                for sign in [1i32, -1] {
                    let root = Rational::new(p.clone() * sign, q.clone());
                    let val = frat.iter().rev().fold(Rational::zero(), |acc, c| acc * &root + c);
                    if val.is_zero() {
                        return Err(FieldError::Reducible(format!("x - {root}")));
                    }
                }
            }
        }
        for k in 2..=d / 2 {
            if let Some(g) = kronecker_factor(&f, k)? {
                return Err(FieldError::Reducible(describe(&g)));
            }
        }
        Ok(())
    }

    fn kronecker_factor(f: &[BigInt], k: usize) -> Result<Option<Vec<Rational>>, FieldError> {
        let points: Vec<BigInt> = (0i64..)
            .map(|i| if i % 2 == 0 { BigInt::from(i / 2) } else { BigInt::from(-(i + 1) / 2) })
            .take(k + 1)
            .collect();
        let mut choices: Vec<Vec<BigInt>> = Vec::new();
        for (idx, x) in points.iter().enumerate() {
            let divs = positive_divisors(&eval(f, x))?;
            let signed: Vec<BigInt> = if idx == 0 {
                divs
            } else {
                divs.iter().flat_map(|v| [v.clone(), -v.clone()]).collect()
            };
            choices.push(signed);
        }
        let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
        if total.is_none_or(|t| t > COMBINATION_BUDGET) {
            return Err(FieldError::IrreducibilityUnverified);
        }
        let frat: Vec<Rational> = f.iter().cloned().map(Rational::from_integer).collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let values: Vec<&BigInt> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
            let g = interpolate(&points, &values);
            if g.len() == k + 1 && g.iter().all(|c| c.is_integer()) {
                let (_, r) = qpoly::divrem(&frat, &g);
                if r.is_empty() {
                    return Ok(Some(g));
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(None);
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    fn interpolate(xs: &[BigInt], ys: &[&BigInt]) -> Vec<Rational> {
        let n = xs.len();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for j in 0..n {
                if i == j {
                    continue;
                }
                let xj = Rational::from_integer(xs[j].clone());
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (e, c) in basis.iter().enumerate() {
                    next[e + 1] += c;
                    next[e] -= c * &xj;
                }
                basis = next;
                denom *= Rational::from_integer(&xs[i] - &xs[j]);
            }
            let scale = Rational::from_integer(ys[i].clone()) / denom;
            for (e, c) in basis.iter().enumerate() {
                out[e] += c * &scale;
            }
        }
        qpoly::trim(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let k = Field::gaussian();
        let i = k.generator();
        assert_eq!(&i * &i, k.from_int(-1));
    }

    #[test]
    fn additive_identity() {
        let k = Field::quadratic(2).unwrap();
        let x = k.element(vec![q(3, 4), q(-1, 5)]).unwrap();
        assert_eq!(&x + &k.zero(), x);
    }

    #[test]
    fn difference_of_squares_in_quadratic_field() {
        let k = Field::quadratic(2).unwrap();
        let th = k.generator();
        let one = k.one();
        assert_eq!((&one + &th) * (&one - &th), k.from_int(-1));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let k = Field::rationals();
        assert_eq!(
            fe_arith(&k.one(), &k.zero(), ArithKind::Div),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_fields_are_reported() {
        let a = Field::gaussian().one();
        let b = Field::quadratic(2).unwrap().one();
        assert_eq!(fe_arith(&a, &b, ArithKind::Add), Err(FieldError::FieldMismatch));
    }

    #[test]
    fn root_of_unity_orders() {
        let k = Field::rationals();
        assert_eq!(k.from_int(-1).root_of_unity_order(4), Some(2));
        assert_eq!(k.from_int(2).root_of_unity_order(10), None);
        let g = Field::gaussian();
        assert_eq!(g.generator().root_of_unity_order(4), Some(4));
    }

    #[test]
    fn reducible_minimal_polynomials_are_rejected() {
        assert!(matches!(Field::from_ints(&[-4, 0, 1]), Err(FieldError::Reducible(_))));
        // (x^2+1)(x^2+2)
        assert!(matches!(Field::from_ints(&[2, 0, 3, 0, 1]), Err(FieldError::Reducible(_))));
        assert!(matches!(Field::from_ints(&[0, 1, 1]), Err(FieldError::Reducible(_))));
    }

    #[test]
    fn irreducible_quartics_are_accepted() {
        assert!(Field::from_ints(&[1, 0, 0, 0, 1]).is_ok());
        assert!(Field::from_ints(&[1, 0, -10, 0, 1]).is_ok());
        assert!(Field::from_ints(&[1, -1, 1]).is_ok());
    }

    #[test]
    fn non_monic_is_rejected() {
        assert_eq!(Field::from_ints(&[1, 2]), Err(FieldError::NotMonic));
        assert_eq!(Field::from_ints(&[5]), Err(FieldError::NotMonic));
    }

    #[test]
    fn inverse_in_quartic_field() {
        let k = Field::from_ints(&[1, 0, 0, 0, 1]).unwrap();
        let z = k.generator();
        let x = &(&z * &z) + &k.from_int(3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(z.root_of_unity_order(8), Some(8));
    }

    #[test]
    fn quadratic_square_roots() {
        let k = Field::quadratic(2).unwrap();
        let th = k.generator();
        // (1 + θ)^2 = 3 + 2θ
        let sq = k.element(vec![q(3, 1), q(2, 1)]).unwrap();
        let r = sq.sqrt().unwrap().unwrap();
        assert_eq!(&r * &r, sq);
        assert_eq!(k.from_int(8).sqrt().unwrap().map(|r| &r * &r), Some(k.from_int(8)));
        assert_eq!(th.sqrt().unwrap(), None);
        assert_eq!(k.from_int(3).sqrt().unwrap(), None);
        let g = Field::gaussian();
        assert_eq!(g.from_int(-1).sqrt().unwrap().unwrap().coords()[1].abs(), q(1, 1));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), q(-3, 2));
        assert_eq!(rational_to_string(&q(-3, 2)), "-3/2");
        assert_eq!(rational_to_string(&q(4, 2)), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nth_roots() {
        let k = Field::rationals();
        assert_eq!(k.from_ratio(1, 8).nth_root(3).unwrap(), Some(k.from_ratio(1, 2)));
        assert_eq!(k.from_int(16).nth_root(4).unwrap().map(|r| r.pow(4).unwrap()), Some(k.from_int(16)));
        assert_eq!(k.from_int(2).nth_root(2).unwrap(), None);
    }
}
