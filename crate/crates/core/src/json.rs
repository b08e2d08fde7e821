//! JSON forms of every exchanged value. Rationals are canonical strings; an
//! element of `Q` is a single string, an element of an extension is the
//! coordinate array. Object keys come out sorted, so output is deterministic.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::centext::{BasisLabel, CentralClass, CokernelBasis};
use crate::field::{parse_rational, rational_to_string, Field, FieldElement};
use crate::isomorph::{AutGenerator, AutGroup, AutGroupDescriptor, IsoKind, IsoWitness, SymbolicSqrt};
use crate::liealg::{d_make, Derivation};
use crate::poly::{LaurentPoly, Poly};
use crate::ring::{Ctx, RingElement, RootData, Variant};
use crate::simplicity::{Reason, SimplicityReport, WitnessIdeal, WitnessKind};
use crate::units::{NoSolutionReason, PellOutcome, PellSolution, UnitFactorization};

pub const SCHEMA: &str = "supell/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed input: {0}")]
pub struct JsonError(pub String);

fn bad(what: impl Into<String>) -> JsonError {
    JsonError(what.into())
}

pub trait ToJson {
    fn to_json(&self) -> Value;
}

/// Parsing needs the surrounding field or ring, supplied as `Ctx`.
pub trait FromJson: Sized {
    type Ctx: ?Sized;
    fn from_json(ctx: &Self::Ctx, v: &Value) -> Result<Self, JsonError>;
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn get_i64(v: &Value, key: &str) -> Result<i64, JsonError> {
    get(v, key)?.as_i64().ok_or_else(|| bad(format!("{key:?} must be an integer")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize, JsonError> {
    get(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{key:?} must be a non-negative integer")))
}

fn get_bool(v: &Value, key: &str) -> Result<bool, JsonError> {
    get(v, key)?.as_bool().ok_or_else(|| bad(format!("{key:?} must be a boolean")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str, JsonError> {
    get(v, key)?.as_str().ok_or_else(|| bad(format!("{key:?} must be a string")))
}

fn array(v: &Value) -> Result<&Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| bad(format!("expected an array, got {v}")))
}

fn list<T: FromJson>(ctx: &T::Ctx, v: &Value) -> Result<Vec<T>, JsonError> {
    array(v)?.iter().map(|x| T::from_json(ctx, x)).collect()
}

fn to_list<T: ToJson>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(ToJson::to_json).collect())
}

impl ToJson for Field {
    fn to_json(&self) -> Value {
        let mp: Vec<Value> = self.data().minpoly().iter().map(|q| Value::String(rational_to_string(q))).collect();
        json!({ "minpoly": mp })
    }
}

impl FromJson for Field {
    type Ctx = ();
    fn from_json(_: &(), v: &Value) -> Result<Self, JsonError> {
        let coeffs = array(get(v, "minpoly")?)?
            .iter()
            .map(rational_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Field::new(coeffs).map_err(|e| bad(e.to_string()))
    }
}

fn rational_from_json(v: &Value) -> Result<crate::field::Rational, JsonError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(|i| crate::field::Rational::from_integer(i.into()))
            .ok_or_else(|| bad(format!("non-integer number {n}; write rationals as strings"))),
        _ => Err(bad(format!("expected a rational, got {v}"))),
    }
}

impl ToJson for FieldElement {
    fn to_json(&self) -> Value {
        let cs: Vec<Value> = self.coords().iter().map(|q| Value::String(rational_to_string(q))).collect();
        if self.field().is_rationals() {
            cs.into_iter().next().expect("one coordinate")
        } else {
            Value::Array(cs)
        }
    }
}

/// A bare rational or a short coordinate array is padded with zeros.
impl FromJson for FieldElement {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        let mut coords = match v {
            Value::Array(xs) => xs.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>()?,
            _ => vec![rational_from_json(v)?],
        };
        if coords.len() > field.degree() {
            return Err(bad(format!("element has {} coordinates in a degree-{} field", coords.len(), field.degree())));
        }
        coords.resize(field.degree(), crate::field::Rational::from_integer(0.into()));
        field.element(coords).map_err(|e| bad(e.to_string()))
    }
}

impl ToJson for Poly {
    fn to_json(&self) -> Value {
        to_list(self.coeffs())
    }
}

impl FromJson for Poly {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        Ok(Poly::new(field, list(field, v)?))
    }
}

impl ToJson for LaurentPoly {
    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs().iter().map(ToJson::to_json).collect();
        json!({ "lowdeg": self.low(), "coeffs": coeffs })
    }
}

/// Also accepts a plain array, read as a polynomial.
impl FromJson for LaurentPoly {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        if v.is_array() {
            return Ok(LaurentPoly::new(field, 0, list(field, v)?));
        }
        Ok(LaurentPoly::new(field, get_i64(v, "lowdeg")?, list(field, get(v, "coeffs")?)?))
    }
}

impl ToJson for RootData {
    fn to_json(&self) -> Value {
        json!({ "l": self.l, "roots": to_list(&self.roots), "scale": self.scale.to_json() })
    }
}

impl FromJson for RootData {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        let scale = match v.get("scale") {
            Some(s) => FieldElement::from_json(field, s)?,
            None => field.one(),
        };
        RootData::new(get_usize(v, "l")?, list(field, get(v, "roots")?)?, scale).map_err(|e| bad(e.to_string()))
    }
}

/// `P` given either as a coefficient array or in factored form.
pub fn p_from_json(field: &Field, v: &Value) -> Result<(Poly, Option<RootData>), JsonError> {
    if v.is_object() {
        let rd = RootData::from_json(field, v)?;
        Ok((rd.expand(), Some(rd)))
    } else {
        Ok((Poly::from_json(field, v)?, None))
    }
}

pub fn variant_from_str(s: &str) -> Result<Variant, JsonError> {
    match s {
        "R" => Ok(Variant::R),
        "S" => Ok(Variant::S),
        _ => Err(bad(format!("variant must be R or S, got {s:?}"))),
    }
}

impl ToJson for RingElement {
    fn to_json(&self) -> Value {
        json!({ "comps": to_list(self.comps()) })
    }
}

/// Missing trailing components are zero.
impl FromJson for RingElement {
    type Ctx = Ctx;
    fn from_json(ctx: &Ctx, v: &Value) -> Result<Self, JsonError> {
        let mut comps: Vec<LaurentPoly> = list(ctx.field(), get(v, "comps")?)?;
        if comps.len() > ctx.m() {
            return Err(bad(format!("{} components for m = {}", comps.len(), ctx.m())));
        }
        comps.resize(ctx.m(), LaurentPoly::zero(ctx.field()));
        RingElement::new(ctx, comps).map_err(|e| bad(e.to_string()))
    }
}

impl ToJson for Derivation {
    fn to_json(&self) -> Value {
        json!({ "f": self.f().to_json(), "h": self.h().to_json() })
    }
}

impl FromJson for Derivation {
    type Ctx = Ctx;
    fn from_json(ctx: &Ctx, v: &Value) -> Result<Self, JsonError> {
        let f = RingElement::from_json(ctx, get(v, "f")?)?;
        let h = RingElement::from_json(ctx, get(v, "h")?)?;
        d_make(ctx, f, h).map_err(|e| bad(e.to_string()))
    }
}

impl ToJson for WitnessIdeal {
    fn to_json(&self) -> Value {
        let mut o = Map::new();
        match &self.kind {
            WitnessKind::RootIdeal(lambda) => {
                o.insert("kind".into(), "RootIdeal".into());
                o.insert("root".into(), lambda.to_json());
            }
            WitnessKind::KernelElement(x) => {
                o.insert("kind".into(), "KernelElement".into());
                o.insert("element".into(), x.to_json());
            }
        }
        o.insert("generators".into(), to_list(&self.generators));
        Value::Object(o)
    }
}

impl FromJson for WitnessIdeal {
    type Ctx = Ctx;
    fn from_json(ctx: &Ctx, v: &Value) -> Result<Self, JsonError> {
        let kind = match get_str(v, "kind")? {
            "RootIdeal" => WitnessKind::RootIdeal(FieldElement::from_json(ctx.field(), get(v, "root")?)?),
            "KernelElement" => WitnessKind::KernelElement(RingElement::from_json(ctx, get(v, "element")?)?),
            k => return Err(bad(format!("unknown witness kind {k:?}"))),
        };
        Ok(WitnessIdeal { kind, generators: list(ctx, get(v, "generators")?)? })
    }
}

impl ToJson for SimplicityReport {
    fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra.name(),
            "simple": self.simple,
            "reason": self.reason.name(),
            "witness": self.witness.as_ref().map_or(Value::Null, ToJson::to_json),
            "witness_unavailable": self.witness_unavailable,
        })
    }
}

impl FromJson for SimplicityReport {
    type Ctx = Ctx;
    fn from_json(ctx: &Ctx, v: &Value) -> Result<Self, JsonError> {
        let reason = get_str(v, "reason")?;
        let witness = match get(v, "witness")? {
            Value::Null => None,
            w => Some(WitnessIdeal::from_json(ctx, w)?),
        };
        Ok(SimplicityReport {
            algebra: variant_from_str(get_str(v, "algebra")?)?,
            simple: get_bool(v, "simple")?,
            reason: Reason::from_name(reason).ok_or_else(|| bad(format!("unknown reason {reason:?}")))?,
            witness,
            witness_unavailable: get_bool(v, "witness_unavailable")?,
        })
    }
}

impl ToJson for CentralClass {
    fn to_json(&self) -> Value {
        Value::Object(self.coords().iter().map(|(l, c)| (l.to_string(), c.to_json())).collect())
    }
}

impl FromJson for CentralClass {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        let o = v.as_object().ok_or_else(|| bad("central class must be an object"))?;
        let coords = o
            .iter()
            .map(|(k, c)| {
                let label = BasisLabel::parse(k).ok_or_else(|| bad(format!("bad basis label {k:?}")))?;
                Ok((label, FieldElement::from_json(field, c)?))
            })
            .collect::<Result<Vec<_>, JsonError>>()?;
        Ok(CentralClass::from_coords(coords))
    }
}

impl ToJson for CokernelBasis {
    fn to_json(&self) -> Value {
        let labels: Vec<Value> = self.labels.iter().map(|l| Value::String(l.to_string())).collect();
        json!({
            "variant": self.shape.variant.name(),
            "m": self.shape.m,
            "n": self.shape.n,
            "l": self.shape.l,
            "labels": labels,
        })
    }
}

impl ToJson for PellSolution {
    fn to_json(&self) -> Value {
        json!({ "f": self.f.to_json(), "g": self.g.to_json(), "c": self.c.to_json(), "k": self.k })
    }
}

impl FromJson for PellSolution {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        Ok(PellSolution {
            f: Poly::from_json(field, get(v, "f")?)?,
            g: Poly::from_json(field, get(v, "g")?)?,
            c: FieldElement::from_json(field, get(v, "c")?)?,
            k: get_usize(v, "k")?,
        })
    }
}

impl ToJson for PellOutcome {
    fn to_json(&self) -> Value {
        match self {
            PellOutcome::Found(s) => json!({ "status": "Found", "solution": s.to_json() }),
            PellOutcome::NotWithinBound { bound } => json!({ "status": "NotWithinBound", "bound": bound }),
            PellOutcome::NoSolution(r) => json!({ "status": "NoSolution", "reason": r.name() }),
        }
    }
}

impl FromJson for PellOutcome {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        match get_str(v, "status")? {
            "Found" => Ok(PellOutcome::Found(PellSolution::from_json(field, get(v, "solution")?)?)),
            "NotWithinBound" => Ok(PellOutcome::NotWithinBound { bound: get_usize(v, "bound")? }),
            "NoSolution" => {
                let r = match get_str(v, "reason")? {
                    "OddDegree" => NoSolutionReason::OddDegree,
                    "LeadingCoefficientNotSquare" => NoSolutionReason::LeadingCoefficientNotSquare,
                    "PerfectSquare" => NoSolutionReason::PerfectSquare,
                    r => return Err(bad(format!("unknown reason {r:?}"))),
                };
                Ok(PellOutcome::NoSolution(r))
            }
            s => Err(bad(format!("unknown status {s:?}"))),
        }
    }
}

impl ToJson for UnitFactorization {
    fn to_json(&self) -> Value {
        json!({ "scalar": self.scalar.to_json(), "e_t": self.e_t, "e_1": self.e_1, "e_2": self.e_2 })
    }
}

impl FromJson for UnitFactorization {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        Ok(UnitFactorization {
            scalar: FieldElement::from_json(field, get(v, "scalar")?)?,
            e_t: get_i64(v, "e_t")?,
            e_1: get_i64(v, "e_1")?,
            e_2: get_i64(v, "e_2")?,
        })
    }
}

impl ToJson for IsoWitness {
    fn to_json(&self) -> Value {
        let (kind, c) = match &self.kind {
            IsoKind::Scale(c) => ("Scale", c),
            IsoKind::Invert(c) => ("Invert", c),
        };
        json!({
            "kind": kind,
            "c": c.to_json(),
            "perm": self.perm,
            "sqrt_scalar": {
                "radicand": self.sqrt_scalar.radicand.to_json(),
                "monomial_exp": self.sqrt_scalar.monomial_exp,
                "sign": self.sqrt_scalar.sign,
            },
        })
    }
}

impl FromJson for IsoWitness {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        let c = FieldElement::from_json(field, get(v, "c")?)?;
        let kind = match get_str(v, "kind")? {
            "Scale" => IsoKind::Scale(c),
            "Invert" => IsoKind::Invert(c),
            k => return Err(bad(format!("unknown kind {k:?}"))),
        };
        let perm = array(get(v, "perm")?)?
            .iter()
            .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| bad("perm entries are indices")))
            .collect::<Result<_, _>>()?;
        let s = get(v, "sqrt_scalar")?;
        let sign = get_i64(s, "sign")?;
        if sign != 1 && sign != -1 {
            return Err(bad("sign must be ±1"));
        }
        Ok(IsoWitness {
            kind,
            perm,
            sqrt_scalar: SymbolicSqrt {
                radicand: FieldElement::from_json(field, get(s, "radicand")?)?,
                monomial_exp: get_i64(s, "monomial_exp")?,
                sign: sign as i8,
            },
        })
    }
}

impl ToJson for AutGenerator {
    fn to_json(&self) -> Value {
        match self {
            AutGenerator::Delta => json!({ "type": "Delta" }),
            AutGenerator::Scaling { zeta, order } => json!({ "type": "Scaling", "zeta": zeta.to_json(), "order": order }),
            AutGenerator::Inversion { c, sign, radicand } => {
                json!({ "type": "Inversion", "c": c.to_json(), "sign": sign, "radicand": radicand.to_json() })
            }
        }
    }
}

impl FromJson for AutGenerator {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        match get_str(v, "type")? {
            "Delta" => Ok(AutGenerator::Delta),
            "Scaling" => Ok(AutGenerator::Scaling {
                zeta: FieldElement::from_json(field, get(v, "zeta")?)?,
                order: get_usize(v, "order")? as u64,
            }),
            "Inversion" => Ok(AutGenerator::Inversion {
                c: FieldElement::from_json(field, get(v, "c")?)?,
                sign: get_i64(v, "sign")? as i8,
                radicand: FieldElement::from_json(field, get(v, "radicand")?)?,
            }),
            t => Err(bad(format!("unknown generator type {t:?}"))),
        }
    }
}

impl ToJson for AutGroupDescriptor {
    fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "has_inversion": self.has_inversion,
            "group": self.group.name(),
            "generators": to_list(&self.generators),
            "inversion_scalars": to_list(&self.inversion_scalars),
        })
    }
}

impl FromJson for AutGroupDescriptor {
    type Ctx = Field;
    fn from_json(field: &Field, v: &Value) -> Result<Self, JsonError> {
        let group = match get_str(v, "group")? {
            "ZkTimesZ2" => AutGroup::ZkTimesZ2,
            "DkTimesZ2" => AutGroup::DkTimesZ2,
            g => return Err(bad(format!("unknown group {g:?}"))),
        };
        Ok(AutGroupDescriptor {
            k: get_usize(v, "k")? as u64,
            has_inversion: get_bool(v, "has_inversion")?,
            group,
            generators: list(field, get(v, "generators")?)?,
            inversion_scalars: list(field, get(v, "inversion_scalars")?)?,
        })
    }
}

/// A re-verified identity: a name and the fact that it held.
pub fn certificate(name: &str, holds: bool) -> Value {
    json!({ "identity": name, "verified": holds })
}

pub fn envelope(result: Value, certificates: Vec<Value>) -> Value {
    json!({ "schema": SCHEMA, "ok": true, "result": result, "certificates": certificates })
}

pub fn error_envelope(kind: &str, detail: &str) -> Value {
    json!({
        "schema": SCHEMA,
        "ok": false,
        "result": Value::Null,
        "certificates": [],
        "error": { "kind": kind, "detail": detail },
    })
}
