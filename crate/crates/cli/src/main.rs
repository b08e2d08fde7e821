//! `supell`: JSON front end to the decision procedures. Every successful
//! response re-verifies at least one exact identity and lists it under
//! `certificates`.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use supell::centext::{ce_basis, ce_cocycle, ce_dim, ce_oneform, ce_shape, CentError};
use supell::field::{Field, FieldElement, FieldError};
use supell::isomorph::{aut_group, iso_decide, AutGenerator, IsoError};
use supell::json::{certificate, envelope, error_envelope, p_from_json, variant_from_str, FromJson, JsonError, ToJson};
use supell::oracle::{o_cokernel_coords, o_cokernel_dim, o_pell_search};
use supell::poly::{p_gcd_ext, Poly, PolyError};
use supell::ring::{AlgebraCtx, Ctx, RingElement, RingError};
use supell::simplicity::{simp_check, simp_verify_witness, SimpError};
use supell::units::{u_classify_odd, u_djkm_factor, u_pell, DjkmCtx, PellOutcome, UnitsError};

/// Largest `deg g` the Pell oracle is asked to cross-check.
const ORACLE_PELL_CAP: usize = 6;

#[derive(Parser)]
#[command(name = "supell", version, about = "Exact decision procedures for superelliptic coordinate rings R_m(P), S_m(P)")]
struct Cli {
    /// Coefficient field as a JSON minimal polynomial, low degree first
    /// (e.g. '["1","0","1"]' for Q(i)); defaults to Q.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether Der(A) is simple and emit a witness ideal when it is not.
    Simplicity(AlgebraArgs),
    /// Universal central extension: dimension, cokernel basis or cocycle value.
    Centext(CentextArgs),
    /// Unit groups: polynomial Pell, DJKM factorization, odd-degree classification.
    Units(UnitsArgs),
    /// Polynomial Pell equation f² − g²P = c.
    Pell(PellArgs),
    /// Factor a unit of the DJKM ring over λ1, λ2 and t.
    Djkm(DjkmArgs),
    /// Decide whether two hyperelliptic rings t∏(t − a) are isomorphic.
    Iso(IsoArgs),
    /// Automorphism group of the hyperelliptic ring with the given roots.
    Aut(AutArgs),
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
struct AlgebraArgs {
    /// Exponent m in u^m = P.
    #[arg(long)]
    m: usize,
    /// P as a JSON coefficient array or as {"l", "roots", "scale"}.
    #[arg(long = "P")]
    p: String,
    /// R for F[t^{±1}, u], S for F[t, u].
    #[arg(long, default_value = "R")]
    variant: String,
}

#[derive(Args)]
#[group(id = "centext_mode", required = true, multiple = false, args = ["dim", "basis", "cocycle", "oneform"])]
struct CentextArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    /// Dimension of the cokernel R/∂R.
    #[arg(long)]
    dim: bool,
    /// Basis labels of the cokernel complement.
    #[arg(long)]
    basis: bool,
    /// Cocycle value ω(f∂, g∂) for two ring elements {"comps": [...]}.
    #[arg(long, num_args = 2, value_names = ["F", "G"])]
    cocycle: Option<Vec<String>>,
    /// Laurent pair (a, b) with aP′ + bP = 1.
    #[arg(long)]
    oneform: bool,
}

#[derive(Args)]
struct UnitsArgs {
    /// P as a JSON coefficient array.
    #[arg(long, conflicts_with_all = ["djkm", "classify"])]
    pell: Option<String>,
    /// Degree bound on g for the Pell search.
    #[arg(long, default_value_t = 8)]
    bound: usize,
    /// β of the DJKM family, as a JSON field element.
    #[arg(long)]
    djkm: Option<String>,
    /// Ring element to factor, {"comps": [...]}.
    #[arg(long, requires = "djkm")]
    factor: Option<String>,
    /// Optional JSON pair [√(2(β+1)), √(2(β−1))] when the field cannot find them.
    #[arg(long, requires = "djkm")]
    sqrts: Option<String>,
    /// Classify the unit group of R_2(P) for odd-degree P; P as JSON.
    #[arg(long, conflicts_with = "djkm")]
    classify: Option<String>,
}

#[derive(Args)]
struct PellArgs {
    /// P as a JSON coefficient array.
    #[arg(long = "P")]
    p: String,
    /// Degree bound on g.
    #[arg(long, default_value_t = 8)]
    bound: usize,
}

#[derive(Args)]
struct DjkmArgs {
    /// β, as a JSON field element.
    #[arg(long)]
    beta: String,
    /// Ring element to factor, {"comps": [...]}.
    #[arg(long)]
    factor: String,
    /// Optional JSON pair [√(2(β+1)), √(2(β−1))].
    #[arg(long)]
    sqrts: Option<String>,
}

#[derive(Args)]
struct IsoArgs {
    /// Roots of the first ring, a JSON array.
    #[arg(long)]
    a: String,
    /// Roots of the second ring, a JSON array.
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct AutArgs {
    /// Roots, a JSON array.
    #[arg(long)]
    roots: String,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Cokernel dimension of ∂ by dense elimination on a degree window.
    CokernelDim {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Half-width of the t-degree window.
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
    /// All Pell solutions f² − g²P = c·t^k with deg g ≤ gmax.
    Pell {
        #[arg(long = "P")]
        p: String,
        #[arg(long, default_value_t = 4)]
        gmax: usize,
    },
}

/// A failed request: exit code, machine-readable kind, human detail.
struct Failure {
    code: u8,
    kind: &'static str,
    detail: String,
}

fn malformed(detail: impl Into<String>) -> Failure {
    Failure { code: 1, kind: "MalformedInput", detail: detail.into() }
}

fn domain(kind: &'static str, detail: impl Into<String>) -> Failure {
    Failure { code: 2, kind, detail: detail.into() }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        malformed(e.0)
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::IrreducibilityUnverified => domain("IrreducibilityUnverified", e.to_string()),
            FieldError::DivisionByZero => domain("DivisionByZero", e.to_string()),
            _ => malformed(e.to_string()),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Field(f) => f.into(),
            _ => malformed(e.to_string()),
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::RequiresM2 => domain("ShapeUnsupported", e.to_string()),
            RingError::Field(f) => f.into(),
            RingError::Poly(p) => p.into(),
            _ => malformed(e.to_string()),
        }
    }
}

impl From<SimpError> for Failure {
    fn from(e: SimpError) -> Self {
        match e {
            SimpError::WindowTooSmall { .. } => domain("WindowTooSmall", e.to_string()),
            _ => malformed(e.to_string()),
        }
    }
}

impl From<CentError> for Failure {
    fn from(e: CentError) -> Self {
        let kind = match e {
            CentError::ShapeUnsupported(_) => "ShapeUnsupported",
            CentError::GcdNotMonomial => "GcdNotMonomial",
            CentError::NotAMultiple => "NotAMultiple",
            CentError::ContextMismatch => return malformed(e.to_string()),
        };
        domain(kind, e.to_string())
    }
}

impl From<UnitsError> for Failure {
    fn from(e: UnitsError) -> Self {
        let kind = match &e {
            UnitsError::ShapeUnsupported(_) => "ShapeUnsupported",
            UnitsError::NotAUnit => "NotAUnit",
            UnitsError::DescentFailure(_) => "DescentFailure",
            UnitsError::MissingRoot(_) => "MissingRoot",
            UnitsError::IdentityFailed(_) => "IdentityFailed",
            UnitsError::BadInput(_) => return malformed(e.to_string()),
            UnitsError::Ring(r) => return r.clone().into(),
            UnitsError::Field(f) => return f.clone().into(),
        };
        domain(kind, e.to_string())
    }
}

impl From<IsoError> for Failure {
    fn from(e: IsoError) -> Self {
        let kind = match &e {
            IsoError::RadicandNotSquare(_) => "RadicandNotSquare",
            IsoError::FieldTooSmall(_) => "FieldTooSmall",
            IsoError::BadRoots(_) => return malformed(e.to_string()),
            IsoError::Ring(r) => return r.clone().into(),
            IsoError::Field(f) => return f.clone().into(),
        };
        domain(kind, e.to_string())
    }
}

type Outcome = Result<(Value, Vec<Value>), Failure>;

fn parse_json(s: &str) -> Result<Value, Failure> {
    serde_json::from_str(s).map_err(|e| malformed(format!("invalid JSON {s:?}: {e}")))
}

fn parse_field(s: Option<&str>) -> Result<Field, Failure> {
    let Some(s) = s else { return Ok(Field::rationals()) };
    let v = parse_json(s)?;
    let v = if v.is_array() { json!({ "minpoly": v }) } else { v };
    Ok(Field::from_json(&(), &v)?)
}

fn parse_ctx(field: &Field, a: &AlgebraArgs) -> Result<Ctx, Failure> {
    let variant = variant_from_str(&a.variant)?;
    let (p, rd) = p_from_json(field, &parse_json(&a.p)?)?;
    Ok(match rd {
        Some(rd) => AlgebraCtx::with_both(a.m, p, rd, variant)?,
        None => AlgebraCtx::new(a.m, p, variant)?,
    })
}

fn parse_poly(field: &Field, s: &str) -> Result<Poly, Failure> {
    Ok(p_from_json(field, &parse_json(s)?)?.0)
}

fn parse_roots(field: &Field, s: &str) -> Result<Vec<FieldElement>, Failure> {
    let v = parse_json(s)?;
    let xs = v.as_array().ok_or_else(|| malformed("roots must be a JSON array"))?;
    xs.iter().map(|x| Ok(FieldElement::from_json(field, x)?)).collect()
}

fn same_multiset(a: &[FieldElement], b: &[FieldElement]) -> bool {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    x.sort();
    y.sort();
    x == y
}

fn simplicity(field: &Field, a: &AlgebraArgs) -> Outcome {
    let ctx = parse_ctx(field, a)?;
    let report = simp_check(&ctx)?;
    let (d, s, t) = p_gcd_ext(ctx.p(), ctx.p_prime())?;
    let bezout = &(&s * ctx.p()) + &(&t * ctx.p_prime()) == d;
    let mut certs = vec![certificate("s·P + t·P′ = gcd(P, P′)", bezout)];
    if let Some(w) = &report.witness {
        let window = 3 * (ctx.deg_p() + ctx.m()) as i64;
        certs.push(certificate("witness ideal is proper and stable", simp_verify_witness(&ctx, w, window)?));
    }
    Ok((report.to_json(), certs))
}

fn centext(field: &Field, a: &CentextArgs) -> Outcome {
    let ctx = parse_ctx(field, &a.alg)?;
    let shape = ce_shape(&ctx)?;
    let w = 2 * (shape.n + shape.l) as i64 + 8;
    if a.dim {
        let dim = ce_dim(&ctx)?;
        let oracle = o_cokernel_dim(&ctx, w);
        return Ok((json!({ "dim": dim }), vec![certificate("dim equals dense cokernel rank on the degree window", dim == oracle)]));
    }
    if a.basis {
        let basis = ce_basis(&ctx)?;
        let labels: Vec<(usize, i64)> = basis.labels.iter().map(|l| (l.u, l.t)).collect();
        let independent = o_cokernel_coords(&ctx, &labels, &[], w).is_some();
        return Ok((basis.to_json(), vec![certificate("labels are independent modulo the image of ∂", independent)]));
    }
    if a.oneform {
        let form = ce_oneform(&ctx)?;
        let holds = form.verify(&ctx);
        let result = json!({ "a": form.a.to_json(), "b": form.b.to_json() });
        return Ok((result, vec![certificate("a·P′ + b·P = 1", holds)]));
    }
    let fg = a.cocycle.as_ref().expect("one mode is required");
    let f = RingElement::from_json(&ctx, &parse_json(&fg[0])?)?;
    let g = RingElement::from_json(&ctx, &parse_json(&fg[1])?)?;
    let value = ce_cocycle(&f, &g)?;
    let anti = value.add(&ce_cocycle(&g, &f)?).is_zero();
    Ok((value.to_json(), vec![certificate("ω(f, g) + ω(g, f) = 0", anti)]))
}

fn pell(field: &Field, p: &str, bound: usize) -> Outcome {
    let p = parse_poly(field, p)?;
    let outcome = u_pell(&p, bound)?;
    let mut certs = Vec::new();
    if let PellOutcome::Found(s) = &outcome {
        certs.push(certificate("f² − g²P = c", s.verify(&p)));
    }
    // The oracle only enumerates small degrees; it must agree there.
    let cap = bound.min(ORACLE_PELL_CAP);
    let least = o_pell_search(&p, cap).into_iter().filter(|s| s.k == 0).filter_map(|s| s.g.degree()).min();
    let agrees = match &outcome {
        PellOutcome::Found(s) => match s.g.degree() {
            Some(d) if d > cap => least.is_none(),
            d => d == least,
        },
        PellOutcome::NotWithinBound { .. } | PellOutcome::NoSolution(_) => least.is_none(),
    };
    certs.push(certificate(&format!("coefficient-matching oracle agrees for deg g ≤ {cap}"), agrees));
    Ok((outcome.to_json(), certs))
}

fn djkm(field: &Field, beta: &str, factor: &str, sqrts: Option<&str>) -> Outcome {
    let beta = FieldElement::from_json(field, &parse_json(beta)?)?;
    let dctx = match sqrts {
        None => DjkmCtx::new(beta)?,
        Some(s) => {
            let r = parse_roots(field, s)?;
            let [s2, s3] = <[FieldElement; 2]>::try_from(r).map_err(|_| malformed("--sqrts takes two elements"))?;
            DjkmCtx::with_roots(beta, s2, s3)?
        }
    };
    let x = RingElement::from_json(&dctx.ctx, &parse_json(factor)?)?;
    let f = u_djkm_factor(&dctx, &x)?;
    let certs = vec![
        certificate("λ-identities", dctx.check_identities().is_ok()),
        certificate("c·t^a·λ1^b·λ2^d reconstructs the input", f.reconstruct(&dctx) == x),
    ];
    Ok((f.to_json(), certs))
}

fn classify(field: &Field, p: &str) -> Outcome {
    let p = parse_poly(field, p)?;
    let ctx = AlgebraCtx::new(2, p, supell::ring::Variant::R)?;
    let class = u_classify_odd(&ctx)?;
    let (d, _, _) = p_gcd_ext(ctx.p(), ctx.p_prime())?;
    let cert = certificate("gcd(P, P′) = 1 and t | P", d.degree() == Some(0) && ctx.p().coeff(0).is_zero());
    Ok((json!({ "class": class.name() }), vec![cert]))
}

fn iso(field: &Field, a: &IsoArgs) -> Outcome {
    let (ra, rb) = (parse_roots(field, &a.a)?, parse_roots(field, &a.b)?);
    match iso_decide(&ra, &rb)? {
        Some(w) => {
            let result = json!({ "isomorphic": true, "witness": w.to_json() });
            Ok((result, vec![certificate("root sets correspond under the witness", w.verify(&ra, &rb))]))
        }
        None => {
            // Every isomorphism sends 0 to 0 or ∞, so it maps b_0 to some a_j.
            let b0 = &rb[0];
            let none = ra.iter().all(|aj| {
                let c = aj.checked_div(b0).expect("roots are nonzero");
                let scaled: Vec<_> = rb.iter().map(|b| &c * b).collect();
                let c = aj * b0;
                let inverted: Vec<_> = rb.iter().map(|b| c.checked_div(b).expect("roots are nonzero")).collect();
                !same_multiset(&scaled, &ra) && !same_multiset(&inverted, &ra)
            });
            Ok((json!({ "isomorphic": false, "witness": null }), vec![certificate("no t ↦ ct or t ↦ c/t matches the roots", none)]))
        }
    }
}

fn aut(field: &Field, a: &AutArgs) -> Outcome {
    let roots = parse_roots(field, &a.roots)?;
    let g = aut_group(&roots)?;
    let n = roots.len() as i64 / 2;
    let prod = roots.iter().fold(field.one(), |acc, r| &acc * r);
    let mut certs = vec![certificate("k divides 2n", ((2 * n) as u64).is_multiple_of(g.k))];
    for gen in &g.generators {
        match gen {
            AutGenerator::Delta => {}
            AutGenerator::Scaling { zeta, order } => {
                let moved: Vec<_> = roots.iter().map(|r| zeta * r).collect();
                let ok = same_multiset(&moved, &roots) && zeta.root_of_unity_order(*order) == Some(*order);
                certs.push(certificate("ζ·{a} = {a} with ζ of the stated order", ok));
            }
            AutGenerator::Inversion { c, sign, radicand } => {
                let inv: Vec<_> = roots.iter().map(|r| c.checked_div(r).expect("roots are nonzero")).collect();
                let cn = c.pow(n)?;
                let cn1 = c.pow(n + 1)?;
                let signed = |x: FieldElement| if *sign == 1 { x } else { -&x };
                let ok = same_multiset(&inv, &roots) && prod == signed(cn) && *radicand == signed(cn1);
                certs.push(certificate("{c/a} = {a} and ∏a = ±cⁿ", ok));
            }
        }
    }
    Ok((g.to_json(), certs))
}

fn oracle(field: &Field, cmd: &OracleCommand) -> Outcome {
    match cmd {
        OracleCommand::CokernelDim { alg, window } => {
            let ctx = parse_ctx(field, alg)?;
            let d = o_cokernel_dim(&ctx, *window);
            let stable = o_cokernel_dim(&ctx, window + 4) == d;
            Ok((json!({ "dim": d, "window": window }), vec![certificate("dimension unchanged at window + 4", stable)]))
        }
        OracleCommand::Pell { p, gmax } => {
            let p = parse_poly(field, p)?;
            let sols = o_pell_search(&p, *gmax);
            let all = sols.iter().all(|s| s.verify(&p));
            let list: Vec<Value> = sols.iter().map(ToJson::to_json).collect();
            Ok((json!({ "solutions": list }), vec![certificate("every f² − g²P = c·t^k re-verified", all)]))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let field = parse_field(cli.field.as_deref())?;
    match &cli.cmd {
        Command::Simplicity(a) => simplicity(&field, a),
        Command::Centext(a) => centext(&field, a),
        Command::Units(u) => match (&u.pell, &u.djkm, &u.classify) {
            (Some(p), _, _) => pell(&field, p, u.bound),
            (_, Some(b), _) => {
                let x = u.factor.as_deref().ok_or_else(|| malformed("--djkm needs --factor"))?;
                djkm(&field, b, x, u.sqrts.as_deref())
            }
            (_, _, Some(p)) => classify(&field, p),
            _ => Err(malformed("one of --pell, --djkm, --classify is required")),
        },
        Command::Pell(a) => pell(&field, &a.p, a.bound),
        Command::Djkm(a) => djkm(&field, &a.beta, &a.factor, a.sqrts.as_deref()),
        Command::Iso(a) => iso(&field, a),
        Command::Aut(a) => aut(&field, a),
        Command::Oracle(c) => oracle(&field, c),
    }
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.render().to_string();
            emit(&error_envelope("MalformedInput", detail.trim()));
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok((result, certs)) => {
            if certs.iter().any(|c| c["verified"] != Value::Bool(true)) {
                emit(&error_envelope("CertificateFailed", &serde_json::to_string(&certs).expect("values serialize")));
                return ExitCode::from(2);
            }
            emit(&envelope(result, certs));
            ExitCode::SUCCESS
        }
        Err(f) => {
            emit(&error_envelope(f.kind, &f.detail));
            ExitCode::from(f.code)
        }
    }
}
