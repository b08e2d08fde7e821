//! Brute-force cross-checks. Uses nothing but `field` and `poly`: its own
//! dense elimination, its own `∂` built from `Δ/m` on monomials, and its own
//! Pell search, so agreement with the main path is evidence rather than echo.

use std::collections::BTreeMap;

use crate::field::{Field, FieldElement};
use crate::poly::{LaurentPoly, Poly};
use crate::ring::{AlgebraCtx, Variant};
use crate::units::PellSolution;

type Row = Vec<FieldElement>;

/// Row-reduces in place; returns pivot columns.
fn eliminate(rows: &mut [Row], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn dense_rank(rows: &[Row], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    eliminate(&mut m, ncols).len()
}

/// Basis of `{y : Σ y_i·rows[i] = 0}`.
pub fn dense_left_nullspace(field: &Field, rows: &[Row], ncols: usize) -> Vec<Row> {
    let n = rows.len();
    // Transpose: columns of the system are the given rows.
    let mut t: Vec<Row> = (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
    let pivots = eliminate(&mut t, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![field.zero(); n];
            y[f] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                y[pc] = -&t[i][f];
            }
            y
        })
        .collect()
}

/// `u^{-1}·(Δ/m)(t^s u^j)`, with `(Δ/m)(t) = P`, `(Δ/m)(u) = P′u/m`, as
/// `(target component, Laurent coefficient)`.
fn del_monomial(m: usize, p: &Poly, s: i64, j: usize) -> (usize, LaurentPoly) {
    let field = p.field();
    let pl = LaurentPoly::from_poly(p);
    let ppl = LaurentPoly::from_poly(&p.derivative());
    let dt = LaurentPoly::monomial(field.from_int(s), s - 1);
    let ts = LaurentPoly::monomial(field.one(), s);
    let jm = field.from_ratio(j as i64, m as i64);
    let coeff = &(&dt * &pl) + &(&ts * &ppl).scale(&jm);
    if j > 0 {
        (j - 1, coeff)
    } else {
        // u^{-1} = u^{m−1}/P.
        (m - 1, coeff.exact_div(&pl).expect("s·t^{s−1}·P is divisible by P"))
    }
}

fn ranges(ctx: &AlgebraCtx, w: i64) -> ((i64, i64), (i64, i64)) {
    let pad = ctx.deg_p() as i64 + 2;
    match ctx.variant() {
        Variant::R => ((-w, w), (-w - pad, w + pad)),
        Variant::S => ((0, w), (0, w + pad)),
    }
}

/// Image vectors landing in component `comp`, as rows over `cols`.
fn component_matrix(
    ctx: &AlgebraCtx,
    comp: usize,
    domain: (i64, i64),
) -> (Vec<BTreeMap<i64, FieldElement>>, std::collections::BTreeSet<i64>) {
    let m = ctx.m();
    let src = (comp + 1) % m;
    let mut rows = Vec::new();
    let mut support = std::collections::BTreeSet::new();
    for s in domain.0..=domain.1 {
        let (c, img) = del_monomial(m, ctx.p(), s, src);
        debug_assert_eq!(c, comp);
        let row: BTreeMap<i64, FieldElement> =
            img.terms().map(|(e, a)| (e, a.clone())).collect();
        support.extend(row.keys().copied());
        rows.push(row);
    }
    (rows, support)
}

fn densify(rows: &[BTreeMap<i64, FieldElement>], cols: &[i64], field: &Field) -> Vec<Row> {
    rows.iter()
        .map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect()
}

/// `dim span(E) / (∂(domain) ∩ span(E))`, summed over components, where `E`
/// is the monomials with exponent in the window and the domain is padded by
/// `deg P + 2` so cancellations just outside `E` are visible.
pub fn o_cokernel_dim(ctx: &AlgebraCtx, w: i64) -> usize {
    let field = ctx.field();
    let (win, dom) = ranges(ctx, w);
    let mut total = 0;
    for comp in 0..ctx.m() {
        let (rows, support) = component_matrix(ctx, comp, dom);
        let cols: Vec<i64> = support.into_iter().collect();
        let outside: Vec<i64> = cols.iter().copied().filter(|e| *e < win.0 || *e > win.1).collect();
        let full = dense_rank(&densify(&rows, &cols, field), cols.len());
        let out = dense_rank(&densify(&rows, &outside, field), outside.len());
        let e_size = (win.1 - win.0 + 1) as usize;
        total += e_size - (full - out);
    }
    total
}

/// Coordinates of `x` (components as Laurent polynomials) on the declared
/// basis `labels = [(u-exponent, t-exponent)]`, solving
/// `x = ∂(y) + Σ c_ℓ·ℓ` with `y` supported in the padded window. `None` if
/// unsolvable in the window or if the labels are dependent modulo the image.
pub fn o_cokernel_coords(
    ctx: &AlgebraCtx,
    labels: &[(usize, i64)],
    x: &[LaurentPoly],
    w: i64,
) -> Option<Vec<FieldElement>> {
    let field = ctx.field();
    let (_, dom) = ranges(ctx, w);
    let mut coords = vec![field.zero(); labels.len()];
    for comp in 0..ctx.m() {
        let (mut rows, mut support) = component_matrix(ctx, comp, dom);
        let mine: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].0 == comp).collect();
        for &i in &mine {
            rows.push(BTreeMap::from([(labels[i].1, field.one())]));
            support.insert(labels[i].1);
        }
        let target: BTreeMap<i64, FieldElement> = x
            .get(comp)
            .map(|c| c.terms().map(|(e, a)| (e, a.clone())).collect())
            .unwrap_or_default();
        support.extend(target.keys().copied());
        let cols: Vec<i64> = support.into_iter().collect();
        let n_img = rows.len() - mine.len();
        let dense = densify(&rows, &cols, field);
        let img_rank = dense_rank(&dense[..n_img], cols.len());
        if dense_rank(&dense, cols.len()) != img_rank + mine.len() {
            return None;
        }
        let mut aug = dense;
        aug.push(densify(std::slice::from_ref(&target), &cols, field).remove(0));
        // A relation with coefficient −1 on x expresses x in the other rows;
        // the label part is unique by the independence check above.
        let null = dense_left_nullspace(field, &aug, cols.len());
        let last = aug.len() - 1;
        let rel = null.iter().find(|y| !y[last].is_zero())?;
        let scale = -&rel[last].inv().expect("nonzero");
        for (slot, &i) in mine.iter().enumerate() {
            coords[i] = &rel[n_img + slot] * &scale;
        }
    }
    Some(coords)
}

/// Naive product in `F[t^{±1}][u]/(u^m − P)` on component vectors.
pub fn o_ring_mul(m: usize, p: &Poly, x: &[LaurentPoly], y: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let field = p.field();
    let pl = LaurentPoly::from_poly(p);
    let mut out = vec![LaurentPoly::zero(field); m];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            let mut term = a * b;
            if i + j >= m {
                term = &term * &pl;
            }
            let slot = (i + j) % m;
            out[slot] = &out[slot] + &term;
        }
    }
    out
}

/// `D(u^m − P) = m·u^{m−1}·h − P′·f = 0` for `f = D(t)`, `h = D(u)`.
pub fn o_is_derivation(m: usize, p: &Poly, f: &[LaurentPoly], h: &[LaurentPoly]) -> bool {
    let field = p.field();
    let mut um1 = vec![LaurentPoly::zero(field); m];
    um1[m - 1] = LaurentPoly::constant(field.from_int(m as i64));
    let lhs = o_ring_mul(m, p, &um1, h);
    let mut pp = vec![LaurentPoly::zero(field); m];
    pp[0] = LaurentPoly::from_poly(&p.derivative());
    let rhs = o_ring_mul(m, p, &pp, f);
    lhs.iter().zip(&rhs).all(|(a, b)| a == b)
}

/// First `terms` coefficients of `√P` at infinity, `s_0 t^d + s_1 t^{d−1} + …`.
fn sqrt_series(p: &Poly, terms: usize) -> Option<Vec<FieldElement>> {
    let n = p.degree()?;
    if n % 2 == 1 {
        return None;
    }
    let s0 = p.leading()?.sqrt().ok()??;
    let two_s0_inv = (&s0 + &s0).inv().ok()?;
    let mut s = vec![s0];
    for i in 1..terms {
        let mut acc = if i <= n { p.coeff(n - i) } else { p.field().zero() };
        for j in 1..i {
            acc = &acc - &(&s[j] * &s[i - j]);
        }
        s.push(&acc * &two_s0_inv);
    }
    Some(s)
}

/// Solutions of `f² − g²P = c·t^k` with `deg g ≤ gmax`, one per
/// degree of `g`: for non-monomial `P` those with `k = 0`; for `P = a·t^j`
/// the family `f = 0`, `g = γ·t^e`. Normalized to `c = 1` when `√c` is in the
/// field.
pub fn o_pell_search(p: &Poly, gmax: usize) -> Vec<PellSolution> {
    assert!(gmax <= 8, "cost guard");
    let field = p.field().clone();
    let Some(n) = p.degree() else {
        return Vec::new();
    };
    if let Some((a, j)) = p.as_monomial() {
        let want = -&a.inv().expect("nonzero");
        let (gamma, c) = match want.sqrt() {
            Ok(Some(r)) => (r, field.one()),
            _ => (field.one(), -&a),
        };
        return (0..=gmax)
            .map(|e| PellSolution {
                f: Poly::zero(&field),
                g: Poly::monomial(gamma.clone(), e),
                c: c.clone(),
                k: 2 * e + j,
            })
            .collect();
    }
    if n % 2 == 1 || n == 0 {
        return Vec::new();
    }
    let d = n / 2;
    let Some(s) = sqrt_series(p, 2 * gmax + 2 * d + 1) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for deg_g in 0..=gmax {
        // Coefficient of t^{−r} in g·√P, r = 1..deg_g + d − 1, must vanish.
        let eqs = deg_g + d - 1;
        // Row per unknown g_i; column per equation r: coefficient s_{d+i+r}.
        let rows: Vec<Row> = (0..=deg_g)
            .map(|i| (1..=eqs).map(|r| s[d + i + r].clone()).collect())
            .collect();
        for g_coeffs in dense_left_nullspace(&field, &rows, eqs) {
            if g_coeffs[deg_g].is_zero() {
                continue;
            }
            let g = Poly::new(&field, g_coeffs);
            // f = polynomial part of g·√P.
            let f_coeffs: Vec<FieldElement> = (0..=deg_g + d)
                .map(|e| {
                    let mut acc = field.zero();
                    for i in 0..=deg_g {
                        // t^i · s_q t^{d−q} contributes to t^e when q = d + i − e.
                        if d + i >= e {
                            acc = &acc + &(&g.coeff(i) * &s[d + i - e]);
                        }
                    }
                    acc
                })
                .collect();
            let f = Poly::new(&field, f_coeffs);
            let norm = &(&f * &f) - &(&(&g * &g) * p);
            let Some(c) = norm.as_monomial().filter(|(_, k)| *k == 0).map(|(c, _)| c) else {
                continue;
            };
            let sol = match c.sqrt() {
                Ok(Some(r)) => {
                    let ri = r.inv().expect("nonzero");
                    PellSolution { f: f.scale(&ri), g: g.scale(&ri), c: field.one(), k: 0 }
                }
                _ => PellSolution { f, g, c, k: 0 },
            };
            out.push(sol);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::AlgebraCtx;

    fn ctx(m: usize, p: &[i64], v: Variant) -> std::sync::Arc<AlgebraCtx> {
        let k = Field::rationals();
        AlgebraCtx::new(m, Poly::from_ints(&k, p), v).unwrap()
    }

    #[test]
    fn cokernel_dims() {
        let c = ctx(2, &[0, -1, 0, 1], Variant::R);
        for w in [8, 12, 16] {
            assert_eq!(o_cokernel_dim(&c, w), 3);
        }
        assert_eq!(o_cokernel_dim(&ctx(2, &[1, 0, -2, 1], Variant::S), 10), 2);
        assert_eq!(o_cokernel_dim(&ctx(3, &[-1, 1], Variant::R), 8), 3);
    }

    #[test]
    fn pell_examples() {
        let k = Field::rationals();
        let p = Poly::from_ints(&k, &[-1, 0, 1]);
        let sols = o_pell_search(&p, 3);
        assert_eq!(sols.len(), 4);
        assert!(sols.iter().all(|s| s.verify(&p)));
        assert_eq!(sols[0].g.degree(), Some(0));
        assert_eq!(sols[3].g.degree(), Some(3));
        assert!(o_pell_search(&Poly::from_ints(&k, &[0, -1, 0, 1]), 4).is_empty());
        let sols = o_pell_search(&Poly::t(&Field::gaussian()), 0);
        assert_eq!(sols.len(), 1);
        assert!(sols[0].f.is_zero() && sols[0].k == 1 && sols[0].c.is_one());
        assert!(sols[0].verify(&Poly::t(&Field::gaussian())));
    }

    #[test]
    fn derivation_check() {
        let k = Field::rationals();
        let p = Poly::from_ints(&k, &[0, -1, 0, 1]);
        let z = LaurentPoly::zero(&k);
        let f = vec![z.clone(), LaurentPoly::one(&k)];
        let h = vec![LaurentPoly::from_poly(&p.derivative()).scale(&k.from_ratio(1, 2)), z.clone()];
        assert!(o_is_derivation(2, &p, &f, &h));
        assert!(!o_is_derivation(2, &p, &f, &[z.clone(), z]));
    }
}
