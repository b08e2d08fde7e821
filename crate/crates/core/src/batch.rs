//! Batch drivers. With the `parallel` feature (default) work items are spread
//! over the rayon pool; without it the same calls run sequentially. Every
//! function here is a pure map, so results are identical either way and
//! always come back in input order.

use crate::isomorph::{iso_decide, IsoError, IsoWitness};
use crate::field::FieldElement;
use crate::ring::{Ctx, RingElement};
use crate::simplicity::{simp_check, SimpError, SimplicityReport};
use crate::units::{u_djkm_factor, DjkmCtx, UnitFactorization, UnitsError};

#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    map_seq(items, f)
}

/// Always sequential; the baseline `par_map` is measured against.
pub fn map_seq<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn batch_simp_check(ctxs: &[Ctx]) -> Vec<Result<SimplicityReport, SimpError>> {
    par_map(ctxs, simp_check)
}

pub fn batch_djkm_factor(dctx: &DjkmCtx, xs: &[RingElement]) -> Vec<Result<UnitFactorization, UnitsError>> {
    par_map(xs, |x| u_djkm_factor(dctx, x))
}

pub fn batch_iso_decide(
    pairs: &[(Vec<FieldElement>, Vec<FieldElement>)],
) -> Vec<Result<Option<IsoWitness>, IsoError>> {
    par_map(pairs, |(a, b)| iso_decide(a, b))
}
