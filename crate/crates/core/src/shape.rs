//! Unimodality and log-concavity of coefficient sequences.
//!
//! All comparisons are on exact integers.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::polyq::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    pub n: u32,
    pub family: String,
    pub degree: usize,
    pub interior_unimodal: bool,
    pub first_unimodality_violation: Option<usize>,
    pub min_logconcave_t: Option<usize>,
    pub first_lc_violation_at_t0: Option<usize>,
}

/// Unimodality of `c_1, ..., c_{deg-1}` (first and last coefficient
/// dropped). Weak rises followed by weak falls are allowed; the violation is
/// the first index with a strict rise after a strict fall.
pub fn interior_unimodal(p: &IntPoly) -> Result<(bool, Option<usize>)> {
    let deg = match p.degree() {
        Some(d) if d >= 2 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "interior unimodality needs degree >= 2".into(),
            ))
        }
    };
    let c = p.coeffs();
    let mut fell = false;
    for k in 2..deg {
        if c[k] < c[k - 1] {
            fell = true;
        } else if c[k] > c[k - 1] && fell {
            return Ok((false, Some(k)));
        }
    }
    Ok((true, None))
}

fn lc_fails(c: &[BigInt], k: usize) -> bool {
    &c[k] * &c[k] < &c[k + 1] * &c[k - 1]
}

/// Indices `1 <= k <= deg-1` where `c_k^2 < c_{k+1} c_{k-1}`.
pub fn logconcavity_failures(p: &IntPoly) -> Vec<usize> {
    let c = p.coeffs();
    if c.len() < 3 {
        return Vec::new();
    }
    (1..c.len() - 1).filter(|&k| lc_fails(c, k)).collect()
}

/// Smallest `t` such that `c_k^2 >= c_{k+1} c_{k-1}` for every
/// `t+1 <= k <= deg-t-1`, or `None` if no `t` with `2t < deg` works.
///
/// A failure at `k` is excluded from the window exactly when
/// `t >= min(k, deg-k)`, so one pass over the failures suffices.
pub fn min_logconcave_t(p: &IntPoly) -> Option<usize> {
    let deg = p.degree()?;
    let t = logconcavity_failures(p)
        .into_iter()
        .map(|k| k.min(deg - k))
        .max()
        .unwrap_or(0);
    (2 * t < deg).then_some(t)
}

/// Builds the report for one polynomial. Degrees below 2 have an empty
/// interior, which counts as unimodal.
pub fn shape_report(p: &IntPoly, n: u32, family: &str) -> Result<ShapeReport> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let (interior_unimodal, first_unimodality_violation) = if degree >= 2 {
        interior_unimodal(p)?
    } else {
        (true, None)
    };
    let report = ShapeReport {
        n,
        family: family.to_string(),
        degree,
        interior_unimodal,
        first_unimodality_violation,
        min_logconcave_t: min_logconcave_t(p),
        first_lc_violation_at_t0: logconcavity_failures(p).first().copied(),
    };
    debug_assert!(
        report.min_logconcave_t != Some(0)
            || !interior_positive(p)
            || report.interior_unimodal,
        "positive log-concave sequence reported as not unimodal"
    );
    Ok(report)
}

/// Whether every coefficient strictly between the ends is positive.
pub fn interior_positive(p: &IntPoly) -> bool {
    let c = p.coeffs();
    c.len() < 3 || c[1..c.len() - 1].iter().all(Signed::is_positive)
}

/// One report per `n` in `n_from..=n_to`, computed in parallel and returned
/// in order of `n`.
pub fn scan_family(family: &dyn Family, n_from: u32, n_to: u32) -> Result<Vec<ShapeReport>> {
    if n_from < 2 || n_from > n_to {
        return Err(Error::InvalidArgument(format!(
            "scan needs 2 <= n_from <= n_to, got {n_from}..{n_to}"
        )));
    }
    let label = family.label();
    (n_from..=n_to)
        .into_par_iter()
        .map(|n| shape_report(&family.poly(n)?, n, &label))
        .collect()
}
