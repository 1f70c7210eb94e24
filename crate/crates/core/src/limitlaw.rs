//! Finite-`n` checks of the normal limit.
//!
//! For a spec with `S = sum (a_i^2 - b_i^2) > 0` the log-MGF of the
//! standardized variable expands as
//!
//! ```text
//! ln M(t / sigma) = mu t / sigma + sum_{k>=1} c_k (12 / S)^k P_k t^{2k}
//! ```
//!
//! with `c_k = B_{2k} / (2k (2k)!)` and `P_k = sum (a_i^{2k} - b_i^{2k})`.
//! The rational factor in front of `t^{2k}` is kept exact; only the final
//! product with the float power of `t` is rounded. The `k = 1` factor is
//! exactly `1/2`.

use std::f64::consts::{PI, SQRT_2};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::exactnum::{ln_big, log_sinh_series_coeff, rational_to_f64, ratio_to_f64, BernoulliTable, BigRational};
use crate::family::{Catalan, Family};
use crate::moments::{dist_summary, general_moments_closed, QuotientSpec};
use crate::polyq::IntPoly;

/// Default series truncation order.
pub const DEFAULT_TRUNCATION: usize = 30;

/// Constants of the explicit bound `ratio_k < n^gamma (alpha n^beta)^{2k}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GecoParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl GecoParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta < 0.0 && gamma < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "need alpha > 0, beta < 0, gamma < 0; got ({alpha}, {beta}, {gamma})"
            )));
        }
        Ok(GecoParams { alpha, beta, gamma })
    }

    /// `alpha = 32 sqrt(3) / 3`, `2 beta = gamma = -1/3`.
    pub fn catalan() -> Self {
        GecoParams {
            alpha: 32.0 * 3f64.sqrt() / 3.0,
            beta: -1.0 / 6.0,
            gamma: -1.0 / 3.0,
        }
    }

    /// `alpha = 8 sqrt(2m)`, `2 beta = gamma = -1/3`.
    pub fn m_catalan(m: u32) -> Self {
        GecoParams {
            alpha: 8.0 * (2.0 * m as f64).sqrt(),
            beta: -1.0 / 6.0,
            gamma: -1.0 / 3.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `ln(n^gamma (alpha n^beta)^{2k})`.
    pub fn ln_bound(&self, n: u32, k: u32) -> f64 {
        let ln_n = (n as f64).ln();
        self.gamma * ln_n + 2.0 * k as f64 * (self.alpha.ln() + self.beta * ln_n)
    }

    pub fn bound(&self, n: u32, k: u32) -> f64 {
        self.ln_bound(n, k).exp()
    }
}

pub fn power_sum_diff(spec: &QuotientSpec, k: u32) -> BigInt {
    spec.power_sum_diff(k)
}

fn positive_variance_numerator(spec: &QuotientSpec) -> Result<BigInt> {
    let s = spec.variance_numerator();
    if !s.is_positive() {
        return Err(Error::ZeroVariance);
    }
    Ok(s)
}

/// `P_k / S^k`.
pub fn condition_ratio(spec: &QuotientSpec, k: u32) -> Result<f64> {
    let s = positive_variance_numerator(spec)?;
    Ok(ratio_to_f64(&spec.power_sum_diff(k), &s.pow(k)))
}

fn ln_condition_ratio(spec: &QuotientSpec, s: &BigInt, k: u32) -> Option<f64> {
    let p = spec.power_sum_diff(k);
    if !p.is_positive() {
        return None;
    }
    Some(ln_big(&p) - k as f64 * ln_big(s))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GecoCheck {
    pub n: u32,
    pub k: u32,
    pub ratio: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GecoReport {
    pub family: String,
    pub params: GecoParams,
    pub checks: Vec<GecoCheck>,
}

impl GecoReport {
    pub fn violations(&self) -> impl Iterator<Item = &GecoCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }
}

/// Checks `P_k / S^k < n^gamma (alpha n^beta)^{2k}` over a grid. The
/// comparison is made between logarithms so neither side under- or
/// overflows.
pub fn geco_bound_check(
    family: &dyn Family,
    params: GecoParams,
    k_range: RangeInclusive<u32>,
    n_list: &[u32],
) -> Result<GecoReport> {
    let mut checks = Vec::new();
    for &n in n_list {
        let spec = family.spec(n)?;
        checks.extend(geco_checks_for_spec(&spec, n, params, k_range.clone())?);
    }
    Ok(GecoReport {
        family: family.label(),
        params,
        checks,
    })
}

/// Same as [`geco_bound_check`] for a single explicit spec of size `n`.
pub fn geco_checks_for_spec(
    spec: &QuotientSpec,
    n: u32,
    params: GecoParams,
    k_range: RangeInclusive<u32>,
) -> Result<Vec<GecoCheck>> {
    let s = positive_variance_numerator(spec)?;
    Ok(k_range
        .map(|k| {
            let ln_bound = params.ln_bound(n, k);
            let (ratio, holds) = match ln_condition_ratio(spec, &s, k) {
                Some(lr) => (lr.exp(), lr < ln_bound),
                None => (ratio_to_f64(&spec.power_sum_diff(k), &s.pow(k)), true),
            };
            GecoCheck {
                n,
                k,
                ratio,
                bound: ln_bound.exp(),
                holds,
            }
        })
        .collect())
}

/// Exact factors `c_k (12 / S)^k P_k` multiplying `t^{2k}`, for `k = 1..=max_k`.
pub fn standardized_series_coeffs(
    spec: &QuotientSpec,
    max_k: usize,
    table: &BernoulliTable,
) -> Result<Vec<BigRational>> {
    if max_k > table.max_k() {
        return Err(Error::TableTooShort {
            have: table.max_index(),
            need: 2 * max_k,
        });
    }
    let s = positive_variance_numerator(spec)?;
    let mut out = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let c = log_sinh_series_coeff(k, table)?;
        let scale = BigRational::new(BigInt::from(12).pow(k as u32), s.pow(k as u32));
        out.push(c * scale * BigRational::from_integer(spec.power_sum_diff(k as u32)));
    }
    Ok(out)
}

fn eval_even_series(coeffs: &[BigRational], t: f64, from_k: usize) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(from_k - 1)
        .map(|(i, c)| rational_to_f64(c) * t.powi(2 * (i as i32 + 1)))
        .sum()
}

fn mean_over_sigma(spec: &QuotientSpec) -> (f64, f64) {
    let (mean, var) = general_moments_closed(spec);
    (rational_to_f64(&mean), rational_to_f64(&var).sqrt())
}

/// Truncated log-MGF of `xi` at `t / sigma`, including the `mu t / sigma` shift.
pub fn log_mgf_truncated(
    spec: &QuotientSpec,
    t: f64,
    max_k: usize,
    table: &BernoulliTable,
) -> Result<f64> {
    let coeffs = standardized_series_coeffs(spec, max_k, table)?;
    let (mu, sigma) = mean_over_sigma(spec);
    Ok(mu * t / sigma + eval_even_series(&coeffs, t, 1))
}

/// `E[exp(t eta)]` with `eta = (xi - mean) / sigma`, from the coefficients.
pub fn exact_standardized_mgf(p: &IntPoly, t: f64) -> Result<f64> {
    let summary = dist_summary(p)?;
    if summary.variance.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let mu = rational_to_f64(&summary.mean);
    let sigma = summary.sigma;
    let ln_mass = ln_big(&summary.mass);
    let exps: Vec<f64> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_positive())
        .map(|(k, c)| ln_big(c) - ln_mass + t * (k as f64 - mu) / sigma)
        .collect();
    let top = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_value = top + exps.iter().map(|e| (e - top).exp()).sum::<f64>().ln();
    if !log_value.is_finite() || log_value > f64::MAX.ln() {
        return Err(Error::Overflow(log_value));
    }
    Ok(log_value.exp())
}

/// Partial sums of the standardized series for one size.
#[derive(Clone, Debug, PartialEq)]
pub struct TailReport {
    pub n: u32,
    pub t: f64,
    pub truncation: usize,
    /// Sum over `k = 2..=truncation`.
    pub tail_value: f64,
    /// The `k = 1` term, `t^2 / 2`.
    pub leading_term: f64,
    /// `|tail(truncation + 10) - tail(truncation)|` when the table reaches.
    pub convergence_delta: Option<f64>,
    /// `t max(a_i) / sigma < 2 pi`: every `ln sinh` expansion converges.
    pub within_series_radius: bool,
    /// `64 t n^{-1/6} < 2 pi`, the regime covered by the decay argument.
    pub within_proof_regime: bool,
    pub ks_distance: Option<f64>,
}

/// Tail of the standardized series for an arbitrary spec of size `n`.
pub fn tail_series_spec(
    spec: &QuotientSpec,
    n: u32,
    t: f64,
    truncation: usize,
    table: &BernoulliTable,
) -> Result<TailReport> {
    let reach = (truncation + 10).min(table.max_k()).max(truncation);
    let coeffs = standardized_series_coeffs(spec, reach, table)?;
    let tail_value = eval_even_series(&coeffs[..truncation], t, 2);
    let convergence_delta = (reach == truncation + 10)
        .then(|| (eval_even_series(&coeffs, t, 2) - tail_value).abs());
    let (_, sigma) = mean_over_sigma(spec);
    Ok(TailReport {
        n,
        t,
        truncation,
        tail_value,
        leading_term: eval_even_series(&coeffs[..1], t, 1),
        convergence_delta,
        within_series_radius: t.abs() * spec.max_exponent() as f64 / sigma < 2.0 * PI,
        within_proof_regime: 64.0 * t.abs() * (n as f64).powf(-1.0 / 6.0) < 2.0 * PI,
        ks_distance: None,
    })
}

/// Tail of the `C_n(q)` series, `k = 2..=truncation`.
pub fn tail_series(n: u32, t: f64, truncation: usize, table: &BernoulliTable) -> Result<TailReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("tail series needs n >= 2".into()));
    }
    tail_series_spec(&Catalan.spec(n)?, n, t, truncation, table)
}

/// The normality condition with denominators `S^k` (no factor 12), summed
/// over `k = from_k..=max_k`. Starting at `k = 1` adds the constant `t^2/24`,
/// which never vanishes; the decaying part starts at `k = 2`.
pub fn condition_series(
    spec: &QuotientSpec,
    t: f64,
    from_k: usize,
    max_k: usize,
    table: &BernoulliTable,
) -> Result<f64> {
    if from_k == 0 {
        return Err(Error::InvalidArgument("series index starts at 1".into()));
    }
    let s = positive_variance_numerator(spec)?;
    let mut total = 0.0;
    for k in from_k..=max_k {
        let c = log_sinh_series_coeff(k, table)?;
        let ratio = BigRational::new(spec.power_sum_diff(k as u32), s.pow(k as u32));
        total += rational_to_f64(&(c * ratio)) * t.powi(2 * k as i32);
    }
    Ok(total)
}

/// Least-squares slope of `ln |v|` against `ln n`.
pub fn fit_decay_exponent(points: &[(u32, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(_, v)| v == 0.0) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.abs().ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Kolmogorov-Smirnov distance between the coefficient distribution and the
/// standard normal, after standardizing. Both one-sided gaps are taken at
/// every jump; there is no continuity correction.
pub fn ks_distance_to_normal(p: &IntPoly) -> Result<f64> {
    let summary = dist_summary(p)?;
    if summary.variance.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let mu = rational_to_f64(&summary.mean);
    let mut below = BigInt::zero();
    let mut sup = 0.0f64;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let phi = normal_cdf((k as f64 - mu) / summary.sigma);
        let left = ratio_to_f64(&below, &summary.mass);
        below += c;
        let right = ratio_to_f64(&below, &summary.mass);
        sup = sup.max((left - phi).abs()).max((right - phi).abs());
    }
    Ok(sup)
}

/// Plot rows `(z_k, sigma * P(k), phi(z_k))` for every `k` in the support range.
pub fn standardized_density(p: &IntPoly) -> Result<Vec<(f64, f64, f64)>> {
    let summary = dist_summary(p)?;
    if summary.variance.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let mu = rational_to_f64(&summary.mean);
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let z = (k as f64 - mu) / summary.sigma;
            (z, summary.sigma * ratio_to_f64(c, &summary.mass), normal_pdf(z))
        })
        .collect())
}
