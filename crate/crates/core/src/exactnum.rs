//! Exact rationals, Bernoulli numbers and the Taylor coefficients of
//! `ln(sinh(x/2) / (x/2))`, plus the big-number to `f64` conversions the
//! diagnostics rely on.

use std::f64::consts::PI;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// `B_0 ..= B_max_index` under the `B_1 = -1/2` convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Largest `k` for which `B_{2k}` is available.
    pub fn max_k(&self) -> usize {
        self.max_index() / 2
    }

    pub fn get(&self, j: usize) -> Option<&BigRational> {
        self.values.get(j)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `B_{2k}`, or `TableTooShort`.
    pub fn even(&self, k: usize) -> Result<&BigRational> {
        self.values.get(2 * k).ok_or(Error::TableTooShort {
            have: self.max_index(),
            need: 2 * k,
        })
    }
}

/// Exact `B_0 ..= B_{2 max_k}` from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_table(max_k: usize) -> Result<BernoulliTable> {
    if max_k == 0 {
        return Err(Error::InvalidArgument("bernoulli_table needs max_k >= 1".into()));
    }
    let top = 2 * max_k;
    let mut values: Vec<BigRational> = Vec::with_capacity(top + 1);
    values.push(BigRational::one());
    for m in 1..=top {
        if m >= 3 && m % 2 == 1 {
            values.push(BigRational::zero());
            continue;
        }
        // binomials C(m+1, j) for j = 0..m
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in values.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        values.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    Ok(BernoulliTable { values })
}

/// Coefficient of `x^{2k}` in `ln(sinh(x/2) / (x/2))`: `B_{2k} / (2k (2k)!)`.
pub fn log_sinh_series_coeff(k: usize, table: &BernoulliTable) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidArgument("series coefficient index starts at 1".into()));
    }
    let b = table.even(k)?;
    let denom = BigInt::from(2 * k) * factorial(2 * k);
    Ok(b / BigRational::from_integer(denom))
}

/// `2 (2k)! / (2 pi)^{2k}`, the leading asymptotic for `|B_{2k}|`.
pub fn bernoulli_asymptotic(k: usize) -> f64 {
    let two_k = 2 * k;
    if two_k <= 150 {
        2.0 * big_to_f64(&factorial(two_k)) / (2.0 * PI).powi(two_k as i32)
    } else {
        let two_k = two_k as f64;
        (2f64.ln() + ln_gamma(two_k + 1.0) - two_k * (2.0 * PI).ln()).exp()
    }
}

/// `|B_{2k}| / bernoulli_asymptotic(k)`, which equals `zeta(2k)`.
pub fn bernoulli_asymptotic_ratio(k: usize, table: &BernoulliTable) -> Result<f64> {
    let b = table.even(k)?.abs();
    let two_k = 2 * k;
    if two_k <= 150 {
        let scaled = b / BigRational::from_integer(BigInt::from(2) * factorial(two_k));
        Ok(rational_to_f64(&scaled) * (2.0 * PI).powi(two_k as i32))
    } else {
        Ok(rational_to_f64(&b) / bernoulli_asymptotic(k))
    }
}

/// Partial sums of `sum |B_{2k}| / (2k (2k)!)` over odd `k >= 3` and of
/// `sum B_{2k} / (2k (2k)!)` over even `k >= 2`, up to `k = max_k`.
pub fn tail_constant_partial_sums(table: &BernoulliTable, max_k: usize) -> Result<(f64, f64)> {
    let mut odd = BigRational::zero();
    let mut even = BigRational::zero();
    for k in 2..=max_k {
        let c = log_sinh_series_coeff(k, table)?;
        if k % 2 == 1 {
            odd += c.abs();
        } else {
            even += c;
        }
    }
    Ok((rational_to_f64(&odd), rational_to_f64(&even)))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

// Mantissa width kept when shrinking a big integer for float conversion.
const KEEP_BITS: u64 = 960;

/// `num / den` as `f64` without intermediate overflow.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if den.is_zero() {
        return if num.is_zero() { f64::NAN } else { f64::INFINITY * sign_of(num) };
    }
    if num.is_zero() {
        return 0.0;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let (n, ns) = shrink(&num.abs());
    let (d, ds) = shrink(&den.abs());
    let v = scale_pow2(n / d, ns as i64 - ds as i64);
    if negative {
        -v
    } else {
        v
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

pub fn big_to_f64(x: &BigInt) -> f64 {
    ratio_to_f64(x, &BigInt::one())
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    if !x.is_positive() {
        return f64::NEG_INFINITY;
    }
    let (m, shift) = shrink(x);
    m.ln() + shift as f64 * std::f64::consts::LN_2
}

fn sign_of(x: &BigInt) -> f64 {
    if x.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// Splits a nonnegative integer into `(mantissa, shift)` with
/// `x ~ mantissa * 2^shift` and the mantissa finite as `f64`.
fn shrink(x: &BigInt) -> (f64, u64) {
    let bits = x.bits();
    let shift = bits.saturating_sub(KEEP_BITS);
    let m = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    (m, shift)
}

fn scale_pow2(mut v: f64, mut e: i64) -> f64 {
    while e > 0 && v.is_finite() && v != 0.0 {
        let step = e.min(512);
        v *= 2f64.powi(step as i32);
        e -= step;
    }
    while e < 0 && v != 0.0 {
        let step = e.max(-512);
        v *= 2f64.powi(step as i32);
        e -= step;
    }
    v
}

/// Exact `sum_{j} C(m+1, j) B_j` for `j = 0..=m`; zero for every `m >= 1`.
pub fn recurrence_residual(table: &BernoulliTable, m: usize) -> BigRational {
    table
        .values()
        .iter()
        .take(m + 1)
        .enumerate()
        .map(|(j, b)| b * BigRational::from_integer(binomial(m as u64 + 1, j as u64)))
        .sum()
}

/// Shorthand for `BigRational::new`.
pub fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}
