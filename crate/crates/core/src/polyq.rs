//! Dense integer polynomials in `q` and the q-objects built from them.
//!
//! Every q-object here is assembled from the binomial factors `1 - q^a`:
//! multiplying by one is a single descending pass and dividing by one is a
//! strided prefix sum, so `[k] = (1 - q^k) / (1 - q)` costs two linear passes
//! instead of a full convolution.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::moments::QuotientSpec;

/// Largest `n` accepted by [`major_index_histogram`].
pub const MAJOR_INDEX_MAX_N: u32 = 14;

/// Polynomial with arbitrary-precision integer coefficients; index `k` holds
/// the coefficient of `q^k`. The zero polynomial has no coefficients and no
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn reversed(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Multiplies in place by `1 - q^a`.
    pub fn mul_one_minus_qpow(&mut self, a: usize) {
        if self.is_zero() || a == 0 {
            // 1 - q^0 = 0
            if a == 0 {
                self.coeffs.clear();
            }
            return;
        }
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + a, BigInt::zero());
        for k in (a..old_len + a).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] -= &lo[k - a];
        }
        self.trim();
    }

    /// Divides by `1 - q^b`, failing with `NonzeroRemainder` if the division
    /// is not exact. On failure `self` is left unchanged.
    pub fn div_one_minus_qpow(&mut self, b: usize) -> Result<()> {
        if b == 0 {
            return Err(Error::InvalidArgument("division by 1 - q^0 = 0".into()));
        }
        let Some(deg) = self.degree() else {
            return Ok(());
        };
        if b > deg {
            return Err(Error::NonzeroRemainder);
        }
        let mut out = std::mem::take(&mut self.coeffs);
        for k in b..=deg {
            let (lo, hi) = out.split_at_mut(k);
            hi[0] += &lo[k - b];
        }
        if out[deg - b + 1..].iter().any(|c| !c.is_zero()) {
            // undo the prefix sums to restore the input
            for k in (b..=deg).rev() {
                let (lo, hi) = out.split_at_mut(k);
                hi[0] -= &lo[k - b];
            }
            self.coeffs = out;
            return Err(Error::NonzeroRemainder);
        }
        out.truncate(deg - b + 1);
        self.coeffs = out;
        self.trim();
        Ok(())
    }

    /// Multiplies in place by the q-number `[k]`.
    pub fn mul_qint(&mut self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidArgument("[0] is not a q-number".into()));
        }
        self.mul_one_minus_qpow(k);
        self.div_one_minus_qpow(1)
    }

    /// Divides in place by the q-number `[k]`.
    pub fn div_qint(&mut self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidArgument("[0] is not a q-number".into()));
        }
        if k == 1 || self.is_zero() {
            return Ok(());
        }
        let saved = self.clone();
        self.mul_one_minus_qpow(1);
        if let Err(e) = self.div_one_minus_qpow(k) {
            *self = saved;
            return Err(e);
        }
        Ok(())
    }

    /// Checks the invariant every finished q-object must satisfy.
    fn finish_nonnegative(self) -> Result<IntPoly> {
        match self.coeffs.iter().position(Signed::is_negative) {
            Some(index) => Err(Error::NegativeCoefficient { index }),
            None => Ok(self),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        poly_mul(self, rhs)
    }
}

/// Schoolbook product.
pub fn poly_mul(p: &IntPoly, r: &IntPoly) -> IntPoly {
    if p.is_zero() || r.is_zero() {
        return IntPoly::zero();
    }
    let mut out = vec![BigInt::zero(); p.coeffs.len() + r.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in r.coeffs.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    IntPoly::from_coeffs(out)
}

/// Exact long division from the leading coefficient down.
///
/// Fails with `NonzeroRemainder` when `d` does not divide `p` in `Z[q]`.
pub fn poly_div_exact(p: &IntPoly, d: &IntPoly) -> Result<IntPoly> {
    let Some(dd) = d.degree() else {
        return Err(Error::InvalidArgument("division by the zero polynomial".into()));
    };
    let Some(pd) = p.degree() else {
        return Ok(IntPoly::zero());
    };
    if dd > pd {
        return Err(Error::NonzeroRemainder);
    }
    let lead = &d.coeffs[dd];
    let mut rem = p.coeffs.clone();
    let mut quot = vec![BigInt::zero(); pd - dd + 1];
    for j in (0..=pd - dd).rev() {
        let top = &rem[j + dd];
        if top.is_zero() {
            continue;
        }
        let (qj, r) = top.div_rem(lead);
        if !r.is_zero() {
            return Err(Error::NonzeroRemainder);
        }
        for (i, di) in d.coeffs.iter().enumerate() {
            if !di.is_zero() {
                rem[j + i] -= &qj * di;
            }
        }
        quot[j] = qj;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NonzeroRemainder);
    }
    Ok(IntPoly::from_coeffs(quot))
}

/// The q-number `[k] = 1 + q + ... + q^(k-1)`.
pub fn qint(k: u32) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("q-number [k] needs k >= 1".into()));
    }
    Ok(IntPoly {
        coeffs: vec![BigInt::one(); k as usize],
    })
}

/// Gaussian binomial `[n choose k]`, built as
/// `prod_{i=1..k} (1 - q^(n-k+i)) / (1 - q^i)`; every partial product is
/// itself a Gaussian binomial, so each division step is exact.
pub fn gaussian_binomial(n: u32, k: u32) -> Result<IntPoly> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "gaussian binomial needs k <= n, got n={n}, k={k}"
        )));
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    let mut p = IntPoly::one();
    for i in 1..=k {
        p.mul_one_minus_qpow(n - k + i);
        p.div_one_minus_qpow(i)?;
    }
    p.finish_nonnegative()
}

/// `C_n(q) = [2n choose n] / [n+1]`.
pub fn q_catalan(n: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("q-Catalan needs n >= 1".into()));
    }
    let mut p = gaussian_binomial(2 * n, n)?;
    p.div_qint(n as usize + 1)?;
    p.finish_nonnegative()
}

/// `C_n(q) = F / G` with `F = prod_{i=1..n-1} [n+i+1]` and
/// `G = prod_{i=1..n-1} [i+1]`. Independent of the binomial route; used to
/// cross-check it.
pub fn q_catalan_via_product(n: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("q-Catalan needs n >= 1".into()));
    }
    let n = n as usize;
    let mut f = IntPoly::one();
    for i in 1..n {
        f.mul_qint(n + i + 1)?;
    }
    for i in 1..n {
        f.div_qint(i + 1)?;
    }
    f.finish_nonnegative()
}

/// `c_n(q) = [2] / [2n] * [2n choose n-1]`.
pub fn q_catalan_second(n: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("q-Catalan needs n >= 1".into()));
    }
    let mut p = gaussian_binomial(2 * n, n - 1)?;
    p.mul_qint(2)?;
    p.div_qint(2 * n as usize)?;
    p.finish_nonnegative()
}

/// `C_{n,m}(q) = [mn choose n] / [(m-1)n + 1]`.
pub fn q_catalan_general(n: u32, m: u32) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("m-Catalan needs n >= 1".into()));
    }
    if m < 2 {
        return Err(Error::InvalidArgument("m-Catalan needs m >= 2".into()));
    }
    let mut p = gaussian_binomial(m * n, n)?;
    p.div_qint(((m - 1) * n + 1) as usize)?;
    p.finish_nonnegative()
}

/// `prod (1 - q^a_i) / prod (1 - q^b_i)` when that quotient lies in `Z[q]`.
///
/// The numerator is built in full and divided by one `1 - q^b` at a time.
/// If a step is inexact the answer is settled by a single long division of
/// the full numerator by the full denominator.
pub fn quotient_poly(spec: &QuotientSpec) -> Result<IntPoly> {
    spec.validate()?;
    let num_deg: u64 = spec.a().iter().map(|&a| a as u64).sum();
    let den_deg: u64 = spec.b().iter().map(|&b| b as u64).sum();
    if num_deg < den_deg {
        return Err(Error::NotPolynomial(format!(
            "numerator degree {num_deg} is below denominator degree {den_deg}"
        )));
    }

    let mut numerator = IntPoly::one();
    for &a in spec.a() {
        numerator.mul_one_minus_qpow(a as usize);
    }

    let mut quotient = numerator.clone();
    let mut fast_ok = true;
    for &b in spec.b() {
        if quotient.div_one_minus_qpow(b as usize).is_err() {
            fast_ok = false;
            break;
        }
    }
    if fast_ok {
        return Ok(quotient);
    }

    let mut denominator = IntPoly::one();
    for &b in spec.b() {
        denominator.mul_one_minus_qpow(b as usize);
    }
    poly_div_exact(&numerator, &denominator).map_err(|_| {
        Error::NotPolynomial(format!(
            "{} does not divide the numerator",
            describe_factors(spec.b())
        ))
    })
}

fn describe_factors(exps: &[u32]) -> String {
    exps.iter()
        .map(|e| format!("(1 - q^{e})"))
        .collect::<Vec<_>>()
        .join("")
}

/// Histogram of the major index over all ballot words of length `2n`.
///
/// Words use the letters 0 and 1, every prefix has at least as many 0s as
/// 1s, and a descent at position `i` (1-based) means `w_i = 1, w_{i+1} = 0`.
pub fn major_index_histogram(n: u32) -> Result<IntPoly> {
    if n == 0 || n > MAJOR_INDEX_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "major index enumeration needs 1 <= n <= {MAJOR_INDEX_MAX_N}, got {n}"
        )));
    }
    let n = n as usize;
    let mut counts = vec![0u64; n * (n - 1) + 1];
    walk_ballot(n, 0, 0, 0, 0, &mut counts);
    Ok(IntPoly::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

fn walk_ballot(n: usize, zeros: usize, ones: usize, last: u8, maj: usize, counts: &mut [u64]) {
    let pos = zeros + ones;
    if pos == 2 * n {
        counts[maj] += 1;
        return;
    }
    if zeros < n {
        let maj = if last == 1 { maj + pos } else { maj };
        walk_ballot(n, zeros + 1, ones, 0, maj, counts);
    }
    if ones < zeros {
        walk_ballot(n, zeros, ones + 1, 1, maj, counts);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn mul_small_cases() {
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(poly_mul(&p(&[3, 0, 5]), &IntPoly::one()), p(&[3, 0, 5]));
        assert_eq!(&p(&[1, 1, 1]) * &p(&[1, 1]), p(&[1, 2, 2, 1]));
        assert!(poly_mul(&p(&[1, 2]), &IntPoly::zero()).is_zero());
    }

    #[test]
    fn exact_division() {
        let q = poly_div_exact(&p(&[1, 1, 2, 1, 1]), &p(&[1, 1, 1])).unwrap();
        assert_eq!(q, p(&[1, 0, 1]));
        assert_eq!(poly_div_exact(&p(&[4, 5]), &IntPoly::one()).unwrap(), p(&[4, 5]));
        assert_eq!(
            poly_div_exact(&p(&[1, 1, 1]), &p(&[1, 1])),
            Err(Error::NonzeroRemainder)
        );
        assert!(matches!(
            poly_div_exact(&p(&[1]), &IntPoly::zero()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn failed_sparse_division_leaves_input_intact() {
        let mut x = p(&[1, 1, 1]);
        assert_eq!(x.div_one_minus_qpow(2), Err(Error::NonzeroRemainder));
        assert_eq!(x, p(&[1, 1, 1]));
        assert_eq!(x.div_qint(2), Err(Error::NonzeroRemainder));
        assert_eq!(x, p(&[1, 1, 1]));
    }

    #[test]
    fn q_numbers() {
        assert_eq!(qint(1).unwrap(), p(&[1]));
        assert_eq!(qint(2).unwrap(), p(&[1, 1]));
        assert_eq!(qint(4).unwrap(), p(&[1, 1, 1, 1]));
        assert!(qint(0).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(gaussian_binomial(4, 2).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(
            gaussian_binomial(6, 2).unwrap(),
            p(&[1, 1, 2, 2, 3, 2, 2, 1, 1])
        );
        assert_eq!(gaussian_binomial(5, 0).unwrap(), IntPoly::one());
        assert!(gaussian_binomial(2, 3).is_err());
    }

    #[test]
    fn q_catalan_small() {
        assert_eq!(q_catalan(1).unwrap(), p(&[1]));
        assert_eq!(q_catalan(2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(q_catalan(3).unwrap(), p(&[1, 0, 1, 1, 1, 0, 1]));
        assert!(q_catalan(0).is_err());
    }

    #[test]
    fn product_route_matches_binomial_route() {
        for n in 1..=25 {
            assert_eq!(q_catalan(n).unwrap(), q_catalan_via_product(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn second_q_catalan_small() {
        assert_eq!(q_catalan_second(1).unwrap(), p(&[1]));
        assert_eq!(q_catalan_second(2).unwrap(), p(&[1, 1]));
        assert_eq!(q_catalan_second(3).unwrap(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn m_catalan_small() {
        assert_eq!(q_catalan_general(2, 3).unwrap(), p(&[1, 0, 1, 0, 1]));
        assert_eq!(q_catalan_general(1, 4).unwrap(), p(&[1]));
        assert_eq!(q_catalan_general(2, 2).unwrap(), q_catalan(2).unwrap());
        assert!(q_catalan_general(3, 1).is_err());
    }

    #[test]
    fn quotients() {
        let spec = |a: &[u32], b: &[u32]| QuotientSpec::new(a.to_vec(), b.to_vec(), "t").unwrap();
        assert_eq!(quotient_poly(&spec(&[4], &[2])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(quotient_poly(&spec(&[7], &[7])).unwrap(), IntPoly::one());
        assert!(matches!(
            quotient_poly(&spec(&[3], &[2])),
            Err(Error::NotPolynomial(_))
        ));
        assert!(matches!(
            quotient_poly(&spec(&[2], &[3])),
            Err(Error::NotPolynomial(_))
        ));
        assert_eq!(
            quotient_poly(&spec(&[6, 4], &[3, 2])).unwrap(),
            poly_mul(&p(&[1, 0, 0, 1]), &p(&[1, 0, 1]))
        );
    }

    #[test]
    fn major_index_small() {
        assert_eq!(major_index_histogram(1).unwrap(), p(&[1]));
        assert_eq!(major_index_histogram(2).unwrap(), p(&[1, 0, 1]));
        assert_eq!(major_index_histogram(3).unwrap(), p(&[1, 0, 1, 1, 1, 0, 1]));
        assert!(major_index_histogram(0).is_err());
        assert!(major_index_histogram(15).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -2, 1]).to_string(), "1 - 2q^2 + q^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
