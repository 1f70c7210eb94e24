//! Exact moments of coefficient distributions and their closed forms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, BigRational};
use crate::family::{FamilyParams, Registry};
use crate::polyq::IntPoly;

/// Exponent pair defining `prod (1 - q^a_i) / prod (1 - q^b_i)`.
///
/// Unit pairs `a_i = b_i = 1` cancel and are never stored by the presets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientSpec {
    a: Vec<u32>,
    b: Vec<u32>,
    label: String,
}

impl QuotientSpec {
    pub fn new(a: Vec<u32>, b: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        let spec = QuotientSpec {
            a,
            b,
            label: label.into(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(Error::InvalidArgument(format!(
                "sequences differ in length: {} vs {}",
                self.a.len(),
                self.b.len()
            )));
        }
        if self.a.iter().chain(&self.b).any(|&x| x == 0) {
            return Err(Error::InvalidArgument("exponents must be >= 1".into()));
        }
        Ok(())
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `sum (a_i^{2k} - b_i^{2k})`, exact.
    pub fn power_sum_diff(&self, k: u32) -> BigInt {
        let pow = |x: u32| BigInt::from(x).pow(2 * k);
        self.a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| pow(a) - pow(b))
            .sum()
    }

    /// `sum (a_i^2 - b_i^2)`, i.e. twelve times the variance.
    pub fn variance_numerator(&self) -> BigInt {
        self.power_sum_diff(1)
    }

    pub fn max_exponent(&self) -> u32 {
        self.a.iter().chain(&self.b).copied().max().unwrap_or(0)
    }
}

/// Exact summary of the distribution `P(k) = c_k / sum c`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistSummary {
    pub mass: BigInt,
    pub mean: BigRational,
    pub variance: BigRational,
    pub degree: usize,
    /// `sqrt(variance)` as a float.
    pub sigma: f64,
}

fn check_distribution(p: &IntPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(index) = p.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient { index });
    }
    Ok(())
}

/// Raw power sums `(sum c_k, sum k c_k)`.
fn mass_and_first(p: &IntPoly) -> (BigInt, BigInt) {
    let mut mass = BigInt::zero();
    let mut first = BigInt::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        mass += c;
        first += c * k;
    }
    (mass, first)
}

pub fn dist_summary(p: &IntPoly) -> Result<DistSummary> {
    check_distribution(p)?;
    let (mass, first) = mass_and_first(p);
    let second: BigInt = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * (k * k))
        .sum();
    let mean = BigRational::new(first.clone(), mass.clone());
    let variance = BigRational::new(&second * &mass - &first * &first, &mass * &mass);
    let sigma = rational_to_f64(&variance).sqrt();
    Ok(DistSummary {
        degree: p.degree().unwrap_or(0),
        mass,
        mean,
        variance,
        sigma,
    })
}

/// `E(xi_n) = n(n-1)/2` and `Var(xi_n) = n(n-1)(n+1)/6` for `C_n(q)`.
pub fn catalan_moments_closed(n: u32) -> (BigRational, BigRational) {
    let n = BigInt::from(n);
    let nm1 = &n - 1;
    let np1 = &n + 1;
    (
        BigRational::new(&n * &nm1, BigInt::from(2)),
        BigRational::new(&n * &nm1 * &np1, BigInt::from(6)),
    )
}

/// `(1/2) sum (a_i - b_i)` and `(1/12) sum (a_i^2 - b_i^2)`.
pub fn general_moments_closed(spec: &QuotientSpec) -> (BigRational, BigRational) {
    let linear: i64 = spec
        .a()
        .iter()
        .zip(spec.b())
        .map(|(&a, &b)| a as i64 - b as i64)
        .sum();
    (
        BigRational::new(BigInt::from(linear), BigInt::from(2)),
        BigRational::new(spec.variance_numerator(), BigInt::from(12)),
    )
}

/// Exact central moment `sum c_k (k - mean)^r / mass` for `1 <= r <= 8`.
pub fn central_moment(p: &IntPoly, r: u32) -> Result<BigRational> {
    if !(1..=8).contains(&r) {
        return Err(Error::InvalidArgument(format!(
            "central moment order must be in 1..=8, got {r}"
        )));
    }
    check_distribution(p)?;
    let (mass, first) = mass_and_first(p);
    // (k - first/mass)^r = (k*mass - first)^r / mass^r
    let total: BigInt = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * (&mass * k - &first).pow(r))
        .sum();
    Ok(BigRational::new(total, mass.pow(r + 1)))
}

/// `mu_4 / sigma^4`; equals 3 for a normal distribution.
pub fn standardized_fourth_moment(p: &IntPoly) -> Result<f64> {
    let var = central_moment(p, 2)?;
    if var.is_zero() {
        return Err(Error::ZeroVariance);
    }
    let m4 = central_moment(p, 4)?;
    Ok(rational_to_f64(&(m4 / (&var * &var))))
}

/// Named exponent presets: `catalan`, `catalan2` and `mcatalan` (needs `m`).
pub fn preset(name: &str, n: u32, m: Option<u32>) -> Result<QuotientSpec> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("preset needs n >= 2, got {n}")));
    }
    let family = Registry::with_builtin().create(name, &FamilyParams { m })?;
    family.spec(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polyq::{q_catalan, quotient_poly};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn summaries() {
        let s = dist_summary(&q_catalan(3).unwrap()).unwrap();
        assert_eq!(s.mass, BigInt::from(5));
        assert_eq!(s.mean, rat(3, 1));
        assert_eq!(s.variance, rat(4, 1));
        assert_eq!(s.degree, 6);
        assert!((s.sigma - 2.0).abs() < 1e-15);

        let s = dist_summary(&IntPoly::one()).unwrap();
        assert_eq!((s.mass, s.mean, s.variance), (BigInt::from(1), rat(0, 1), rat(0, 1)));

        let s = dist_summary(&p(&[1, 0, 1])).unwrap();
        assert_eq!((s.mean, s.variance), (rat(1, 1), rat(1, 1)));
    }

    #[test]
    fn summary_rejects_bad_input() {
        assert_eq!(dist_summary(&IntPoly::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(
            dist_summary(&p(&[1, -1, 1])),
            Err(Error::NegativeCoefficient { index: 1 })
        );
    }

    #[test]
    fn closed_forms() {
        assert_eq!(catalan_moments_closed(3), (rat(3, 1), rat(4, 1)));
        assert_eq!(catalan_moments_closed(1), (rat(0, 1), rat(0, 1)));
        assert_eq!(catalan_moments_closed(2), (rat(1, 1), rat(1, 1)));

        let cat3 = QuotientSpec::new(vec![5, 6], vec![2, 3], "catalan").unwrap();
        assert_eq!(general_moments_closed(&cat3), (rat(3, 1), rat(4, 1)));
        let same = QuotientSpec::new(vec![4, 9], vec![4, 9], "same").unwrap();
        assert_eq!(general_moments_closed(&same), (rat(0, 1), rat(0, 1)));
        let m3 = QuotientSpec::new(vec![6], vec![2], "m").unwrap();
        assert_eq!(general_moments_closed(&m3), (rat(2, 1), rat(8, 3)));
        let s = dist_summary(&quotient_poly(&m3).unwrap()).unwrap();
        assert_eq!((s.mean, s.variance), (rat(2, 1), rat(8, 3)));
    }

    #[test]
    fn central_moments() {
        let c3 = q_catalan(3).unwrap();
        assert_eq!(central_moment(&c3, 1).unwrap(), rat(0, 1));
        assert_eq!(central_moment(&c3, 2).unwrap(), rat(4, 1));
        assert_eq!(central_moment(&c3, 3).unwrap(), rat(0, 1));
        // values {-3,-1,0,1,3}: (81+1+0+1+81)/5
        assert_eq!(central_moment(&c3, 4).unwrap(), rat(164, 5));
        assert!(central_moment(&c3, 0).is_err());
        assert!(central_moment(&c3, 9).is_err());
        // skewed input: {0,0,1} has mean 1/3
        assert_eq!(central_moment(&p(&[2, 1]), 3).unwrap(), rat(2, 27));
    }

    #[test]
    fn presets() {
        let s = preset("catalan", 3, None).unwrap();
        assert_eq!((s.a(), s.b()), (&[5, 6][..], &[2, 3][..]));
        let s = preset("mcatalan", 2, Some(3)).unwrap();
        assert_eq!((s.a(), s.b()), (&[6][..], &[2][..]));
        let s = preset("catalan2", 3, None).unwrap();
        assert_eq!((s.a(), s.b()), (&[5][..], &[1][..]));
        assert!(preset("catalan", 1, None).is_err());
        assert!(matches!(preset("nope", 3, None), Err(Error::UnknownFamily(_))));
        assert!(preset("mcatalan", 3, None).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(QuotientSpec::new(vec![1, 2], vec![1], "x").is_err());
        assert!(QuotientSpec::new(vec![0], vec![1], "x").is_err());
        let s = QuotientSpec::new(vec![5, 6], vec![2, 3], "x").unwrap();
        assert_eq!(s.power_sum_diff(1), BigInt::from(48));
        assert_eq!(s.power_sum_diff(2), BigInt::from(1824));
    }
}
