//! Named q-Catalan families behind a common trait, looked up at runtime.
//!
//! A family ties together the direct polynomial constructor, the exponent
//! sequences of its product form, the closed-form moments and the constants
//! for the explicit normality bound. Scans and CLI commands only see
//! `dyn Family`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::BigRational;
use crate::limitlaw::GecoParams;
use crate::moments::{catalan_moments_closed, general_moments_closed, QuotientSpec};
use crate::polyq::{q_catalan, q_catalan_general, q_catalan_second, IntPoly};

pub trait Family: Send + Sync + fmt::Debug {
    /// Registry key, e.g. `mcatalan`.
    fn name(&self) -> &'static str;

    /// Human-readable label including parameters, e.g. `mcatalan(m=3)`.
    fn label(&self) -> String {
        self.name().to_string()
    }

    /// The coefficient polynomial at size `n >= 1`.
    fn poly(&self, n: u32) -> Result<IntPoly>;

    /// Exponents of the product form at size `n >= 1`, cancelled unit pairs
    /// dropped. `quotient_poly(&spec(n))` equals `poly(n)`.
    fn spec(&self, n: u32) -> Result<QuotientSpec>;

    /// Constants for which the explicit ratio bound is claimed to hold.
    fn geco_params(&self) -> GecoParams;

    /// Closed-form `(mean, variance)`.
    fn closed_moments(&self, n: u32) -> Result<(BigRational, BigRational)> {
        Ok(general_moments_closed(&self.spec(n)?))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub m: Option<u32>,
}

fn require_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("family size n must be >= 1".into()));
    }
    Ok(())
}

/// `C_n(q) = [2n choose n] / [n+1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Catalan;

impl Family for Catalan {
    fn name(&self) -> &'static str {
        "catalan"
    }

    fn poly(&self, n: u32) -> Result<IntPoly> {
        q_catalan(n)
    }

    fn spec(&self, n: u32) -> Result<QuotientSpec> {
        require_n(n)?;
        let a = (2..=n).map(|i| n + i).collect();
        let b = (2..=n).collect();
        QuotientSpec::new(a, b, format!("catalan(n={n})"))
    }

    fn geco_params(&self) -> GecoParams {
        GecoParams::catalan()
    }

    fn closed_moments(&self, n: u32) -> Result<(BigRational, BigRational)> {
        require_n(n)?;
        Ok(catalan_moments_closed(n))
    }
}

/// `c_n(q) = [2] / [2n] * [2n choose n-1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SecondCatalan;

impl Family for SecondCatalan {
    fn name(&self) -> &'static str {
        "catalan2"
    }

    fn poly(&self, n: u32) -> Result<IntPoly> {
        q_catalan_second(n)
    }

    fn spec(&self, n: u32) -> Result<QuotientSpec> {
        require_n(n)?;
        let label = format!("catalan2(n={n})");
        match n {
            1 => QuotientSpec::new(vec![], vec![], label),
            // c_2(q) = (1 - q^2) / (1 - q); the general pattern below needs n >= 3
            2 => QuotientSpec::new(vec![2], vec![1], label),
            _ => {
                let a = (n + 2..=2 * n - 1).collect();
                let b = std::iter::once(1).chain(3..n).collect();
                QuotientSpec::new(a, b, label)
            }
        }
    }

    fn geco_params(&self) -> GecoParams {
        GecoParams::catalan()
    }
}

/// `C_{n,m}(q) = [mn choose n] / [(m-1)n + 1]`.
#[derive(Clone, Copy, Debug)]
pub struct MCatalan {
    m: u32,
}

impl MCatalan {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("mcatalan needs m >= 2, got {m}")));
        }
        Ok(MCatalan { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

impl Family for MCatalan {
    fn name(&self) -> &'static str {
        "mcatalan"
    }

    fn label(&self) -> String {
        format!("mcatalan(m={})", self.m)
    }

    fn poly(&self, n: u32) -> Result<IntPoly> {
        q_catalan_general(n, self.m)
    }

    fn spec(&self, n: u32) -> Result<QuotientSpec> {
        require_n(n)?;
        let shift = (self.m - 1) * n;
        let a = (2..=n).map(|i| shift + i).collect();
        let b = (2..=n).collect();
        QuotientSpec::new(a, b, format!("mcatalan(n={n},m={})", self.m))
    }

    fn geco_params(&self) -> GecoParams {
        GecoParams::m_catalan(self.m)
    }
}

pub type Constructor = fn(&FamilyParams) -> Result<Box<dyn Family>>;

/// Name-to-constructor table for families.
#[derive(Clone, Default)]
pub struct Registry {
    constructors: BTreeMap<&'static str, Constructor>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `catalan`, `catalan2` and `mcatalan`.
    pub fn with_builtin() -> Self {
        let mut r = Self::new();
        r.register("catalan", |_| Ok(Box::new(Catalan)));
        r.register("catalan2", |_| Ok(Box::new(SecondCatalan)));
        r.register("mcatalan", |p| {
            let m = p
                .m
                .ok_or_else(|| Error::InvalidArgument("mcatalan requires m".into()))?;
            Ok(Box::new(MCatalan::new(m)?))
        });
        r
    }

    pub fn register(&mut self, name: &'static str, ctor: Constructor) {
        self.constructors.insert(name, ctor);
    }

    pub fn create(&self, name: &str, params: &FamilyParams) -> Result<Box<dyn Family>> {
        let ctor = self
            .constructors
            .get(name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        ctor(params)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.constructors.keys().copied()
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}
