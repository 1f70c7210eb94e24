//! Exact coefficient polynomials of q-Catalan numbers and quotients of
//! q-number products, with exact moments, finite-`n` checks of their normal
//! limit, and unimodality / log-concavity scans.

pub mod error;
pub mod exactnum;
pub mod family;
pub mod limitlaw;
pub mod moments;
pub mod polyq;
pub mod shape;

pub use error::{Error, Result};
pub use exactnum::{BernoulliTable, BigRational};
pub use family::{Family, FamilyParams, Registry};
pub use limitlaw::{GecoParams, TailReport};
pub use moments::{DistSummary, QuotientSpec};
pub use polyq::IntPoly;
pub use shape::ShapeReport;
