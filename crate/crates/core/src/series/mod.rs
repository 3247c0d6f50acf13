//! Truncated power series in `z` over [`SymRat`](crate::exact_arith::SymRat)
//! and the number theory used by the counting formulas.

mod numtheory;
mod trunc;

pub use numtheory::{
    compositions, divisors, is_prime, moebius, multiplicity, prime_divisors, prime_power,
    smallest_prime_divisor, Composition, Compositions,
};
pub use trunc::TruncSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("divisor series has zero constant term")]
    NotInvertible,
    #[error("logarithm needs constant term 1")]
    ConstantTermNotOne,
    #[error("exponential needs constant term 0")]
    ConstantTermNotZero,
}
