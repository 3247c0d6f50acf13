//! Exact arithmetic: rational polynomials and rational functions in the
//! formal field size `q`, plus exactly comparable power expressions.
//!
//! Arbitrary-precision integers and rationals come from `num-bigint` and
//! `num-rational`; everything symbolic is built on top of them here.

mod power;
mod qpoly;
mod symrat;
mod text;
mod zpoly;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use power::PowerTerm;
pub use qpoly::QPoly;
pub use symrat::SymRat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("degree of zero undefined")]
    DegreeOfZero,
    #[error("value {0} is not an integer")]
    NotIntegral(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Binomial coefficient with the convention `binom(a, b) = 0` unless
/// `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).expect("binomial coefficient overflow")
}
