//! Finite fields `F_{p^d}`, embeddings between them, and univariate and
//! multivariate polynomials over them.

mod enumerate;
mod field;
mod mvpoly;
mod text;
mod unipoly;

pub use enumerate::{
    enumerate, enumerate_dense, enumerate_uni, enumeration_budget, enumeration_count, Constraints,
    DenseEnum, MonomialBasis, BUDGET_ENV, DEFAULT_BUDGET,
};
pub(crate) use enumerate::check_budget;
pub use field::{field_embed, Embedding, FieldCtx, FqElem};
pub use mvpoly::{Monomial, MvPoly};
pub use unipoly::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field {p}^{d} is too large for table arithmetic")]
    FieldTooLarge { p: u32, d: u32 },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands have different variable counts: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("division by zero")]
    ZeroDivisor,
    #[error("enumeration needs {required} items but the budget is {budget}")]
    Budget { required: String, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
