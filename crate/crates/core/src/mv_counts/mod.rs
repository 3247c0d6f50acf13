//! Counting multivariate polynomials over finite fields: exact counts as
//! polynomials in `q`, main terms and explicit error bounds.

mod approx;
mod curves;
mod exact;

pub use approx::{
    alpha_mv, approx, beta_mv, count_exact, delta, epsilon, eta, exact_symbolic, kappa, mv_decomp_m, rho,
    within_relative, Class, CountQuery, CountReport, FieldSpec, Quantity, ScaledPower,
};
pub use curves::{curve_bounds, curve_genus_bound, CurveBounds, ExceptionalBracket};
pub use exact::{
    absirr_exact, irr_exact, irr_series, p_count, p_series, powerfree_exact, powerful_exact, powerful_series,
    red_exact, relirr_exact, IrrRoute, PowerfulRoute,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("invalid query: {0}")]
    Invalid(String),
    #[error("{0}")]
    NoExactFormula(String),
}
