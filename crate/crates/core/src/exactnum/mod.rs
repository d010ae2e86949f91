//! Exact rational numbers and multivariate polynomials.
//!
//! Every coefficient function in the crate is a [`MultiPoly`] over the chart
//! coordinates, the interval coordinate `t` and transient simplex variables.
//! Floats only appear at evaluation boundaries.

mod poly;
pub mod rational;

use thiserror::Error;

pub use poly::{MultiPoly, SerialTerm, Var};
pub use rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("variable {0} is not bound")]
    UnboundVariable(String),
    #[error("integration bound depends on the integration variable {0}")]
    BoundDependsOnVariable(String),
    #[error("duplicate variable in declared order")]
    DuplicateVariable,
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
}
