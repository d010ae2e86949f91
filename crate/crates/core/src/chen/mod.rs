//! Chen iterated integrals `Φ^ω(t)` of forms on `ℝ^m × [0,1]`.
//!
//! All results are chart forms whose coefficients depend on `t` as a
//! parameter. Factor `j` of an iterated integral is evaluated at the simplex
//! coordinate `s_j`, which is integrated out before returning.

mod gauge;
mod ode;
mod series;
mod simplex;

use thiserror::Error;

use crate::forms::FormError;

pub use gauge::{gauge_action, gauge_transport, gauge_transport_residual};
pub use ode::{ode_agreement, phi_ode, OdeAgreement};
pub use series::{
    derivative_residual, integrand, phi_series, phi_term, ChenSeries, SeriesPolicy, Termination,
};
pub use simplex::{
    dphi_expansion_residual, epsilon, lemma35_residual, phi_homogeneous_sign_form, simplex_integral,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChenError {
    #[error("expected an endomorphism-valued form")]
    NotEndomorphism,
    #[error("coefficient at entry ({0},{1}) is not strictly flag-lowering")]
    NotLowering(usize, usize),
    #[error("flag size {flag} does not match dimension {dim}")]
    FlagMismatch { flag: usize, dim: usize },
    #[error("series truncated at order {0}; exact checks need a finite series")]
    Truncated(usize),
    #[error("chain of forms is empty or not composable")]
    BadChain,
    #[error("integrator produced non-finite values at t = {0}")]
    NonFinite(f64),
    #[error("bad integrator input: {0}")]
    BadGrid(String),
    #[error(transparent)]
    Form(#[from] FormError),
}
