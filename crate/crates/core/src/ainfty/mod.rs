//! Tensor chains of Hom-valued forms, the differential `b`, the maps `λ_n`
//! read off block iterated integrals, and their naturality relation.

mod chain;
mod hochschild;
mod lambda;
mod transform;

use thiserror::Error;

use crate::chen::ChenError;
use crate::forms::FormError;
use crate::graded::GradedError;
use crate::locsys::LocsysError;

pub use chain::{ChainSerial, FormalChainSum, TensorChain};
pub use hochschild::{b_square_residual, hochschild_b};
pub use lambda::{
    ainfty_relation_residual, block_form, lambda_degree_check, lambda_eval, lambda_gauge_covariance_residual,
    transformation_relation_residual, BlockForm, CylinderLambda, Transformation,
};
pub use transform::{
    compose_transformations, hol_transformation, pullback_chain, Composite, HolTransformation,
    IdentityTransformation,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AinftyError {
    #[error("invalid chain: {0}")]
    BadChain(String),
    #[error("system {0} of the chain carries no flag")]
    NoFlag(usize),
    #[error("gauge relation violated at {0}")]
    GaugeViolated(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Locsys(#[from] LocsysError),
    #[error(transparent)]
    Chen(#[from] ChenError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

#[cfg(test)]
mod tests;
