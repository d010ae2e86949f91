use serde::{Deserialize, Serialize};

use crate::exactnum::rational::to_f64;
use crate::forms::HomForm;

/// Outcome of an exact identity check: the residual is either identically
/// zero or summarized by its largest coefficient and one offending term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity: String,
    pub exact: bool,
    pub max_abs: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ResidualReport {
    pub fn from_residual(identity: impl Into<String>, residual: &HomForm) -> Self {
        Self {
            identity: identity.into(),
            exact: residual.is_zero(),
            max_abs: to_f64(&residual.max_abs_coeff()),
            witness: residual.witness(),
        }
    }

    /// Combines several residuals of the same identity.
    pub fn from_residuals<'a>(identity: impl Into<String>, residuals: impl IntoIterator<Item = &'a HomForm>) -> Self {
        let mut out = Self::zero(identity);
        for r in residuals {
            if !r.is_zero() {
                out.exact = false;
                out.max_abs = out.max_abs.max(to_f64(&r.max_abs_coeff()));
                if out.witness.is_none() {
                    out.witness = r.witness();
                }
            }
        }
        out
    }

    pub fn zero(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            exact: true,
            max_abs: 0.0,
            witness: None,
        }
    }

    pub fn failed(identity: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            exact: false,
            max_abs: f64::NAN,
            witness: Some(witness.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.exact
    }
}
