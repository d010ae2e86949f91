//! Chart-trivialized ∞-local systems `D = d − α`.

mod generate;
mod holonomy;
mod system;

use thiserror::Error;

use crate::chen::ChenError;
use crate::forms::{FormError, HomForm};
use crate::graded::GradedError;
use crate::report::ResidualReport;

pub use generate::{generate_flat, generate_flat_with, FlatDraw, FlatParams};
pub use holonomy::{
    gauge_compat_check, holonomy_iso, holonomy_iso_with, poincare_trivialization, Holonomy, Trivialization,
};
pub use system::{Superconnection, SuperconnectionSerial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocsysError {
    #[error("connection form must be an endomorphism of the system's space")]
    NotEndomorphism,
    #[error("connection form must have total degree 1, found {0:?}")]
    Degree(Vec<i32>),
    #[error("flag size {flag} does not match dimension {dim}")]
    FlagMismatch { flag: usize, dim: usize },
    #[error("system is not flat: {0}")]
    NonFlat(String),
    #[error("system carries no flag certificate")]
    NoFlag,
    #[error("gauge relation violated: {0}")]
    GaugeViolated(String),
    #[error("pullback does not commute with the curvature: {0}")]
    Functoriality(String),
    #[error("systems live over different charts or spaces")]
    Mismatch,
    #[error("no admissible draw for seed {seed} after {attempts} attempts")]
    DrawFailed { seed: u64, attempts: usize },
    #[error(transparent)]
    Chen(#[from] ChenError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// `dα − α∧α`.
pub fn mc_residual(s: &Superconnection) -> HomForm {
    let a = s.alpha();
    a.exterior_d().sub(&a.wedge(a).expect("endomorphism forms compose"))
}

/// The partial-degree pieces of [`mc_residual`], indexed by form degree.
pub fn mc_component_residuals(s: &Superconnection) -> Vec<HomForm> {
    let r = mc_residual(s);
    (0..=s.max_form_degree()).map(|p| r.partial_degree_component(p)).collect()
}

/// `∂ω = dω − α'∧ω + (−1)^k ω∧α`, applied to each total-degree-`k` piece of
/// `ω: V → V'`.
pub fn hom_differential(omega: &HomForm, s: &Superconnection, s2: &Superconnection) -> Result<HomForm, LocsysError> {
    if omega.source() != s.space() || omega.target() != s2.space() {
        return Err(LocsysError::Mismatch);
    }
    let mut out = omega.exterior_d();
    for k in omega.total_degrees() {
        let w = omega.total_degree_component(k);
        out = out.try_add(&s2.alpha().wedge(&w)?.neg())?;
        let right = w.wedge(s.alpha())?;
        out = out.try_add(&if k.rem_euclid(2) == 0 { right } else { right.neg() })?;
    }
    Ok(out)
}

/// Residual `dΦ − α'∧Φ + Φ∧α` of a degree-0 form `Φ: V → V'`.
pub fn is_morphism(phi: &HomForm, s: &Superconnection, s2: &Superconnection) -> Result<ResidualReport, LocsysError> {
    if let Some(k) = phi.homogeneous_degree()? {
        if k != 0 {
            return Err(LocsysError::Degree(vec![k]));
        }
    }
    let residual = hom_differential(phi, s, s2)?;
    Ok(ResidualReport::from_residual("morphism of local systems", &residual))
}

/// Pulls `S` back along `f`. The curvature of the result is checked against
/// the pullback of the curvature.
pub fn pullback_superconnection(s: &Superconnection, f: &crate::forms::PolyMap) -> Result<Superconnection, LocsysError> {
    let alpha = s.alpha().pullback(f)?;
    let out = Superconnection::new(s.space().clone(), alpha, s.flag().cloned())?;
    let lhs = mc_residual(&out);
    let rhs = mc_residual(s).pullback(f)?;
    let diff = lhs.sub(&rhs);
    if !diff.is_zero() {
        return Err(LocsysError::Functoriality(diff.witness().unwrap_or_default()));
    }
    Ok(out)
}

/// Fails with the offending term unless `S` is exactly flat.
pub fn require_flat(s: &Superconnection) -> Result<(), LocsysError> {
    let r = mc_residual(s);
    match r.witness() {
        None => Ok(()),
        Some(w) => Err(LocsysError::NonFlat(w)),
    }
}

#[cfg(test)]
mod tests;
