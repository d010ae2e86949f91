use crate::exactnum::rational::zero;
use crate::forms::HomForm;
use crate::report::ResidualReport;

use super::series::{phi_series, ChenSeries, SeriesPolicy};
use super::ChenError;

/// `g⁻¹ η g − g⁻¹ dg` for an invertible 0-form `g: V → W` and `η` on `W`.
pub fn gauge_action(eta: &HomForm, g: &HomForm) -> Result<HomForm, ChenError> {
    let g_inv = g.invert()?;
    let conj = g_inv.wedge(eta)?.wedge(g)?;
    Ok(conj.sub(&g_inv.wedge(&g.exterior_d())?))
}

/// `(ι_t* g)⁻¹ Φ^η(t) ι₀* g`.
pub fn gauge_transport(eta_series: &ChenSeries, g: &HomForm) -> Result<HomForm, ChenError> {
    let g_t_inv = g.slice_t().invert()?;
    let g_0 = g.restrict_at(&zero());
    Ok(g_t_inv.wedge(&eta_series.sum())?.wedge(&g_0)?)
}

/// Compares `Φ^ω(t)` for `ω = g⁻¹ηg − g⁻¹dg`, computed directly, with the
/// transported series of `η`.
pub fn gauge_transport_residual(
    eta: &HomForm,
    g: &HomForm,
    eta_policy: &SeriesPolicy<'_>,
    omega_policy: &SeriesPolicy<'_>,
) -> Result<ResidualReport, ChenError> {
    let eta_series = phi_series(eta, eta_policy)?;
    eta_series.require_exact()?;
    let omega = gauge_action(eta, g)?;
    let omega_series = phi_series(&omega, omega_policy)?;
    omega_series.require_exact()?;
    let rhs = gauge_transport(&eta_series, g)?;
    Ok(ResidualReport::from_residual("gauge transport", &omega_series.sum().sub(&rhs)))
}
