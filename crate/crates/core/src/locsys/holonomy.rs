use crate::chen::{gauge_action, phi_series, ChenSeries, SeriesPolicy};
use crate::exactnum::rational::{one, zero};
use crate::exactnum::Rational;
use crate::forms::{Domain, HomForm, PolyMap};
use crate::report::ResidualReport;

use super::{is_morphism, require_flat, LocsysError, Superconnection};

/// `Φ^α(1)` together with its explicit inverse and the two exact checks.
#[derive(Clone, Debug)]
pub struct Holonomy {
    pub phi: HomForm,
    pub phi_inv: HomForm,
    pub order: usize,
    /// `dΦ − ι₁*α∧Φ + Φ∧ι₀*α`.
    pub morphism: ResidualReport,
    /// `Φ∧Φ⁻¹ − id` and `Φ⁻¹∧Φ − id`.
    pub inverse: ResidualReport,
}

impl Holonomy {
    pub fn verified(&self) -> bool {
        self.morphism.exact && self.inverse.exact
    }
}

fn two_sided(phi: &HomForm, inv: &HomForm) -> Result<ResidualReport, LocsysError> {
    let id = HomForm::identity(phi.m(), phi.domain(), phi.source());
    let a = phi.wedge(inv)?.sub(&id);
    let b = inv.wedge(phi)?.sub(&id);
    Ok(ResidualReport::from_residuals("two-sided inverse", [&a, &b]))
}

fn series_for(s: &Superconnection, max_order: Option<usize>) -> Result<ChenSeries, LocsysError> {
    if s.flag().is_none() && max_order.is_none() {
        return Err(LocsysError::NoFlag);
    }
    let policy = SeriesPolicy {
        flag: s.flag(),
        max_order,
    };
    let series = phi_series(s.alpha(), &policy)?;
    series.require_exact()?;
    Ok(series)
}

/// Holonomy of a flat flag-certified system on the cylinder, as a morphism
/// `ι₀*S → ι₁*S`.
pub fn holonomy_iso(s: &Superconnection) -> Result<Holonomy, LocsysError> {
    holonomy_iso_with(s, None)
}

/// As [`holonomy_iso`]; without a flag, `max_order` bounds the search for a
/// vanishing term.
pub fn holonomy_iso_with(s: &Superconnection, max_order: Option<usize>) -> Result<Holonomy, LocsysError> {
    if s.domain() != Domain::Cylinder {
        return Err(LocsysError::Mismatch);
    }
    require_flat(s)?;
    let series = series_for(s, max_order)?;
    let phi = series.at_one();
    let s0 = s.restrict_at(&zero());
    let s1 = s.restrict_at(&one());
    let morphism = is_morphism(&phi, &s0, &s1)?;
    let phi_inv = phi.invert()?;
    let inverse = two_sided(&phi, &phi_inv)?;
    Ok(Holonomy {
        phi,
        phi_inv,
        order: series.terms.len(),
        morphism,
        inverse,
    })
}

/// Checks `Φ^α(1) = (ι₁*g)⁻¹ Φ^β(1) ι₀*g` for `α = g⁻¹βg − g⁻¹dg`, with
/// `α` on `V` and `β` on `W`. The gauge relation itself is verified first.
pub fn gauge_compat_check(s_v: &Superconnection, s_w: &Superconnection, g: &HomForm) -> Result<ResidualReport, LocsysError> {
    if g.source() != s_v.space() || g.target() != s_w.space() {
        return Err(LocsysError::Mismatch);
    }
    let transported = gauge_action(s_w.alpha(), g)?;
    let gap = transported.try_add(&s_v.alpha().neg())?;
    if let Some(w) = gap.witness() {
        return Err(LocsysError::GaugeViolated(w));
    }
    let phi_a = series_for(s_v, None)?.at_one();
    let phi_b = series_for(s_w, None)?.at_one();
    let g1_inv = g.restrict_at(&one()).invert()?;
    let g0 = g.restrict_at(&zero());
    let rhs = g1_inv.wedge(&phi_b)?.wedge(&g0)?;
    Ok(ResidualReport::from_residual("holonomy gauge compatibility", &phi_a.sub(&rhs)))
}

/// The trivialization of a flat chart system near `x₀` by the straight-line
/// contraction.
#[derive(Clone, Debug)]
pub struct Trivialization {
    /// `Ψ = Φ^{h*α}(1)`, a morphism from `constant` to the input system.
    pub psi: HomForm,
    pub psi_inv: HomForm,
    /// `(V, d − α₀(x₀))`.
    pub constant: Superconnection,
    pub morphism: ResidualReport,
    pub inverse: ResidualReport,
    /// `α₀(x₀) ∧ α₀(x₀)`.
    pub square: ResidualReport,
}

impl Trivialization {
    pub fn verified(&self) -> bool {
        self.morphism.exact && self.inverse.exact && self.square.exact
    }
}

pub fn poincare_trivialization(s: &Superconnection, x0: &[Rational]) -> Result<Trivialization, LocsysError> {
    if s.domain() != Domain::Chart || x0.len() != s.m() {
        return Err(LocsysError::Mismatch);
    }
    require_flat(s)?;
    let h = PolyMap::linear_contraction(x0);
    let lifted = Superconnection::new(s.space().clone(), s.alpha().pullback(&h)?, s.flag().cloned())?;
    let psi = series_for(&lifted, None)?.at_one();
    let a0 = s.alpha().pullback(&PolyMap::constant(s.m(), x0))?;
    let constant = Superconnection::new(s.space().clone(), a0, s.flag().cloned())?;
    let square = ResidualReport::from_residual("constant part squares to zero", &constant.alpha().wedge(constant.alpha())?);
    let morphism = is_morphism(&psi, &constant, s)?;
    let psi_inv = psi.invert()?;
    let inverse = two_sided(&psi, &psi_inv)?;
    Ok(Trivialization {
        psi,
        psi_inv,
        constant,
        morphism,
        inverse,
        square,
    })
}
