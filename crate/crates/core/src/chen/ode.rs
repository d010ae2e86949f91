use crate::forms::{ExteriorValue, HomForm};

use super::series::ChenSeries;
use super::ChenError;

/// Integrates `Φ' = a(t) ∧ Φ`, `Φ(0) = id` with fixed-step classical RK4 in
/// the exterior algebra over the point `x`, where `a(t)` is `i_{∂/∂t} ω`
/// evaluated at `(x, t)`. Returns `Φ` at every time of the ascending grid.
pub fn phi_ode(omega: &HomForm, x: &[f64], grid: &[f64], step: f64) -> Result<Vec<ExteriorValue>, ChenError> {
    if !omega.is_endomorphism() {
        return Err(ChenError::NotEndomorphism);
    }
    if step <= 0.0 || !step.is_finite() {
        return Err(ChenError::BadGrid(format!("step {step} must be positive")));
    }
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(ChenError::BadGrid("grid must be ascending and non-negative".into()));
    }
    let a_form = omega.contract_dt();
    let a = |t: f64| a_form.eval_at_point(x, t);
    let mut phi = ExteriorValue::identity(omega.source_degrees());
    let mut now = 0.0;
    let mut out = Vec::with_capacity(grid.len());
    for &target in grid {
        let span = target - now;
        let steps = (span / step).ceil().max(0.0) as usize;
        if steps > 0 {
            let h = span / steps as f64;
            for _ in 0..steps {
                let k1 = a(now)?.wedge(&phi);
                let a_mid = a(now + h / 2.0)?;
                let k2 = a_mid.wedge(&phi.add(&k1.scale(h / 2.0)));
                let k3 = a_mid.wedge(&phi.add(&k2.scale(h / 2.0)));
                let k4 = a(now + h)?.wedge(&phi.add(&k3.scale(h)));
                let incr = k1.add(&k2.scale(2.0)).add(&k3.scale(2.0)).add(&k4);
                phi = phi.add(&incr.scale(h / 6.0));
                now += h;
                if !phi.is_finite() {
                    return Err(ChenError::NonFinite(now));
                }
            }
        }
        now = target;
        out.push(phi.clone());
    }
    Ok(out)
}

/// Largest relative deviation between the integrator and an exact series,
/// measured as `max|Φ_ode − Φ_exact| / max(1, max|Φ_exact|)` per sample.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeAgreement {
    pub max_rel_error: f64,
    pub samples: usize,
}

pub fn ode_agreement(series: &ChenSeries, points: &[Vec<f64>], grid: &[f64], step: f64) -> Result<OdeAgreement, ChenError> {
    let phi = series.sum();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for x in points {
        let traj = phi_ode(&series.omega, x, grid, step)?;
        for (t, numeric) in grid.iter().zip(&traj) {
            let exact = phi.eval_at_point(x, *t)?;
            let err = numeric.sub(&exact).max_abs() / exact.max_abs().max(1.0);
            worst = worst.max(err);
            samples += 1;
        }
    }
    Ok(OdeAgreement {
        max_rel_error: worst,
        samples,
    })
}

