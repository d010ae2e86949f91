use crate::chen::{gauge_action, phi_series, SeriesPolicy};
use crate::exactnum::rational::{one, zero};
use crate::forms::{Domain, HomForm};
use crate::graded::{DirectSum, Flag};
use crate::locsys::Superconnection;
use crate::report::ResidualReport;

use super::chain::TensorChain;
use super::hochschild::hochschild_b;
use super::AinftyError;

/// `λ_n(ξ_{n−1} ⊗ … ⊗ ξ₀)`: the `(n, 0)` block of `Φ^ω(1)` for
/// `ω = Σ α_i + Σ ξ_i` on `V₀ ⊕ … ⊕ V_n`. For `n = 0` this is the holonomy
/// of `S₀`.
///
/// The series is certified by the flag that puts `V_n`'s layers lowest,
/// then `V_{n−1}`'s, down to `V₀`'s.
pub fn lambda_eval(chain: &TensorChain) -> Result<HomForm, AinftyError> {
    let block = block_form(chain)?;
    let series = phi_series(&block.omega, &SeriesPolicy::flag(&block.flag))?;
    series.require_exact()?;
    Ok(series.at_one().block_extract(&block.sum, chain.n(), 0)?)
}

/// `ω = Σ α_i + Σ ξ_i` on `V₀ ⊕ … ⊕ V_n` with its certifying flag.
#[derive(Clone, Debug)]
pub struct BlockForm {
    pub omega: HomForm,
    pub flag: Flag,
    pub sum: DirectSum,
}

pub fn block_form(chain: &TensorChain) -> Result<BlockForm, AinftyError> {
    if chain.domain() != Domain::Cylinder {
        return Err(AinftyError::BadChain("λ needs forms on the cylinder".into()));
    }
    let n = chain.n();
    let spaces: Vec<_> = chain.systems().iter().map(|s| s.space().clone()).collect();
    let sum = DirectSum::new(&spaces)?;
    let flags = chain
        .systems()
        .iter()
        .enumerate()
        .map(|(i, s)| s.flag().cloned().ok_or(AinftyError::NoFlag(i)))
        .collect::<Result<Vec<Flag>, _>>()?;
    let order: Vec<usize> = (0..=n).rev().collect();
    let flag = sum.stacked_flag(&flags, &order)?;
    let mut omega = HomForm::zero(chain.m(), Domain::Cylinder, sum.total(), sum.total());
    for (i, s) in chain.systems().iter().enumerate() {
        omega = omega.add(&s.alpha().embed(&sum, i, i)?);
    }
    for (i, x) in chain.xis().iter().enumerate() {
        omega = omega.add(&x.embed(&sum, i + 1, i)?);
    }
    Ok(BlockForm { omega, flag, sum })
}

/// Every homogeneous piece of `λ_n(ξ)` has total degree `Σ|ξ_i| − n`.
pub fn lambda_degree_check(chain: &TensorChain) -> Result<ResidualReport, AinftyError> {
    let value = lambda_eval(chain)?;
    let expected = chain.degree_sum(0..chain.n()) - chain.n() as i32;
    let found = value.total_degrees();
    let name = "degree of λ_n";
    Ok(if found.iter().all(|&k| k == expected) {
        ResidualReport::zero(name)
    } else {
        ResidualReport::failed(name, format!("expected {expected}, found {found:?}"))
    })
}

/// A family of maps `T_n` on chains over some base, with source and target
/// functors acting on single forms. `λ` on the cylinder is the case
/// `F = ι₀*`, `G = ι₁*`.
pub trait Transformation {
    fn eval(&self, chain: &TensorChain) -> Result<HomForm, AinftyError>;
    fn source(&self, form: &HomForm) -> Result<HomForm, AinftyError>;
    fn target(&self, form: &HomForm) -> Result<HomForm, AinftyError>;
}

/// `λ` itself, on chains over the cylinder.
#[derive(Clone, Copy, Debug, Default)]
pub struct CylinderLambda;

impl Transformation for CylinderLambda {
    fn eval(&self, chain: &TensorChain) -> Result<HomForm, AinftyError> {
        lambda_eval(chain)
    }

    fn source(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.restrict_at(&zero()))
    }

    fn target(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.restrict_at(&one()))
    }
}

fn sign(k: i32) -> bool {
    k.rem_euclid(2) == 1
}

fn signed(f: HomForm, negative: bool) -> HomForm {
    if negative {
        f.neg()
    } else {
        f
    }
}

/// `dT_n(ξ)` minus
///
/// ```text
/// G(α_n)∧T_n(ξ) − (−1)^{Σ|ξ_j| − n} T_n(ξ)∧F(α₀)
///   + G(ξ_{n−1})∧T_{n−1}(ξ_{n−2..0})
///   − (−1)^{Σ_{j≥1}|ξ_j| − n + 1} T_{n−1}(ξ_{n−1..1})∧F(ξ₀)
///   − T(b(ξ)).
/// ```
pub fn transformation_relation_residual<T: Transformation + ?Sized>(
    t: &T,
    chain: &TensorChain,
) -> Result<ResidualReport, AinftyError> {
    let n = chain.n();
    if n == 0 {
        return Err(AinftyError::BadChain("the relation needs n ≥ 1".into()));
    }
    let value = t.eval(chain)?;
    let lhs = value.exterior_d();
    let total = chain.degree_sum(0..n) - n as i32;
    let a_n = t.target(chain.systems()[n].alpha())?;
    let a_0 = t.source(chain.systems()[0].alpha())?;
    let mut rhs = a_n.wedge(&value)?;
    rhs = rhs.try_add(&signed(value.wedge(&a_0)?, !sign(total)))?;
    let top = t.target(&chain.xis()[n - 1])?;
    rhs = rhs.try_add(&top.wedge(&t.eval(&chain.slice(0, n - 1))?)?)?;
    let bottom = t.source(&chain.xis()[0])?;
    let upper = chain.degree_sum(1..n) - n as i32 + 1;
    rhs = rhs.try_add(&signed(t.eval(&chain.slice(1, n))?.wedge(&bottom)?, !sign(upper)))?;
    for (s, c) in hochschild_b(chain)?.terms {
        rhs = rhs.try_add(&signed(t.eval(&c)?, s > 0))?;
    }
    Ok(ResidualReport::from_residual("A-infinity naturality relation", &lhs.try_add(&rhs.neg())?))
}

/// The naturality relation for `λ` on a chain over the cylinder.
pub fn ainfty_relation_residual(chain: &TensorChain) -> Result<ResidualReport, AinftyError> {
    transformation_relation_residual(&CylinderLambda, chain)
}

/// `λ^α(ξ) − (ι₁*g_n)⁻¹ λ^β(ζ) ι₀*g₀` where `ξ_i = g_{i+1}⁻¹ ζ_i g_i` and the
/// systems are related by `α_i = g_i⁻¹ β_i g_i − g_i⁻¹ dg_i` (checked first).
pub fn lambda_gauge_covariance_residual(
    alpha_systems: &[Superconnection],
    beta_chain: &TensorChain,
    gauges: &[HomForm],
) -> Result<ResidualReport, AinftyError> {
    let n = beta_chain.n();
    if alpha_systems.len() != n + 1 || gauges.len() != n + 1 {
        return Err(AinftyError::BadChain("one system and one gauge per object".into()));
    }
    for (i, ((a, b), g)) in alpha_systems.iter().zip(beta_chain.systems()).zip(gauges).enumerate() {
        let gap = gauge_action(b.alpha(), g)?.try_add(&a.alpha().neg())?;
        if let Some(w) = gap.witness() {
            return Err(AinftyError::GaugeViolated(format!("object {i}: {w}")));
        }
    }
    let inverses = gauges.iter().map(|g| g.invert()).collect::<Result<Vec<_>, _>>()?;
    let xis = beta_chain
        .xis()
        .iter()
        .enumerate()
        .map(|(i, z)| Ok(inverses[i + 1].wedge(z)?.wedge(&gauges[i])?))
        .collect::<Result<Vec<_>, AinftyError>>()?;
    let alpha_chain = TensorChain::with_degrees(alpha_systems.to_vec(), xis, beta_chain.degrees().to_vec())?;
    let lhs = lambda_eval(&alpha_chain)?;
    let g_n = gauges[n].restrict_at(&one()).invert()?;
    let g_0 = gauges[0].restrict_at(&zero());
    let rhs = g_n.wedge(&lambda_eval(beta_chain)?)?.wedge(&g_0)?;
    Ok(ResidualReport::from_residual("gauge covariance of λ", &lhs.try_add(&rhs.neg())?))
}
