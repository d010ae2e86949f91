use crate::exactnum::rational::one;
use crate::exactnum::{MultiPoly, Rational, Var};
use crate::forms::{Domain, HomForm};
use crate::graded::Flag;

use super::ChenError;

/// `ι_s* i_{∂/∂t} ω` with the height given by `s`.
pub fn integrand(omega: &HomForm, s: &MultiPoly) -> Result<HomForm, ChenError> {
    Ok(omega.contract_dt().restrict_t(s)?)
}

fn chart_identity(omega: &HomForm) -> HomForm {
    HomForm::identity(omega.m(), Domain::Chart, omega.source())
}

/// `Φ_n^ω(t)` by the literal nested integral: the `n` factors are built at
/// heights `s₁..s_n`, multiplied left to right, and integrated innermost
/// first.
pub fn phi_term(omega: &HomForm, n: usize) -> Result<HomForm, ChenError> {
    if !omega.is_endomorphism() {
        return Err(ChenError::NotEndomorphism);
    }
    if n == 0 {
        return Ok(chart_identity(omega));
    }
    let factors: Vec<HomForm> = (1..=n)
        .map(|j| integrand(omega, &MultiPoly::var(Var::S(j as u8))))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&HomForm> = factors.iter().collect();
    let mut acc = HomForm::wedge_all(&refs)?;
    let zero = MultiPoly::zero();
    for j in (1..=n).rev() {
        let upper = if j == 1 { MultiPoly::var(Var::T) } else { MultiPoly::var(Var::S(j as u8 - 1)) };
        acc = acc.integrate(Var::S(j as u8), &zero, &upper)?;
    }
    Ok(acc)
}

/// How a series is certified finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Every coefficient strictly lowers a flag with `layers` layers, so every
    /// product of `layers` factors built from ω vanishes; `Φ_n = 0` for
    /// `n ≥ finite_at`, where `finite_at ≤ layers`.
    Flag { finite_at: usize, layers: usize },
    /// `Φ_{finite_at} = 0`, hence every later term vanishes too.
    Vanished { finite_at: usize },
    /// Summed up to and including order `at`; the tail was not certified.
    Truncated { at: usize },
}

#[derive(Clone, Debug, Default)]
pub struct SeriesPolicy<'a> {
    pub flag: Option<&'a Flag>,
    pub max_order: Option<usize>,
}

impl<'a> SeriesPolicy<'a> {
    pub fn flag(flag: &'a Flag) -> Self {
        Self {
            flag: Some(flag),
            max_order: None,
        }
    }

    pub fn max_order(n: usize) -> Self {
        Self {
            flag: None,
            max_order: Some(n),
        }
    }
}

/// The terms `Φ_0^ω(t), …` of a Chen series together with its termination
/// certificate.
#[derive(Clone, Debug)]
pub struct ChenSeries {
    pub omega: HomForm,
    pub terms: Vec<HomForm>,
    pub termination: Termination,
}

impl ChenSeries {
    pub fn is_exact(&self) -> bool {
        !matches!(self.termination, Termination::Truncated { .. })
    }

    pub fn require_exact(&self) -> Result<(), ChenError> {
        match self.termination {
            Termination::Truncated { at } => Err(ChenError::Truncated(at)),
            _ => Ok(()),
        }
    }

    /// Number of terms that can be nonzero.
    pub fn finite_at(&self) -> Option<usize> {
        match self.termination {
            Termination::Flag { finite_at, .. } | Termination::Vanished { finite_at } => Some(finite_at),
            Termination::Truncated { .. } => None,
        }
    }

    /// `Φ^ω(t)` with `t` symbolic.
    pub fn sum(&self) -> HomForm {
        let mut acc = self.terms[0].clone();
        for t in &self.terms[1..] {
            acc = acc.add(t);
        }
        acc
    }

    /// `Φ^ω(c)`.
    pub fn at(&self, c: &Rational) -> HomForm {
        self.sum().subst(Var::T, &MultiPoly::constant(c.clone()))
    }

    /// `Φ^ω(1)`.
    pub fn at_one(&self) -> HomForm {
        self.at(&one())
    }
}

/// Sums `Φ^ω(t)` by the Picard recursion `Φ_k(t) = ∫₀ᵗ a(s) ∧ Φ_{k−1}(s) ds`
/// with `a(s) = ι_s* i_{∂/∂t} ω`.
///
/// With a flag whose lowering check passes, the series is summed through
/// order `ν − 1` and the vanishing of order `ν` is confirmed. Otherwise terms
/// are added until one vanishes or `max_order` is reached.
pub fn phi_series(omega: &HomForm, policy: &SeriesPolicy<'_>) -> Result<ChenSeries, ChenError> {
    if !omega.is_endomorphism() {
        return Err(ChenError::NotEndomorphism);
    }
    let mut flag_len = None;
    if let Some(flag) = policy.flag {
        if flag.dim() != omega.source().dim() {
            return Err(ChenError::FlagMismatch {
                flag: flag.dim(),
                dim: omega.source().dim(),
            });
        }
        match omega.entries().find(|((r, c), _)| !flag.lowers(*r, *c)) {
            None => flag_len = Some(flag.len()),
            Some(((r, c), _)) if policy.max_order.is_none() => return Err(ChenError::NotLowering(*r, *c)),
            Some(_) => {}
        }
    }
    let s = MultiPoly::var(Var::S(1));
    let a = integrand(omega, &s)?;
    let zero = MultiPoly::zero();
    let t = MultiPoly::var(Var::T);
    let next = |prev: &HomForm| -> Result<HomForm, ChenError> {
        let shifted = prev.subst(Var::T, &s);
        Ok(a.wedge(&shifted)?.integrate(Var::S(1), &zero, &t)?)
    };

    let mut terms = vec![chart_identity(omega)];
    if let Some(nu) = flag_len {
        for _ in 1..nu {
            let term = next(terms.last().unwrap())?;
            if term.is_zero() {
                break;
            }
            terms.push(term);
        }
        if terms.len() == nu {
            assert!(
                next(terms.last().unwrap())?.is_zero(),
                "strictly lowering coefficients produced a nonzero term of order ν"
            );
        }
        let finite_at = terms.len();
        return Ok(ChenSeries {
            omega: omega.clone(),
            terms,
            termination: Termination::Flag {
                finite_at,
                layers: nu,
            },
        });
    }
    let max = policy.max_order.unwrap_or(0);
    for k in 1..=max {
        let term = next(terms.last().unwrap())?;
        if term.is_zero() {
            return Ok(ChenSeries {
                omega: omega.clone(),
                terms,
                termination: Termination::Vanished { finite_at: k },
            });
        }
        terms.push(term);
    }
    Ok(ChenSeries {
        omega: omega.clone(),
        terms,
        termination: Termination::Truncated { at: max },
    })
}

/// `dΦ/dt − ι_t* i_{∂/∂t} ω ∧ Φ` for an exact series, as a polynomial form.
pub fn derivative_residual(series: &ChenSeries) -> Result<HomForm, ChenError> {
    series.require_exact()?;
    let phi = series.sum();
    let a = series.omega.contract_dt().slice_t();
    Ok(phi.diff_var(Var::T).sub(&a.wedge(&phi)?))
}
