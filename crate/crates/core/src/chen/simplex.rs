use crate::exactnum::rational::{sign, zero};
use crate::exactnum::{MultiPoly, Var};
use crate::forms::{Domain, HomForm};
use crate::graded::{Flag, GradedSpace};
use crate::report::ResidualReport;

use super::series::{integrand, phi_series, SeriesPolicy, Termination};
use super::ChenError;

/// `ε(n) = n(n−1)/2`.
pub fn epsilon(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Total degree of a homogeneous form; the zero form counts as degree 0.
fn degree(f: &HomForm) -> Result<i64, ChenError> {
    Ok(f.homogeneous_degree()?.unwrap_or(0) as i64)
}

fn check_chain(chain: &[HomForm]) -> Result<(), ChenError> {
    if chain.is_empty() {
        return Err(ChenError::BadChain);
    }
    for w in chain.windows(2) {
        if w[0].source() != w[1].target() || w[0].m() != w[1].m() {
            return Err(ChenError::BadChain);
        }
    }
    Ok(())
}

/// `∫_{Δ_n(t)} π₁*ω₁ ∧ ⋯ ∧ π_n*ω_n`, evaluated outermost variable first via
/// `(−1)^{(n−1)|ω₁|} ∫₀ᵗ ι_s* i_{∂/∂s} ω₁ ∧ (∫_{Δ_{n−1}(s)} ⋯) ds`.
pub fn simplex_integral(chain: &[HomForm]) -> Result<HomForm, ChenError> {
    check_chain(chain)?;
    simplex_or_identity(chain, chain[0].m(), chain[0].target())
}

/// As [`simplex_integral`], returning the identity on `space` for an empty
/// chain.
fn simplex_or_identity(chain: &[HomForm], m: usize, space: &GradedSpace) -> Result<HomForm, ChenError> {
    let Some((first, rest)) = chain.split_first() else {
        return Ok(HomForm::identity(m, Domain::Chart, space));
    };
    let inner = simplex_or_identity(rest, m, first.source())?;
    let n = chain.len() as i64;
    let s = MultiPoly::var(Var::S(1));
    let a = integrand(first, &s)?;
    let prod = a.wedge(&inner.subst(Var::T, &s))?;
    let integral = prod.integrate(Var::S(1), &MultiPoly::zero(), &MultiPoly::var(Var::T))?;
    Ok(integral.scale(&sign((n - 1) * degree(first)?)))
}

/// `(−1)^{ε(n)|ω|} ∫_{Δ_n(t)} π₁*ω ∧ ⋯ ∧ π_n*ω`, which must agree with
/// `phi_term(ω, n)`.
pub fn phi_homogeneous_sign_form(omega: &HomForm, n: usize) -> Result<HomForm, ChenError> {
    let d = degree(omega)?;
    if !omega.is_endomorphism() {
        return Err(ChenError::NotEndomorphism);
    }
    if n == 0 {
        return Ok(HomForm::identity(omega.m(), Domain::Chart, omega.source()));
    }
    let chain = vec![omega.clone(); n];
    Ok(simplex_integral(&chain)?.scale(&sign(epsilon(n) * d)))
}

/// Right-hand side of the derivative formula for simplex integrals: the
/// `dω_i` insertions, the merged neighbours, and the two boundary terms.
fn simplex_derivative_rhs(chain: &[HomForm]) -> Result<HomForm, ChenError> {
    check_chain(chain)?;
    let n = chain.len();
    let m = chain[0].m();
    let degs: Vec<i64> = chain.iter().map(degree).collect::<Result<_, _>>()?;
    let mut acc = HomForm::zero(m, Domain::Chart, chain[n - 1].source(), chain[0].target());

    let mut prefix = 0i64;
    for i in 0..n {
        let mut c = chain.to_vec();
        c[i] = chain[i].exterior_d();
        let term = simplex_integral(&c)?;
        acc = acc.add(&term.scale(&sign(n as i64 + prefix)));
        prefix += degs[i];
    }

    for i in 1..n {
        let mut c: Vec<HomForm> = chain[..i - 1].to_vec();
        c.push(chain[i - 1].wedge(&chain[i])?);
        c.extend_from_slice(&chain[i + 1..]);
        acc = acc.add(&simplex_integral(&c)?.scale(&sign(i as i64)));
    }

    let head = simplex_or_identity(&chain[..n - 1], m, chain[n - 1].target())?;
    let tail = chain[n - 1].restrict_at(&zero());
    acc = acc.add(&head.wedge(&tail)?.scale(&sign(n as i64)));

    let top = chain[0].slice_t();
    let rest = simplex_or_identity(&chain[1..], m, chain[0].source())?;
    acc = acc.add(&top.wedge(&rest)?.scale(&sign((n as i64 - 1) * degs[0])));
    Ok(acc)
}

/// `d ∫_{Δ_n(t)} π₁*ω₁ ∧ ⋯ ∧ π_n*ω_n` minus its four-group expansion.
pub fn lemma35_residual(chain: &[HomForm]) -> Result<ResidualReport, ChenError> {
    let lhs = simplex_integral(chain)?.exterior_d();
    let rhs = simplex_derivative_rhs(chain)?;
    Ok(ResidualReport::from_residual("simplex-integral derivative", &lhs.sub(&rhs)))
}

/// `dΦ^ω(t)` minus the expansion obtained by summing the simplex derivative
/// formula over all orders with signs `(−1)^{ε(n)|ω|}`. Orders at or above the
/// flag length vanish term by term, so the sum is finite.
pub fn dphi_expansion_residual(omega: &HomForm, flag: &Flag) -> Result<ResidualReport, ChenError> {
    let series = phi_series(omega, &SeriesPolicy::flag(flag))?;
    let Termination::Flag { layers, .. } = series.termination else {
        return Err(ChenError::Truncated(0));
    };
    let d = degree(omega)?;
    let lhs = series.sum().exterior_d();
    let mut rhs = HomForm::zero(omega.m(), Domain::Chart, omega.source(), omega.source());
    for n in 1..layers {
        let chain = vec![omega.clone(); n];
        rhs = rhs.add(&simplex_derivative_rhs(&chain)?.scale(&sign(epsilon(n) * d)));
    }
    Ok(ResidualReport::from_residual("iterated-integral derivative expansion", &lhs.sub(&rhs)))
}
