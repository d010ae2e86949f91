use std::fmt::Display;
use std::str::FromStr;
use std::time::Instant;

use hol_core::ainfty::{
    ainfty_relation_residual, b_square_residual, block_form, compose_transformations, lambda_degree_check, lambda_eval,
    lambda_gauge_covariance_residual, transformation_relation_residual, Composite, HolTransformation,
    IdentityTransformation, TensorChain, Transformation,
};
use hol_core::chen::{
    derivative_residual, dphi_expansion_residual, gauge_action, gauge_transport_residual, lemma35_residual,
    ode_agreement, phi_homogeneous_sign_form, phi_series, phi_term, ChenSeries, SeriesPolicy,
};
use hol_core::forms::{associativity_defect, d_squared, leibniz_defect, HomForm};
use hol_core::locsys::{
    gauge_compat_check, holonomy_iso, holonomy_iso_with, mc_component_residuals, mc_residual, poincare_trivialization,
    Superconnection,
};
use hol_core::report::ResidualReport;

use crate::report::{CheckKind, CheckReport, SuiteReport};
use crate::scenario::Scenario;
use crate::CliError;

pub const SUITES: [&str; 16] = [
    "forms", "chen", "mc", "lemma35", "prop34", "prop36", "prop32ode", "prop33", "lemma41", "lemma42", "binfty", "lambda",
    "appendixA", "poincare", "compose", "all",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Exact rational checks only.
    #[default]
    Exact,
    /// Exact checks plus the floating-point integrator comparisons.
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub mode: Mode,
    /// Relative tolerance of float checks; exact checks ignore it.
    pub tolerance: f64,
    /// RK4 step.
    pub step: f64,
    /// Order bound for series that carry no flag.
    pub max_order: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            mode: Mode::Exact,
            tolerance: 1e-6,
            step: 1e-3,
            max_order: None,
        }
    }
}

struct Checks<'a> {
    options: &'a Options,
    out: Vec<CheckReport>,
}

fn blank(name: String, identity: &str, kind: CheckKind) -> CheckReport {
    CheckReport {
        name,
        identity: identity.into(),
        kind,
        passed: false,
        residual: None,
        tolerance: None,
        witness: None,
        value: None,
        error: None,
        elapsed: Default::default(),
    }
}

impl Checks<'_> {
    fn exact<E: Display>(&mut self, name: String, identity: &str, f: impl FnOnce() -> Result<ResidualReport, E>) {
        self.exact_valued(name, identity, || f().map(|r| (r, None)));
    }

    fn exact_valued<E: Display>(
        &mut self,
        name: String,
        identity: &str,
        f: impl FnOnce() -> Result<(ResidualReport, Option<String>), E>,
    ) {
        let start = Instant::now();
        let result = f();
        let mut c = blank(name, identity, CheckKind::Exact);
        c.elapsed = start.elapsed();
        match result {
            Ok((r, value)) => {
                c.passed = r.exact;
                c.residual = Some(r.max_abs).filter(|x| x.is_finite());
                c.witness = r.witness;
                c.value = value;
            }
            Err(e) => c.error = Some(e.to_string()),
        }
        self.out.push(c);
    }

    fn residual<E: Display>(&mut self, name: String, identity: &str, f: impl FnOnce() -> Result<HomForm, E>) {
        self.exact(name, identity, || f().map(|r| ResidualReport::from_residual(identity, &r)));
    }

    fn float<E: Display>(&mut self, name: String, identity: &str, f: impl FnOnce() -> Result<f64, E>) {
        let start = Instant::now();
        let result = f();
        let tol = self.options.tolerance;
        let mut c = blank(name, identity, CheckKind::Float);
        c.elapsed = start.elapsed();
        c.tolerance = Some(tol);
        match result {
            Ok(err) => {
                c.passed = err <= tol;
                c.residual = Some(err);
            }
            Err(e) => c.error = Some(e.to_string()),
        }
        self.out.push(c);
    }

    fn policy<'s>(&self, s: &'s Superconnection) -> SeriesPolicy<'s> {
        SeriesPolicy {
            flag: s.flag(),
            max_order: self.options.max_order,
        }
    }

    fn series(&self, s: &Superconnection) -> Result<ChenSeries, String> {
        let series = phi_series(s.alpha(), &self.policy(s)).map_err(|e| e.to_string())?;
        series.require_exact().map_err(|e| format!("refused: {e}"))?;
        Ok(series)
    }
}

fn describe(f: &HomForm) -> String {
    format!("{f:?}")
}

pub fn run_suite(suite: &str, scenario: &Scenario, options: &Options) -> Result<SuiteReport, CliError> {
    scenario.validate()?;
    let mut checks = Checks {
        options,
        out: Vec::new(),
    };
    match suite {
        "all" => {
            for s in &SUITES[..SUITES.len() - 1] {
                dispatch(s, scenario, &mut checks)?;
            }
        }
        s if SUITES.contains(&s) => dispatch(s, scenario, &mut checks)?,
        other => return Err(CliError::UnknownSuite(other.into())),
    }
    Ok(SuiteReport::new(suite, &scenario.name, options.mode.as_str(), checks.out))
}

fn dispatch(suite: &str, sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    match suite {
        "forms" => forms(sc, ck),
        "chen" => chen(sc, ck),
        "mc" => mc(sc, ck),
        "lemma35" => lemma35(sc, ck),
        "prop34" => prop34(sc, ck),
        "prop36" => prop36(sc, ck),
        "prop32ode" => prop32ode(sc, ck),
        "prop33" => prop33(sc, ck),
        "lemma41" => lemma41(sc, ck),
        "lemma42" => lemma42(sc, ck),
        "binfty" => binfty(sc, ck),
        "lambda" => lambda(sc, ck),
        "appendixA" => appendix_a(sc, ck),
        "poincare" => poincare(sc, ck),
        "compose" => compose(sc, ck),
        other => Err(CliError::UnknownSuite(other.into())),
    }
}

fn forms(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let mut labelled: Vec<(String, &HomForm)> = Vec::new();
    for (i, s) in sc.systems.iter().enumerate() {
        labelled.push((format!("system {i}"), s.alpha()));
    }
    for (c, ch) in sc.chains.iter().enumerate() {
        for (k, x) in ch.chain.xis().iter().enumerate() {
            labelled.push((format!("chain {c} xi {k}"), x));
        }
    }
    for (j, g) in sc.gauges.iter().enumerate() {
        labelled.push((format!("gauge {j}"), &g.g));
    }
    for (label, f) in &labelled {
        ck.residual(format!("forms/d-squared[{label}]"), "d∘d = 0", || Ok::<_, String>(d_squared(f)));
    }
    for (i, s) in sc.systems.iter().enumerate() {
        let a = s.alpha();
        ck.residual(format!("forms/leibniz[system {i}]"), "graded Leibniz rule", || leibniz_defect(a, a));
        ck.residual(format!("forms/associativity[system {i}]"), "wedge associativity", || {
            associativity_defect(a, a, a)
        });
    }
    for (c, ch) in sc.chains.iter().enumerate() {
        let chain = &ch.chain;
        for (k, x) in chain.xis().iter().enumerate() {
            let (lo, hi) = (chain.systems()[k].alpha(), chain.systems()[k + 1].alpha());
            ck.residual(format!("forms/leibniz[chain {c} xi {k}]"), "graded Leibniz rule", || {
                leibniz_defect(hi, x)?.try_add(&leibniz_defect(x, lo)?)
            });
            ck.residual(format!("forms/associativity[chain {c} xi {k}]"), "wedge associativity", || {
                associativity_defect(hi, x, lo)
            });
            if let Some(next) = chain.xis().get(k + 1) {
                ck.residual(format!("forms/leibniz[chain {c} xi {}∧{k}]", k + 1), "graded Leibniz rule", || {
                    leibniz_defect(next, x)
                });
            }
        }
    }
    Ok(())
}

fn chen(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        let series = ck.series(&s);
        ck.exact_valued(format!("chen/nested-terms[{label}]"), "Picard recursion equals the nested terms", || {
            let series = series?;
            let mut nested = HomForm::zero(s.m(), hol_core::forms::Domain::Chart, s.space(), s.space());
            for n in 0..series.terms.len() {
                nested = nested.add(&phi_term(s.alpha(), n).map_err(|e| e.to_string())?);
            }
            let value = format!("{:?}", series.termination);
            Ok::<_, String>((ResidualReport::from_residual("nested terms", &nested.sub(&series.sum())), Some(value)))
        });
    }
    Ok(())
}

fn mc(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let mut all = sc.cylinder_systems()?;
    all.extend(sc.chart_systems());
    for (j, g) in sc.gauges.iter().enumerate() {
        all.push((format!("gauge {j} beta"), g.beta.clone()));
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    for (label, s) in all {
        ck.residual(format!("mc/flat[{label}]"), "dα − α∧α = 0", || Ok::<_, String>(mc_residual(&s)));
        ck.exact(format!("mc/components[{label}]"), "Maurer–Cartan by partial degree", || {
            let parts = mc_component_residuals(&s);
            Ok::<_, String>(ResidualReport::from_residuals("components", parts.iter()))
        });
    }
    Ok(())
}

fn lemma35(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        ck.exact(format!("lemma35/simplex-derivative[{label}]"), "simplex-integral derivative", || {
            lemma35_residual(&[s.alpha().clone(), s.alpha().clone()])
        });
    }
    for (label, chain) in sc.cylinder_chains()? {
        if chain.n() == 0 {
            continue;
        }
        let forms: Vec<HomForm> = chain.xis().iter().rev().cloned().collect();
        ck.exact(format!("lemma35/simplex-derivative[{label}]"), "simplex-integral derivative", || {
            lemma35_residual(&forms)
        });
    }
    Ok(())
}

fn prop34(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        ck.exact(format!("prop34/sign-form[{label}]"), "Φ_n = (−1)^{ε(n)|ω|} ∫_Δ ω⋯ω", || {
            let mut gaps = Vec::new();
            for n in 0..=4 {
                gaps.push(phi_term(s.alpha(), n)?.sub(&phi_homogeneous_sign_form(s.alpha(), n)?));
            }
            Ok::<_, hol_core::chen::ChenError>(ResidualReport::from_residuals("sign form", gaps.iter()))
        });
    }
    Ok(())
}

fn prop36(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        ck.exact(format!("prop36/expansion[{label}]"), "iterated-integral derivative expansion", || {
            let flag = s.flag().ok_or("no flag")?;
            dphi_expansion_residual(s.alpha(), flag).map_err(|e| e.to_string())
        });
    }
    for (label, chain) in sc.cylinder_chains()? {
        let Ok(block) = block_form(&chain) else { continue };
        if chain.n() == 0 || !block.omega.is_homogeneous() {
            continue;
        }
        ck.exact(format!("prop36/expansion[{label} block form]"), "iterated-integral derivative expansion", || {
            dphi_expansion_residual(&block.omega, &block.flag)
        });
    }
    Ok(())
}

fn sample_points(m: usize) -> Vec<Vec<f64>> {
    [0.0, 0.5, -0.75, 1.25, -1.5]
        .iter()
        .enumerate()
        .map(|(k, base)| (0..m).map(|j| base + 0.25 * ((k + j) % 3) as f64).collect())
        .collect()
}

const GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn prop32ode(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let mut targets: Vec<(String, Result<ChenSeries, String>)> = Vec::new();
    for (label, s) in sc.cylinder_systems()? {
        targets.push((label, ck.series(&s)));
    }
    for (label, chain) in sc.cylinder_chains()? {
        let series = block_form(&chain).map_err(|e| e.to_string()).and_then(|b| {
            let s = phi_series(&b.omega, &SeriesPolicy::flag(&b.flag)).map_err(|e| e.to_string())?;
            s.require_exact().map_err(|e| format!("refused: {e}"))?;
            Ok(s)
        });
        targets.push((format!("{label} block form"), series));
    }
    for (label, series) in targets {
        ck.residual(format!("prop32ode/derivative[{label}]"), "dΦ/dt − a(t)∧Φ = 0", || {
            derivative_residual(series.as_ref().map_err(Clone::clone)?).map_err(|e| e.to_string())
        });
        if ck.options.mode == Mode::Float {
            let step = ck.options.step;
            ck.float(format!("prop32ode/rk4[{label}]"), "RK4 agrees with the exact Φ", || {
                let series = series.as_ref().map_err(Clone::clone)?;
                let points = sample_points(series.omega.m());
                let agree = ode_agreement(series, &points, &GRID, step).map_err(|e| e.to_string())?;
                Ok::<_, String>(agree.max_rel_error)
            });
        }
    }
    Ok(())
}

fn prop33(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (j, g) in sc.gauges.iter().enumerate() {
        let s = &sc.systems[g.system];
        ck.residual(format!("prop33/action[gauge {j}]"), "α = g⁻¹βg − g⁻¹dg", || {
            Ok::<_, hol_core::chen::ChenError>(gauge_action(g.beta.alpha(), &g.g)?.sub(s.alpha()))
        });
        let (eta_policy, omega_policy) = (ck.policy(&g.beta), ck.policy(s));
        ck.exact(format!("prop33/transport[gauge {j}]"), "gauge transport of Φ", || {
            gauge_transport_residual(g.beta.alpha(), &g.g, &eta_policy, &omega_policy)
        });
    }
    Ok(())
}

fn lemma41(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        let hol = holonomy_iso_with(&s, ck.options.max_order);
        let report = |f: fn(&hol_core::locsys::Holonomy) -> &ResidualReport| {
            hol.as_ref().map(|h| (f(h).clone(), Some(format!("Φ = {}", describe(&h.phi))))).map_err(Clone::clone)
        };
        ck.exact_valued(format!("lemma41/morphism[{label}]"), "Φ(1) is a morphism ι₀*S → ι₁*S", || report(|h| &h.morphism));
        ck.exact_valued(format!("lemma41/inverse[{label}]"), "Φ(1) has a two-sided inverse", || report(|h| &h.inverse));
    }
    Ok(())
}

fn lemma42(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (j, g) in sc.gauges.iter().enumerate() {
        let s = &sc.systems[g.system];
        ck.exact(format!("lemma42/gauge-compatibility[gauge {j}]"), "Φ^α(1) = (ι₁*g)⁻¹Φ^β(1)ι₀*g", || {
            gauge_compat_check(s, &g.beta, &g.g)
        });
    }
    Ok(())
}

fn nontrivial(chains: Vec<(String, TensorChain)>) -> impl Iterator<Item = (String, TensorChain)> {
    chains.into_iter().filter(|(_, c)| c.n() > 0)
}

fn binfty(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let mut chains = sc.cylinder_chains()?;
    chains.extend(sc.chart_chains()?);
    for (label, chain) in nontrivial(chains) {
        ck.exact(format!("binfty/b-squared[{label}]"), "b∘b = 0", || b_square_residual(&chain));
    }
    Ok(())
}

fn lambda(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, s) in sc.cylinder_systems()? {
        ck.residual(format!("lambda/holonomy[{label}]"), "λ₀ is the holonomy", || {
            let l0 = lambda_eval(&TensorChain::single(s.clone())).map_err(|e| e.to_string())?;
            let hol = holonomy_iso(&s).map_err(|e| e.to_string())?;
            Ok::<_, String>(l0.sub(&hol.phi))
        });
    }
    for (label, chain) in nontrivial(sc.cylinder_chains()?) {
        ck.exact(format!("lambda/degree[{label}]"), "|λ_n(ξ)| = Σ|ξ_i| − n", || lambda_degree_check(&chain));
    }
    for (c, ch) in sc.chains.iter().enumerate() {
        let Some(side) = &ch.constant else { continue };
        ck.exact(format!("lambda/gauge-covariance[chain {c}]"), "gauge covariance of λ", || {
            lambda_gauge_covariance_residual(ch.chain.systems(), &side.chain, &side.gauges)
        });
    }
    Ok(())
}

fn appendix_a(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    for (label, chain) in nontrivial(sc.cylinder_chains()?) {
        ck.exact(format!("appendixA/relation[{label}]"), "A-infinity naturality relation", || {
            ainfty_relation_residual(&chain)
        });
    }
    Ok(())
}

fn poincare(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let x0 = sc.base_point();
    for (label, s) in sc.chart_systems() {
        let triv = poincare_trivialization(&s, &x0);
        let report = |f: fn(&hol_core::locsys::Trivialization) -> &ResidualReport| {
            triv.as_ref().map(|t| (f(t).clone(), Some(format!("Ψ = {}", describe(&t.psi))))).map_err(Clone::clone)
        };
        ck.exact_valued(format!("poincare/morphism[{label}]"), "Ψ is a morphism from the constant system", || {
            report(|t| &t.morphism)
        });
        ck.exact_valued(format!("poincare/inverse[{label}]"), "Ψ has a two-sided inverse", || report(|t| &t.inverse));
        ck.exact_valued(format!("poincare/constant-square[{label}]"), "α₀(x₀)∧α₀(x₀) = 0", || report(|t| &t.square));
    }
    Ok(())
}

fn compose(sc: &Scenario, ck: &mut Checks<'_>) -> Result<(), CliError> {
    let hols = sc
        .homotopies
        .iter()
        .map(|h| HolTransformation::new(h.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    for (label, chain) in nontrivial(sc.chart_chains()?) {
        for (j, a) in hols.iter().enumerate() {
            ck.exact(format!("compose/naturality[{label}, homotopy {j}]"), "A-infinity naturality relation", || {
                transformation_relation_residual(a, &chain)
            });
            ck.residual(format!("compose/identity[{label}, homotopy {j}]"), "id∘A = A", || {
                let id = IdentityTransformation { f: a.end() };
                Ok::<_, hol_core::ainfty::AinftyError>(compose_transformations(a, &id, &chain)?.sub(&a.eval(&chain)?))
            });
            for (k, b) in hols.iter().enumerate() {
                let Ok(ba) = Composite::of_homotopies(a.clone(), b.clone()) else { continue };
                ck.exact(format!("compose/composite[{label}, homotopies {j} then {k}]"), "A-infinity naturality relation", || {
                    transformation_relation_residual(&ba, &chain)
                });
            }
        }
    }
    Ok(())
}
