use super::*;
use crate::chen::gauge_action;
use crate::exactnum::rational::{rat, zero};
use crate::exactnum::MultiPoly;
use crate::fixtures::*;
use crate::forms::{Domain, FormMonomial, HomForm, PolyMap};
use crate::graded::{Flag, GradedSpace, QMatrix};

fn system(alpha: HomForm, flag: Option<Flag>) -> Superconnection {
    Superconnection::new(alpha.source().clone(), alpha, flag).unwrap()
}

fn chart(p: &MultiPoly, mono: FormMonomial, a: &QMatrix) -> HomForm {
    HomForm::from_term(1, Domain::Chart, &plane(), &plane(), mono, p, a)
}

fn chart_id() -> HomForm {
    HomForm::identity(1, Domain::Chart, &plane())
}

#[test]
fn mc_examples() {
    let trivial = Superconnection::trivial(1, Domain::Cylinder, &plane(), None);
    assert!(mc_residual(&trivial).is_zero());
    assert!(mc_residual(&system(exact_nilpotent_alpha(), None)).is_zero());

    let xdt = endo_term(1, &plane(), FormMonomial::DT, &x(1), &nilpotent());
    let expected = endo_term(1, &plane(), FormMonomial::dx(1).with_dt(), &MultiPoly::one(), &nilpotent());
    assert_eq!(mc_residual(&system(xdt, None)), expected);
    assert!(require_flat(&system(exact_nilpotent_alpha(), None)).is_ok());
}

#[test]
fn mc_component_examples() {
    // α₀ = J, a rotation by a quarter turn in degree 1 → 1 would need
    // internal degree 1, so place it between degrees 0 and 1.
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let j = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
    let a0 = HomForm::from_matrix(1, Domain::Chart, &v, &v, &j);
    let comps = mc_component_residuals(&system(a0.clone(), None));
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0], a0.wedge(&a0).unwrap().neg());
    assert!(comps[1].is_zero());

    // a₁ = x N dx on ℝ²: curvature dα₁ − α₁∧α₁.
    let v = plane();
    let a1 = HomForm::from_term(2, Domain::Chart, &v, &v, FormMonomial::dx(1), &x(2), &nilpotent())
        .add(&HomForm::from_term(2, Domain::Chart, &v, &v, FormMonomial::dx(2), &x(1), &QMatrix::identity(2)));
    let comps = mc_component_residuals(&system(a1.clone(), None));
    assert_eq!(comps.len(), 3);
    assert!(comps[0].is_zero() && comps[1].is_zero());
    assert_eq!(comps[2], a1.exterior_d().sub(&a1.wedge(&a1).unwrap()));
    assert!(!comps[2].is_zero());
}

#[test]
fn hom_differential_examples() {
    let zero_sys = Superconnection::trivial(1, Domain::Chart, &plane(), None);
    let w = chart(&(&x(1) * &x(1)), FormMonomial::ONE, &nilpotent());
    assert_eq!(hom_differential(&w, &zero_sys, &zero_sys).unwrap(), w.exterior_d());

    let nd = system(nilpotent_dx(), None);
    let phi = chart_id().add(&chart(&x(1), FormMonomial::ONE, &nilpotent()));
    assert!(is_morphism(&phi, &zero_sys, &nd).unwrap().exact);
    assert!(hom_differential(&phi, &zero_sys, &nd).unwrap().is_zero());
    assert!(is_morphism(&chart_id(), &nd, &nd).unwrap().exact);

    let xn = chart(&x(1), FormMonomial::ONE, &nilpotent());
    let r = is_morphism(&xn, &zero_sys, &zero_sys).unwrap();
    assert!(!r.exact);
    assert_eq!(hom_differential(&xn, &zero_sys, &zero_sys).unwrap(), nilpotent_dx());
}

#[test]
fn hom_differential_squares_to_zero() {
    let v = GradedSpace::new([(0, 2), (1, 1)]).unwrap();
    let flag = Flag::complete(3);
    for seed in 0..6 {
        let mut params = FlatParams::new(2, Domain::Chart, 2);
        params.mixed = seed % 2 == 1;
        let mut rng = crate::random::rng(seed);
        let s = generate_flat_with(&mut rng, seed, &v, &flag, &params).unwrap().system;
        let s2 = generate_flat_with(&mut rng, seed, &v, &flag, &params).unwrap().system;
        let shape = crate::random::FormShape {
            m: 2,
            domain: Domain::Chart,
            total_degree: (seed % 3) as i32 - 1,
            poly_degree: 2,
            density: 0.6,
            max_terms: 2,
        };
        let w = crate::random::homogeneous_form(&mut rng, &shape, &v, &v, None);
        let once = hom_differential(&w, &s, &s2).unwrap();
        assert!(hom_differential(&once, &s, &s2).unwrap().is_zero(), "seed {seed}");
    }
}

#[test]
fn holonomy_examples() {
    let flag = nilpotent_flag();
    let trivial = Superconnection::trivial(1, Domain::Cylinder, &plane(), Some(flag.clone()));
    let h = holonomy_iso(&trivial).unwrap();
    assert_eq!(h.phi, chart_id());
    assert!(h.verified());

    let h = holonomy_iso(&system(exact_nilpotent_alpha(), Some(flag.clone()))).unwrap();
    assert_eq!(h.phi, chart_id().add(&chart(&x(1), FormMonomial::ONE, &nilpotent())));
    assert_eq!(h.phi_inv, chart_id().sub(&chart(&x(1), FormMonomial::ONE, &nilpotent())));
    assert!(h.verified());

    let g = HomForm::identity(1, Domain::Cylinder, &plane()).add(&endo_term(1, &plane(), FormMonomial::ONE, &t(), &nilpotent()));
    let zero_form = HomForm::zero(1, Domain::Cylinder, &plane(), &plane());
    let alpha = gauge_action(&zero_form, &g).unwrap();
    let h = holonomy_iso(&system(alpha, Some(flag.clone()))).unwrap();
    assert_eq!(h.phi, chart_id().sub(&chart(&MultiPoly::one(), FormMonomial::ONE, &nilpotent())));

    // Φ = id + tA at t = 1 for a constant A dt with A² = 0.
    let h = holonomy_iso(&system(constant_dt(1, &plane(), &nilpotent()), Some(flag))).unwrap();
    assert_eq!(h.phi.constant_matrix(), QMatrix::from_i64(&[&[1, 1], &[0, 1]]));

    let curved = endo_term(1, &plane(), FormMonomial::DT, &x(1), &nilpotent());
    assert!(matches!(holonomy_iso(&system(curved, Some(nilpotent_flag()))), Err(LocsysError::NonFlat(_))));
    assert!(matches!(holonomy_iso(&system(exact_nilpotent_alpha(), None)), Err(LocsysError::NoFlag)));
}

#[test]
fn gauge_compat_examples() {
    let flag = nilpotent_flag();
    let s = system(exact_nilpotent_alpha(), Some(flag.clone()));
    let id = HomForm::identity(1, Domain::Cylinder, &plane());
    assert!(gauge_compat_check(&s, &s, &id).unwrap().exact);

    let beta = Superconnection::trivial(1, Domain::Cylinder, &plane(), Some(flag.clone()));
    let g = id.add(&endo_term(1, &plane(), FormMonomial::ONE, &t(), &nilpotent()));
    let a = system(constant_dt(1, &plane(), &nilpotent()).neg(), Some(flag.clone()));
    assert!(gauge_compat_check(&a, &beta, &g).unwrap().exact);
    assert!(matches!(gauge_compat_check(&s, &beta, &g), Err(LocsysError::GaugeViolated(_))));

    let v = GradedSpace::new([(0, 2), (1, 2)]).unwrap();
    let flag = Flag::complete(4);
    for seed in 0..5 {
        let draw = generate_flat(seed, &v, &flag, 1, 2).unwrap();
        let r = gauge_compat_check(&draw.system, &draw.constant_system(), &draw.g).unwrap();
        assert!(r.exact, "seed {seed}: {r:?}");
    }
}

#[test]
fn pullback_examples() {
    let s = system(exact_nilpotent_alpha(), Some(nilpotent_flag()));
    assert_eq!(pullback_superconnection(&s, &PolyMap::identity(1)).unwrap(), s);

    let nd = system(nilpotent_dx(), None);
    let c = pullback_superconnection(&nd, &PolyMap::constant(1, &[rat(3)])).unwrap();
    assert!(c.alpha().is_zero());

    let flag = Flag::complete(3);
    let w = GradedSpace::new([(0, 2), (1, 1)]).unwrap();
    let mut rng = crate::random::rng(11);
    let flat = generate_flat_with(&mut rng, 11, &w, &flag, &FlatParams::new(2, Domain::Chart, 2)).unwrap().system;
    let f = PolyMap::new(1, vec![x(1), &x(1) * &x(1)], false).unwrap();
    let back = pullback_superconnection(&flat, &f).unwrap();
    assert_eq!(back.m(), 1);
    assert!(mc_residual(&back).is_zero());
}

#[test]
fn poincare_examples() {
    let flag = nilpotent_flag();
    let trivial = Superconnection::trivial(1, Domain::Chart, &plane(), Some(flag.clone()));
    let p = poincare_trivialization(&trivial, &[zero()]).unwrap();
    assert_eq!(p.psi, chart_id());
    assert!(p.constant.alpha().is_zero() && p.verified());

    let nd = system(nilpotent_dx(), Some(flag));
    let p = poincare_trivialization(&nd, &[zero()]).unwrap();
    assert_eq!(p.psi, chart_id().add(&chart(&x(1), FormMonomial::ONE, &nilpotent())));
    assert!(p.constant.alpha().is_zero());
    assert!(p.verified());

    // constant α₀ with α₀² = 0 and no 1-form part
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let j = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
    let a0 = HomForm::from_matrix(1, Domain::Chart, &v, &v, &j);
    let flag = Flag::new(2, vec![vec![1], vec![0]]).unwrap();
    let s = system(a0.clone(), Some(flag));
    let p = poincare_trivialization(&s, &[rat(2)]).unwrap();
    assert_eq!(p.psi, HomForm::identity(1, Domain::Chart, &v));
    assert_eq!(p.constant.alpha(), &a0);
    assert!(p.verified());
}

#[test]
fn generate_examples() {
    let g = HomForm::identity(1, Domain::Cylinder, &plane()).add(&endo_term(1, &plane(), FormMonomial::ONE, &t(), &nilpotent()));
    let zero_form = HomForm::zero(1, Domain::Cylinder, &plane(), &plane());
    assert_eq!(gauge_action(&zero_form, &g).unwrap(), constant_dt(1, &plane(), &nilpotent()).neg());
    let id = HomForm::identity(1, Domain::Cylinder, &plane());
    assert!(gauge_action(&zero_form, &id).unwrap().is_zero());

    let v = GradedSpace::new([(-1, 1), (0, 3), (1, 1)]).unwrap();
    let flag = Flag::new(5, vec![vec![0, 3], vec![1], vec![2, 4]]).unwrap();
    let mut nonzero = 0;
    for seed in 0..20 {
        let d = generate_flat(seed, &v, &flag, 2, 2).unwrap();
        assert!(mc_residual(&d.system).is_zero());
        assert!(d.system.alpha().is_strictly_flag_lowering(&flag));
        assert!(d.alpha_c.wedge(&d.alpha_c).unwrap().is_zero());
        nonzero += usize::from(d.system.alpha().has_dt());
        let again = generate_flat(seed, &v, &flag, 2, 2).unwrap();
        assert_eq!(again.system, d.system);
    }
    assert!(nonzero >= 5, "{nonzero}");
}

#[test]
fn serde_roundtrip() {
    let s = system(exact_nilpotent_alpha(), Some(nilpotent_flag()));
    let json = serde_json::to_string(&s).unwrap();
    let back: Superconnection = serde_json::from_str(&json).unwrap();
    assert_eq!(back, s);
}
