use super::*;
use crate::exactnum::rational::{rat, ratio};
use crate::exactnum::MultiPoly;
use crate::fixtures::*;
use crate::forms::{Domain, FormMonomial, HomForm, PolyMap};
use crate::graded::{Flag, GradedSpace, QMatrix};
use crate::locsys::{holonomy_iso, Superconnection};
use crate::sample::{sample_chain, ChainProfile};

fn line() -> GradedSpace {
    GradedSpace::concentrated(0, 1)
}

fn trivial(domain: Domain) -> Superconnection {
    Superconnection::trivial(1, domain, &line(), Some(Flag::single_layer(1)))
}

fn scalar(domain: Domain, mono: FormMonomial, p: &MultiPoly) -> HomForm {
    HomForm::from_term(1, domain, &line(), &line(), mono, p, &QMatrix::identity(1))
}

fn chain_of(xis: Vec<HomForm>) -> TensorChain {
    let systems = vec![trivial(Domain::Cylinder); xis.len() + 1];
    TensorChain::new(systems, xis).unwrap()
}

#[test]
fn b_examples() {
    let c = scalar(Domain::Cylinder, FormMonomial::DT, &MultiPoly::constant(rat(3)));
    let b = hochschild_b(&chain_of(vec![c])).unwrap();
    assert!(b.is_empty());

    let flag = nilpotent_flag();
    let a0 = Superconnection::new(plane(), exact_nilpotent_alpha(), Some(flag.clone())).unwrap();
    let a1 = Superconnection::new(plane(), constant_dt(1, &plane(), &nilpotent()), Some(flag)).unwrap();
    let xi = endo_term(1, &plane(), FormMonomial::dx(1), &(&x(1) * &t()), &QMatrix::identity(2));
    let chain = TensorChain::new(vec![a0.clone(), a1.clone()], vec![xi.clone()]).unwrap();
    let mut total = HomForm::zero(1, Domain::Cylinder, &plane(), &plane());
    for (s, c) in hochschild_b(&chain).unwrap().terms {
        assert_eq!(c.n(), 1);
        total = total.add(&if s > 0 { c.xis()[0].clone() } else { c.xis()[0].neg() });
    }
    let expected = xi
        .exterior_d()
        .sub(&a1.alpha().wedge(&xi).unwrap())
        .sub(&xi.wedge(a0.alpha()).unwrap());
    assert_eq!(total, expected);

    let zero = HomForm::zero(1, Domain::Cylinder, &line(), &line());
    let c = scalar(Domain::Cylinder, FormMonomial::dx(1), &x(1));
    let b = hochschild_b(&chain_of(vec![c.clone(), zero, c])).unwrap();
    assert!(b.terms.iter().all(|(_, ch)| ch.n() == 3));
}

#[test]
fn b_square_examples() {
    let zero = HomForm::zero(1, Domain::Cylinder, &line(), &line());
    assert!(b_square_residual(&chain_of(vec![zero])).unwrap().exact);
    let c = scalar(Domain::Cylinder, FormMonomial::ONE, &(&x(1) * &t()));
    assert!(b_square_residual(&chain_of(vec![c])).unwrap().exact);

    for seed in 0..6 {
        let mut profile = ChainProfile::new(2, 3, Domain::Cylinder);
        profile.mixed = seed % 2 == 0;
        let s = sample_chain(seed, &profile).unwrap();
        let r = b_square_residual(&s.chain).unwrap();
        assert!(r.exact, "seed {seed}: {r:?}");
    }
}

#[test]
fn b_square_needs_flatness_once_alpha_is_nonzero() {
    let v = plane();
    let curved = Superconnection::new(v.clone(), endo_term(1, &v, FormMonomial::DT, &x(1), &nilpotent()), None).unwrap();
    let flat = Superconnection::trivial(1, Domain::Cylinder, &v, None);
    let xi = HomForm::identity(1, Domain::Cylinder, &v);
    let chain = TensorChain::new(vec![flat, curved], vec![xi]).unwrap();
    assert!(!b_square_residual(&chain).unwrap().exact);
}

#[test]
fn lambda_examples() {
    let flag = nilpotent_flag();
    let s = Superconnection::new(plane(), exact_nilpotent_alpha(), Some(flag)).unwrap();
    let l0 = lambda_eval(&TensorChain::single(s.clone())).unwrap();
    assert_eq!(l0, holonomy_iso(&s).unwrap().phi);

    let c = MultiPoly::constant(rat(5));
    let xi = scalar(Domain::Cylinder, FormMonomial::DT, &(&c * &x(1)));
    let l1 = lambda_eval(&chain_of(vec![xi.clone()])).unwrap();
    assert_eq!(l1, scalar(Domain::Chart, FormMonomial::ONE, &(&c * &x(1))));

    let a = scalar(Domain::Cylinder, FormMonomial::DT, &MultiPoly::constant(rat(2)));
    let b = scalar(Domain::Cylinder, FormMonomial::DT, &MultiPoly::constant(rat(7)));
    let l2 = lambda_eval(&chain_of(vec![a, b])).unwrap();
    assert_eq!(l2, scalar(Domain::Chart, FormMonomial::ONE, &MultiPoly::constant(ratio(7, 1))));
}

#[test]
fn degree_examples() {
    let c = scalar(Domain::Cylinder, FormMonomial::DT, &MultiPoly::constant(rat(2)));
    assert!(lambda_degree_check(&chain_of(vec![c.clone()])).unwrap().exact);
    assert!(lambda_degree_check(&chain_of(vec![c.clone(), c])).unwrap().exact);
    let w = scalar(Domain::Cylinder, FormMonomial::dx(1).with_dt(), &x(1));
    let chain = chain_of(vec![w]);
    assert!(lambda_degree_check(&chain).unwrap().exact);
    assert_eq!(lambda_eval(&chain).unwrap().form_degrees().into_iter().collect::<Vec<_>>(), vec![1]);
}

#[test]
fn relation_examples() {
    let zero = HomForm::zero(1, Domain::Cylinder, &line(), &line());
    assert!(ainfty_relation_residual(&chain_of(vec![zero])).unwrap().exact);
    let c = scalar(Domain::Cylinder, FormMonomial::DT, &MultiPoly::constant(rat(4)));
    assert!(ainfty_relation_residual(&chain_of(vec![c])).unwrap().exact);
}

#[test]
fn relation_on_seeded_chains() {
    let mut nontrivial = 0;
    for n in 1..=3 {
        for seed in 0..3 {
            let mut profile = ChainProfile::new(if n == 3 { 1 } else { 2 }, n, Domain::Cylinder);
            profile.mixed = seed == 1;
            let s = sample_chain(100 * n as u64 + seed, &profile).unwrap();
            let r = ainfty_relation_residual(&s.chain).unwrap();
            assert!(r.exact, "n {n} seed {seed}: {r:?}");
            assert!(lambda_degree_check(&s.chain).unwrap().exact);
            nontrivial += usize::from(!lambda_eval(&s.chain).unwrap().is_zero());
        }
    }
    assert!(nontrivial >= 6, "{nontrivial}");
}

#[test]
fn gauge_covariance() {
    let flag = nilpotent_flag();
    let s = Superconnection::new(plane(), exact_nilpotent_alpha(), Some(flag)).unwrap();
    let id = HomForm::identity(1, Domain::Cylinder, &plane());
    let xi = endo_term(1, &plane(), FormMonomial::DT, &x(1), &QMatrix::identity(2));
    let chain = TensorChain::new(vec![s.clone(), s.clone()], vec![xi]).unwrap();
    let r = lambda_gauge_covariance_residual(&[s.clone(), s.clone()], &chain, &[id.clone(), id]).unwrap();
    assert!(r.exact);

    for n in 1..=2 {
        let s = sample_chain(40 + n as u64, &ChainProfile::new(1, n, Domain::Cylinder)).unwrap();
        let beta = s.constant_side().unwrap();
        let alphas: Vec<_> = s.draws.iter().map(|d| d.system.clone()).collect();
        let gs: Vec<_> = s.draws.iter().map(|d| d.g.clone()).collect();
        let r = lambda_gauge_covariance_residual(&alphas, &beta, &gs).unwrap();
        assert!(r.exact, "n {n}: {r:?}");
    }
}

#[test]
fn hol_examples() {
    let flag = nilpotent_flag();
    let nd = Superconnection::new(plane(), nilpotent_dx(), Some(flag.clone())).unwrap();
    let h = PolyMap::linear_contraction(&[rat(0)]);
    let hol0 = hol_transformation(&h, &TensorChain::single(nd.clone())).unwrap();
    let expected = HomForm::identity(1, Domain::Chart, &plane())
        .add(&HomForm::from_term(1, Domain::Chart, &plane(), &plane(), FormMonomial::ONE, &x(1), &nilpotent()));
    assert_eq!(hol0, expected);

    // constant homotopy h(x, t) = x
    let still = PolyMap::new(1, vec![x(1)], true).unwrap();
    let hol0 = hol_transformation(&still, &TensorChain::single(nd.clone())).unwrap();
    assert_eq!(hol0, HomForm::identity(1, Domain::Chart, &plane()));
}

#[test]
fn composition() {
    let flag = nilpotent_flag();
    let nd = Superconnection::new(plane(), nilpotent_dx(), Some(flag)).unwrap();
    let a = HolTransformation::new(PolyMap::linear_contraction(&[rat(0)])).unwrap();
    let shift = PolyMap::new(1, vec![&x(1) + &(&t() * &MultiPoly::constant(rat(2)))], true).unwrap();
    let b = HolTransformation::new(shift).unwrap();
    let id = IdentityTransformation { f: PolyMap::identity(1) };
    let xi = HomForm::from_term(1, Domain::Chart, &plane(), &plane(), FormMonomial::dx(1), &x(1), &QMatrix::identity(2));
    let chain = TensorChain::new(vec![nd.clone(), nd.clone()], vec![xi]).unwrap();
    assert_eq!(compose_transformations(&a, &id, &chain).unwrap(), a.eval(&chain).unwrap());
    let single = TensorChain::single(nd);
    assert_eq!(
        compose_transformations(&a, &b, &single).unwrap(),
        b.eval(&single).unwrap().wedge(&a.eval(&single).unwrap()).unwrap()
    );
    let ba = Composite::of_homotopies(a.clone(), b.clone()).unwrap();
    assert!(transformation_relation_residual(&a, &chain).unwrap().exact);
    assert!(transformation_relation_residual(&b, &chain).unwrap().exact);
    let r = transformation_relation_residual(&ba, &chain).unwrap();
    assert!(r.exact, "{r:?}");
    assert!(Composite::of_homotopies(b, a).is_err());
}
