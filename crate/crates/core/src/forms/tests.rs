use super::*;
use crate::exactnum::rational::{rat, ratio};

fn x() -> MultiPoly {
    MultiPoly::var(Var::X(1))
}

fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

fn r2() -> GradedSpace {
    GradedSpace::concentrated(0, 2)
}

fn n_mat() -> QMatrix {
    QMatrix::from_i64(&[&[0, 1], &[0, 0]])
}

fn term(m: usize, mono: FormMonomial, p: &MultiPoly, mat: &QMatrix) -> HomForm {
    HomForm::from_term(m, Domain::Cylinder, &r2(), &r2(), mono, p, mat)
}

#[test]
fn koszul_sign_case() {
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let a = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
    let b = QMatrix::from_i64(&[&[1, 0], &[0, 0]]);
    let one = MultiPoly::one();
    let left = HomForm::from_term(1, Domain::Cylinder, &v, &v, FormMonomial::dx(1), &one, &a);
    let right = HomForm::from_term(1, Domain::Cylinder, &v, &v, FormMonomial::DT, &one, &b);
    let expected = HomForm::from_term(1, Domain::Cylinder, &v, &v, FormMonomial::dx(1).with_dt(), &one, &a.matmul(&b));
    assert_eq!(left.wedge(&right).unwrap(), expected.neg());
}

#[test]
fn vanishing_products() {
    let w = term(1, FormMonomial::DT, &x(), &n_mat());
    assert!(w.wedge(&w).unwrap().is_zero());
    let dx = term(1, FormMonomial::dx(1), &MultiPoly::one(), &QMatrix::identity(2));
    assert!(dx.wedge(&dx).unwrap().is_zero());
}

#[test]
fn exterior_derivative_examples() {
    let f = term(1, FormMonomial::ONE, &(&x() * &t()), &n_mat());
    let expected = term(1, FormMonomial::dx(1), &t(), &n_mat()).add(&term(1, FormMonomial::DT, &x(), &n_mat()));
    assert_eq!(f.exterior_d(), expected);
    assert!(f.exterior_d().exterior_d().is_zero());
    let w = term(1, FormMonomial::DT, &x(), &n_mat());
    assert_eq!(w.exterior_d(), term(1, FormMonomial::dx(1).with_dt(), &MultiPoly::one(), &n_mat()));
}

#[test]
fn contraction_examples() {
    let id = QMatrix::identity(2);
    let one = MultiPoly::one();
    let dt = term(1, FormMonomial::DT, &one, &id);
    assert_eq!(dt.contract_dt(), term(1, FormMonomial::ONE, &one, &id));
    assert!(term(1, FormMonomial::dx(1), &one, &id).contract_dt().is_zero());
    let dxdt = term(1, FormMonomial::dx(1).with_dt(), &one, &id);
    assert_eq!(dxdt.contract_dt(), term(1, FormMonomial::dx(1), &one, &id).neg());
}

#[test]
fn restriction_examples() {
    let alpha = term(1, FormMonomial::dx(1), &t(), &n_mat()).add(&term(1, FormMonomial::DT, &x(), &n_mat()));
    let at1 = alpha.restrict_at(&rat(1));
    assert_eq!(at1, term(1, FormMonomial::dx(1), &MultiPoly::one(), &n_mat()).with_domain(Domain::Chart));
    assert!(alpha.restrict_at(&rat(0)).is_zero());
    let s = MultiPoly::var(Var::S(1));
    assert!(term(1, FormMonomial::DT, &MultiPoly::one(), &n_mat()).restrict_t(&s).unwrap().is_zero());
}

#[test]
fn pullback_examples() {
    let w = term(2, FormMonomial::dx(1), &MultiPoly::var(Var::X(2)), &n_mat())
        .add(&term(2, FormMonomial::dx(2), &t(), &n_mat()));
    assert_eq!(w.pullback(&PolyMap::identity(2)).unwrap(), w);
    let chart = w.restrict_at(&rat(1));
    let c = PolyMap::constant(2, &[rat(1), ratio(1, 2)]);
    assert!(chart.pullback(&c).unwrap().is_zero());
    let n_dx1 = HomForm::from_term(2, Domain::Chart, &r2(), &r2(), FormMonomial::dx(1), &MultiPoly::one(), &n_mat());
    let phi = PolyMap::new(1, vec![x(), x().pow(2)], false).unwrap();
    let expected = HomForm::from_term(1, Domain::Chart, &r2(), &r2(), FormMonomial::dx(1), &MultiPoly::one(), &n_mat());
    assert_eq!(n_dx1.pullback(&phi).unwrap(), expected);
}

#[test]
fn evaluation_examples() {
    let zero = HomForm::zero(1, Domain::Chart, &r2(), &r2());
    assert!(zero.eval_at_point(&[0.3], 0.1).unwrap().is_zero());
    let f = term(1, FormMonomial::dx(1), &x(), &n_mat());
    let v = f.eval_at_point(&[2.0], 0.0).unwrap();
    assert_eq!(v.coeff(FormMonomial::dx(1))[(0, 1)], 2.0);
    let g = term(1, FormMonomial::ONE, &(&x().pow(2) - &t()), &QMatrix::identity(2));
    assert!(g.eval_at_point(&[1.0], 1.0).unwrap().is_zero());
}

#[test]
fn exterior_value_matches_exact_wedge() {
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let a = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
    let b = QMatrix::from_i64(&[&[1, 0], &[0, 2]]);
    let left = HomForm::from_term(2, Domain::Chart, &v, &v, FormMonomial::dx(2), &x(), &a);
    let right = HomForm::from_term(2, Domain::Chart, &v, &v, FormMonomial::dx(1), &MultiPoly::from_int(3), &b);
    let exact = left.wedge(&right).unwrap().eval_at_point(&[0.5, 0.0], 0.0).unwrap();
    let lv = left.eval_at_point(&[0.5, 0.0], 0.0).unwrap();
    let rv = right.eval_at_point(&[0.5, 0.0], 0.0).unwrap();
    assert!(lv.wedge(&rv).sub(&exact).max_abs() < 1e-15);
}

#[test]
fn inverse_of_unipotent() {
    let g = HomForm::identity(1, Domain::Cylinder, &r2()).add(&term(1, FormMonomial::ONE, &t(), &n_mat()));
    let inv = g.invert().unwrap();
    let expected = HomForm::identity(1, Domain::Cylinder, &r2()).sub(&term(1, FormMonomial::ONE, &t(), &n_mat()));
    assert_eq!(inv, expected);
    let singular = term(1, FormMonomial::ONE, &MultiPoly::one(), &n_mat());
    assert!(singular.invert().is_err());
}

#[test]
fn serial_roundtrip() {
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let a = QMatrix::from_i64(&[&[0, 0], &[1, 0]]);
    let f = HomForm::from_term(2, Domain::Cylinder, &v, &v, FormMonomial::dx(2).with_dt(), &(&x() * &t()).scale(&ratio(-2, 3)), &a);
    let json = serde_json::to_string(&f).unwrap();
    let back: HomForm = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
    assert!(json.contains("\"coef\":\"-2/3\""));
}

#[test]
fn polymap_serde_roundtrip() {
    let h = PolyMap::linear_contraction(&[crate::exactnum::rational::ratio(1, 2), crate::exactnum::rational::rat(-3)]);
    let json = serde_json::to_string(&h).unwrap();
    let back: PolyMap = serde_json::from_str(&json).unwrap();
    assert_eq!(back, h);
}

#[test]
fn identity_defects_on_mixed_degrees() {
    use crate::graded::GradedSpace;
    let v = GradedSpace::new([(0, 1), (1, 1)]).unwrap();
    let mut rng = crate::random::rng(11);
    let shape = |k| crate::random::FormShape {
        m: 2,
        domain: Domain::Cylinder,
        total_degree: k,
        poly_degree: 2,
        density: 0.8,
        max_terms: 2,
    };
    let a = crate::random::homogeneous_form(&mut rng, &shape(1), &v, &v, None)
        .add(&crate::random::homogeneous_form(&mut rng, &shape(2), &v, &v, None));
    let b = crate::random::homogeneous_form(&mut rng, &shape(0), &v, &v, None);
    let c = crate::random::homogeneous_form(&mut rng, &shape(1), &v, &v, None);
    assert!(d_squared(&a).is_zero());
    assert!(leibniz_defect(&a, &b).unwrap().is_zero());
    assert!(leibniz_defect(&c, &a).unwrap().is_zero());
    assert!(associativity_defect(&a, &b, &c).unwrap().is_zero());
    // a sign slip on the odd part is caught
    let wrong = a.wedge(&b).unwrap().exterior_d().sub(&a.exterior_d().wedge(&b).unwrap()).sub(&a.wedge(&b.exterior_d()).unwrap());
    assert!(!wrong.is_zero() || b.exterior_d().is_zero());
}
