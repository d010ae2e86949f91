//! Small worked examples with known closed forms, shared by tests, benches
//! and the command-line driver.

use crate::exactnum::{MultiPoly, Var};
use crate::forms::{Domain, FormMonomial, HomForm};
use crate::graded::{Flag, GradedSpace, QMatrix};

/// `ℝ²` in degree 0.
pub fn plane() -> GradedSpace {
    GradedSpace::concentrated(0, 2)
}

/// `N = e₁₂`, sending `e₂ ↦ e₁`, so `N² = 0`.
pub fn nilpotent() -> QMatrix {
    QMatrix::from_i64(&[&[0, 1], &[0, 0]])
}

/// The flag `{e₁} ⊂ {e₁, e₂}`, lowered strictly by [`nilpotent`].
pub fn nilpotent_flag() -> Flag {
    Flag::new(2, vec![vec![0], vec![1]]).expect("valid flag")
}

pub fn x(i: u8) -> MultiPoly {
    MultiPoly::var(Var::X(i))
}

pub fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

/// `p · σ ⊗ A` on the cylinder over `ℝ^m`, with `A` an endomorphism of `v`.
pub fn endo_term(m: usize, v: &GradedSpace, mono: FormMonomial, p: &MultiPoly, a: &QMatrix) -> HomForm {
    HomForm::from_term(m, Domain::Cylinder, v, v, mono, p, a)
}

/// `α = N (t dx + x dt) = N d(xt)` on `ℝ × [0,1]`, flat since `N² = 0`.
pub fn exact_nilpotent_alpha() -> HomForm {
    let v = plane();
    let n = nilpotent();
    endo_term(1, &v, FormMonomial::dx(1), &t(), &n).add(&endo_term(1, &v, FormMonomial::DT, &x(1), &n))
}

/// `A dt` for a constant matrix `A` on `v`.
pub fn constant_dt(m: usize, v: &GradedSpace, a: &QMatrix) -> HomForm {
    endo_term(m, v, FormMonomial::DT, &MultiPoly::one(), a)
}

/// `N dx₁` on the chart `ℝ`.
pub fn nilpotent_dx() -> HomForm {
    let v = plane();
    HomForm::from_term(1, Domain::Chart, &v, &v, FormMonomial::dx(1), &MultiPoly::one(), &nilpotent())
}
