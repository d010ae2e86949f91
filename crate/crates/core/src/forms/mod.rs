//! Hom-valued polynomial differential forms on `ℝ^m` or `ℝ^m × [0,1]`.
//!
//! A [`HomForm`] is a matrix of scalar forms between two graded spaces. The
//! internal degree of entry `(r, c)` is `deg(target_r) − deg(source_c)`, and
//! products follow `(σ⊗A)∧(τ⊗B) = (−1)^{|A|·|τ|} (σ∧τ)⊗(AB)`.

mod exterior;
mod identities;
mod monomial;
mod pullback;
mod scalar;
mod serial;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{MultiPoly, NumError, Rational, Var};
use crate::graded::{DirectSum, Flag, GradedError, GradedHom, GradedSpace, QMatrix};

pub use exterior::ExteriorValue;
pub use identities::{associativity_defect, d_squared, leibniz_defect};
pub use monomial::FormMonomial;
pub use pullback::PolyMap;
pub use scalar::ScalarForm;
pub use serial::{FormTermSerial, HomFormSerial, PolyMapSerial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("forms are not composable: {0}")]
    NotComposable(String),
    #[error("chart dimensions differ ({0} vs {1})")]
    Dimension(usize, usize),
    #[error("form is not homogeneous (total degrees {0:?})")]
    Inhomogeneous(Vec<i32>),
    #[error("expected an endomorphism-valued form")]
    NotEndomorphism,
    #[error("form is not invertible: {0}")]
    NonInvertible(String),
    #[error("bad polynomial map: {0}")]
    BadMap(String),
    #[error("malformed form: {0}")]
    Malformed(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Whether a form lives on the chart `ℝ^m` or on the cylinder `ℝ^m × [0,1]`.
/// On a chart, `t` may still appear in coefficients as a parameter, and the
/// exterior derivative ignores it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Chart,
    Cylinder,
}

impl Domain {
    pub fn join(self, other: Self) -> Self {
        self.max(other)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomForm {
    m: usize,
    domain: Domain,
    source: GradedSpace,
    target: GradedSpace,
    src_degs: Vec<i32>,
    tgt_degs: Vec<i32>,
    entries: BTreeMap<(usize, usize), ScalarForm>,
}

impl HomForm {
    pub fn zero(m: usize, domain: Domain, source: &GradedSpace, target: &GradedSpace) -> Self {
        Self {
            m,
            domain,
            source: source.clone(),
            target: target.clone(),
            src_degs: source.basis_degrees(),
            tgt_degs: target.basis_degrees(),
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(m: usize, domain: Domain, space: &GradedSpace) -> Self {
        let mut f = Self::zero(m, domain, space, space);
        for i in 0..space.dim() {
            f.add_to_entry(i, i, &ScalarForm::function(MultiPoly::one()));
        }
        f
    }

    /// The constant 0-form with the given matrix.
    pub fn from_matrix(m: usize, domain: Domain, source: &GradedSpace, target: &GradedSpace, mat: &QMatrix) -> Self {
        let mut f = Self::zero(m, domain, source, target);
        for (r, c, v) in mat.nonzeros() {
            f.add_to_entry(r, c, &ScalarForm::function(MultiPoly::constant(v.clone())));
        }
        f
    }

    pub fn from_hom(m: usize, domain: Domain, h: &GradedHom) -> Self {
        Self::from_matrix(m, domain, h.source(), h.target(), h.matrix())
    }

    /// `p · σ ⊗ (matrix)`.
    pub fn from_term(
        m: usize,
        domain: Domain,
        source: &GradedSpace,
        target: &GradedSpace,
        mono: FormMonomial,
        p: &MultiPoly,
        mat: &QMatrix,
    ) -> Self {
        let mut f = Self::zero(m, domain, source, target);
        for (r, c, v) in mat.nonzeros() {
            f.add_to_entry(r, c, &ScalarForm::term(mono, p.scale(v)));
        }
        f
    }

    pub fn add_to_entry(&mut self, r: usize, c: usize, s: &ScalarForm) {
        assert!(r < self.tgt_degs.len() && c < self.src_degs.len(), "entry out of range");
        if s.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_default();
        slot.add_assign(s);
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        let mut f = self.clone();
        f.domain = domain;
        f
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn source_degrees(&self) -> &[i32] {
        &self.src_degs
    }

    pub fn target_degrees(&self) -> &[i32] {
        &self.tgt_degs
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &ScalarForm)> {
        self.entries.iter()
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&ScalarForm> {
        self.entries.get(&(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.entries.values().map(ScalarForm::num_terms).sum()
    }

    fn same_shape(&self, other: &Self) -> Result<(), FormError> {
        if self.m != other.m {
            return Err(FormError::Dimension(self.m, other.m));
        }
        if self.source != other.source || self.target != other.target {
            return Err(FormError::NotComposable("sum of forms with different Hom types".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FormError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.domain = self.domain.join(other.domain);
        for ((r, c), s) in &other.entries {
            out.add_to_entry(*r, *c, s);
        }
        Ok(out)
    }

    /// Sum; panics on mismatched shapes.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("adding forms of different shapes")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_entries(|s| s.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_entries(|s| s.scale(c))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        self.map_entries(|s| s.mul_poly(p))
    }

    fn map_entries(&self, f: impl Fn(&ScalarForm) -> ScalarForm) -> Self {
        let mut out = Self::zero(self.m, self.domain, &self.source, &self.target);
        for (k, s) in &self.entries {
            let v = f(s);
            if !v.is_zero() {
                out.entries.insert(*k, v);
            }
        }
        out
    }

    /// Applies `f` to every coefficient polynomial.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        self.map_entries(|s| s.map_coeffs(&f))
    }

    fn filter_terms(&self, keep: impl Fn(usize, usize, FormMonomial) -> bool) -> Self {
        let mut out = Self::zero(self.m, self.domain, &self.source, &self.target);
        for ((r, c), s) in &self.entries {
            let v = s.filter(|mono| keep(*r, *c, mono));
            if !v.is_zero() {
                out.entries.insert((*r, *c), v);
            }
        }
        out
    }

    /// Internal degree of entry `(r, c)`.
    pub fn internal_degree(&self, r: usize, c: usize) -> i32 {
        self.tgt_degs[r] - self.src_degs[c]
    }

    pub fn total_degrees(&self) -> BTreeSet<i32> {
        let mut out = BTreeSet::new();
        for ((r, c), s) in &self.entries {
            let a = self.internal_degree(*r, *c);
            for (mono, _) in s.terms() {
                out.insert(a + mono.degree() as i32);
            }
        }
        out
    }

    /// `Ok(None)` for the zero form, which is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Result<Option<i32>, FormError> {
        let d = self.total_degrees();
        match d.len() {
            0 => Ok(None),
            1 => Ok(d.into_iter().next()),
            _ => Err(FormError::Inhomogeneous(d.into_iter().collect())),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degrees().len() <= 1
    }

    /// Component of total degree `k`.
    pub fn total_degree_component(&self, k: i32) -> Self {
        let degs = (self.src_degs.clone(), self.tgt_degs.clone());
        self.filter_terms(|r, c, mono| degs.1[r] - degs.0[c] + mono.degree() as i32 == k)
    }

    /// Component of form (partial) degree `p`.
    pub fn partial_degree_component(&self, p: u32) -> Self {
        self.filter_terms(|_, _, mono| mono.degree() == p)
    }

    pub fn form_degrees(&self) -> BTreeSet<u32> {
        self.entries
            .values()
            .flat_map(|s| s.terms().map(|(m, _)| m.degree()))
            .collect()
    }

    pub fn has_dt(&self) -> bool {
        self.entries.values().any(|s| s.terms().any(|(m, _)| m.has_dt()))
    }

    /// `self ∧ other`, composing Hom values as `Hom(W,X) ∧ Hom(V,W) → Hom(V,X)`.
    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        if self.m != other.m {
            return Err(FormError::Dimension(self.m, other.m));
        }
        if self.source != other.target {
            return Err(FormError::NotComposable(
                "source of the left factor differs from target of the right".into(),
            ));
        }
        let mut out = Self::zero(self.m, self.domain.join(other.domain), &other.source, &self.target);
        let mut by_row: Vec<Vec<(usize, &ScalarForm)>> = vec![Vec::new(); other.tgt_degs.len()];
        for ((k, c), s) in &other.entries {
            by_row[*k].push((*c, s));
        }
        for ((r, k), left) in &self.entries {
            let a = self.internal_degree(*r, *k);
            for (c, right) in &by_row[*k] {
                let mut prod = ScalarForm::zero();
                for (sig, p) in left.terms() {
                    for (tau, q) in right.terms() {
                        let Some((neg, mono)) = sig.wedge(*tau) else {
                            continue;
                        };
                        let koszul = (a as i64 * tau.degree() as i64).rem_euclid(2) == 1;
                        let pq = p.mul_poly(q);
                        prod.add_term(mono, if neg != koszul { pq.neg_poly() } else { pq });
                    }
                }
                out.add_to_entry(*r, *c, &prod);
            }
        }
        Ok(out)
    }

    /// Product of a chain of forms, left to right.
    pub fn wedge_all(forms: &[&HomForm]) -> Result<Self, FormError> {
        let (first, rest) = forms
            .split_first()
            .ok_or_else(|| FormError::Malformed("empty product".into()))?;
        let mut acc = (*first).clone();
        for f in rest {
            acc = acc.wedge(f)?;
        }
        Ok(acc)
    }

    /// Exterior derivative acting on the form part. On a chart, `t` is a
    /// parameter and contributes nothing.
    pub fn exterior_d(&self) -> Self {
        let with_t = self.domain == Domain::Cylinder;
        self.map_entries(|s| s.d(self.m, with_t))
    }

    /// Contraction with `∂/∂t`: `(dx_I ∧ dt)⊗A ↦ (−1)^{|I|} dx_I⊗A`.
    pub fn contract_dt(&self) -> Self {
        self.map_entries(|s| {
            let mut out = ScalarForm::zero();
            for (mono, p) in s.terms() {
                if mono.has_dt() {
                    let q = if mono.dx_count() % 2 == 1 { p.neg_poly() } else { p.clone() };
                    out.add_term(mono.without_dt(), q);
                }
            }
            out
        })
    }

    /// `ι_s*`: drops `dt` terms and substitutes `t ≔ s`. The result is a chart
    /// form.
    pub fn restrict_t(&self, s: &MultiPoly) -> Result<Self, FormError> {
        if s.contains_var(Var::T) {
            return Err(FormError::Malformed("restriction height depends on t".into()));
        }
        let mut out = self.filter_terms(|_, _, mono| !mono.has_dt()).map_coeffs(|p| p.subst(Var::T, s));
        out.domain = Domain::Chart;
        Ok(out)
    }

    /// `ι_c*` at a rational height.
    pub fn restrict_at(&self, c: &Rational) -> Self {
        self.restrict_t(&MultiPoly::constant(c.clone()))
            .expect("constant height is free of t")
    }

    /// `ι_t*` with the height left symbolic: drops `dt` terms and keeps `t`
    /// as a parameter of a chart form.
    pub fn slice_t(&self) -> Self {
        let mut out = self.filter_terms(|_, _, mono| !mono.has_dt());
        out.domain = Domain::Chart;
        out
    }

    /// Coefficient-wise partial derivative.
    pub fn diff_var(&self, v: Var) -> Self {
        self.map_coeffs(|p| p.diff(v))
    }

    pub fn subst(&self, v: Var, value: &MultiPoly) -> Self {
        self.map_coeffs(|p| p.subst(v, value))
    }

    /// Coefficient-wise definite integral in `v`.
    pub fn integrate(&self, v: Var, lower: &MultiPoly, upper: &MultiPoly) -> Result<Self, FormError> {
        let anti = self.map_coeffs(|p| p.antiderivative(v));
        if lower.contains_var(v) || upper.contains_var(v) {
            return Err(FormError::Num(NumError::BoundDependsOnVariable(v.to_string())));
        }
        Ok(anti.subst(v, upper).sub(&anti.subst(v, lower)))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.entries
            .values()
            .any(|s| s.terms().any(|(_, p)| p.contains_var(v)))
    }

    /// Evaluates at `x` (length `m`) and height `t`. Terms containing `dt` are
    /// ignored; contract first when they matter.
    pub fn eval_at_point(&self, x: &[f64], t: f64) -> Result<ExteriorValue, FormError> {
        if x.len() != self.m {
            return Err(FormError::Dimension(x.len(), self.m));
        }
        let mut point: BTreeMap<Var, f64> = x
            .iter()
            .enumerate()
            .map(|(i, v)| (Var::X(i as u8 + 1), *v))
            .collect();
        point.insert(Var::T, t);
        let mut out = ExteriorValue::zero(&self.src_degs, &self.tgt_degs);
        let (rows, cols) = (self.tgt_degs.len(), self.src_degs.len());
        for ((r, c), s) in &self.entries {
            for (mono, p) in s.terms() {
                if mono.has_dt() {
                    continue;
                }
                let v = p.eval_f64(&point)?;
                let mut m = nalgebra::DMatrix::zeros(rows, cols);
                m[(*r, *c)] = v;
                out.accumulate(*mono, m);
            }
        }
        Ok(out)
    }

    /// Constant term of the 0-form part, as a matrix.
    pub fn constant_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.tgt_degs.len(), self.src_degs.len());
        for ((r, c), s) in &self.entries {
            if let Some(p) = s.coeff(FormMonomial::ONE) {
                m.set(*r, *c, p.constant_term());
            }
        }
        m
    }

    /// Exact two-sided inverse of a form whose constant part is an invertible
    /// matrix `C` and for which `C⁻¹X − id` is nilpotent. The inverse is the
    /// finite Neumann series `Σ (−R)^k C⁻¹`, verified on both sides before
    /// returning.
    pub fn invert(&self) -> Result<Self, FormError> {
        if self.src_degs.len() != self.tgt_degs.len() {
            return Err(FormError::NonInvertible("source and target dimensions differ".into()));
        }
        let c_inv = self
            .constant_matrix()
            .inverse()
            .ok_or_else(|| FormError::NonInvertible("constant part is singular".into()))?;
        let c_inv = Self::from_matrix(self.m, self.domain, &self.target, &self.source, &c_inv);
        let id_src = Self::identity(self.m, self.domain, &self.source);
        let r = c_inv.wedge(self)?.sub(&id_src);
        let minus_r = r.neg();
        let bound = (self.m + 1) * self.src_degs.len() + self.m + 1;
        let mut power = id_src.clone();
        let mut sum = Self::zero(self.m, self.domain, &self.source, &self.source);
        let mut terminated = false;
        for _ in 0..=bound {
            sum = sum.add(&power);
            power = minus_r.wedge(&power)?;
            if power.is_zero() {
                terminated = true;
                break;
            }
        }
        if !terminated {
            return Err(FormError::NonInvertible(format!(
                "Neumann series did not terminate within {bound} terms"
            )));
        }
        let inv = sum.wedge(&c_inv)?;
        let id_tgt = Self::identity(self.m, self.domain, &self.target);
        let left = inv.wedge(self)?;
        let right = self.wedge(&inv)?;
        if !left.sub(&id_src).is_zero() || !right.sub(&id_tgt).is_zero() {
            return Err(FormError::NonInvertible("candidate inverse failed verification".into()));
        }
        Ok(inv)
    }

    /// Places `self: V_col → V_row` into an endomorphism of the direct sum.
    pub fn embed(&self, sum: &DirectSum, row: usize, col: usize) -> Result<Self, FormError> {
        if row >= sum.num_blocks() || col >= sum.num_blocks() {
            return Err(GradedError::BlockIndex {
                index: row.max(col),
                len: sum.num_blocks(),
            }
            .into());
        }
        if sum.block(col) != &self.source || sum.block(row) != &self.target {
            return Err(FormError::NotComposable("form does not match the chosen blocks".into()));
        }
        let mut out = Self::zero(self.m, self.domain, sum.total(), sum.total());
        let (ri, ci) = (sum.indices(row), sum.indices(col));
        for ((r, c), s) in &self.entries {
            out.entries.insert((ri[*r], ci[*c]), s.clone());
        }
        Ok(out)
    }

    /// The `V_col → V_row` component of an endomorphism of the direct sum.
    pub fn block_extract(&self, sum: &DirectSum, row: usize, col: usize) -> Result<Self, FormError> {
        if row >= sum.num_blocks() || col >= sum.num_blocks() {
            return Err(GradedError::BlockIndex {
                index: row.max(col),
                len: sum.num_blocks(),
            }
            .into());
        }
        if &self.source != sum.total() || &self.target != sum.total() {
            return Err(FormError::NotComposable("form is not an endomorphism of the sum".into()));
        }
        let (ri, ci) = (sum.indices(row), sum.indices(col));
        let mut out = Self::zero(self.m, self.domain, sum.block(col), sum.block(row));
        for (r, gr) in ri.iter().enumerate() {
            for (c, gc) in ci.iter().enumerate() {
                if let Some(s) = self.entries.get(&(*gr, *gc)) {
                    out.entries.insert((r, c), s.clone());
                }
            }
        }
        Ok(out)
    }

    /// Every nonzero entry strictly lowers the flag.
    pub fn is_strictly_flag_lowering(&self, flag: &Flag) -> bool {
        self.is_endomorphism()
            && flag.dim() == self.src_degs.len()
            && self.entries.keys().all(|(r, c)| flag.lowers(*r, *c))
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.entries
            .values()
            .flat_map(|s| s.terms().map(|(_, p)| p.max_abs_coeff()))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// A short description of the first nonzero term.
    pub fn witness(&self) -> Option<String> {
        let ((r, c), s) = self.entries.iter().next()?;
        let (mono, p) = s.terms().next()?;
        Some(format!("entry ({r},{c}): ({p}) {mono}"))
    }

    /// Whether every coefficient is a constant, i.e. the form has no
    /// coordinate dependence.
    pub fn is_constant(&self) -> bool {
        self.entries
            .values()
            .all(|s| s.terms().all(|(_, p)| p.vars().is_empty()))
    }
}

impl std::fmt::Debug for HomForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HomForm[m={}, {:?}, {}x{}]{{", self.m, self.domain, self.tgt_degs.len(), self.src_degs.len())?;
        let mut first = true;
        for ((r, c), s) in &self.entries {
            for (mono, p) in s.terms() {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "({r},{c}): ({p}) {mono}")?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests;
