use std::collections::BTreeMap;

use crate::exactnum::{MultiPoly, Rational, Var};

use super::{Domain, FormError, FormMonomial, HomForm, ScalarForm};

/// A polynomial map `ℝ^q → ℝ^p`, or `ℝ^q × [0,1] → ℝ^p` when `with_t` is set.
/// Images are polynomials in `x₁..x_q` (and `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    source_dim: usize,
    images: Vec<MultiPoly>,
    with_t: bool,
}

impl PolyMap {
    pub fn new(source_dim: usize, images: Vec<MultiPoly>, with_t: bool) -> Result<Self, FormError> {
        for (i, p) in images.iter().enumerate() {
            for v in p.vars() {
                let ok = match v {
                    Var::X(j) => (1..=source_dim).contains(&(*j as usize)),
                    Var::T => with_t,
                    Var::S(_) => false,
                };
                if !ok {
                    return Err(FormError::BadMap(format!("image {} uses variable {v}", i + 1)));
                }
            }
        }
        Ok(Self {
            source_dim,
            images,
            with_t,
        })
    }

    pub fn identity(p: usize) -> Self {
        let images = (1..=p).map(|i| MultiPoly::var(Var::X(i as u8))).collect();
        Self::new(p, images, false).expect("identity map is valid")
    }

    /// The constant map `ℝ^q → {point}`.
    pub fn constant(q: usize, point: &[Rational]) -> Self {
        let images = point.iter().map(|c| MultiPoly::constant(c.clone())).collect();
        Self::new(q, images, false).expect("constant map is valid")
    }

    /// The straight-line contraction `h(x, t) = x₀ + t(x − x₀)` of `ℝ^p`.
    pub fn linear_contraction(center: &[Rational]) -> Self {
        let t = MultiPoly::var(Var::T);
        let images = center
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = MultiPoly::constant(c.clone());
                let x = MultiPoly::var(Var::X(i as u8 + 1));
                &c + &(&t * &(&x - &c))
            })
            .collect();
        Self::new(center.len(), images, true).expect("contraction is valid")
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    pub fn with_t(&self) -> bool {
        self.with_t
    }

    /// `h(·, c)` for a homotopy `h`.
    pub fn at_height(&self, c: &Rational) -> Self {
        let v = MultiPoly::constant(c.clone());
        let images = self.images.iter().map(|p| p.subst(Var::T, &v)).collect();
        Self::new(self.source_dim, images, false).expect("restricted map is valid")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap) -> Result<Self, FormError> {
        if inner.target_dim() != self.source_dim {
            return Err(FormError::Dimension(inner.target_dim(), self.source_dim));
        }
        let sub = inner.substitution();
        let images = self.images.iter().map(|p| p.compose(&sub)).collect();
        Self::new(inner.source_dim, images, self.with_t || inner.with_t)
    }

    fn substitution(&self) -> BTreeMap<Var, MultiPoly> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, p)| (Var::X(i as u8 + 1), p.clone()))
            .collect()
    }
}

impl HomForm {
    /// Pullback along `phi`. A homotopy (`with_t`) turns chart forms into
    /// cylinder forms; on cylinder forms `t` is passed through unchanged.
    pub fn pullback(&self, phi: &PolyMap) -> Result<HomForm, FormError> {
        if phi.target_dim() != self.m {
            return Err(FormError::Dimension(phi.target_dim(), self.m));
        }
        if phi.with_t && self.contains_var(Var::T) {
            return Err(FormError::BadMap("homotopy pullback of a form that already depends on t".into()));
        }
        let domain = if phi.with_t { Domain::Cylinder } else { self.domain };
        let sub = phi.substitution();
        let differentials: Vec<ScalarForm> = phi
            .images
            .iter()
            .map(|p| ScalarForm::function(p.clone()).d(phi.source_dim, true))
            .collect();
        let mut mono_cache: BTreeMap<FormMonomial, ScalarForm> = BTreeMap::new();
        let mut out = HomForm::zero(phi.source_dim, domain, &self.source, &self.target);
        for ((r, c), s) in &self.entries {
            let mut acc = ScalarForm::zero();
            for (mono, p) in s.terms() {
                let image = mono_cache.entry(*mono).or_insert_with(|| {
                    let mut f = ScalarForm::function(MultiPoly::one());
                    for i in mono.dx_indices() {
                        f = f.wedge(&differentials[i - 1]);
                    }
                    if mono.has_dt() {
                        f = f.wedge(&ScalarForm::term(FormMonomial::DT, MultiPoly::one()));
                    }
                    f
                });
                if image.is_zero() {
                    continue;
                }
                acc.add_assign(&image.mul_poly(&p.compose(&sub)));
            }
            out.add_to_entry(*r, *c, &acc);
        }
        Ok(out)
    }
}
