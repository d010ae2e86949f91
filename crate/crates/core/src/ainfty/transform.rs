use crate::exactnum::rational::{one, zero};
use crate::forms::{Domain, HomForm, PolyMap};

use super::chain::TensorChain;
use super::lambda::{lambda_eval, Transformation};
use super::AinftyError;

/// The transformation `f* ⇒ g*` of a polynomial homotopy `h` with
/// `f = h(·, 0)` and `g = h(·, 1)`: chains on the chart are pulled back along
/// `h` and fed to `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolTransformation {
    pub h: PolyMap,
}

impl HolTransformation {
    pub fn new(h: PolyMap) -> Result<Self, AinftyError> {
        if !h.with_t() {
            return Err(AinftyError::BadChain("a homotopy must depend on t".into()));
        }
        Ok(Self { h })
    }

    pub fn start(&self) -> PolyMap {
        self.h.at_height(&zero())
    }

    pub fn end(&self) -> PolyMap {
        self.h.at_height(&one())
    }
}

impl Transformation for HolTransformation {
    fn eval(&self, chain: &TensorChain) -> Result<HomForm, AinftyError> {
        lambda_eval(&pullback_chain(chain, &self.h)?)
    }

    fn source(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.pullback(&self.start())?)
    }

    fn target(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.pullback(&self.end())?)
    }
}

/// Pulls every system and entry of a chart chain back along `h`.
pub fn pullback_chain(chain: &TensorChain, h: &PolyMap) -> Result<TensorChain, AinftyError> {
    if chain.domain() != Domain::Chart {
        return Err(AinftyError::BadChain("homotopies act on chains over a chart".into()));
    }
    chain.map_forms(|f| Ok(f.pullback(h)?))
}

/// `hol_n(ξ_{n−1} ⊗ … ⊗ ξ₀)` for the homotopy `h`.
pub fn hol_transformation(h: &PolyMap, chain: &TensorChain) -> Result<HomForm, AinftyError> {
    HolTransformation::new(h.clone())?.eval(chain)
}

/// `id: f* ⇒ f*`, with `id₀ = id` and all higher components zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTransformation {
    pub f: PolyMap,
}

impl Transformation for IdentityTransformation {
    fn eval(&self, chain: &TensorChain) -> Result<HomForm, AinftyError> {
        let (v0, vn) = (chain.systems()[0].space(), chain.systems()[chain.n()].space());
        let m = self.f.source_dim();
        Ok(if chain.n() == 0 {
            HomForm::identity(m, Domain::Chart, v0)
        } else {
            HomForm::zero(m, Domain::Chart, v0, vn)
        })
    }

    fn source(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.pullback(&self.f)?)
    }

    fn target(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        Ok(form.pullback(&self.f)?)
    }
}

/// `(B∘A)_n(ξ) = Σ_{i=0}^{n} B_i(ξ_{n−1..n−i}) ∧ A_{n−i}(ξ_{n−i−1..0})`.
pub fn compose_transformations<A, B>(a: &A, b: &B, chain: &TensorChain) -> Result<HomForm, AinftyError>
where
    A: Transformation + ?Sized,
    B: Transformation + ?Sized,
{
    let n = chain.n();
    let mut acc: Option<HomForm> = None;
    for i in 0..=n {
        let left = b.eval(&chain.slice(n - i, n))?;
        let right = a.eval(&chain.slice(0, n - i))?;
        let term = left.wedge(&right)?;
        acc = Some(match acc {
            None => term,
            Some(s) => s.try_add(&term)?,
        });
    }
    Ok(acc.expect("at least one summand"))
}

/// `B∘A` as a transformation `F ⇒ H` for `A: F ⇒ G` and `B: G ⇒ H`.
#[derive(Clone, Debug)]
pub struct Composite<A, B> {
    pub first: A,
    pub second: B,
}

impl Composite<HolTransformation, HolTransformation> {
    /// Requires the first homotopy to end where the second starts.
    pub fn of_homotopies(first: HolTransformation, second: HolTransformation) -> Result<Self, AinftyError> {
        if first.end() != second.start() {
            return Err(AinftyError::ContextMismatch("homotopies are not composable".into()));
        }
        Ok(Self { first, second })
    }
}

impl<A: Transformation, B: Transformation> Transformation for Composite<A, B> {
    fn eval(&self, chain: &TensorChain) -> Result<HomForm, AinftyError> {
        compose_transformations(&self.first, &self.second, chain)
    }

    fn source(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        self.first.source(form)
    }

    fn target(&self, form: &HomForm) -> Result<HomForm, AinftyError> {
        self.second.target(form)
    }
}
