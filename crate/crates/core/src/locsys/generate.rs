use rand::Rng;

use crate::chen::gauge_action;
use crate::exactnum::MultiPoly;
use crate::forms::{Domain, FormMonomial, HomForm, ScalarForm};
use crate::graded::{Flag, GradedSpace};
use crate::random::{self, FormShape, Rng64};

use super::{mc_residual, LocsysError, Superconnection};

/// Knobs for [`generate_flat_with`].
#[derive(Clone, Debug)]
pub struct FlatParams {
    pub m: usize,
    pub domain: Domain,
    pub poly_degree: u32,
    /// Probability of filling an admissible slot of `u` or `α_c`.
    pub density: f64,
    pub max_terms: usize,
    /// Let `u` carry higher form-degree pieces of total degree 0, not just
    /// functions.
    pub mixed: bool,
}

impl FlatParams {
    pub fn new(m: usize, domain: Domain, poly_degree: u32) -> Self {
        Self {
            m,
            domain,
            poly_degree,
            density: 0.5,
            max_terms: 2,
            mixed: false,
        }
    }
}

/// A flat system `α = g⁻¹α_c g − g⁻¹dg` and the data it was built from.
#[derive(Clone, Debug)]
pub struct FlatDraw {
    pub system: Superconnection,
    /// `g = id + u`.
    pub g: HomForm,
    /// Constant, internal degree 1, `α_c² = 0`.
    pub alpha_c: HomForm,
}

impl FlatDraw {
    /// `(V, d − α_c)` on the same domain.
    pub fn constant_system(&self) -> Superconnection {
        let flag = self.system.flag().cloned();
        Superconnection::new(self.system.space().clone(), self.alpha_c.clone(), flag).expect("constant part is admissible")
    }
}

/// A seeded flat system on the cylinder over `ℝ^m`.
pub fn generate_flat(
    seed: u64,
    space: &GradedSpace,
    flag: &Flag,
    m: usize,
    max_poly_degree: u32,
) -> Result<FlatDraw, LocsysError> {
    let mut rng = random::rng(seed);
    generate_flat_with(&mut rng, seed, space, flag, &FlatParams::new(m, Domain::Cylinder, max_poly_degree))
}

const ATTEMPTS: usize = 8;

pub fn generate_flat_with(
    rng: &mut Rng64,
    seed: u64,
    space: &GradedSpace,
    flag: &Flag,
    params: &FlatParams,
) -> Result<FlatDraw, LocsysError> {
    if flag.dim() != space.dim() {
        return Err(LocsysError::FlagMismatch {
            flag: flag.dim(),
            dim: space.dim(),
        });
    }
    for _ in 0..ATTEMPTS {
        let alpha_c = constant_mc(rng, space, flag, params);
        let u = gauge_part(rng, space, flag, params);
        let g = HomForm::identity(params.m, params.domain, space).add(&u);
        let alpha = gauge_action(&alpha_c, &g)?;
        let system = Superconnection::new(space.clone(), alpha, Some(flag.clone()))?;
        if mc_residual(&system).is_zero() && system.alpha().is_strictly_flag_lowering(flag) {
            return Ok(FlatDraw { system, g, alpha_c });
        }
    }
    Err(LocsysError::DrawFailed {
        seed,
        attempts: ATTEMPTS,
    })
}

/// Strictly lowering constant of internal degree 1 using only blocks
/// `V^k → V^{k+1}` for non-adjacent `k`, so that its square vanishes.
fn constant_mc(rng: &mut Rng64, space: &GradedSpace, flag: &Flag, params: &FlatParams) -> HomForm {
    let degs = space.basis_degrees();
    let mut used = Vec::new();
    for (k, _) in space.degrees() {
        if space.dim_of(k + 1) > 0 && !used.contains(&(k - 1)) && rng.gen_bool(0.5) {
            used.push(k);
        }
    }
    let mut out = HomForm::zero(params.m, params.domain, space, space);
    for (r, dr) in degs.iter().enumerate() {
        for (c, dc) in degs.iter().enumerate() {
            if *dr == dc + 1 && used.contains(dc) && flag.lowers(r, c) && rng.gen_bool(params.density) {
                let p = MultiPoly::constant(random::coefficient(rng));
                out.add_to_entry(r, c, &ScalarForm::term(FormMonomial::ONE, p));
            }
        }
    }
    out
}

fn gauge_part(rng: &mut Rng64, space: &GradedSpace, flag: &Flag, params: &FlatParams) -> HomForm {
    let shape = FormShape {
        m: params.m,
        domain: params.domain,
        total_degree: 0,
        poly_degree: params.poly_degree,
        density: params.density,
        max_terms: params.max_terms,
    };
    let u = random::homogeneous_form(rng, &shape, space, space, Some(flag));
    if params.mixed {
        u
    } else {
        u.partial_degree_component(0)
    }
}
