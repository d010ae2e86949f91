//! Seeded flat systems and tensor chains for property checks.

use rand::Rng;

use crate::ainfty::{AinftyError, TensorChain};
use crate::forms::{Domain, HomForm};
use crate::locsys::{generate_flat_with, FlatDraw, FlatParams};
use crate::random::{self, FormShape, Rng64};

#[derive(Clone, Debug)]
pub struct ChainProfile {
    pub m: usize,
    pub n: usize,
    /// Upper bound on `dim V_i`.
    pub dim: usize,
    pub layers: usize,
    pub poly_degree: u32,
    pub domain: Domain,
    pub mixed: bool,
    pub density: f64,
    pub xi_density: f64,
    /// Range of total degrees drawn for the `ξ_i`.
    pub xi_degrees: (i32, i32),
}

impl ChainProfile {
    pub fn new(m: usize, n: usize, domain: Domain) -> Self {
        Self {
            m,
            n,
            dim: 3,
            layers: 2,
            poly_degree: 2,
            domain,
            mixed: false,
            density: 0.4,
            xi_density: 0.7,
            xi_degrees: (0, 2),
        }
    }
}

/// A chain over flat systems drawn from the gauge orbits of constant
/// Maurer–Cartan elements, with the draws that produced them.
#[derive(Clone, Debug)]
pub struct SampledChain {
    pub chain: TensorChain,
    pub draws: Vec<FlatDraw>,
}

impl SampledChain {
    /// The same chain pushed to the constant trivializations
    /// `ζ_i = g_{i+1} ξ_i g_i⁻¹`.
    pub fn constant_side(&self) -> Result<TensorChain, AinftyError> {
        let systems = self.draws.iter().map(FlatDraw::constant_system).collect();
        let inverses = self.draws.iter().map(|d| d.g.invert()).collect::<Result<Vec<_>, _>>()?;
        let zetas = self
            .chain
            .xis()
            .iter()
            .enumerate()
            .map(|(i, x)| Ok(self.draws[i + 1].g.wedge(x)?.wedge(&inverses[i])?))
            .collect::<Result<Vec<HomForm>, AinftyError>>()?;
        TensorChain::with_degrees(systems, zetas, self.chain.degrees().to_vec())
    }
}

pub fn sample_chain(seed: u64, profile: &ChainProfile) -> Result<SampledChain, AinftyError> {
    let mut rng = random::rng(seed);
    sample_chain_with(&mut rng, seed, profile)
}

pub fn sample_chain_with(rng: &mut Rng64, seed: u64, profile: &ChainProfile) -> Result<SampledChain, AinftyError> {
    let mut params = FlatParams::new(profile.m, profile.domain, profile.poly_degree);
    params.mixed = profile.mixed;
    params.density = profile.density;
    let mut draws = Vec::with_capacity(profile.n + 1);
    for _ in 0..=profile.n {
        let dim = rng.gen_range(profile.layers.max(1)..=profile.dim.max(profile.layers));
        let space = random::graded_space(rng, dim, -1, 1);
        let flag = random::flag(rng, dim, profile.layers);
        draws.push(generate_flat_with(rng, seed, &space, &flag, &params)?);
    }
    let mut xis = Vec::with_capacity(profile.n);
    let mut degrees = Vec::with_capacity(profile.n);
    for i in 0..profile.n {
        let k = rng.gen_range(profile.xi_degrees.0..=profile.xi_degrees.1);
        let shape = FormShape {
            m: profile.m,
            domain: profile.domain,
            total_degree: k,
            poly_degree: profile.poly_degree,
            density: profile.xi_density,
            max_terms: 2,
        };
        let (src, tgt) = (draws[i].system.space(), draws[i + 1].system.space());
        // λ_n only sees entries through their dt part, so prefer entries that have one
        let mut xi = random::homogeneous_form(rng, &shape, src, tgt, None);
        for _ in 0..16 {
            if xi.has_dt() || profile.domain == Domain::Chart {
                break;
            }
            xi = random::homogeneous_form(rng, &shape, src, tgt, None);
        }
        xis.push(xi);
        degrees.push(k);
    }
    let systems = draws.iter().map(|d| d.system.clone()).collect();
    let chain = TensorChain::with_degrees(systems, xis, degrees)?;
    Ok(SampledChain { chain, draws })
}
