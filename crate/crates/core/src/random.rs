//! Seeded random draws of polynomials, matrices and forms.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::rational::{rat, ratio};
use crate::exactnum::{MultiPoly, Rational, Var};
use crate::forms::{Domain, FormMonomial, HomForm, ScalarForm};
use crate::graded::{Flag, GradedSpace};

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational: an integer in `[-3, 3]` or a half-integer.
pub fn coefficient(rng: &mut Rng64) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-3..=3);
        if n == 0 {
            continue;
        }
        return if rng.gen_bool(0.25) { ratio(n, 2) } else { rat(n) };
    }
}

/// A polynomial with at most `max_terms` terms of total degree `≤ deg` in
/// the given variables. May be zero only if `max_terms` is zero.
pub fn poly(rng: &mut Rng64, vars: &[Var], deg: u32, max_terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero();
    let terms = if max_terms == 0 { 0 } else { rng.gen_range(1..=max_terms) };
    for _ in 0..terms {
        let mut powers = Vec::new();
        let mut budget = rng.gen_range(0..=deg);
        let mut order = vars.to_vec();
        order.shuffle(rng);
        for v in &order {
            if budget == 0 {
                break;
            }
            let e = rng.gen_range(0..=budget);
            if e > 0 {
                powers.push((*v, e));
                budget -= e;
            }
        }
        p = p.add_poly(&MultiPoly::monomial(coefficient(rng), &powers));
    }
    p
}

/// Chart variables `x₁..x_m`, followed by `t` when `with_t`.
pub fn variables(m: usize, with_t: bool) -> Vec<Var> {
    let mut v: Vec<Var> = (1..=m).map(|i| Var::X(i as u8)).collect();
    if with_t {
        v.push(Var::T);
    }
    v
}

/// All wedge monomials on `ℝ^m` (with `dt` when `with_t`) of form degree `p`.
pub fn monomials_of_degree(m: usize, with_t: bool, p: u32) -> Vec<FormMonomial> {
    let gens = m + usize::from(with_t);
    (0u32..(1 << gens))
        .filter(|b| b.count_ones() == p)
        .map(|b| {
            let dx: Vec<usize> = (0..m).filter(|i| b & (1 << i) != 0).map(|i| i + 1).collect();
            let dt = with_t && b & (1 << m) != 0;
            FormMonomial::from_parts(&dx, dt).expect("distinct generators")
        })
        .collect()
}

/// Shape and density of a random homogeneous form.
#[derive(Clone, Debug)]
pub struct FormShape {
    pub m: usize,
    pub domain: Domain,
    pub total_degree: i32,
    pub poly_degree: u32,
    /// Probability that an admissible `(entry, monomial)` slot is filled.
    pub density: f64,
    pub max_terms: usize,
}

/// A random homogeneous form `V → W` of the requested total degree. When a
/// flag is given, only strictly lowering entries are used (then `V = W`).
pub fn homogeneous_form(
    rng: &mut Rng64,
    shape: &FormShape,
    source: &GradedSpace,
    target: &GradedSpace,
    flag: Option<&Flag>,
) -> HomForm {
    let with_t = shape.domain == Domain::Cylinder;
    let vars = variables(shape.m, with_t);
    let max_p = shape.m as u32 + u32::from(with_t);
    let sd = source.basis_degrees();
    let td = target.basis_degrees();
    let mut f = HomForm::zero(shape.m, shape.domain, source, target);
    for (r, dr) in td.iter().enumerate() {
        for (c, dc) in sd.iter().enumerate() {
            if let Some(fl) = flag {
                if !fl.lowers(r, c) {
                    continue;
                }
            }
            let p = shape.total_degree - (dr - dc);
            if p < 0 || p as u32 > max_p {
                continue;
            }
            for mono in monomials_of_degree(shape.m, with_t, p as u32) {
                if rng.gen_bool(shape.density) {
                    let q = poly(rng, &vars, shape.poly_degree, shape.max_terms);
                    f.add_to_entry(r, c, &ScalarForm::term(mono, q));
                }
            }
        }
    }
    f
}

/// A random graded space with `dim` basis vectors spread over degrees in
/// `lo..=hi`.
pub fn graded_space(rng: &mut Rng64, dim: usize, lo: i32, hi: i32) -> GradedSpace {
    let mut dims = std::collections::BTreeMap::new();
    for _ in 0..dim.max(1) {
        *dims.entry(rng.gen_range(lo..=hi)).or_insert(0) += 1;
    }
    GradedSpace::new(dims).expect("positive dimension")
}

/// A flag with `layers` nonempty layers (capped at `dim`) assigning basis
/// vectors at random.
pub fn flag(rng: &mut Rng64, dim: usize, layers: usize) -> Flag {
    let layers = layers.clamp(1, dim.max(1));
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    let mut parts = vec![Vec::new(); layers];
    for (k, i) in idx.into_iter().enumerate() {
        let l = if k < layers { k } else { rng.gen_range(0..layers) };
        parts[l].push(i);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    Flag::new(dim, parts).expect("partition of the basis")
}
