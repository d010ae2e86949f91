use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use hol_core::ainfty::{pullback_chain, TensorChain};
use hol_core::exactnum::rational::{self, rat, zero};
use hol_core::exactnum::{MultiPoly, Rational, Var};
use hol_core::fixtures::{exact_nilpotent_alpha, nilpotent, nilpotent_dx, nilpotent_flag, plane, x};
use hol_core::forms::{Domain, FormMonomial, HomForm, PolyMap};
use hol_core::locsys::{pullback_superconnection, Superconnection};
use hol_core::random;
use hol_core::sample::{sample_chain_with, ChainProfile};

use crate::CliError;

/// A gauge relation `α = g⁻¹βg − g⁻¹dg` between `systems[system]` and `beta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gauge {
    pub system: usize,
    pub beta: Superconnection,
    pub g: HomForm,
}

/// The same chain seen through per-object gauges: `chain` lives on the
/// `β` side and `ξ_i = g_{i+1}⁻¹ ζ_i g_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantSide {
    pub chain: TensorChain,
    pub gauges: Vec<HomForm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioChain {
    pub chain: TensorChain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<ConstantSide>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub systems: Vec<Superconnection>,
    #[serde(default)]
    pub chains: Vec<ScenarioChain>,
    #[serde(default)]
    pub gauges: Vec<Gauge>,
    #[serde(default)]
    pub homotopies: Vec<PolyMap>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "point")]
    pub base_point: Option<Vec<Rational>>,
}

mod point {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        let strings: Option<Vec<String>> = p.as_ref().map(|v| v.iter().map(rational::format_rational).collect());
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let strings = Option::<Vec<String>>::deserialize(d)?;
        strings
            .map(|v| v.iter().map(|s| rational::parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

fn invalid(location: impl Into<String>, message: impl fmt::Display) -> CliError {
    CliError::Invalid {
        location: location.into(),
        message: message.to_string(),
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| CliError::Schema {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (i, s) in self.systems.iter().enumerate() {
            if s.m() != self.m {
                return Err(invalid(format!("systems[{i}]"), format!("chart dimension {} != {}", s.m(), self.m)));
            }
        }
        for (i, c) in self.chains.iter().enumerate() {
            if c.chain.m() != self.m {
                return Err(invalid(format!("chains[{i}]"), "chart dimension mismatch"));
            }
            if let Some(side) = &c.constant {
                let n = c.chain.n();
                if side.chain.n() != n || side.gauges.len() != n + 1 {
                    return Err(invalid(format!("chains[{i}].constant"), "needs a chain of the same length and one gauge per object"));
                }
                for (k, (g, (a, b))) in side.gauges.iter().zip(c.chain.systems().iter().zip(side.chain.systems())).enumerate() {
                    if g.source() != a.space() || g.target() != b.space() {
                        return Err(invalid(format!("chains[{i}].constant.gauges[{k}]"), "gauge does not map V_i to W_i"));
                    }
                }
            }
        }
        for (j, g) in self.gauges.iter().enumerate() {
            let Some(s) = self.systems.get(g.system) else {
                return Err(invalid(format!("gauges[{j}].system"), format!("no system {}", g.system)));
            };
            if s.domain() != Domain::Cylinder || g.beta.domain() != Domain::Cylinder {
                return Err(invalid(format!("gauges[{j}]"), "gauge data must live on the cylinder"));
            }
            if g.g.source() != s.space() || g.g.target() != g.beta.space() || g.beta.m() != self.m {
                return Err(invalid(format!("gauges[{j}].g"), "gauge does not map the system's space to beta's"));
            }
        }
        for (j, h) in self.homotopies.iter().enumerate() {
            if !h.with_t() || h.source_dim() != self.m || h.target_dim() != self.m {
                return Err(invalid(format!("homotopies[{j}]"), format!("expected a map ℝ^{0} × [0,1] → ℝ^{0}", self.m)));
            }
        }
        if let Some(p) = &self.base_point {
            if p.len() != self.m {
                return Err(invalid("base_point", format!("expected {} coordinates", self.m)));
            }
        }
        Ok(())
    }

    pub fn base_point(&self) -> Vec<Rational> {
        self.base_point.clone().unwrap_or_else(|| vec![zero(); self.m])
    }

    /// Cylinder systems, plus every chart system pulled back along every
    /// homotopy.
    pub fn cylinder_systems(&self) -> Result<Vec<(String, Superconnection)>, CliError> {
        let mut out = Vec::new();
        for (i, s) in self.systems.iter().enumerate() {
            match s.domain() {
                Domain::Cylinder => out.push((format!("system {i}"), s.clone())),
                Domain::Chart => {
                    for (j, h) in self.homotopies.iter().enumerate() {
                        out.push((format!("system {i} via homotopy {j}"), pullback_superconnection(s, h)?));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Chart systems, plus the cylinder ones restricted to `t = 0`.
    pub fn chart_systems(&self) -> Vec<(String, Superconnection)> {
        self.systems
            .iter()
            .enumerate()
            .map(|(i, s)| match s.domain() {
                Domain::Chart => (format!("system {i}"), s.clone()),
                Domain::Cylinder => (format!("system {i} at t=0"), s.restrict_at(&zero())),
            })
            .collect()
    }

    pub fn cylinder_chains(&self) -> Result<Vec<(String, TensorChain)>, CliError> {
        let mut out = Vec::new();
        for (i, c) in self.chains.iter().enumerate() {
            match c.chain.domain() {
                Domain::Cylinder => out.push((format!("chain {i}"), c.chain.clone())),
                Domain::Chart => {
                    for (j, h) in self.homotopies.iter().enumerate() {
                        out.push((format!("chain {i} via homotopy {j}"), pullback_chain(&c.chain, h)?));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn chart_chains(&self) -> Result<Vec<(String, TensorChain)>, CliError> {
        let mut out = Vec::new();
        for (i, c) in self.chains.iter().enumerate() {
            match c.chain.domain() {
                Domain::Chart => out.push((format!("chain {i}"), c.chain.clone())),
                Domain::Cylinder => {
                    let at0 = c.chain.map_forms(|f| Ok(f.restrict_at(&zero())))?;
                    out.push((format!("chain {i} at t=0"), at0));
                }
            }
        }
        Ok(out)
    }
}

/// Size knobs for [`generate_scenario`]: chart dimension, chain length,
/// number of flag layers and polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub m: usize,
    pub n: usize,
    pub nu: usize,
    pub deg: u32,
}

impl Default for Profile {
    fn default() -> Self {
        Self { m: 1, n: 1, nu: 2, deg: 1 }
    }
}

impl Profile {
    pub fn check(&self) -> Result<(), CliError> {
        let bad = |what: &str| Err(CliError::Profile(format!("{what} out of range in {self}")));
        if self.m == 0 || self.m > 3 {
            return bad("m");
        }
        if self.n > 3 {
            return bad("n");
        }
        if self.deg > 3 {
            return bad("deg");
        }
        if self.nu == 0 || self.nu > 4 {
            return bad("nu");
        }
        Ok(())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},n={},nu={},deg={}", self.m, self.n, self.nu, self.deg)
    }
}

impl FromStr for Profile {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let mut p = Profile::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Profile(format!("expected key=value, got {part:?}")))?;
            let v: u32 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Profile(format!("{key}: not a number: {value:?}")))?;
            match key.trim() {
                "m" => p.m = v as usize,
                "n" => p.n = v as usize,
                "nu" => p.nu = v as usize,
                "deg" => p.deg = v,
                other => return Err(CliError::Profile(format!("unknown key {other:?}"))),
            }
        }
        Ok(p)
    }
}

/// One seeded chain of length `n` over flat systems with `nu`-layer flags,
/// every system's gauge to its constant part, the chain's constant side,
/// and two composable homotopies: the contraction to the origin followed by
/// `x ↦ x + t·L(x)` for a random linear `L`.
pub fn generate_scenario(seed: u64, profile: &Profile) -> Result<Scenario, CliError> {
    profile.check()?;
    let mut rng = random::rng(seed);
    let mut cp = ChainProfile::new(profile.m, profile.n, Domain::Cylinder);
    cp.layers = profile.nu;
    cp.dim = profile.nu.max(3);
    cp.poly_degree = profile.deg;
    let sampled = sample_chain_with(&mut rng, seed, &cp)?;
    let constant = ConstantSide {
        chain: sampled.constant_side()?,
        gauges: sampled.draws.iter().map(|d| d.g.clone()).collect(),
    };
    let gauges = sampled
        .draws
        .iter()
        .enumerate()
        .map(|(i, d)| Gauge {
            system: i,
            beta: d.constant_system(),
            g: d.g.clone(),
        })
        .collect();

    let origin = vec![zero(); profile.m];
    let shift = (1..=profile.m)
        .map(|i| {
            let xi = MultiPoly::var(Var::X(i as u8));
            let j = rng.gen_range(1..=profile.m);
            let lin = if rng.gen_bool(0.5) {
                MultiPoly::var(Var::X(j as u8)).scale(&random::coefficient(&mut rng))
            } else {
                MultiPoly::constant(random::coefficient(&mut rng))
            };
            &xi + &(&MultiPoly::var(Var::T) * &lin)
        })
        .collect();
    let homotopies = vec![PolyMap::linear_contraction(&origin), PolyMap::new(profile.m, shift, true)?];
    let base_point = (0..profile.m).map(|_| random::coefficient(&mut rng)).collect();

    Ok(Scenario {
        name: format!("seed{seed}-{}", profile.to_string().replace(',', "-").replace('=', "")),
        m: profile.m,
        seed: Some(seed),
        systems: sampled.chain.systems().to_vec(),
        chains: vec![ScenarioChain {
            chain: sampled.chain,
            constant: Some(constant),
        }],
        gauges,
        homotopies,
        base_point: Some(base_point),
    })
}

/// The worked example on `ℝ²`: `α = N(t dx + x dt)` on the cylinder, whose
/// holonomy is `id + xN`, and `N dx` on the chart, trivialized near 0 by
/// `id + xN`. One chain `ξ = x dt · id` joins the cylinder system to itself,
/// and the homotopies are the contraction to 0 followed by `x ↦ x + 2t`.
/// The gauge `g = id + tN` relates the cylinder system to
/// `β = gαg⁻¹ + dg g⁻¹`.
pub fn worked_example() -> Scenario {
    let v = plane();
    let flag = Some(nilpotent_flag());
    let cyl = Superconnection::new(v.clone(), exact_nilpotent_alpha(), flag.clone()).expect("flat example");
    let chart = Superconnection::new(v.clone(), nilpotent_dx(), flag).expect("flat example");
    let id = hol_core::graded::QMatrix::identity(2);
    let xi = HomForm::from_term(1, Domain::Cylinder, &v, &v, FormMonomial::DT, &x(1), &id);
    let chain = TensorChain::new(vec![cyl.clone(), cyl.clone()], vec![xi]).expect("composable");
    let shift = PolyMap::new(1, vec![&x(1) + &MultiPoly::var(Var::T).scale(&rat(2))], true).expect("valid map");
    let g = HomForm::identity(1, Domain::Cylinder, &v).add(&HomForm::from_term(
        1,
        Domain::Cylinder,
        &v,
        &v,
        FormMonomial::ONE,
        &MultiPoly::var(Var::T),
        &nilpotent(),
    ));
    let g_inv = g.invert().expect("unipotent");
    let beta = g
        .wedge(cyl.alpha())
        .and_then(|a| a.wedge(&g_inv))
        .and_then(|a| Ok(a.add(&g.exterior_d().wedge(&g_inv)?)))
        .expect("composable");
    let beta = Superconnection::new(v.clone(), beta, Some(nilpotent_flag())).expect("flat example");
    Scenario {
        name: "worked-example".into(),
        m: 1,
        seed: None,
        systems: vec![cyl, chart],
        chains: vec![ScenarioChain { chain, constant: None }],
        gauges: vec![Gauge { system: 0, beta, g }],
        homotopies: vec![PolyMap::linear_contraction(&[zero()]), shift],
        base_point: Some(vec![zero()]),
    }
}
