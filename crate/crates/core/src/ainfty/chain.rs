use serde::{Deserialize, Serialize};

use crate::forms::{Domain, HomForm};
use crate::locsys::Superconnection;

use super::AinftyError;

/// `ξ_{n−1} ⊗ … ⊗ ξ₀` with `ξ_i: V_i → V_{i+1}`, stored as `xis[i] = ξ_i`,
/// together with the systems `S₀..S_n` on the `V_i`.
///
/// Objects carry labels so that chains obtained by merging adjacent entries
/// remember which systems they skip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorChain {
    systems: Vec<Superconnection>,
    xis: Vec<HomForm>,
    degrees: Vec<i32>,
    objects: Vec<usize>,
}

impl TensorChain {
    /// Degrees are read off the entries; zero entries get degree 0.
    pub fn new(systems: Vec<Superconnection>, xis: Vec<HomForm>) -> Result<Self, AinftyError> {
        let mut degrees = Vec::with_capacity(xis.len());
        for (i, x) in xis.iter().enumerate() {
            let k = x
                .homogeneous_degree()
                .map_err(|_| AinftyError::BadChain(format!("entry {i} is not homogeneous")))?;
            degrees.push(k.unwrap_or(0));
        }
        Self::with_degrees(systems, xis, degrees)
    }

    pub fn with_degrees(systems: Vec<Superconnection>, xis: Vec<HomForm>, degrees: Vec<i32>) -> Result<Self, AinftyError> {
        let objects = (0..systems.len()).collect();
        Self::assemble(systems, xis, degrees, objects)
    }

    /// The zero-length chain on one system.
    pub fn single(system: Superconnection) -> Self {
        Self::assemble(vec![system], vec![], vec![], vec![0]).expect("single system is a chain")
    }

    fn assemble(
        systems: Vec<Superconnection>,
        xis: Vec<HomForm>,
        degrees: Vec<i32>,
        objects: Vec<usize>,
    ) -> Result<Self, AinftyError> {
        if systems.len() != xis.len() + 1 || degrees.len() != xis.len() || objects.len() != systems.len() {
            return Err(AinftyError::BadChain("need n + 1 systems for n entries".into()));
        }
        let (m, domain) = (systems[0].m(), systems[0].domain());
        for s in &systems {
            if s.m() != m || s.domain() != domain {
                return Err(AinftyError::BadChain("systems live on different domains".into()));
            }
        }
        for (i, x) in xis.iter().enumerate() {
            if x.source() != systems[i].space() || x.target() != systems[i + 1].space() {
                return Err(AinftyError::BadChain(format!("entry {i} is not a map V_{i} → V_{}", i + 1)));
            }
            if x.m() != m || x.domain() != domain {
                return Err(AinftyError::BadChain(format!("entry {i} lives on a different domain")));
            }
            if !x.is_zero() && x.homogeneous_degree().ok().flatten() != Some(degrees[i]) {
                return Err(AinftyError::BadChain(format!("entry {i} does not have degree {}", degrees[i])));
            }
        }
        Ok(Self {
            systems,
            xis,
            degrees,
            objects,
        })
    }

    pub fn n(&self) -> usize {
        self.xis.len()
    }

    pub fn m(&self) -> usize {
        self.systems[0].m()
    }

    pub fn domain(&self) -> Domain {
        self.systems[0].domain()
    }

    pub fn systems(&self) -> &[Superconnection] {
        &self.systems
    }

    pub fn xis(&self) -> &[HomForm] {
        &self.xis
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    /// `Σ_{j ∈ range} |ξ_j|`.
    pub fn degree_sum(&self, range: std::ops::Range<usize>) -> i32 {
        self.degrees[range].iter().sum()
    }

    /// `ξ_{hi−1} ⊗ … ⊗ ξ_{lo}` on the systems `S_lo..S_hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Self {
        Self {
            systems: self.systems[lo..=hi].to_vec(),
            xis: self.xis[lo..hi].to_vec(),
            degrees: self.degrees[lo..hi].to_vec(),
            objects: self.objects[lo..=hi].to_vec(),
        }
    }

    /// Replaces `ξ_i` by a form of the same type.
    pub fn replace(&self, i: usize, xi: HomForm, degree: i32) -> Self {
        let mut out = self.clone();
        out.xis[i] = xi;
        out.degrees[i] = degree;
        out
    }

    /// Replaces `ξ_i ⊗ ξ_{i−1}` by a single map `V_{i−1} → V_{i+1}`, dropping
    /// the system on `V_i`.
    pub fn merge(&self, i: usize, xi: HomForm, degree: i32) -> Self {
        let mut out = self.clone();
        out.xis.splice(i - 1..=i, [xi]);
        out.degrees.splice(i - 1..=i, [degree]);
        out.systems.remove(i);
        out.objects.remove(i);
        out
    }

    /// Applies `f` to every system form and every entry.
    pub fn map_forms(&self, f: impl Fn(&HomForm) -> Result<HomForm, AinftyError>) -> Result<Self, AinftyError> {
        let systems = self
            .systems
            .iter()
            .map(|s| {
                let alpha = f(s.alpha())?;
                Ok(Superconnection::new(s.space().clone(), alpha, s.flag().cloned())?)
            })
            .collect::<Result<Vec<_>, AinftyError>>()?;
        let xis = self.xis.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        Self::assemble(systems, xis, self.degrees.clone(), self.objects.clone())
    }

    pub fn to_serial(&self) -> ChainSerial {
        ChainSerial {
            systems: self.systems.clone(),
            xis: self.xis.clone(),
            degrees: Some(self.degrees.clone()),
        }
    }
}

/// `{systems, xis}` with `xis[i]: V_i → V_{i+1}`. Degrees are needed only for
/// zero entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainSerial {
    pub systems: Vec<Superconnection>,
    pub xis: Vec<HomForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i32>>,
}

impl TryFrom<ChainSerial> for TensorChain {
    type Error = AinftyError;

    fn try_from(s: ChainSerial) -> Result<Self, AinftyError> {
        match s.degrees {
            Some(d) => TensorChain::with_degrees(s.systems, s.xis, d),
            None => TensorChain::new(s.systems, s.xis),
        }
    }
}

impl Serialize for TensorChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_serial().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = ChainSerial::deserialize(d)?;
        TensorChain::try_from(s).map_err(serde::de::Error::custom)
    }
}

/// `Σ ±(chain)`, all terms sharing the outer systems.
#[derive(Clone, Debug, Default)]
pub struct FormalChainSum {
    pub terms: Vec<(i8, TensorChain)>,
}

impl FormalChainSum {
    pub fn push(&mut self, sign: i8, chain: TensorChain) {
        if chain.xis().iter().all(|x| !x.is_zero()) {
            self.terms.push((sign, chain));
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
