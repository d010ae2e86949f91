use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;
use crate::forms::{Domain, HomForm};
use crate::graded::{Flag, GradedSpace};

use super::LocsysError;

/// A graded space `V` with a total-degree-1 form `α ∈ Ω(End V)` and an
/// optional flag certifying that `α` is strictly lowering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superconnection {
    space: GradedSpace,
    alpha: HomForm,
    flag: Option<Flag>,
}

impl Superconnection {
    pub fn new(space: GradedSpace, alpha: HomForm, flag: Option<Flag>) -> Result<Self, LocsysError> {
        if alpha.source() != &space || alpha.target() != &space {
            return Err(LocsysError::NotEndomorphism);
        }
        let degrees = alpha.total_degrees();
        if degrees.iter().any(|&k| k != 1) {
            return Err(LocsysError::Degree(degrees.into_iter().collect()));
        }
        if let Some(f) = &flag {
            if f.dim() != space.dim() {
                return Err(LocsysError::FlagMismatch {
                    flag: f.dim(),
                    dim: space.dim(),
                });
            }
        }
        Ok(Self { space, alpha, flag })
    }

    /// `D = d` on `V`.
    pub fn trivial(m: usize, domain: Domain, space: &GradedSpace, flag: Option<Flag>) -> Self {
        Self::new(space.clone(), HomForm::zero(m, domain, space, space), flag).expect("zero form is admissible")
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn alpha(&self) -> &HomForm {
        &self.alpha
    }

    pub fn flag(&self) -> Option<&Flag> {
        self.flag.as_ref()
    }

    pub fn m(&self) -> usize {
        self.alpha.m()
    }

    pub fn domain(&self) -> Domain {
        self.alpha.domain()
    }

    pub fn max_form_degree(&self) -> u32 {
        self.m() as u32 + u32::from(self.domain() == Domain::Cylinder)
    }

    /// `α_k`, the form-degree-`k` part.
    pub fn component(&self, k: u32) -> HomForm {
        self.alpha.partial_degree_component(k)
    }

    /// `ι_c*` of a system on the cylinder.
    pub fn restrict_at(&self, c: &Rational) -> Self {
        Self {
            space: self.space.clone(),
            alpha: self.alpha.restrict_at(c),
            flag: self.flag.clone(),
        }
    }

    pub fn with_flag(mut self, flag: Option<Flag>) -> Result<Self, LocsysError> {
        self.flag = flag;
        Self::new(self.space, self.alpha, self.flag)
    }

    pub fn to_serial(&self) -> SuperconnectionSerial {
        SuperconnectionSerial {
            space: self.space.clone(),
            alpha: self.alpha.clone(),
            flag: self.flag.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuperconnectionSerial {
    pub space: GradedSpace,
    pub alpha: HomForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<Flag>,
}

impl TryFrom<SuperconnectionSerial> for Superconnection {
    type Error = LocsysError;

    fn try_from(s: SuperconnectionSerial) -> Result<Self, LocsysError> {
        Superconnection::new(s.space, s.alpha, s.flag)
    }
}

impl Serialize for Superconnection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_serial().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Superconnection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = SuperconnectionSerial::deserialize(d)?;
        Superconnection::try_from(s).map_err(serde::de::Error::custom)
    }
}
