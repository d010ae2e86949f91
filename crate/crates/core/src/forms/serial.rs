use serde::{Deserialize, Serialize};

use crate::exactnum::{MultiPoly, SerialTerm, Var};
use crate::graded::{GradedSpace, SpaceSerial};

use super::{Domain, FormError, FormMonomial, HomForm, ScalarForm};

/// `{m, source, target, terms: [{dx, dt, src_deg, tgt_deg, matrix}]}` with
/// polynomial exponents aligned to `x₁..x_m, t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomFormSerial {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    pub source: SpaceSerial,
    pub target: SpaceSerial,
    pub terms: Vec<FormTermSerial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermSerial {
    pub dx: Vec<usize>,
    pub dt: bool,
    pub src_deg: i32,
    pub tgt_deg: i32,
    pub matrix: Vec<Vec<Vec<SerialTerm>>>,
}

fn var_order(m: usize) -> Vec<Var> {
    (1..=m).map(|i| Var::X(i as u8)).chain([Var::T]).collect()
}

impl HomForm {
    pub fn to_serial(&self) -> Result<HomFormSerial, FormError> {
        let order = var_order(self.m);
        let mut monos: std::collections::BTreeSet<FormMonomial> = Default::default();
        for (_, s) in self.entries() {
            monos.extend(s.terms().map(|(m, _)| *m));
        }
        let mut terms = Vec::new();
        for mono in monos {
            for (k, kd) in self.source().degrees() {
                for (l, ld) in self.target().degrees() {
                    let r0 = self.target().offset(l);
                    let c0 = self.source().offset(k);
                    let mut any = false;
                    let mut matrix = vec![vec![Vec::new(); kd]; ld];
                    for (r, row) in matrix.iter_mut().enumerate() {
                        for (c, cell) in row.iter_mut().enumerate() {
                            if let Some(p) = self.entry(r0 + r, c0 + c).and_then(|s| s.coeff(mono)) {
                                *cell = p.to_serial(&order)?;
                                any = true;
                            }
                        }
                    }
                    if any {
                        terms.push(FormTermSerial {
                            dx: mono.dx_indices(),
                            dt: mono.has_dt(),
                            src_deg: k,
                            tgt_deg: l,
                            matrix,
                        });
                    }
                }
            }
        }
        Ok(HomFormSerial {
            m: self.m(),
            domain: Some(match self.domain() {
                Domain::Chart => "chart".into(),
                Domain::Cylinder => "cylinder".into(),
            }),
            source: self.source().to_serial(),
            target: self.target().to_serial(),
            terms,
        })
    }

    /// Inverse of [`HomForm::to_serial`]. A missing `domain` means the
    /// cylinder.
    pub fn from_serial(s: &HomFormSerial) -> Result<Self, FormError> {
        let source = GradedSpace::from_serial(&s.source)?;
        let target = GradedSpace::from_serial(&s.target)?;
        let domain = match s.domain.as_deref() {
            None | Some("cylinder") => Domain::Cylinder,
            Some("chart") => Domain::Chart,
            Some(other) => return Err(FormError::Malformed(format!("unknown domain `{other}`"))),
        };
        let order = var_order(s.m);
        let mut f = HomForm::zero(s.m, domain, &source, &target);
        for (ti, t) in s.terms.iter().enumerate() {
            if t.dx.iter().any(|i| *i == 0 || *i > s.m) {
                return Err(FormError::Malformed(format!("term {ti}: dx index out of range")));
            }
            let mono = FormMonomial::from_parts(&t.dx, t.dt)
                .ok_or_else(|| FormError::Malformed(format!("term {ti}: repeated dx index")))?;
            let (rows, cols) = (target.dim_of(t.tgt_deg), source.dim_of(t.src_deg));
            if t.matrix.len() != rows || t.matrix.iter().any(|r| r.len() != cols) {
                return Err(FormError::Malformed(format!(
                    "term {ti}: matrix shape does not match degrees {} -> {}",
                    t.src_deg, t.tgt_deg
                )));
            }
            let (r0, c0) = (target.offset(t.tgt_deg), source.offset(t.src_deg));
            for (r, row) in t.matrix.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    let p = MultiPoly::from_serial(&order, cell)?;
                    f.add_to_entry(r0 + r, c0 + c, &ScalarForm::term(mono, p));
                }
            }
        }
        Ok(f)
    }
}

impl Serialize for HomForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_serial()
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = HomFormSerial::deserialize(d)?;
        HomForm::from_serial(&s).map_err(serde::de::Error::custom)
    }
}

/// `{source_dim, with_t, images}` with image polynomials over
/// `x₁..x_q, t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMapSerial {
    pub source_dim: usize,
    #[serde(default)]
    pub with_t: bool,
    pub images: Vec<Vec<SerialTerm>>,
}

impl Serialize for super::PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let order = var_order(self.source_dim());
        let images = self
            .images()
            .iter()
            .map(|p| p.to_serial(&order))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::ser::Error::custom)?;
        PolyMapSerial {
            source_dim: self.source_dim(),
            with_t: self.with_t(),
            images,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for super::PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = PolyMapSerial::deserialize(d)?;
        let order = var_order(s.source_dim);
        let images = s
            .images
            .iter()
            .map(|t| MultiPoly::from_serial(&order, t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        super::PolyMap::new(s.source_dim, images, s.with_t).map_err(serde::de::Error::custom)
    }
}
