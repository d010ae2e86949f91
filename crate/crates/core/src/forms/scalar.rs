use std::collections::BTreeMap;

use crate::exactnum::{MultiPoly, Rational, Var};

use super::FormMonomial;

/// A scalar polynomial differential form `Σ p_σ σ`, with no zero coefficients
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScalarForm {
    terms: BTreeMap<FormMonomial, MultiPoly>,
}

impl ScalarForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(mono: FormMonomial, p: MultiPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(mono, p);
        s
    }

    pub fn function(p: MultiPoly) -> Self {
        Self::term(FormMonomial::ONE, p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormMonomial, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: FormMonomial) -> Option<&MultiPoly> {
        self.terms.get(&mono)
    }

    pub fn add_term(&mut self, mono: FormMonomial, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(acc) => {
                *acc = acc.add_poly(&p);
                if acc.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, p);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, p) in &other.terms {
            self.add_term(*m, p.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|p| p.neg_poly())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &MultiPoly) -> Self {
        self.map_coeffs(|p| p.mul_poly(q))
    }

    /// Applies `f` to every coefficient, dropping zero results.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = Self::zero();
        for (m, p) in &self.terms {
            let q = f(p);
            if !q.is_zero() {
                out.terms.insert(*m, q);
            }
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(FormMonomial) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, p)| (*m, p.clone()))
                .collect(),
        }
    }

    /// Plain wedge of scalar forms.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                if let Some((neg, m)) = a.wedge(*b) {
                    let pq = p.mul_poly(q);
                    out.add_term(m, if neg { pq.neg_poly() } else { pq });
                }
            }
        }
        out
    }

    /// Exterior derivative in `x₁..x_m`, plus `t` when `with_t`.
    pub fn d(&self, m: usize, with_t: bool) -> Self {
        let mut out = Self::zero();
        for (sigma, p) in &self.terms {
            for i in 1..=m {
                let dp = p.diff(Var::X(i as u8));
                if dp.is_zero() {
                    continue;
                }
                if let Some((neg, mono)) = FormMonomial::dx(i).wedge(*sigma) {
                    out.add_term(mono, if neg { dp.neg_poly() } else { dp });
                }
            }
            if with_t {
                let dp = p.diff(Var::T);
                if dp.is_zero() {
                    continue;
                }
                if let Some((neg, mono)) = FormMonomial::DT.wedge(*sigma) {
                    out.add_term(mono, if neg { dp.neg_poly() } else { dp });
                }
            }
        }
        out
    }
}
