use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::FormMonomial;

/// A `Hom(V,W)`-valued element of the exterior algebra on `dx₁..dx_m` at a
/// single point, with float coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorValue {
    src_par: Vec<i32>,
    tgt_par: Vec<i32>,
    coeffs: BTreeMap<FormMonomial, DMatrix<f64>>,
}

fn parity(degs: &[i32]) -> Vec<i32> {
    degs.iter().map(|d| d.rem_euclid(2)).collect()
}

impl ExteriorValue {
    pub fn zero(src_degs: &[i32], tgt_degs: &[i32]) -> Self {
        Self {
            src_par: parity(src_degs),
            tgt_par: parity(tgt_degs),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(degs: &[i32]) -> Self {
        let mut v = Self::zero(degs, degs);
        v.coeffs
            .insert(FormMonomial::ONE, DMatrix::identity(degs.len(), degs.len()));
        v
    }

    pub fn rows(&self) -> usize {
        self.tgt_par.len()
    }

    pub fn cols(&self) -> usize {
        self.src_par.len()
    }

    /// Adds `m` to the coefficient of `mono`.
    pub fn accumulate(&mut self, mono: FormMonomial, m: DMatrix<f64>) {
        match self.coeffs.get_mut(&mono) {
            Some(acc) => *acc += m,
            None => {
                self.coeffs.insert(mono, m);
            }
        }
    }

    pub fn coeff(&self, mono: FormMonomial) -> DMatrix<f64> {
        self.coeffs
            .get(&mono)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.rows(), self.cols()))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &FormMonomial> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|m| m.iter().all(|x| *x == 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .values()
            .flat_map(|m| m.iter())
            .fold(0.0, |a, x| a.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.values().all(|m| m.iter().all(|x| x.is_finite()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, m) in &other.coeffs {
            out.accumulate(*k, m.clone());
        }
        out
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for m in out.coeffs.values_mut() {
            *m *= c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Product with the Koszul sign `(−1)^{a·q}`, where `a` is the internal
    /// degree of each entry of the left factor and `q` the form degree of
    /// the right monomial.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.src_par, other.tgt_par, "non-composable exterior values");
        let mut out = Self {
            src_par: other.src_par.clone(),
            tgt_par: self.tgt_par.clone(),
            coeffs: BTreeMap::new(),
        };
        for (a, ma) in &self.coeffs {
            let mut flipped = ma.clone();
            for r in 0..ma.nrows() {
                for c in 0..ma.ncols() {
                    if (self.tgt_par[r] + self.src_par[c]) % 2 == 1 {
                        flipped[(r, c)] = -flipped[(r, c)];
                    }
                }
            }
            for (b, mb) in &other.coeffs {
                let Some((neg, mono)) = a.wedge(*b) else {
                    continue;
                };
                let left = if b.degree() % 2 == 1 { &flipped } else { ma };
                let mut prod = left * mb;
                if neg {
                    prod = -prod;
                }
                out.accumulate(mono, prod);
            }
        }
        out
    }
}
