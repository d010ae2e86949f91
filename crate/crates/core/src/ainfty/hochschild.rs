use std::collections::BTreeMap;

use crate::exactnum::rational::rat;
use crate::exactnum::{Rational, Var};
use crate::forms::{FormMonomial, HomForm};
use crate::report::ResidualReport;

use super::chain::{FormalChainSum, TensorChain};
use super::AinftyError;

fn parity(k: i32) -> i8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The differential on tensor chains:
///
/// ```text
/// b(ξ) =  Σ_i (−1)^{Σ_{j>i}|ξ_j| + n − i − 1} … dξ_i …
///       − Σ_i (−1)^{Σ_{j>i}|ξ_j| + n − i − 1} … (α_{i+1}∧ξ_i) …
///       + Σ_i (−1)^{Σ_{j≥i}|ξ_j| + n − i − 1} … (ξ_i∧α_i) …
///       + Σ_{i≥1} (−1)^{Σ_{j≥i}|ξ_j| + n − i − 1} … (ξ_i∧ξ_{i−1}) …
/// ```
pub fn hochschild_b(chain: &TensorChain) -> Result<FormalChainSum, AinftyError> {
    let n = chain.n();
    let mut out = FormalChainSum::default();
    let alphas: Vec<&HomForm> = chain.systems().iter().map(|s| s.alpha()).collect();
    for i in 0..n {
        let xi = &chain.xis()[i];
        let deg = chain.degrees()[i];
        let above = chain.degree_sum(i + 1..n);
        let e = above + (n - i - 1) as i32;
        out.push(parity(e), chain.replace(i, xi.exterior_d(), deg + 1));
        out.push(-parity(e), chain.replace(i, alphas[i + 1].wedge(xi)?, deg + 1));
        out.push(parity(e + deg), chain.replace(i, xi.wedge(alphas[i])?, deg + 1));
        if i >= 1 {
            let below = &chain.xis()[i - 1];
            let merged = xi.wedge(below)?;
            out.push(parity(e + deg), chain.merge(i, merged, deg + chain.degrees()[i - 1]));
        }
    }
    Ok(out)
}

/// Coordinates of a form in the monomial basis `(entry, dx/dt word, x/t
/// exponents)`.
type Key = (usize, usize, FormMonomial, Vec<(Var, u32)>);
type Vector = BTreeMap<Key, Rational>;

fn coordinates(f: &HomForm) -> Vector {
    let mut out = Vector::new();
    for ((r, c), s) in f.entries() {
        for (mono, p) in s.terms() {
            for (exps, coef) in p.terms() {
                let key: Vec<(Var, u32)> = p
                    .vars()
                    .iter()
                    .zip(exps)
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| (*v, *e))
                    .collect();
                out.insert((*r, *c, *mono, key), coef.clone());
            }
        }
    }
    out
}

fn axpy(y: &mut Vector, a: &Rational, x: &Vector) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(|| rat(0));
        *entry += a * v;
        if num_traits::Zero::is_zero(entry) {
            y.remove(k);
        }
    }
}

/// Whether `Σ_k c_k · v_{k,L−1} ⊗ … ⊗ v_{k,0}` vanishes in the tensor
/// product. The last factor is expanded in an echelon basis of the vectors
/// that occur there, which splits the question into one smaller question
/// per basis vector.
fn tensor_is_zero(terms: Vec<(Rational, Vec<Vector>)>) -> Result<(), String> {
    let Some(len) = terms.first().map(|t| t.1.len()) else {
        return Ok(());
    };
    if len == 0 {
        let total: Rational = terms.iter().map(|t| t.0.clone()).sum();
        return if num_traits::Zero::is_zero(&total) {
            Ok(())
        } else {
            Err(format!("scalar remainder {total}"))
        };
    }
    let mut basis: Vec<(Key, Vector)> = Vec::new();
    for (_, vs) in &terms {
        let mut v = vs[len - 1].clone();
        for (pivot, b) in &basis {
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, &-c, b);
            }
        }
        if let Some((k, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = rat(1) / c;
            let v = v.into_iter().map(|(key, x)| (key, x * &inv)).collect();
            basis.push((k, v));
        }
    }
    let mut split: Vec<Vec<(Rational, Vec<Vector>)>> = vec![Vec::new(); basis.len()];
    for (coef, mut vs) in terms {
        let mut v = vs.pop().expect("nonempty chain");
        for (j, (pivot, b)) in basis.iter().enumerate() {
            if let Some(c) = v.get(pivot).cloned() {
                axpy(&mut v, &-c.clone(), b);
                split[j].push((&coef * c, vs.clone()));
            }
        }
        debug_assert!(v.is_empty());
    }
    for group in split {
        tensor_is_zero(group)?;
    }
    Ok(())
}

/// Applies `b` twice and tests the result for zero as an element of the
/// tensor algebra, grouping terms by the objects they pass through.
pub fn b_square_residual(chain: &TensorChain) -> Result<ResidualReport, AinftyError> {
    let first = hochschild_b(chain)?;
    let mut groups: BTreeMap<Vec<usize>, Vec<(Rational, Vec<Vector>)>> = BTreeMap::new();
    for (s1, c1) in &first.terms {
        for (s2, c2) in &hochschild_b(c1)?.terms {
            let vectors: Vec<Vector> = c2.xis().iter().map(coordinates).collect();
            groups
                .entry(c2.objects().to_vec())
                .or_default()
                .push((rat(i64::from(s1 * s2)), vectors));
        }
    }
    for (objects, terms) in groups {
        if let Err(w) = tensor_is_zero(terms) {
            return Ok(ResidualReport::failed("b squared", format!("through objects {objects:?}: {w}")));
        }
    }
    Ok(ResidualReport::zero("b squared"))
}
