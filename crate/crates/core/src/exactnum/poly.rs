use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, format_rational, parse_rational, Rational};
use super::NumError;

/// A polynomial variable. Chart coordinates are `X(1)..X(m)`, `T` is the
/// interval coordinate and `S(j)` are transient simplex coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u8),
    T,
    S(u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::T => write!(f, "t"),
            Var::S(j) => write!(f, "s{j}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumError::Parse(s.to_string());
        match s {
            "t" => Ok(Var::T),
            _ if s.starts_with('x') => s[1..].parse().map(Var::X).map_err(|_| bad()),
            _ if s.starts_with('s') => s[1..].parse().map(Var::S).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Exponent vectors are dense over `vars`, which is kept sorted and minimal:
/// every listed variable occurs with a positive exponent in some term, and no
/// zero coefficient is stored. Two equal polynomials are therefore
/// structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut out: Vec<Var> = a.iter().chain(b).copied().collect();
    out.sort();
    out.dedup();
    out
}

fn positions(from: &[Var], into: &[Var]) -> Vec<usize> {
    from.iter()
        .map(|v| into.binary_search(v).expect("variable missing from union"))
        .collect()
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rational::rat(c))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(rational::one(), &[(v, 1)])
    }

    /// `c * Π v^e` for the listed (variable, exponent) pairs.
    pub fn monomial(c: Rational, powers: &[(Var, u32)]) -> Self {
        let mut vars: Vec<Var> = powers.iter().map(|(v, _)| *v).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            let i = vars.binary_search(v).unwrap();
            exps[i] += e;
        }
        let mut terms = BTreeMap::new();
        terms.insert(exps, c);
        Self::normalized(vars, terms)
    }

    /// Builds from a variable order and `(exponents, coefficient)` pairs,
    /// summing duplicates.
    pub fn from_terms(vars: &[Var], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self, NumError> {
        let mut sorted = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(NumError::DuplicateVariable);
        }
        let pos = positions(vars, &sorted);
        let mut map: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(NumError::ExponentLength {
                    expected: vars.len(),
                    found: exps.len(),
                });
            }
            let mut e = vec![0u32; sorted.len()];
            for (k, x) in exps.iter().enumerate() {
                e[pos[k]] = *x;
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        Ok(Self::normalized(sorted, map))
    }

    fn normalized(vars: Vec<Var>, mut terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|u| *u) {
            return Self { vars, terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|i| used[*i]).collect();
        let new_vars = keep.iter().map(|i| vars[*i]).collect();
        let new_terms = terms
            .into_iter()
            .map(|(e, c)| (keep.iter().map(|i| e[*i]).collect(), c))
            .collect();
        Self {
            vars: new_vars,
            terms: new_terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(exponents, coefficient)` aligned with [`MultiPoly::vars`].
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Terms with exponents aligned to `order`, which must contain every
    /// variable of the polynomial.
    pub fn terms_in(&self, order: &[Var]) -> Result<Vec<(Vec<u32>, Rational)>, NumError> {
        let mut pos = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match order.iter().position(|w| w == v) {
                Some(p) => pos.push(p),
                None => return Err(NumError::UnboundVariable(v.to_string())),
            }
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; order.len()];
                for (k, x) in e.iter().enumerate() {
                    out[pos[k]] = *x;
                }
                (out, c.clone())
            })
            .collect())
    }

    pub fn constant_term(&self) -> Rational {
        let key = vec![0u32; self.vars.len()];
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match self.vars.binary_search(&v) {
            Ok(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.vars == other.vars {
            let mut terms = self.terms.clone();
            for (e, c) in &other.terms {
                *terms.entry(e.clone()).or_insert_with(Rational::zero) += c;
            }
            return Self::normalized(self.vars.clone(), terms);
        }
        let vars = union_vars(&self.vars, &other.vars);
        let mut terms = BTreeMap::new();
        for p in [self, other] {
            let pos = positions(&p.vars, &vars);
            for (e, c) in &p.terms {
                let mut ne = vec![0u32; vars.len()];
                for (k, x) in e.iter().enumerate() {
                    ne[pos[k]] = *x;
                }
                *terms.entry(ne).or_insert_with(Rational::zero) += c;
            }
        }
        Self::normalized(vars, terms)
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let vars = union_vars(&self.vars, &other.vars);
        let pa = positions(&self.vars, &vars);
        let pb = positions(&other.vars, &vars);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let mut base = vec![0u32; vars.len()];
            for (k, x) in ea.iter().enumerate() {
                base[pa[k]] = *x;
            }
            for (eb, cb) in &other.terms {
                let mut e = base.clone();
                for (k, x) in eb.iter().enumerate() {
                    e[pb[k]] += *x;
                }
                let c = ca * cb;
                match terms.get_mut(&e) {
                    Some(acc) => *acc += c,
                    None => {
                        terms.insert(e, c);
                    }
                }
            }
        }
        Self::normalized(vars, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul_poly(self);
        }
        out
    }

    /// Formal partial derivative.
    pub fn diff(&self, v: Var) -> Self {
        let Ok(i) = self.vars.binary_search(&v) else {
            return Self::zero();
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            terms.insert(ne, c * rational::rat(e[i] as i64));
        }
        Self::normalized(self.vars.clone(), terms)
    }

    /// Antiderivative in `v` with zero constant term.
    pub fn antiderivative(&self, v: Var) -> Self {
        let vars = union_vars(&self.vars, &[v]);
        let pos = positions(&self.vars, &vars);
        let i = vars.binary_search(&v).unwrap();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (k, x) in e.iter().enumerate() {
                ne[pos[k]] = *x;
            }
            ne[i] += 1;
            let d = rational::rat(ne[i] as i64);
            terms.insert(ne, c / d);
        }
        Self::normalized(vars, terms)
    }

    /// `∫_{lower}^{upper} p dv`; the bounds must not involve `v`.
    pub fn integrate(&self, v: Var, lower: &Self, upper: &Self) -> Result<Self, NumError> {
        if lower.contains_var(v) || upper.contains_var(v) {
            return Err(NumError::BoundDependsOnVariable(v.to_string()));
        }
        let anti = self.antiderivative(v);
        Ok(anti.subst(v, upper).sub_poly(&anti.subst(v, lower)))
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.add_poly(&other.neg_poly())
    }

    pub fn neg_poly(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Substitutes `v := value`.
    pub fn subst(&self, v: Var, value: &Self) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        if value.terms.len() == 1 && value.vars.len() == 1 {
            let (e, c) = value.terms.iter().next().unwrap();
            if e[0] == 1 && c.is_one() {
                return self.rename(v, value.vars[0]);
            }
        }
        let mut images = BTreeMap::new();
        images.insert(v, value.clone());
        self.compose(&images)
    }

    /// Renames `from` to `to`, merging exponents if `to` already occurs.
    pub fn rename(&self, from: Var, to: Var) -> Self {
        let Ok(i) = self.vars.binary_search(&from) else {
            return self.clone();
        };
        let mut src_vars = self.vars.clone();
        src_vars.remove(i);
        let vars = union_vars(&src_vars, &[to]);
        let j = vars.binary_search(&to).unwrap();
        let rest_pos = positions(&src_vars, &vars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            let mut k = 0;
            for (idx, x) in e.iter().enumerate() {
                if idx == i {
                    continue;
                }
                ne[rest_pos[k]] += *x;
                k += 1;
            }
            ne[j] += e[i];
            *terms.entry(ne).or_insert_with(Rational::zero) += c;
        }
        Self::normalized(vars, terms)
    }

    /// Simultaneous substitution of every variable in `images`; variables
    /// without an image are left in place.
    pub fn compose(&self, images: &BTreeMap<Var, MultiPoly>) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // power tables per substituted variable
        let mut tables: Vec<Option<Vec<MultiPoly>>> = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match images.get(v) {
                Some(img) => {
                    let max = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
                    let mut pw = vec![MultiPoly::one()];
                    for k in 1..=max as usize {
                        let next = pw[k - 1].mul_poly(img);
                        pw.push(next);
                    }
                    tables.push(Some(pw));
                }
                None => tables.push(None),
            }
        }
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut kept: Vec<(Var, u32)> = Vec::new();
            let mut term = MultiPoly::one();
            for (i, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                match &tables[i] {
                    Some(pw) => term = term.mul_poly(&pw[*x as usize]),
                    None => kept.push((self.vars[i], *x)),
                }
            }
            let mono = MultiPoly::monomial(c.clone(), &kept);
            acc = acc.add_poly(&term.mul_poly(&mono));
        }
        acc
    }

    /// Floating-point evaluation. Every variable must be bound.
    pub fn eval_f64(&self, point: &BTreeMap<Var, f64>) -> Result<f64, NumError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match point.get(v) {
                Some(x) => values.push(*x),
                None => return Err(NumError::UnboundVariable(v.to_string())),
            }
        }
        Ok(self.eval_slice(&values))
    }

    /// Evaluates with values aligned to [`MultiPoly::vars`], nesting Horner
    /// steps over the first variable.
    fn eval_slice(&self, values: &[f64]) -> f64 {
        if self.vars.is_empty() {
            return self.terms.values().next().map(rational::to_f64).unwrap_or(0.0);
        }
        // terms are sorted lexicographically, so equal leading exponents are
        // contiguous; accumulate from the highest power of the first variable
        let mut groups: BTreeMap<u32, f64> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = rational::to_f64(c);
            for (k, x) in e.iter().enumerate().skip(1) {
                rest *= values[k].powi(*x as i32);
            }
            *groups.entry(e[0]).or_insert(0.0) += rest;
        }
        let top = *groups.keys().next_back().unwrap();
        let mut acc = 0.0;
        for k in (0..=top).rev() {
            acc = acc * values[0] + groups.get(&k).copied().unwrap_or(0.0);
        }
        acc
    }

    /// Serialized terms aligned with the declared variable order.
    pub fn to_serial(&self, order: &[Var]) -> Result<Vec<SerialTerm>, NumError> {
        Ok(self
            .terms_in(order)?
            .into_iter()
            .map(|(exps, coef)| SerialTerm {
                coef: format_rational(&coef),
                exps,
            })
            .collect())
    }

    pub fn from_serial(order: &[Var], terms: &[SerialTerm]) -> Result<Self, NumError> {
        let parsed: Result<Vec<_>, NumError> = terms
            .iter()
            .map(|t| Ok((t.exps.clone(), parse_rational(&t.coef)?)))
            .collect();
        Self::from_terms(order, parsed?)
    }
}

/// One serialized polynomial term: `{coef: "num/den", exps: [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerialTerm {
    pub coef: String,
    pub exps: Vec<u32>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let is_const = e.iter().all(|x| *x == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
            }
            let mut sep = !a.is_one() && !is_const;
            for (v, x) in self.vars.iter().zip(e) {
                if *x == 0 {
                    continue;
                }
                if sep {
                    write!(f, "*")?;
                }
                sep = true;
                if *x == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_poly(rhs)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.sub_poly(rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_poly(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_poly()
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.add_poly(&rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.sub_poly(&rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_poly(&rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_poly()
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}
