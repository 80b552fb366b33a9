//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded-lexicographic with respect to the declared variable order. The
//! largest key is the leading monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, to_f64, Rational};
use super::ScalarValue;
use crate::error::{Error, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct VarList(Arc<Vec<String>>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarList(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn empty() -> Self {
        VarList(Arc::new(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// Variables of `self` followed by those of `other` not already present.
    pub fn union(&self, other: &VarList) -> VarList {
        if self == other {
            return self.clone();
        }
        let mut names = self.0.as_ref().clone();
        for n in other.names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        VarList(Arc::new(names))
    }
}

impl PartialEq for VarList {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarList {}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, one entry per variable of the ambient [`VarList`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A value bound to a symbol during evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

#[derive(Clone)]
pub struct Polynomial {
    vars: VarList,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &VarList) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &VarList, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::input(format!("unknown symbol {name:?}")))?;
        Ok(Self::var_at(vars, idx))
    }

    pub fn var_at(vars: &VarList, idx: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(e), Rational::one());
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "monomial length must match variable list");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    /// Re-embeds the polynomial into `target`. Fails if a used variable is missing there.
    pub fn align(&self, target: &VarList) -> Result<Polynomial> {
        if &self.vars == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if used => {
                    return Err(Error::input(format!(
                        "symbol {name:?} is not in the target variable list"
                    )))
                }
                None => map.push(None),
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] += k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Brings two operands onto a common variable list. Constants adopt the
    /// other side's list; otherwise the lists must agree.
    fn coerce<'a>(&'a self, other: &'a Polynomial) -> Result<(Polynomial, Polynomial)> {
        if self.vars == other.vars {
            return Ok((self.clone(), other.clone()));
        }
        if self.is_constant() {
            return Ok((self.align_constant(&other.vars), other.clone()));
        }
        if other.is_constant() {
            return Ok((self.clone(), other.align_constant(&self.vars)));
        }
        Err(Error::input(format!(
            "variable lists differ: {:?} vs {:?}",
            self.vars, other.vars
        )))
    }

    fn align_constant(&self, vars: &VarList) -> Polynomial {
        Polynomial::constant(vars, self.constant_term())
    }

    fn same_vars_or_panic(&self, other: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        if self.vars == other.vars {
            None
        } else {
            Some(
                self.coerce(other)
                    .expect("polynomial operands must share a variable list"),
            )
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        let (a, b) = self.coerce(other)?;
        Ok(a.add_same(&b))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let (a, b) = self.coerce(other)?;
        Ok(a.mul_same(&b))
    }

    fn add_same(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_same(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        match self.same_vars_or_panic(other) {
            None => self.add_same(other),
            Some((a, b)) => a.add_same(&b),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        match self.same_vars_or_panic(other) {
            None => self.mul_same(other),
            Some((a, b)) => a.mul_same(&b),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(&self.vars, Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        acc
    }

    /// Power with a signed exponent; negative exponents are a domain error.
    pub fn pow_signed(&self, e: i64) -> Result<Polynomial> {
        if e < 0 {
            return Err(Error::domain(format!("negative exponent {e}")));
        }
        let e = u32::try_from(e).map_err(|_| Error::domain("exponent too large"))?;
        Ok(self.pow(e))
    }

    /// Rational content: gcd of numerators over lcm of denominators (always positive).
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num, den)
        }
    }

    /// Splits `p = unit * primitive` where `primitive` has content 1 and a
    /// positive leading coefficient. Zero maps to `(0, 0)`.
    pub fn normalize(&self) -> (Polynomial, Rational) {
        let Some((_, lc)) = self.leading_term() else {
            return (self.clone(), Rational::zero());
        };
        let mut unit = self.content();
        if lc.is_negative() {
            unit = -unit;
        }
        let inv = unit.recip();
        (self.scale(&inv), unit)
    }

    /// `Some(u)` with `self = u * other`, if such a nonzero rational exists.
    pub fn equal_up_to_unit(&self, other: &Polynomial) -> Option<Rational> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Rational::one()),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        let (a, b) = self.coerce(other).ok()?;
        if a.terms.len() != b.terms.len() {
            return None;
        }
        let (ma, ca) = a.leading_term()?;
        let (mb, cb) = b.leading_term()?;
        if ma != mb {
            return None;
        }
        let u = ca / cb;
        for (m, c) in &a.terms {
            match b.terms.get(m) {
                Some(d) if &(d * &u) == c => {}
                _ => return None,
            }
        }
        Some(u)
    }

    /// Evaluates with symbols bound by name. Exact when every used symbol is
    /// bound to a rational; a float anywhere makes the result a float.
    pub fn eval(&self, assignment: &BTreeMap<String, Value>) -> Result<ScalarValue> {
        let used = self.used_vars();
        let mut exact = Vec::with_capacity(self.vars.len());
        let mut floats = Vec::with_capacity(self.vars.len());
        let mut any_float = false;
        for (i, name) in self.vars.names().iter().enumerate() {
            match assignment.get(name) {
                Some(Value::Exact(r)) => {
                    floats.push(to_f64(r));
                    exact.push(r.clone());
                }
                Some(Value::Float(x)) => {
                    any_float = true;
                    floats.push(*x);
                    exact.push(Rational::zero());
                }
                None if used.contains(&i) => {
                    return Err(Error::input(format!("no value bound for symbol {name:?}")))
                }
                None => {
                    floats.push(0.0);
                    exact.push(Rational::zero());
                }
            }
        }
        if any_float {
            Ok(ScalarValue::Float(self.eval_f64(&floats)))
        } else {
            Ok(ScalarValue::Rational(self.eval_rational(&exact)))
        }
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| to_f64(c) * monomial_f64(m, point))
            .sum()
    }

    /// Largest absolute term magnitude `|c * x^m|` at a float point; the scale
    /// used for relative residuals.
    pub fn max_term_magnitude(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| (to_f64(c) * monomial_f64(m, point)).abs())
            .fold(0.0, f64::max)
    }

    /// Gradient at a float point.
    pub fn gradient_f64(&self, point: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.vars.len()];
        for (m, c) in &self.terms {
            let c = to_f64(c);
            for (i, gi) in g.iter_mut().enumerate() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let mut t = c * e as f64;
                for (j, (&x, &ej)) in point.iter().zip(&m.0).enumerate() {
                    let k = if j == i { ej - 1 } else { ej };
                    if k > 0 {
                        t *= x.powi(k as i32);
                    }
                }
                *gi += t;
            }
        }
        g
    }

    /// Substitutes polynomials for symbols. Values are re-embedded into this
    /// polynomial's variable list; substituted symbols stay in the list.
    pub fn substitute(&self, subs: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let mut images = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match subs.get(name) {
                Some(p) => images.push(p.align(&self.vars)?),
                None => images.push(Polynomial::var_at(&self.vars, i)),
            }
        }
        for key in subs.keys() {
            if self.vars.index_of(key).is_none() {
                return Err(Error::input(format!("unknown symbol {key:?} in substitution")));
            }
        }
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.vars, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul_same(&img.pow(e));
                }
            }
            out = out.add_same(&t);
        }
        Ok(out)
    }

    /// Coefficient of `var^power` viewing the polynomial as univariate in `var`.
    pub fn coefficient_of(&self, var: usize, power: u32) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut e = m.0.clone();
                e[var] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    fn named_terms(&self) -> Vec<(Vec<(&str, u32)>, &Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut key: Vec<(&str, u32)> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.vars.names()[i].as_str(), e))
                    .collect();
                key.sort();
                (key, c)
            })
            .collect();
        v.sort();
        v
    }
}

fn monomial_f64(m: &Monomial, point: &[f64]) -> f64 {
    let mut t = 1.0;
    for (x, &e) in point.iter().zip(&m.0) {
        if e > 0 {
            t *= x.powi(e as i32);
        }
    }
    t
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        self.named_terms() == other.named_terms()
    }
}

impl Eq for Polynomial {}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.vars != other.vars {
            return self.vars.names().cmp(other.vars.names());
        }
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self} over {:?})", self.vars)
    }
}

/// Canonical, bit-stable text form, e.g. `-1/2*l1^2 - 2*l1*l2 + 4*l2^2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.vars.names()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
