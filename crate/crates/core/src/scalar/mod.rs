//! The coefficient domain: exact rationals, sparse polynomials over the
//! rationals, and double-precision floats.

mod parse;
mod poly;
pub mod rational;

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, Serializer};

pub use parse::parse_poly;
pub use poly::{Monomial, Polynomial, Value, VarList};
pub use rational::Rational;

use crate::error::{Error, Result};

/// Ring operations the tensor machinery needs from its entries.
///
/// `inverse` returns `None` for non-units (zero, or a non-constant polynomial).
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// Exact rational value when the entry is a constant.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rational::int(n))
    }

    fn scaled(&self, k: &Rational) -> Self {
        self.times(&Self::from_rational(k))
    }
}

impl Scalar for Polynomial {
    fn zero() -> Self {
        Polynomial::zero(&VarList::empty())
    }

    fn one() -> Self {
        Polynomial::constant(&VarList::empty(), Rational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        Polynomial::constant(&VarList::empty(), r.clone())
    }

    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }

    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn negated(&self) -> Self {
        self.neg()
    }

    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!c.is_zero()).then(|| Polynomial::constant(self.vars(), c.recip()))
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn scaled(&self, k: &Rational) -> Self {
        self.scale(k)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn negated(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn inverse(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }

    fn to_rational(&self) -> Option<Rational> {
        rational::from_f64(*self)
    }
}

/// Tagged scalar. Rationals promote to polynomials; floats never mix with
/// exact values implicitly.
#[derive(Clone, Debug)]
pub enum ScalarValue {
    Rational(Rational),
    Poly(Polynomial),
    Float(f64),
}

impl ScalarValue {
    fn as_poly(&self) -> Option<Polynomial> {
        match self {
            ScalarValue::Rational(r) => Some(Polynomial::from_rational(r)),
            ScalarValue::Poly(p) => Some(p.clone()),
            ScalarValue::Float(_) => None,
        }
    }

    fn exact_binop(
        &self,
        other: &Self,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        poly: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Result<ScalarValue> {
        use ScalarValue::*;
        match (self, other) {
            (Rational(a), Rational(b)) => Ok(Rational(rat(a, b))),
            (Float(a), Float(b)) => Ok(Float(float(*a, *b))),
            (Float(_), _) | (_, Float(_)) => Err(Error::MixedDomain),
            _ => {
                let a = self.as_poly().expect("exact");
                let b = other.as_poly().expect("exact");
                Ok(Poly(poly(&a, &b)?))
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<ScalarValue> {
        self.exact_binop(other, |a, b| a + b, |a, b| a.try_add(b), |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<ScalarValue> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<ScalarValue> {
        self.exact_binop(other, |a, b| a * b, |a, b| a.try_mul(b), |a, b| a * b)
    }

    /// Explicit exact → float conversion (round to nearest). Polynomials must be constant.
    pub fn to_float(&self) -> Result<f64> {
        match self {
            ScalarValue::Rational(r) => Ok(rational::to_f64(r)),
            ScalarValue::Float(x) => Ok(*x),
            ScalarValue::Poly(p) => p
                .as_constant()
                .map(|c| rational::to_f64(&c))
                .ok_or_else(|| Error::input("cannot convert a non-constant polynomial to float")),
        }
    }

    /// Collapses constant polynomials to rationals.
    pub fn simplified(self) -> ScalarValue {
        match self {
            ScalarValue::Poly(p) => match p.as_constant() {
                Some(c) => ScalarValue::Rational(c),
                None => ScalarValue::Poly(p),
            },
            other => other,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            ScalarValue::Rational(r) => Some(r.clone()),
            ScalarValue::Poly(p) => p.as_constant(),
            ScalarValue::Float(_) => None,
        }
    }
}

impl PartialEq for ScalarValue {
    fn eq(&self, other: &Self) -> bool {
        use ScalarValue::*;
        match (self, other) {
            (Float(a), Float(b)) => a == b,
            (Float(_), _) | (_, Float(_)) => false,
            (Rational(a), Rational(b)) => a == b,
            _ => self.as_poly() == other.as_poly(),
        }
    }
}

impl From<Polynomial> for ScalarValue {
    fn from(p: Polynomial) -> Self {
        ScalarValue::Poly(p)
    }
}

impl From<Rational> for ScalarValue {
    fn from(r: Rational) -> Self {
        ScalarValue::Rational(r)
    }
}

impl From<f64> for ScalarValue {
    fn from(x: f64) -> Self {
        ScalarValue::Float(x)
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Rational(r) => f.write_str(&rational::format_rational(r)),
            ScalarValue::Poly(p) => write!(f, "{p}"),
            ScalarValue::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Integers serialize as JSON numbers when they fit in `i64`; other exact
/// values as canonical strings; floats as numbers.
impl Serialize for ScalarValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.clone().simplified() {
            ScalarValue::Rational(r) => match (r.is_integer(), i64::try_from(r.numer())) {
                (true, Ok(n)) => s.serialize_i64(n),
                _ => s.serialize_str(&rational::format_rational(&r)),
            },
            ScalarValue::Poly(p) => s.serialize_str(&p.to_string()),
            ScalarValue::Float(x) => s.serialize_f64(x),
        }
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarValue::Poly(self.clone()).serialize(s)
    }
}

/// Mixing float and exact operands panics; use the `checked_*` methods when
/// operands come from untrusted input.
impl Scalar for ScalarValue {
    fn zero() -> Self {
        ScalarValue::Rational(Rational::zero())
    }

    fn one() -> Self {
        ScalarValue::Rational(Rational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        ScalarValue::Rational(r.clone())
    }

    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("scalar addition")
    }

    fn minus(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("scalar subtraction")
    }

    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("scalar multiplication")
    }

    fn negated(&self) -> Self {
        match self {
            ScalarValue::Rational(r) => ScalarValue::Rational(-r),
            ScalarValue::Poly(p) => ScalarValue::Poly(p.neg()),
            ScalarValue::Float(x) => ScalarValue::Float(-x),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            ScalarValue::Rational(r) => r.is_zero(),
            ScalarValue::Poly(p) => p.is_zero(),
            ScalarValue::Float(x) => *x == 0.0,
        }
    }

    fn inverse(&self) -> Option<Self> {
        match self {
            ScalarValue::Rational(r) => (!r.is_zero()).then(|| ScalarValue::Rational(r.recip())),
            ScalarValue::Poly(p) => p.inverse().map(ScalarValue::Poly),
            ScalarValue::Float(x) => x.inverse().map(ScalarValue::Float),
        }
    }

    fn to_rational(&self) -> Option<Rational> {
        match self {
            ScalarValue::Float(x) => rational::from_f64(*x),
            exact => exact.as_rational(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::rational::int;
    use super::*;

    #[test]
    fn float_never_mixes_with_exact() {
        let a = ScalarValue::Rational(int(1));
        let b = ScalarValue::Float(1.0);
        assert_eq!(a.checked_add(&b), Err(Error::MixedDomain));
        assert_eq!(b.checked_mul(&a), Err(Error::MixedDomain));
        assert_eq!(a.to_float().unwrap(), 1.0);
    }

    #[test]
    fn rational_promotes_to_polynomial() {
        let vars = VarList::new(&["x"]);
        let x = ScalarValue::Poly(Polynomial::var(&vars, "x").unwrap());
        let sum = x.checked_add(&ScalarValue::Rational(int(2))).unwrap();
        assert!(matches!(sum, ScalarValue::Poly(_)));
        assert_eq!(sum.to_string(), "x + 2");
    }

    #[test]
    fn serialization_forms() {
        let v = serde_json::to_value(ScalarValue::Rational(rational::ratio(-3, 4))).unwrap();
        assert_eq!(v, serde_json::json!("-3/4"));
        let v = serde_json::to_value(ScalarValue::Rational(int(-3))).unwrap();
        assert_eq!(v, serde_json::json!(-3));
    }
}
