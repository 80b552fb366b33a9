//! Closed-form constants attached to the harmonic-contraction solutions:
//! the two-parameter family `λ_i = L_i(V², V³)` for A2 and the isolated
//! value `L3` for A3.
//!
//! `B` is written `(1/A)·√(…)`; under standard precedence that is
//! [`Reading::AsPrinted`], while [`Reading::RadicalInclusive`] takes the
//! root of the whole quotient `√(…/A)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rational, Rational, ScalarValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    AsPrinted,
    RadicalInclusive,
}

impl Reading {
    pub const BOTH: [Reading; 2] = [Reading::AsPrinted, Reading::RadicalInclusive];

    pub fn tag(self) -> &'static str {
        match self {
            Reading::AsPrinted => "as-printed",
            Reading::RadicalInclusive => "radical-inclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FootnoteConstants {
    pub reading: Reading,
    pub a: f64,
    /// `None` when the radicand is negative under this reading.
    pub b: Option<f64>,
    pub l3: Option<f64>,
}

pub fn a() -> f64 {
    (3763.0 + 6.0 * 154029f64.sqrt()).cbrt()
}

fn b_radicand(a: f64) -> f64 {
    409929.0 * a - 3072.0 * a * a - 629760.0
}

impl FootnoteConstants {
    pub fn new(reading: Reading) -> Self {
        let a = a();
        let rad = b_radicand(a);
        let b = match reading {
            Reading::AsPrinted => (rad >= 0.0).then(|| rad.sqrt() / a),
            Reading::RadicalInclusive => (rad >= 0.0).then(|| (rad / a).sqrt()),
        };
        let l3 = b.and_then(|b| {
            let inner = 6.0 * (136643.0 + 512.0 * a + 104960.0 / a + 85821417.0 / b);
            let outer = inner.sqrt() - 483.0 - b;
            (outer >= 0.0).then(|| outer.sqrt() / 4.0)
        });
        FootnoteConstants { reading, a, b, l3 }
    }
}

fn poly6(c: [i64; 7], x: &Rational, y: &Rational) -> Rational {
    (0..7)
        .map(|k| rational::int(c[k]) * num_traits::pow(x.clone(), 6 - k) * num_traits::pow(y.clone(), k))
        .sum()
}

pub fn p(x: &Rational, y: &Rational) -> Rational {
    poly6([53, -150, 507, -308, 507, -150, 53], x, y)
}

pub fn q(x: &Rational, y: &Rational) -> Rational {
    poly6([13, -22, 163, -52, 163, -22, 13], x, y)
}

pub fn h_poly(x: &Rational, y: &Rational) -> Rational {
    let sq = |r: &Rational| r * r;
    sq(&sq(x)) + rational::int(28) * sq(x) * x * y + rational::int(6) * sq(x) * sq(y)
        + rational::int(28) * x * sq(y) * y
        + sq(&sq(y))
}

pub fn l2(x: &Rational, y: &Rational) -> Result<Rational> {
    let den = rational::int(2) * x * y;
    if den.is_zero() {
        return Err(Error::domain("L2 needs x*y != 0"));
    }
    Ok((y * y - x * x) / den)
}

/// `λ` coefficient for `V¹ = f(λ)·V³`.
pub fn f(l: &Rational) -> Rational {
    let l2 = l * l;
    let inner = rational::int(440) * num_traits::pow(l2.clone(), 3) + rational::int(9047) * &l2 * &l2
        - rational::int(47248) * &l2
        + rational::int(30400);
    l * inner / rational::int(8192)
}

/// `λ` coefficient for `V² = h(λ)·V³`.
pub fn h(l: &Rational) -> Rational {
    let l2 = l * l;
    let inner = rational::int(88) * num_traits::pow(l2.clone(), 3) + rational::int(2219) * &l2 * &l2
        + rational::int(4322) * &l2
        - rational::int(2112);
    -inner / rational::int(2048)
}

fn exact_root(r: &Rational, n: u32) -> Option<Rational> {
    let root = |b: &BigInt| -> Option<BigInt> {
        let s = b.nth_root(n);
        (num_traits::pow(s.clone(), n as usize) == *b).then_some(s)
    };
    if n.is_multiple_of(2) && r.is_negative() {
        return None;
    }
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

/// `F(x, y) = (P + 6·√(6(x²+y²)(x−y)⁴Q))^{1/3}`, exact when both roots are rational.
pub fn big_f(x: &Rational, y: &Rational) -> ScalarValue {
    let d2 = (x - y) * (x - y);
    let rad = rational::int(6) * (x * x + y * y) * &d2 * &d2 * q(x, y);
    let pv = p(x, y);
    if let Some(s) = exact_root(&rad, 2) {
        if let Some(c) = exact_root(&(&pv + rational::int(6) * s), 3) {
            return ScalarValue::Rational(c);
        }
    }
    let inner = rational::to_f64(&pv) + 6.0 * rational::to_f64(&rad).sqrt();
    ScalarValue::Float(inner.cbrt())
}

/// `L1(x, y) = (F + H/F − (x+y)²)/6`.
pub fn l1(x: &Rational, y: &Rational) -> Result<ScalarValue> {
    let hv = h_poly(x, y);
    let s = (x + y) * (x + y);
    match big_f(x, y) {
        ScalarValue::Rational(fv) if !fv.is_zero() => {
            Ok(ScalarValue::Rational((&fv + hv / &fv - s) / rational::int(6)))
        }
        ScalarValue::Rational(_) => Err(Error::domain("F vanishes")),
        other => {
            let fv = other.to_float()?;
            if fv == 0.0 {
                return Err(Error::domain("F vanishes"));
            }
            Ok(ScalarValue::Float((fv + rational::to_f64(&hv) / fv - rational::to_f64(&s)) / 6.0))
        }
    }
}

/// The excluded ratios `V²/V³ = −7 ± 4√3 + 2√(24+14√3)`.
pub fn exclusion_slopes() -> [f64; 2] {
    let r3 = 3f64.sqrt();
    let tail = 2.0 * (24.0 + 14.0 * r3).sqrt();
    [-7.0 + 4.0 * r3 + tail, -7.0 - 4.0 * r3 + tail]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational::{int, ratio};

    #[test]
    fn a_matches_print() {
        assert!((a() - 18.289).abs() < 1e-3);
    }

    #[test]
    fn b_under_both_readings() {
        let printed = FootnoteConstants::new(Reading::AsPrinted);
        let inclusive = FootnoteConstants::new(Reading::RadicalInclusive);
        assert!((printed.b.unwrap() - 132.1319).abs() < 1e-3);
        assert!((inclusive.b.unwrap() - 565.076).abs() < 1e-2);
        assert!((printed.l3.unwrap() - 9.92938).abs() < 1e-4);
        assert!((inclusive.l3.unwrap() - 4.34194).abs() < 1e-4);
    }

    #[test]
    fn exact_values_at_one_one() {
        let one = int(1);
        assert_eq!(p(&one, &one), int(512));
        assert_eq!(q(&one, &one), int(256));
        assert_eq!(h_poly(&one, &one), int(64));
        assert_eq!(big_f(&one, &one), ScalarValue::Rational(int(8)));
        assert_eq!(l1(&one, &one).unwrap(), ScalarValue::Rational(int(2)));
        assert_eq!(l2(&one, &one).unwrap(), int(0));
        assert_eq!(l2(&int(1), &int(2)).unwrap(), ratio(3, 4));
        assert!(l2(&int(0), &int(2)).is_err());
    }

    #[test]
    fn f_and_h_at_zero() {
        assert_eq!(f(&int(0)), int(0));
        assert_eq!(h(&int(0)), ratio(33, 32));
    }

    #[test]
    fn irrational_f_is_float() {
        assert!(matches!(big_f(&int(1), &int(2)), ScalarValue::Float(_)));
    }
}
