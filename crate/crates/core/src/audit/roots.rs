//! Real root isolation for univariate rational polynomials by Sturm sequences
//! and exact bisection.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{rational, Polynomial, Rational};

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    /// Views `p` as univariate; every other variable must be absent.
    pub fn from_poly(p: &Polynomial) -> Result<Self> {
        let used = p.used_vars();
        if used.len() > 1 {
            return Err(Error::domain(format!("{p} is not univariate")));
        }
        let Some(&v) = used.first() else {
            return Ok(UniPoly::new(vec![p.constant_term()]));
        };
        let deg = p.degree_in(v);
        Ok(UniPoly::new((0..=deg).map(|k| p.coefficient_of(v, k).constant_term()).collect()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + rational::to_f64(c))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty") / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    fn monic(&self) -> UniPoly {
        let l = self.leading();
        UniPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(UniPoly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        seq.pop();
        seq
    }

    /// Every real root lies strictly inside `(-bound, bound)`.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading();
        let max = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// An isolating interval `(lo, hi]` containing exactly one real root.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub approx: f64,
    /// Set when bisection hit the root exactly.
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<Rational>,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format_rational(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => ser_rational(r, s),
        None => s.serialize_none(),
    }
}

impl RootInterval {
    fn exact(r: Rational) -> Self {
        RootInterval {
            lo: r.clone(),
            hi: r.clone(),
            approx: rational::to_f64(&r),
            exact: Some(r),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        rational::to_f64(&self.lo) <= x && x <= rational::to_f64(&self.hi)
    }
}

/// Isolates all distinct real roots of `p`, in increasing order, each refined
/// to an interval of width at most `width`.
pub fn isolate_real_roots(p: &UniPoly, width: f64) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::domain("the zero polynomial has no isolated roots"));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let width = rational::from_f64(width).ok_or_else(|| Error::input("root width must be finite"))?;
    let sf = p.square_free();
    let seq = sf.sturm_sequence();
    let count = |a: &Rational, b: &Rational| sign_changes(&seq, a) - sign_changes(&seq, b);
    let m = sf.cauchy_bound();
    let two = rational::int(2);

    let mut out = Vec::new();
    let mut stack = vec![(-m.clone(), m.clone())];
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => out.push(refine(&sf, &seq, a, b, &width)),
            _ => {
                let mid = (&a + &b) / &two;
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

fn refine(p: &UniPoly, seq: &[UniPoly], mut a: Rational, mut b: Rational, width: &Rational) -> RootInterval {
    if p.eval(&b).is_zero() {
        return RootInterval::exact(b);
    }
    let two = rational::int(2);
    while &b - &a > *width {
        let mid = (&a + &b) / &two;
        if p.eval(&mid).is_zero() {
            return RootInterval::exact(mid);
        }
        if sign_changes(seq, &a) - sign_changes(seq, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    let approx = rational::to_f64(&((&a + &b) / &two));
    RootInterval { lo: a, hi: b, approx, exact: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_poly, VarList};

    fn uni(s: &str) -> UniPoly {
        UniPoly::from_poly(&parse_poly(s, &VarList::new(&["x"])).unwrap()).unwrap()
    }

    #[test]
    fn division_and_gcd() {
        let (q, r) = uni("x^3 - 1").div_rem(&uni("x - 1"));
        assert_eq!(q, uni("x^2 + x + 1"));
        assert!(r.is_zero());
        assert_eq!(uni("(x-1)^2*(x+2)").gcd(&uni("(x-1)*(x+3)")), uni("x - 1"));
        assert_eq!(uni("(x-1)^3*(x+2)").square_free(), uni("(x-1)*(x+2)").monic());
    }

    #[test]
    fn isolates_rational_and_irrational_roots() {
        let roots = isolate_real_roots(&uni("x^3 - 2*x"), 1e-9).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1].exact, Some(Rational::zero()));
        assert!((roots[2].approx - 2f64.sqrt()).abs() < 1e-9);
        assert!((roots[0].approx + 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn repeated_and_missing_roots() {
        assert_eq!(isolate_real_roots(&uni("(x-1)^4"), 1e-9).unwrap().len(), 1);
        assert!(isolate_real_roots(&uni("x^2 + 1"), 1e-9).unwrap().is_empty());
        assert!(isolate_real_roots(&uni("0"), 1e-9).is_err());
    }

    #[test]
    fn close_roots_are_separated() {
        let roots = isolate_real_roots(&uni("(1000*x - 1)*(1000*x - 2)*(x + 5)"), 1e-9).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.approx).collect();
        assert_eq!(approx.len(), 3);
        assert!((approx[1] - 0.001).abs() < 1e-9 && (approx[2] - 0.002).abs() < 1e-9);
    }

    #[test]
    fn not_univariate() {
        let p = parse_poly("x*y", &VarList::new(&["x", "y"])).unwrap();
        assert!(UniPoly::from_poly(&p).is_err());
    }
}
