//! Polynomial condition systems: generation from the engine, comparison, and
//! substitution checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvature::{self, Conventions, CurvatureBundle, DivKind};
use crate::error::{Error, Result};
use crate::lie::{self, build_family, FamilyId, FamilySpec, MetricLieAlgebra};
use crate::scalar::{parse_poly, rational, Monomial, Polynomial, Rational, VarList};

/// Normalized, deduplicated polynomials over one variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    vars: VarList,
    members: Vec<Polynomial>,
    units: Vec<Rational>,
}

impl PolySystem {
    /// Drops zeros, normalizes each member to a primitive with positive
    /// leading coefficient, and keeps the first of any unit-equivalent group.
    pub fn new(vars: &VarList, polys: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut sys = PolySystem {
            vars: vars.clone(),
            members: Vec::new(),
            units: Vec::new(),
        };
        for p in polys {
            let p = p.align(vars)?;
            if p.is_zero() {
                continue;
            }
            let (prim, unit) = p.normalize();
            if !sys.members.contains(&prim) {
                sys.members.push(prim);
                sys.units.push(unit);
            }
        }
        Ok(sys)
    }

    pub fn parse(vars: &VarList, members: &[&str]) -> Result<Self> {
        PolySystem::new(vars, members.iter().map(|m| parse_poly(m, vars)).collect::<Result<Vec<_>>>()?)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn members(&self) -> &[Polynomial] {
        &self.members
    }

    /// `units[i] * members[i]` is the polynomial as it was supplied.
    pub fn units(&self) -> &[Rational] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn align(&self, vars: &VarList) -> Result<Self> {
        Ok(PolySystem {
            vars: vars.clone(),
            members: self.members.iter().map(|p| p.align(vars)).collect::<Result<_>>()?,
            units: self.units.clone(),
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.members.iter().map(Polynomial::to_string).collect()
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    /// `‖SW‖² = 0`.
    Isotropy,
    /// `curl(SW) = 0`.
    AlmostHarmonicCurl,
    /// `curl(w) = 0` and `div(w) = 0` for `w_ij = V^k SW_kij`.
    HarmonicContraction,
    /// `curl(V) = 0` and `div(V) = 0`.
    HarmonicVector,
}

impl SystemKind {
    pub fn uses_vector(self) -> bool {
        matches!(self, SystemKind::HarmonicContraction | SystemKind::HarmonicVector)
    }
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isotropy" | "isotropic" => Ok(SystemKind::Isotropy),
            "almost-harmonic-curl" | "almost-harmonic" | "curl" => Ok(SystemKind::AlmostHarmonicCurl),
            "harmonic-contraction" | "harmonic-w" => Ok(SystemKind::HarmonicContraction),
            "harmonic-vector" | "harmonic-v" => Ok(SystemKind::HarmonicVector),
            _ => Err(Error::input(format!(
                "unknown predicate {s:?} (expected isotropy, almost-harmonic-curl, harmonic-contraction or harmonic-vector)"
            ))),
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Isotropy => "isotropy",
            SystemKind::AlmostHarmonicCurl => "almost-harmonic-curl",
            SystemKind::HarmonicContraction => "harmonic-contraction",
            SystemKind::HarmonicVector => "harmonic-vector",
        })
    }
}

/// Condition system of a symbolic algebra. Vector predicates extend the
/// variables with `v1, v2, v3`.
pub fn generate_for(mla: &MetricLieAlgebra<Polynomial>, kind: SystemKind, conv: &Conventions) -> Result<PolySystem> {
    if kind.uses_vector() {
        let (vars, v) = curvature::symbolic_vector(&mla.params);
        let mla = mla.with_vars(&vars)?;
        let b = CurvatureBundle::compute(&mla, conv)?;
        let polys: Vec<Polynomial> = match kind {
            SystemKind::HarmonicContraction => {
                let w = curvature::sw_contract(&b.sw, &v)?;
                let (c, d) = curvature::tensor2_curl_div(&w, &b.connection, &mla.metric, conv)?;
                c.entries().iter().chain(d.entries()).cloned().collect()
            }
            _ => {
                let ops = curvature::vector_ops(&v, &b.connection, &mla.metric, conv.vector_deriv)?;
                ops.curl.entries().iter().cloned().chain([ops.div]).collect()
            }
        };
        return PolySystem::new(&vars, polys);
    }
    let b = CurvatureBundle::compute(mla, conv)?;
    let polys: Vec<Polynomial> = match kind {
        SystemKind::Isotropy => vec![b.sw_norm2(&mla.metric)?],
        _ => b.sw_curl(conv)?.entries().to_vec(),
    };
    PolySystem::new(&mla.params, polys)
}

pub fn generate_system(family: FamilyId, kind: SystemKind, conv: &Conventions) -> Result<PolySystem> {
    generate_for(&build_family(&FamilySpec::symbolic(family))?, kind, conv)
}

/// `pdiv(SW)` components, which should vanish identically.
pub fn pdiv_components(family: FamilyId, conv: &Conventions) -> Result<Vec<Polynomial>> {
    let mla = build_family(&FamilySpec::symbolic(family))?;
    let b = CurvatureBundle::compute(&mla, conv)?;
    Ok(b.sw_divergence(DivKind::I, &mla.metric, conv)?.entries().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatchVerdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MATCH-up-to-span")]
    UpToSpan,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for MatchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchVerdict::Match => "MATCH",
            MatchVerdict::UpToSpan => "MATCH-up-to-span",
            MatchVerdict::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchedPair {
    pub generated: String,
    pub reference: String,
    /// `generated = unit * reference`, both as supplied.
    pub unit: String,
}

/// A zero of one system at which a member of the other does not vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub zero_of: &'static str,
    pub point: BTreeMap<String, f64>,
    pub member: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fingerprint {
    pub member: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchReport {
    pub verdict: MatchVerdict,
    /// `unit`, `span` or `zero-set`: the test that settled the verdict.
    pub method: &'static str,
    pub seed: u64,
    pub pairs: Vec<MatchedPair>,
    pub unmatched_generated: Vec<String>,
    pub unmatched_reference: Vec<String>,
    pub fingerprint_points: Vec<BTreeMap<String, String>>,
    pub fingerprints: Vec<Fingerprint>,
    pub zero_samples: (usize, usize),
    pub witnesses: Vec<Witness>,
}

/// Compares a generated system with a reference system.
///
/// Unit-equivalent members are paired first. If members remain, the verdict is
/// `MATCH-up-to-span` when each leftover lies in the rational span of the other
/// system, or when each leftover vanishes on sampled zeros of the other system;
/// otherwise `MISMATCH` with the offending sample points as witnesses.
pub fn systems_match(generated: &PolySystem, reference: &PolySystem, seed: u64) -> Result<MatchReport> {
    let vars = generated.vars().union(reference.vars());
    let g = generated.align(&vars)?;
    let r = reference.align(&vars)?;

    let mut used = vec![false; r.len()];
    let mut pairs = Vec::new();
    let mut lone_g = Vec::new();
    for (i, p) in g.members.iter().enumerate() {
        match (0..r.len()).find(|&j| !used[j] && r.members[j] == *p) {
            Some(j) => {
                used[j] = true;
                pairs.push(MatchedPair {
                    generated: p.to_string(),
                    reference: r.members[j].to_string(),
                    unit: rational::format_rational(&(&g.units[i] / &r.units[j])),
                });
            }
            None => lone_g.push(p.clone()),
        }
    }
    let lone_r: Vec<Polynomial> = (0..r.len()).filter(|&j| !used[j]).map(|j| r.members[j].clone()).collect();

    let fp_points = random_points(&vars, seed, 5);
    let fingerprints = lone_g
        .iter()
        .chain(&lone_r)
        .map(|p| Fingerprint {
            member: p.to_string(),
            values: fp_points.iter().map(|x| rational::format_rational(&p.eval_rational(x))).collect(),
        })
        .collect();
    let mut report = MatchReport {
        verdict: MatchVerdict::Match,
        method: "unit",
        seed,
        pairs,
        unmatched_generated: lone_g.iter().map(Polynomial::to_string).collect(),
        unmatched_reference: lone_r.iter().map(Polynomial::to_string).collect(),
        fingerprint_points: fp_points
            .iter()
            .map(|x| named(&vars, x.iter().map(rational::format_rational)))
            .collect(),
        fingerprints,
        zero_samples: (0, 0),
        witnesses: Vec::new(),
    };
    if lone_g.is_empty() && lone_r.is_empty() {
        return Ok(report);
    }

    report.verdict = MatchVerdict::UpToSpan;
    if lone_g.iter().all(|p| in_span(p, &r.members)) && lone_r.iter().all(|p| in_span(p, &g.members)) {
        report.method = "span";
        return Ok(report);
    }

    report.method = "zero-set";
    let zg = sample_zero_set(&g, seed, 5);
    let zr = sample_zero_set(&r, seed ^ 0x9e37_79b9_7f4a_7c15, 5);
    report.zero_samples = (zg.len(), zr.len());
    for (zeros, others, side) in [(&zg, &lone_r, "generated"), (&zr, &lone_g, "reference")] {
        for x in zeros.iter() {
            for p in others.iter() {
                if !vanishes(p, x) {
                    report.witnesses.push(Witness {
                        zero_of: side,
                        point: named(&vars, x.iter().copied()),
                        member: p.to_string(),
                        value: p.eval_f64(x),
                    });
                }
            }
        }
    }
    if !report.witnesses.is_empty() || zg.is_empty() || zr.is_empty() {
        report.verdict = MatchVerdict::Mismatch;
    }
    Ok(report)
}

fn named<T>(vars: &VarList, values: impl Iterator<Item = T>) -> BTreeMap<String, T> {
    vars.names().iter().cloned().zip(values).collect()
}

fn random_points(vars: &VarList, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..vars.len())
                .map(|_| rational::ratio(rng.gen_range(-50..=50), rng.gen_range(1..=7)))
                .collect()
        })
        .collect()
}

/// Whether `p` lies in the rational span of `basis`.
pub fn in_span(p: &Polynomial, basis: &[Polynomial]) -> bool {
    let mut monos: Vec<&Monomial> = basis.iter().chain([p]).flat_map(|q| q.terms().map(|(m, _)| m)).collect();
    monos.sort();
    monos.dedup();
    let row = |q: &Polynomial| -> Vec<Rational> {
        let coeffs: BTreeMap<&Monomial, &Rational> = q.terms().collect();
        monos.iter().map(|m| coeffs.get(m).map_or_else(Rational::zero, |c| (*c).clone())).collect()
    };
    let rows: Vec<Vec<Rational>> = basis.iter().map(row).collect();
    let base = lie::rank(rows.clone());
    let mut with = rows;
    with.push(row(p));
    lie::rank(with) == base
}

/// Relative residual: `|p(x)|` over the largest absolute term of `p` at `x` (at least 1).
pub fn vanishes(p: &Polynomial, x: &[f64]) -> bool {
    p.eval_f64(x).abs() <= 1e-6 * p.max_term_magnitude(x).max(1.0)
}

fn is_vector_var(name: &str) -> bool {
    matches!(name, "v1" | "v2" | "v3")
}

/// Approximate common zeros found by damped Gauss–Newton from seeded random
/// starts, snapped to small-denominator rationals when that is exact.
/// Points with the vector components `v1, v2, v3` all near zero are discarded.
pub fn sample_zero_set(sys: &PolySystem, seed: u64, count: usize) -> Vec<Vec<f64>> {
    let n = sys.vars().len();
    let vec_idx: Vec<usize> = (0..n).filter(|&i| is_vector_var(&sys.vars().names()[i])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for _ in 0..count * 8 {
        if out.len() == count {
            break;
        }
        let start: Vec<f64> = (0..n).map(|_| rng.gen_range(-40..=40) as f64 / 10.0).collect();
        let Some(x) = gauss_newton(sys, start) else { continue };
        let x = snap(sys, x);
        if !vec_idx.is_empty() && vec_idx.iter().all(|&i| x[i].abs() < 1e-6) {
            continue;
        }
        if sys.members().iter().all(|p| vanishes(p, &x)) {
            out.push(x);
        }
    }
    out
}

fn residuals(sys: &PolySystem, x: &[f64]) -> DVector<f64> {
    DVector::from_iterator(sys.len(), sys.members().iter().map(|p| p.eval_f64(x)))
}

fn gauss_newton(sys: &PolySystem, mut x: Vec<f64>) -> Option<Vec<f64>> {
    let n = x.len();
    let mut f = residuals(sys, &x);
    for _ in 0..400 {
        let norm = f.norm();
        if !norm.is_finite() {
            return None;
        }
        if f.amax() <= 1e-14 {
            break;
        }
        let jac = DMatrix::from_fn(sys.len(), n, |r, c| sys.members()[r].gradient_f64(&x)[c]);
        let step = jac.pseudo_inverse(1e-12).ok()? * &f;
        let mut alpha = 1.0;
        loop {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, s)| a - alpha * s).collect();
            let ft = residuals(sys, &trial);
            if ft.norm() < norm || alpha < 1e-6 {
                x = trial;
                f = ft;
                break;
            }
            alpha /= 2.0;
        }
        if step.amax() * alpha < 1e-16 {
            break;
        }
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn snap(sys: &PolySystem, x: Vec<f64>) -> Vec<f64> {
    let snapped: Option<Vec<Rational>> = x
        .iter()
        .map(|&v| rational::approximate(v, 1000).filter(|r| (rational::to_f64(r) - v).abs() < 1e-6))
        .collect();
    match snapped {
        Some(q) if sys.members().iter().all(|p| p.eval_rational(&q).is_zero()) => {
            q.iter().map(rational::to_f64).collect()
        }
        _ => x,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocusReport {
    pub confirmed: bool,
    pub substitution: BTreeMap<String, String>,
    /// Members whose substituted form is not the zero polynomial.
    pub residuals: Vec<String>,
}

/// Substitutes and checks that every member becomes the zero polynomial.
pub fn verify_locus(members: &[Polynomial], vars: &VarList, subs: &BTreeMap<String, Polynomial>) -> Result<LocusReport> {
    let mut residuals = Vec::new();
    for m in members {
        let r = m.align(vars)?.substitute(subs)?;
        if !r.is_zero() {
            residuals.push(r.to_string());
        }
    }
    Ok(LocusReport {
        confirmed: residuals.is_empty(),
        substitution: subs.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        residuals,
    })
}

/// Parses `"l1=0,v3=v2"` into a substitution over `vars`.
pub fn parse_substitution(text: &str, vars: &VarList) -> Result<BTreeMap<String, Polynomial>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::input(format!("expected name=value, got {part:?}")))?;
            let k = k.trim();
            if vars.index_of(k).is_none() {
                return Err(Error::input(format!("unknown symbol {k:?} in substitution")));
            }
            Ok((k.to_string(), parse_poly(v, vars)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::ratio;

    fn vars() -> VarList {
        VarList::new(&["l1", "l2"])
    }

    #[test]
    fn normalization_and_dedup() {
        let s = PolySystem::parse(&vars(), &["2*l1 - 2*l2", "l2 - l1", "0", "l1^2"]).unwrap();
        assert_eq!(s.to_strings(), ["l1 - l2", "l1^2"]);
        assert_eq!(s.units()[0], rational::int(2));
    }

    #[test]
    fn identical_and_scaled_systems_match() {
        let a = PolySystem::parse(&vars(), &["l1 - l2", "l1^2 + l2"]).unwrap();
        assert_eq!(systems_match(&a, &a, 1).unwrap().verdict, MatchVerdict::Match);
        let b = PolySystem::parse(&vars(), &["-2*(l1 - l2)", "-2*(l1^2 + l2)"]).unwrap();
        let m = systems_match(&a, &b, 1).unwrap();
        assert_eq!(m.verdict, MatchVerdict::Match);
        assert!(m.pairs.iter().all(|p| p.unit == "-1/2"));
    }

    #[test]
    fn extra_independent_member_is_a_mismatch() {
        let a = PolySystem::parse(&vars(), &["l1 - l2"]).unwrap();
        let b = PolySystem::parse(&vars(), &["l1 - l2", "l1 + l2 - 1"]).unwrap();
        let m = systems_match(&a, &b, 7).unwrap();
        assert_eq!(m.verdict, MatchVerdict::Mismatch);
        assert!(!m.witnesses.is_empty());
    }

    #[test]
    fn span_equivalence() {
        let a = PolySystem::parse(&vars(), &["l1", "l2"]).unwrap();
        let b = PolySystem::parse(&vars(), &["l1 + l2", "l1 - l2"]).unwrap();
        let m = systems_match(&a, &b, 3).unwrap();
        assert_eq!((m.verdict, m.method), (MatchVerdict::UpToSpan, "span"));
    }

    #[test]
    fn zero_set_equivalence() {
        let a = PolySystem::parse(&vars(), &["l1^2 + l2^2"]).unwrap();
        let b = PolySystem::parse(&vars(), &["l1", "l2^3"]).unwrap();
        let m = systems_match(&a, &b, 11).unwrap();
        assert_eq!((m.verdict, m.method), (MatchVerdict::UpToSpan, "zero-set"), "{m:?}");
        assert!(m.witnesses.is_empty());
    }

    #[test]
    fn span_membership() {
        let v = vars();
        let p = |s: &str| parse_poly(s, &v).unwrap();
        assert!(in_span(&p("3*l1 - l2^2"), &[p("l1"), p("l2^2")]));
        assert!(!in_span(&p("l1*l2"), &[p("l1"), p("l2")]));
    }

    #[test]
    fn locus_substitution() {
        let r = crate::audit::reference::system("a2_curl").unwrap();
        let at = |s: &str| verify_locus(&r.members, &r.vars, &parse_substitution(s, &r.vars).unwrap()).unwrap();
        assert!(at("l1=0,l2=0").confirmed);
        let miss = at("l1=1,l2=1");
        assert!(!miss.confirmed);
        assert_eq!(miss.residuals[0], "-3");
        assert!(parse_substitution("zz=1", &r.vars).is_err());
    }

    #[test]
    fn snapping_recovers_rational_zero() {
        let s = PolySystem::parse(&vars(), &["2*l1 - 1", "l2 + 3/4"]).unwrap();
        let z = sample_zero_set(&s, 5, 2);
        assert_eq!(z[0], [rational::to_f64(&ratio(1, 2)), -0.75]);
    }
}
