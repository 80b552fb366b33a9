//! Numeric parameter scans of the isotropy and curl predicates.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{Conventions, CurvatureBundle};
use crate::error::{Error, Result};
use crate::lie::{build_family, FamilySpec, MetricLieAlgebra};
use crate::scalar::{rational, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanPredicate {
    Isotropy,
    AlmostHarmonicCurl,
}

/// How `‖SW‖² ≈ 0` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsotropyRule {
    /// `|‖SW‖²| ≤ eps_zero · max_t |t(x)|` over the terms `t` of the
    /// `‖SW‖²` polynomial: zero up to cancellation error.
    #[default]
    Relative,
    /// `|‖SW‖²| < eps_zero`.
    Absolute,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamRange {
    pub name: String,
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::format_rational(r))
}

/// Parses `"l1=-3:3,l2=-3:3"`.
pub fn parse_box(text: &str) -> Result<Vec<ParamRange>> {
    let ranges = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|part| {
            let (name, span) = part
                .split_once('=')
                .ok_or_else(|| Error::input(format!("expected name=lo:hi, got {part:?}")))?;
            let (lo, hi) = span
                .split_once(':')
                .ok_or_else(|| Error::input(format!("expected lo:hi, got {span:?}")))?;
            Ok(ParamRange {
                name: name.trim().to_string(),
                lo: rational::parse_rational(lo)?,
                hi: rational::parse_rational(hi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if ranges.is_empty() {
        return Err(Error::input("empty scan box"));
    }
    Ok(ranges)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sampling {
    /// `n` evenly spaced values per parameter, endpoints included.
    Grid(usize),
    /// `n` uniform random points from the seed.
    Random(usize),
    Points(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    /// Parameters not in the box must be bound here.
    pub family: FamilySpec,
    pub predicate: ScanPredicate,
    pub ranges: Vec<ParamRange>,
    pub sampling: Sampling,
    pub seed: u64,
    pub eps_zero: f64,
    pub eps_nonzero: f64,
    pub rule: IsotropyRule,
}

impl ScanConfig {
    pub fn new(family: FamilySpec, ranges: Vec<ParamRange>, sampling: Sampling) -> Self {
        ScanConfig {
            family,
            predicate: ScanPredicate::Isotropy,
            ranges,
            sampling,
            seed: 0,
            eps_zero: 1e-8,
            eps_nonzero: 1e-6,
            rule: IsotropyRule::Relative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub params: Vec<f64>,
    pub norm2: f64,
    pub max_abs_sw: f64,
    /// Distance to the known locus of the predicate, when one is known.
    pub locus_distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub predicate: ScanPredicate,
    pub rule: IsotropyRule,
    pub params: Vec<String>,
    pub ranges: Vec<ParamRange>,
    pub seed: u64,
    pub eps_zero: f64,
    pub eps_nonzero: f64,
    pub points: usize,
    pub flagged: Vec<ScanPoint>,
    pub max_locus_distance: Option<f64>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("param1,param2,norm2,max_abs_sw,locus_distance\n");
        for p in &self.flagged {
            let param = |i: usize| p.params.get(i).map(|v| v.to_string()).unwrap_or_default();
            let dist = p.locus_distance.map(|d| d.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{},{}", param(0), param(1), p.norm2, p.max_abs_sw, dist).expect("write to string");
        }
        out
    }
}

struct Compiled {
    sw: Vec<Polynomial>,
    norm2: Polynomial,
    curl: Vec<Polynomial>,
}

fn compile(mla: &MetricLieAlgebra<Polynomial>, predicate: ScanPredicate) -> Result<Compiled> {
    let conv = Conventions::PINNED;
    let b = CurvatureBundle::compute(mla, &conv)?;
    let vars = &mla.params;
    let align = |ps: &[Polynomial]| ps.iter().map(|p| p.align(vars)).collect::<Result<Vec<_>>>();
    Ok(Compiled {
        sw: align(b.sw.entries())?,
        norm2: b.sw_norm2(&mla.metric)?.align(vars)?,
        curl: match predicate {
            ScanPredicate::AlmostHarmonicCurl => align(b.sw_curl(&conv)?.entries())?,
            ScanPredicate::Isotropy => Vec::new(),
        },
    })
}

fn locus_distance(family: &str, predicate: ScanPredicate, x: &[f64]) -> Option<f64> {
    match (family, predicate, x) {
        ("A2", ScanPredicate::Isotropy, [l1, l2]) => Some(l1.abs().min((l1 - l2).abs() / 2f64.sqrt())),
        ("A3", ScanPredicate::Isotropy, [_]) => Some(0.0),
        ("A2", ScanPredicate::AlmostHarmonicCurl, [l1, l2]) => Some(l1.hypot(*l2)),
        ("A3", ScanPredicate::AlmostHarmonicCurl, [l]) => Some(l.abs()),
        _ => None,
    }
}

fn grid_points(ranges: &[ParamRange], n: usize) -> Vec<Vec<f64>> {
    let axis = |r: &ParamRange| -> Vec<f64> {
        if n == 1 {
            return vec![rational::to_f64(&r.lo)];
        }
        let step = (&r.hi - &r.lo) / rational::int(n as i64 - 1);
        (0..n)
            .map(|k| rational::to_f64(&(&r.lo + &step * rational::int(k as i64))))
            .collect()
    };
    ranges.iter().fold(vec![Vec::new()], |acc, r| {
        let values = axis(r);
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    if !(cfg.eps_zero > 0.0 && cfg.eps_nonzero > 0.0) {
        return Err(Error::input("scan tolerances must be positive"));
    }
    if cfg.eps_zero >= cfg.eps_nonzero && cfg.rule == IsotropyRule::Absolute {
        return Err(Error::input("eps_zero must be below eps_nonzero"));
    }
    for r in &cfg.ranges {
        if r.lo > r.hi {
            return Err(Error::input(format!("empty range for {}", r.name)));
        }
    }
    let id = cfg.family.id;
    let mut free: Vec<&ParamRange> = Vec::new();
    for p in id.params() {
        match (cfg.ranges.iter().find(|r| r.name == *p), cfg.family.bindings.contains_key(*p)) {
            (Some(_), true) => return Err(Error::input(format!("{p} is both bound and scanned"))),
            (Some(r), false) => free.push(r),
            (None, true) => {}
            (None, false) => return Err(Error::input(format!("{p} is neither bound nor in the scan box"))),
        }
    }
    if let Some(r) = cfg.ranges.iter().find(|r| !id.params().contains(&r.name.as_str())) {
        return Err(Error::input(format!("{id} has no parameter {:?}", r.name)));
    }
    let mla = build_family(&cfg.family)?;
    let names: Vec<String> = free.iter().map(|r| r.name.clone()).collect();
    // Each algebra variable is read from the point or from the bindings.
    let slots: Vec<std::result::Result<usize, f64>> = mla
        .params
        .names()
        .iter()
        .map(|n| match names.iter().position(|m| m == n) {
            Some(i) => Ok(i),
            None => Err(cfg.family.bindings.get(n).map_or(0.0, rational::to_f64)),
        })
        .collect();
    let compiled = compile(&mla, cfg.predicate)?;

    let ranges: Vec<ParamRange> = free.iter().map(|r| (*r).clone()).collect();
    let points: Vec<Vec<f64>> = match &cfg.sampling {
        Sampling::Grid(0) | Sampling::Random(0) => return Err(Error::input("scan needs at least one point")),
        Sampling::Grid(n) => grid_points(&ranges, *n),
        Sampling::Random(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..*n)
                .map(|_| {
                    ranges
                        .iter()
                        .map(|r| {
                            let (lo, hi) = (rational::to_f64(&r.lo), rational::to_f64(&r.hi));
                            lo + (hi - lo) * rng.gen::<f64>()
                        })
                        .collect()
                })
                .collect()
        }
        Sampling::Points(ps) => ps
            .iter()
            .map(|p| {
                if p.len() != ranges.len() {
                    return Err(Error::input(format!("scan point needs {} values", ranges.len())));
                }
                Ok(p.iter().map(rational::to_f64).collect())
            })
            .collect::<Result<_>>()?,
    };

    let family = id.to_string();
    let flagged: Vec<ScanPoint> = points
        .par_iter()
        .filter_map(|x| {
            let eval_at: Vec<f64> = slots.iter().map(|s| s.map_or_else(|v| v, |i| x[i])).collect();
            let sw: Vec<f64> = compiled.sw.iter().map(|p| p.eval_f64(&eval_at)).collect();
            let max_abs_sw = sw.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let norm2 = compiled.norm2.eval_f64(&eval_at);
            let hit = match cfg.predicate {
                ScanPredicate::Isotropy => {
                    let zero = match cfg.rule {
                        IsotropyRule::Relative => norm2.abs() <= cfg.eps_zero * compiled.norm2.max_term_magnitude(&eval_at),
                        IsotropyRule::Absolute => norm2.abs() < cfg.eps_zero,
                    };
                    zero && max_abs_sw > cfg.eps_nonzero
                }
                ScanPredicate::AlmostHarmonicCurl => compiled
                    .curl
                    .iter()
                    .all(|p| p.eval_f64(&eval_at).abs() <= cfg.eps_zero),
            };
            hit.then(|| ScanPoint {
                params: x.clone(),
                norm2,
                max_abs_sw,
                locus_distance: locus_distance(&family, cfg.predicate, x),
            })
        })
        .collect();
    let max_locus_distance = flagged
        .iter()
        .map(|p| p.locus_distance)
        .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))
        .filter(|_| !flagged.is_empty());
    Ok(ScanReport {
        family,
        predicate: cfg.predicate,
        rule: cfg.rule,
        params: names,
        ranges,
        seed: cfg.seed,
        eps_zero: cfg.eps_zero,
        eps_nonzero: cfg.eps_nonzero,
        points: points.len(),
        flagged,
        max_locus_distance,
    })
}
