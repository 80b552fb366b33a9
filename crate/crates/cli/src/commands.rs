use std::fs;
use std::path::Path;

use serde_json::{json, Value as Json};
use swlie_core::audit::scan::{self, IsotropyRule, ScanConfig, ScanPredicate, Sampling};
use swlie_core::audit::{full_audit, reference, reproduce_table, system, systems_match, MatchVerdict, SystemKind};
use swlie_core::curvature::{self, Conventions, CurvatureBundle, DivKind};
use swlie_core::lie::{build_family, is_unimodular, validate_jacobi, AlgebraJson, FamilyId, FamilySpec, MetricLieAlgebra};
use swlie_core::scalar::rational::parse_rational;
use swlie_core::{Error, Polynomial, Result};

use crate::args::{ScanKind, Source, Which};

/// Process exit status: 0 clean, 1 completed with findings, 2 usage or input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Clean,
    Findings,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Clean => 0,
            Status::Findings => 1,
        }
    }

    fn from_findings(bad: bool) -> Self {
        if bad {
            Status::Findings
        } else {
            Status::Clean
        }
    }
}

pub enum Body {
    Json(Json),
    Text(String),
}

pub struct Outcome {
    pub input: Json,
    pub body: Body,
    pub status: Status,
}

impl Outcome {
    fn json(input: Json, payload: Json, status: Status) -> Self {
        Outcome {
            input,
            body: Body::Json(payload),
            status,
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Json {
    serde_json::to_value(v).expect("report values serialize")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

struct Loaded {
    mla: MetricLieAlgebra<Polynomial>,
    echo: Json,
    family: Option<FamilyId>,
}

fn load_file(path: &Path) -> Result<MetricLieAlgebra<Polynomial>> {
    read(path)?.parse::<AlgebraJson>()?.build()
}

fn load(source: &Source) -> Result<Loaded> {
    match (&source.family, &source.file) {
        (Some(f), None) => {
            let id: FamilyId = f.parse()?;
            let spec = FamilySpec::parse(id, source.params.as_deref().unwrap_or(""))?;
            Ok(Loaded {
                mla: build_family(&spec)?,
                echo: json!({"family": id.to_string(), "params": source.params.as_deref().unwrap_or("")}),
                family: Some(id),
            })
        }
        (None, Some(path)) => Ok(Loaded {
            mla: load_file(path)?,
            echo: json!({"file": path.display().to_string()}),
            family: None,
        }),
        _ => Err(Error::Input("give exactly one input: --family [--params] or --file".into())),
    }
}

/// Jacobi check for custom algebras: a warning, or under `--strict` an early
/// report with status 1.
fn guard_jacobi(loaded: &Loaded, strict: bool) -> Option<Outcome> {
    if loaded.family.is_some() {
        return None;
    }
    let v = validate_jacobi(&loaded.mla.sc);
    if v.is_empty() {
        return None;
    }
    if strict {
        let payload = json!({"jacobi_violations": to_json(&v)});
        return Some(Outcome::json(loaded.echo.clone(), payload, Status::Findings));
    }
    let triples: Vec<String> = v.iter().map(|j| format!("{:?}", j.triple)).collect();
    eprintln!("warning: Jacobi identity fails at {}", triples.join(", "));
    None
}

pub fn validate(path: &Path) -> Result<Outcome> {
    let mla = load_file(path)?;
    let violations = validate_jacobi(&mla.sc);
    let payload = json!({
        "name": mla.label,
        "dim": mla.dim(),
        "variables": mla.params.names(),
        "signature": to_json(&mla.metric.signature()),
        "lorentzian": mla.metric.is_lorentzian(),
        "jacobi_violations": to_json(&violations),
        "unimodularity": to_json(&is_unimodular(&mla.sc)),
    });
    let input = json!({"file": path.display().to_string()});
    Ok(Outcome::json(input, payload, Status::from_findings(!violations.is_empty())))
}

pub fn curvature(source: &Source, strict: bool) -> Result<Outcome> {
    let loaded = load(source)?;
    if let Some(o) = guard_jacobi(&loaded, strict) {
        return Ok(o);
    }
    let b = CurvatureBundle::compute(&loaded.mla, &Conventions::PINNED)?;
    Ok(Outcome::json(loaded.echo, b.to_json(), Status::Clean))
}

pub fn sw(source: &Source, strict: bool) -> Result<Outcome> {
    let loaded = load(source)?;
    if let Some(o) = guard_jacobi(&loaded, strict) {
        return Ok(o);
    }
    let conv = Conventions::PINNED;
    let mla = &loaded.mla;
    let b = CurvatureBundle::compute(mla, &conv)?;
    let components: serde_json::Map<String, Json> =
        curvature::components(&b.sw).into_iter().map(|(k, v)| (k, to_json(&v))).collect();
    let pdiv = b.sw_divergence(DivKind::I, &mla.metric, &conv)?;
    let payload = json!({
        "components": components,
        "norm2": to_json(&b.sw_norm2(&mla.metric)?),
        "sw_vanishes": b.sw.is_zero(),
        "pdiv_vanishes": pdiv.is_zero(),
    });
    Ok(Outcome::json(loaded.echo, payload, Status::Clean))
}

fn parse_vector(text: &str) -> Result<Vec<swlie_core::Rational>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Input(format!("--vector needs three components, got {}", parts.len())));
    }
    parts.into_iter().map(parse_rational).collect()
}

pub fn predicate(source: &Source, which: Which, vector: Option<&str>, strict: bool) -> Result<Outcome> {
    let loaded = load(source)?;
    if let Some(o) = guard_jacobi(&loaded, strict) {
        return Ok(o);
    }
    let needs_v = matches!(which, Which::HarmonicW | Which::HarmonicV);
    let conv = Conventions::PINNED;
    let preds = match (needs_v, vector) {
        (false, _) => curvature::predicates(&loaded.mla, None, &conv)?,
        (true, Some(text)) => {
            let v = curvature::rational_vector(&loaded.mla.params, &parse_vector(text)?);
            curvature::predicates(&loaded.mla, Some(&v), &conv)?
        }
        (true, None) => {
            let (vars, v) = curvature::symbolic_vector(&loaded.mla.params);
            curvature::predicates(&loaded.mla.with_vars(&vars)?, Some(&v), &conv)?
        }
    };
    let (name, result) = match which {
        Which::Isotropic => ("isotropic", Some(preds.isotropic_sw)),
        Which::AlmostHarmonic => ("almost-harmonic", Some(preds.almost_harmonic_sw)),
        Which::HarmonicW => ("harmonic-w", preds.harmonic_w),
        Which::HarmonicV => ("harmonic-v", preds.harmonic_v),
    };
    let mut input = loaded.echo;
    input["vector"] = json!(vector.unwrap_or("symbolic"));
    Ok(Outcome::json(input, json!({"predicate": name, "result": to_json(&result)}), Status::Clean))
}

fn printed_system(family: FamilyId, kind: SystemKind) -> Result<&'static str> {
    Ok(match (family, kind) {
        (FamilyId::A2, SystemKind::AlmostHarmonicCurl) => "a2_curl",
        (FamilyId::A3, SystemKind::AlmostHarmonicCurl) => "a3_curl",
        (FamilyId::A2, SystemKind::HarmonicContraction) => "a2_contraction",
        (FamilyId::A3, SystemKind::HarmonicContraction) => "a3_contraction",
        (FamilyId::A2, SystemKind::HarmonicVector) => "a2_vector",
        (FamilyId::A3, SystemKind::HarmonicVector) => "a3_vector",
        _ => return Err(Error::Input(format!("no printed {kind} system for {family}"))),
    })
}

pub fn system(source: &Source, predicate: &str, compare: bool, seed: u64, strict: bool) -> Result<Outcome> {
    let kind: SystemKind = predicate.parse()?;
    let loaded = load(source)?;
    if let Some(o) = guard_jacobi(&loaded, strict) {
        return Ok(o);
    }
    let generated = system::generate_for(&loaded.mla, kind, &Conventions::PINNED)?;
    let mut payload = json!({
        "predicate": kind.to_string(),
        "variables": generated.vars().names(),
        "generated": generated.to_strings(),
    });
    let mut input = loaded.echo;
    input["predicate"] = json!(kind.to_string());
    let mut status = Status::Clean;
    if compare {
        let family = loaded
            .family
            .ok_or_else(|| Error::Input("--compare paper needs a catalog --family".into()))?;
        let printed = reference::system(printed_system(family, kind)?)?;
        let m = systems_match(&generated, &printed.system(), seed)?;
        status = Status::from_findings(m.verdict == MatchVerdict::Mismatch || !m.witnesses.is_empty());
        payload["printed"] = json!(printed.members.iter().map(Polynomial::to_string).collect::<Vec<_>>());
        payload["match"] = to_json(&m);
        input["compare"] = json!("paper");
        input["seed"] = json!(seed);
    }
    Ok(Outcome::json(input, payload, status))
}

pub fn table(id: u8) -> Result<Outcome> {
    let r = reproduce_table(id)?;
    let status = Status::from_findings(r.has_discrepancy());
    let payload = json!({"summary": r.summary(), "findings": to_json(&r.findings)});
    Ok(Outcome::json(json!({"table": id}), payload, status))
}

pub fn audit() -> Result<Outcome> {
    let r = full_audit()?;
    let status = Status::from_findings(r.has_discrepancy());
    let payload = json!({"summary": r.summary(), "findings": to_json(&r.findings)});
    Ok(Outcome::json(json!({"audit": "full"}), payload, status))
}

pub struct ScanArgs<'a> {
    pub bounds: &'a str,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub predicate: ScanKind,
    pub eps_zero: Option<f64>,
    pub eps_nonzero: Option<f64>,
    pub absolute: bool,
    pub locus_tol: f64,
    pub csv: bool,
}

pub fn scan(source: &Source, a: &ScanArgs) -> Result<Outcome> {
    if source.file.is_some() {
        return Err(Error::Input("scan runs on catalog families; use --family".into()));
    }
    let id: FamilyId = source
        .family
        .as_deref()
        .ok_or_else(|| Error::Input("scan needs --family".into()))?
        .parse()?;
    let family = FamilySpec::parse(id, source.params.as_deref().unwrap_or(""))?;
    let sampling = match (a.grid, a.samples) {
        (Some(n), None) => Sampling::Grid(n),
        (None, Some(n)) => Sampling::Random(n),
        (None, None) => return Err(Error::Input("scan needs --grid N or --samples N".into())),
        (Some(_), Some(_)) => return Err(Error::Input("--grid and --samples are exclusive".into())),
    };
    let mut cfg = ScanConfig::new(family, scan::parse_box(a.bounds)?, sampling);
    cfg.seed = a.seed;
    cfg.predicate = match a.predicate {
        ScanKind::Isotropy => ScanPredicate::Isotropy,
        ScanKind::AlmostHarmonicCurl => ScanPredicate::AlmostHarmonicCurl,
    };
    if let Some(e) = a.eps_zero {
        cfg.eps_zero = e;
    }
    if let Some(e) = a.eps_nonzero {
        cfg.eps_nonzero = e;
    }
    if a.absolute {
        cfg.rule = IsotropyRule::Absolute;
    }
    let report = scan::scan(&cfg)?;
    let off_locus = report.max_locus_distance.is_some_and(|d| d > a.locus_tol);
    let input = json!({
        "family": id.to_string(),
        "params": source.params.as_deref().unwrap_or(""),
        "box": a.bounds,
        "seed": a.seed,
        "locus_tol": a.locus_tol,
    });
    let status = Status::from_findings(off_locus);
    if a.csv {
        return Ok(Outcome {
            input,
            body: Body::Text(report.to_csv()),
            status,
        });
    }
    Ok(Outcome::json(input, to_json(&report), status))
}
