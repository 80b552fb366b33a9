//! Condition systems, table reproduction and audits built on the engine.

pub mod footnote;
pub mod linear;
pub mod reference;
pub mod report;
pub mod roots;
pub mod scan;
pub mod system;
pub mod tables;

use rayon::prelude::*;
use serde_json::json;

pub use report::{AuditReport, Finding, Verdict};
pub use system::{generate_system, systems_match, verify_locus, MatchReport, MatchVerdict, PolySystem, SystemKind};
pub use tables::reproduce_table;

use crate::curvature::{self, Conventions, CurvatureBundle, DivKind};
use crate::error::Result;
use crate::lie::{build_family, is_unimodular, validate_jacobi, FamilyId, FamilySpec};
use crate::scalar::{Polynomial, VarList};
use crate::tensor::Tensor;
use report::verdict;

/// Seed for every sampled comparison in the full audit.
pub const AUDIT_SEED: u64 = 20_160_601;

/// Entry-wise comparison of an engine tensor with a printed table.
fn compare_tensor(check: &str, engine: &Tensor<Polynomial>, printed: &Tensor<Polynomial>, vars: &VarList) -> Result<Finding> {
    let mut diffs = Vec::new();
    for ((ix, e), p) in engine.indices().zip(engine.entries()).zip(printed.entries()) {
        let e = e.align(vars)?;
        if &e != p {
            let key: String = ix.iter().map(|i| (i + 1).to_string()).collect();
            diffs.push(json!({"component": key, "engine": e, "printed": p}));
        }
    }
    Ok(Finding::new(check, verdict(diffs.is_empty()))
        .with("components_compared", engine.entries().len())
        .with("differences", &diffs))
}

fn structure_checks(report: &mut AuditReport) -> Result<()> {
    for id in FamilyId::ALL {
        let mla = build_family(&FamilySpec::symbolic(id))?;
        let u = is_unimodular(&mla.sc);
        report.push(
            Finding::new(format!("unimodular.{id}"), verdict(u.unimodular))
                .with("traces", &u.traces)
                .with("only_if", &u.only_if),
        );
    }
    for id in FamilyId::ALL {
        let mla = build_family(&FamilySpec::symbolic(id))?;
        let v = validate_jacobi(&mla.sc);
        report.push(Finding::new(format!("jacobi.{id}"), verdict(v.is_empty())).with("violations", &v));
    }
    Ok(())
}

fn tensor_checks(report: &mut AuditReport, conv: &Conventions) -> Result<()> {
    for (id, sw_ref, w_ref) in [(FamilyId::A2, "a2_sw", "a2_w"), (FamilyId::A3, "a3_sw", "a3_w")] {
        let mla = build_family(&FamilySpec::symbolic(id))?;
        let b = CurvatureBundle::compute(&mla, conv)?;
        let r = reference::tensor(sw_ref)?;
        report.push(compare_tensor(&format!("sw-table.{id}"), &b.sw, &r.tensor, &r.vars)?);

        let (vars, v) = curvature::symbolic_vector(&mla.params);
        let mla_v = mla.with_vars(&vars)?;
        let bv = CurvatureBundle::compute(&mla_v, conv)?;
        let w = curvature::sw_contract(&bv.sw, &v)?;
        let r = reference::tensor(w_ref)?;
        report.push(compare_tensor(&format!("w-table.{id}"), &w, &r.tensor, &r.vars)?);

        let pdiv = b.sw_divergence(DivKind::I, &mla.metric, conv)?;
        report.push(Finding::new(format!("pdiv-vanishes.{id}"), verdict(pdiv.is_zero())));
    }
    Ok(())
}

fn system_checks(report: &mut AuditReport, conv: &Conventions) -> Result<()> {
    let cases = [
        (FamilyId::A2, SystemKind::AlmostHarmonicCurl, "a2_curl"),
        (FamilyId::A3, SystemKind::AlmostHarmonicCurl, "a3_curl"),
        (FamilyId::A2, SystemKind::HarmonicContraction, "a2_contraction"),
        (FamilyId::A3, SystemKind::HarmonicContraction, "a3_contraction"),
        (FamilyId::A2, SystemKind::HarmonicVector, "a2_vector"),
        (FamilyId::A3, SystemKind::HarmonicVector, "a3_vector"),
    ];
    let findings: Vec<Finding> = cases
        .par_iter()
        .map(|&(id, kind, name)| {
            let generated = generate_system(id, kind, conv)?;
            let printed = reference::system(name)?;
            let m = systems_match(&generated, &printed.system(), AUDIT_SEED)?;
            let ok = m.verdict != MatchVerdict::Mismatch && m.witnesses.is_empty();
            Ok(Finding::new(format!("system.{id}.{kind}"), verdict(ok))
                .with("generated", generated.to_strings())
                .with("printed", printed.members.iter().map(Polynomial::to_string).collect::<Vec<_>>())
                .with("match", &m)
                .tolerance("relative_residual", 1e-6))
        })
        .collect::<Result<_>>()?;
    for f in findings {
        report.push(f);
    }

    for name in ["a2_curl", "a3_curl"] {
        let r = reference::system(name)?;
        let s = r.system();
        report.push(
            Finding::new(format!("system.{}.printed-redundancy", r.family), Verdict::Info)
                .with("printed_members", r.members.len())
                .with("distinct_primitives", s.to_strings()),
        );
    }
    Ok(())
}

fn footnote_checks(report: &mut AuditReport) -> Result<()> {
    use footnote::*;
    use crate::scalar::rational::{int, ratio};
    use crate::scalar::ScalarValue;

    let a = footnote::a();
    report.push(
        Finding::new("footnote.A", verdict((a - 18.289).abs() < 1e-3))
            .with("value", a)
            .with("printed", 18.289)
            .tolerance("absolute", 1e-3),
    );
    let one = int(1);
    let exact = [
        ("P(1,1)", ScalarValue::Rational(p(&one, &one)), ScalarValue::Rational(int(512))),
        ("Q(1,1)", ScalarValue::Rational(q(&one, &one)), ScalarValue::Rational(int(256))),
        ("H(1,1)", ScalarValue::Rational(h_poly(&one, &one)), ScalarValue::Rational(int(64))),
        ("F(1,1)", big_f(&one, &one), ScalarValue::Rational(int(8))),
        ("L1(1,1)", l1(&one, &one)?, ScalarValue::Rational(int(2))),
        ("L2(1,1)", ScalarValue::Rational(l2(&one, &one)?), ScalarValue::Rational(int(0))),
        ("L2(1,2)", ScalarValue::Rational(l2(&one, &int(2))?), ScalarValue::Rational(ratio(3, 4))),
        ("f(0)", ScalarValue::Rational(f(&int(0))), ScalarValue::Rational(int(0))),
        ("h(0)", ScalarValue::Rational(h(&int(0))), ScalarValue::Rational(ratio(33, 32))),
    ];
    for (name, got, want) in exact {
        report.push(
            Finding::new(format!("footnote.{name}"), verdict(got == want))
                .with("value", &got)
                .with("expected", &want),
        );
    }

    let printed_b = 565.076;
    for reading in Reading::BOTH {
        let c = FootnoteConstants::new(reading);
        let close = c.b.is_some_and(|b| (b - printed_b).abs() < 1e-2);
        let tag = reading.tag();
        report.push(
            Finding::new(format!("footnote.B.{tag}"), verdict(close))
                .with("constants", &c)
                .with("printed", printed_b)
                .tolerance("absolute", 1e-2),
        );
    }

    // L3 candidates against the real roots of det M(λ) for A3.
    let sys = linear::contraction_matrix(FamilyId::A3)?;
    let det = linear::det_locus(&sys)?;
    let uni = roots::UniPoly::from_poly(&det.det)?;
    let mut cands = vec![("printed".to_string(), 89.072)];
    for reading in Reading::BOTH {
        if let Some(l3) = FootnoteConstants::new(reading).l3 {
            cands.push((reading.tag().to_string(), l3));
        }
    }
    report.push(
        Finding::new("footnote.L3.det-roots", Verdict::Info)
            .with("det", &det.det)
            .with("degree", det.degree)
            .with("roots", &det.roots),
    );
    for (label, l3) in cands {
        for l in [l3, -l3] {
            let nearest = det
                .roots
                .iter()
                .map(|r| r.approx)
                .min_by(|a, b| (a - l).abs().total_cmp(&(b - l).abs()));
            let on_root = det.roots.iter().any(|r| (r.approx - l).abs() <= 1e-6 * l.abs().max(1.0));
            report.push(
                Finding::new(format!("footnote.L3.{label}.{}", if l > 0.0 { "+" } else { "-" }), verdict(on_root))
                    .with("lambda", l)
                    .with("det_relative_residual", tables::relative_residual(&det.det, &[l]))
                    .with("det_value", uni.eval_f64(l))
                    .with("nearest_root", nearest)
                    .tolerance("relative", 1e-6),
            );
        }
    }
    Ok(())
}

/// Every check: structure, tensors, systems, footnote constants and all four tables.
pub fn full_audit() -> Result<AuditReport> {
    let conv = Conventions::PINNED;
    let mut report = AuditReport::new();
    structure_checks(&mut report)?;
    tensor_checks(&mut report, &conv)?;
    system_checks(&mut report, &conv)?;
    footnote_checks(&mut report)?;
    let tables: Vec<AuditReport> = (1..=4u8).into_par_iter().map(reproduce_table).collect::<Result<_>>()?;
    for t in tables {
        report.extend(t);
    }
    Ok(report)
}
