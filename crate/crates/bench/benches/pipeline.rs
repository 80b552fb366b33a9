use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use swlie_core::audit::scan::{parse_box, scan, Sampling, ScanConfig};
use swlie_core::audit::{generate_system, reference, systems_match, SystemKind, AUDIT_SEED};
use swlie_core::curvature::{Conventions, CurvatureBundle};
use swlie_core::lie::{build_family, FamilyId, FamilySpec};

fn symbolic_bundle(c: &mut Criterion) {
    let mut group = c.benchmark_group("symbolic_bundle");
    for id in [FamilyId::A1, FamilyId::A2, FamilyId::A3] {
        let mla = build_family(&FamilySpec::symbolic(id)).unwrap();
        group.bench_function(id.to_string(), |b| {
            b.iter(|| CurvatureBundle::compute(black_box(&mla), &Conventions::PINNED).unwrap())
        });
    }
    group.finish();
}

fn curl_system_match(c: &mut Criterion) {
    let printed = reference::system("a2_curl").unwrap().system();
    c.bench_function("a2_curl_generate_and_match", |b| {
        b.iter(|| {
            let g = generate_system(FamilyId::A2, SystemKind::AlmostHarmonicCurl, &Conventions::PINNED).unwrap();
            systems_match(&g, black_box(&printed), AUDIT_SEED).unwrap()
        })
    });
}

fn isotropy_scan(c: &mut Criterion) {
    let cfg = ScanConfig::new(
        FamilySpec::symbolic(FamilyId::A2),
        parse_box("l1=-3:3,l2=-3:3").unwrap(),
        Sampling::Grid(101),
    );
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("a2_grid_101", |b| b.iter(|| scan(black_box(&cfg)).unwrap()));
    group.finish();
}

criterion_group!(benches, symbolic_bundle, curl_system_match, isotropy_scan);
criterion_main!(benches);
