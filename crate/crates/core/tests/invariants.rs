mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swlie_core::curvature::{invariant_violations, Conventions, CurvatureBundle};
use swlie_core::lie::{build_family, validate_jacobi, FamilyId, FamilySpec};

#[test]
fn catalog_families_satisfy_identities() {
    for id in [FamilyId::A1, FamilyId::A2, FamilyId::A3, FamilyId::A4Variant] {
        let mla = build_family(&FamilySpec::symbolic(id)).unwrap();
        assert!(invariant_violations(&mla, &Conventions::PINNED).unwrap().is_empty(), "{id}");
    }
}

#[test]
fn random_algebras_satisfy_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 0..100 {
        let mla = common::random_algebra(&mut rng, format!("random-{n}"));
        assert!(validate_jacobi(&mla.sc).is_empty(), "{n}: generator broke Jacobi");
        let bad = invariant_violations(&mla, &Conventions::PINNED).unwrap();
        assert!(bad.is_empty(), "{n}: {bad:?}\n{:?}", mla.sc);
    }
}

#[test]
fn norm_is_full_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let mla = common::random_algebra(&mut rng, String::new());
        let b = CurvatureBundle::compute(&mla, &Conventions::PINNED).unwrap();
        let raised = b
            .sw
            .move_index(0, &mla.metric, swlie_core::Direction::Raise)
            .and_then(|t| t.move_index(1, &mla.metric, swlie_core::Direction::Raise))
            .and_then(|t| t.move_index(2, &mla.metric, swlie_core::Direction::Raise))
            .unwrap();
        let direct = b
            .sw
            .entries()
            .iter()
            .zip(raised.entries())
            .fold(swlie_core::Polynomial::zero(&mla.params), |acc, (a, b)| acc.add(&a.mul(b)));
        assert_eq!(b.sw_norm2(&mla.metric).unwrap(), direct);
    }
}
