use proptest::prelude::*;
use swlie_core::scalar::rational::{int, ratio};
use swlie_core::{parse_poly, Direction, Metric, Polynomial, Rational, Tensor, VarList, Variance};

fn vars() -> VarList {
    VarList::new(&["x", "y", "z"])
}

fn build(terms: &[(i64, i64, [u32; 3])]) -> Polynomial {
    let vs = vars();
    terms.iter().fold(Polynomial::zero(&vs), |acc, &(n, d, e)| {
        let mono = (0..3).fold(Polynomial::constant(&vs, int(1)), |m, i| m.mul(&Polynomial::var_at(&vs, i).pow(e[i])));
        acc.add(&mono.scale(&ratio(n, d)))
    })
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, 1i64..=4, [0u32..=3, 0u32..=3, 0u32..=3]), 0..6).prop_map(|t| build(&t))
}

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn k(r: Rational) -> Polynomial {
    Polynomial::constant(&VarList::empty(), r)
}

fn tensor(variance: &'static [Variance]) -> impl Strategy<Value = Tensor<Polynomial>> {
    let len = 3usize.pow(variance.len() as u32);
    prop::collection::vec(rat(), len)
        .prop_map(move |d| Tensor::from_data(3, variance, d.into_iter().map(k).collect()).unwrap())
}

fn diag_metric() -> impl Strategy<Value = Metric<Polynomial>> {
    (1i64..=3, 1i64..=3, 1i64..=3, any::<bool>()).prop_map(|(a, b, c, flip)| {
        let s = if flip { -1 } else { 1 };
        Metric::diagonal(&[k(int(a * s)), k(int(b)), k(int(c))]).unwrap()
    })
}

const CO2: &[Variance] = &[Variance::Co, Variance::Co];
const CO3: &[Variance] = &[Variance::Co, Variance::Co, Variance::Co];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&a.neg()), Polynomial::zero(&vars()));
    }

    #[test]
    fn normalize_is_idempotent(a in poly()) {
        let (p, unit) = a.normalize();
        prop_assert_eq!(p.normalize().0, p.clone());
        prop_assert_eq!(p.scale(&unit), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), pt in [rat(), rat(), rat()]) {
        let ev = |p: &Polynomial| p.eval_rational(&pt);
        prop_assert_eq!(ev(&a.add(&b)), ev(&a) + ev(&b));
        prop_assert_eq!(ev(&a.mul(&b)), ev(&a) * ev(&b));
    }

    #[test]
    fn display_round_trips(a in poly()) {
        prop_assert_eq!(parse_poly(&a.to_string(), &vars()).unwrap(), a);
    }

    #[test]
    fn raise_then_lower_is_identity(t in tensor(CO3), g in diag_metric(), slot in 0usize..3) {
        let up = t.move_index(slot, &g, Direction::Raise).unwrap();
        prop_assert_eq!(up.move_index(slot, &g, Direction::Lower).unwrap(), t);
    }

    #[test]
    fn contraction_is_linear(s in tensor(CO2), t in tensor(CO2), c in rat(), g in diag_metric()) {
        let tr = |x: &Tensor<Polynomial>| {
            x.move_index(1, &g, Direction::Raise).unwrap().contract(0, 1).unwrap().get(&[]).clone()
        };
        let lhs = tr(&s.add(&t.scale(&k(c.clone()))).unwrap());
        prop_assert_eq!(lhs, tr(&s).add(&tr(&t).scale(&c)));
    }

    #[test]
    fn sym_and_antisym_parts_are_idempotent(t in tensor(CO3)) {
        let s = t.sym_part().unwrap();
        let a = t.antisym_part().unwrap();
        prop_assert_eq!(s.sym_part().unwrap(), s.clone());
        prop_assert_eq!(a.antisym_part().unwrap(), a.clone());
        prop_assert!(s.antisym_part().unwrap().is_zero());
    }
}
