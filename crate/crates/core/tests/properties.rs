use std::collections::BTreeMap;

use proptest::prelude::*;
use specgap::diffpoly::rational::{int, ratio};
use specgap::diffpoly::{substitute, DiffPoly, ParamPoly, Poly1};
use specgap::gapcert::CertFamily;
use specgap::ladder::{compute_f, OpVector};
use specgap::oracle::eigensolve_fd;

fn symbol() -> impl Strategy<Value = DiffPoly> {
    (0u32..3, 0u32..4).prop_map(|(k, order)| match k {
        0 => DiffPoly::v(order),
        n => DiffPoly::a(n - 1, order),
    })
}

fn diffpoly() -> impl Strategy<Value = DiffPoly> {
    let term = (-6i64..=6, 1i64..=3, prop::collection::vec((symbol(), 1u32..=2), 0..3));
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(DiffPoly::zero(), |acc, (n, d, factors)| {
            let m = factors.into_iter().fold(DiffPoly::constant(ratio(n, d)), |m, (s, e)| &m * &s.pow(e));
            acc + m
        })
    })
}

fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((-4i64..=4, 0u32..4, 0u32..2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(ParamPoly::zero(1), |acc, (c, xe, le)| {
            let t = ParamPoly::x(1).pow(xe).mul(&ParamPoly::lambda(1, 0).pow(le)).scale(&int(c));
            acc.add(&t)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in diffpoly(), q in diffpoly(), r in diffpoly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn derive_is_a_derivation(p in diffpoly(), q in diffpoly()) {
        prop_assert_eq!((&p * &q).derive(), &(&p.derive() * &q) + &(&p * &q.derive()));
        prop_assert_eq!((&p + &q).derive(), &p.derive() + &q.derive());
    }

    #[test]
    fn substitute_commutes_with_derive(
        p in diffpoly(),
        v in prop::collection::vec(-5i64..=5, 1..5),
        a0 in param_poly(),
        a1 in param_poly(),
    ) {
        let v = Poly1::from_i64(&v);
        let assign = BTreeMap::from([(0, a0), (1, a1)]);
        let lhs = substitute(&p.derive(), &v, &assign).unwrap();
        let rhs = substitute(&p, &v, &assign).unwrap().d_x();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_leaves_only_the_top_component(order in 1usize..=6, seed in prop::collection::vec(diffpoly(), 7)) {
        let a = OpVector::from_components(seed[..=order].to_vec());
        let r = a.apply_r_n(order);
        for n in 0..order {
            prop_assert!(r.get(n).is_zero(), "component {} of N={}", n, order);
        }
    }

    #[test]
    fn verdict_depends_only_on_lambda_direction(e in -3.0f64..3.0, l in 0.05f64..2.0, c in 0.01f64..100.0) {
        let v = Poly1::from_i64(&[0, 0, -2, 0, 1]);
        let a0 = ParamPoly::x(1).mul(&ParamPoly::lambda(1, 0));
        let fam = CertFamily::new(substitute(&compute_f(2), &v, &BTreeMap::from([(0, a0)])).unwrap());
        let (e, l, c) = (round(e), round(l), round(c));
        prop_assert_eq!(fam.verdict(e, &[l]), fam.verdict(e, &[c * l]));
        prop_assert_eq!(fam.verdict(e, &[-l]), fam.verdict(e, &[-c * l]));
    }

    #[test]
    fn spectrum_shifts_with_constant_potential(c in -5i64..=5) {
        let base = Poly1::new(vec![int(0), int(0), ratio(1, 2)]);
        let shifted = Poly1::new(vec![int(c), int(0), ratio(1, 2)]);
        let a = eigensolve_fd(&base, 8.0, 800, 3).values();
        let b = eigensolve_fd(&shifted, 8.0, 800, 3).values();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((y - x - c as f64).abs() < 1e-9);
        }
    }
}

/// Dyadic rounding keeps `c·l` exactly representable for the exact check.
fn round(x: f64) -> f64 {
    (x * 1024.0).round() / 1024.0
}
