//! Property tests over random parameters.

mod common;

use common::{s, Params, P};
use even_christoffel::associated::AssociatedCache;
use even_christoffel::families::mp_symmetry_residual;
use even_christoffel::zeros::interlace_values;
use even_christoffel::{bound_separation, mp_family, pj_family, zeros_golub_welsch};
use even_christoffel::{Complex, Polynomial, RecurrenceFamily, Scalar, TolerancePolicy};
use proptest::prelude::*;

fn tol() -> TolerancePolicy {
    TolerancePolicy::new(P).unwrap()
}

fn poly(coeffs: &[i32]) -> Polynomial {
    Polynomial::new(coeffs.iter().map(|&c| Scalar::from_int(c as i64, P)).collect(), P)
}

fn close(a: &Scalar, b: &Scalar, scale: &Scalar) -> bool {
    (a - b).abs() <= &tol().rel_tol * &scale.clone().max_of(&Scalar::one(P))
}

fn mp_strategy() -> impl Strategy<Value = (String, String)> {
    (0.1f64..20.0, 0.05f64..3.09).prop_map(|(l, p)| (format!("{l:.5}"), format!("{p:.5}")))
}

/// `(a, b)` valid up to degree `top`.
fn pj_strategy(top: usize) -> impl Strategy<Value = (String, String)> {
    (0.01f64..30.0, -10.0f64..10.0).prop_map(move |(d, b)| (format!("{:.5}", -(top as f64) - d), format!("{b:.5}")))
}

fn mp((l, p): &(String, String)) -> RecurrenceFamily {
    mp_family(s(l), s(p)).unwrap()
}

fn pj((a, b): &(String, String)) -> RecurrenceFamily {
    pj_family(s(a), s(b)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn division_round_trip(
        num in prop::collection::vec(-50i32..50, 1..9),
        den in prop::collection::vec(-50i32..50, 1..5),
    ) {
        let (p, d) = (poly(&num), poly(&den));
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d);
        let back = &(&q * &d) + &r;
        let diff = (&back - &p).norm_inf();
        prop_assert!(close(&diff, &Scalar::zero(P), &p.norm_inf()));
        if let (Some(rd), Some(dd)) = (r.degree(), d.degree()) {
            prop_assert!(rd < dd || r.is_zero());
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in prop::collection::vec(-20i32..20, 1..7),
        b in prop::collection::vec(-20i32..20, 1..7),
        x in -5.0f64..5.0,
    ) {
        let (p, q) = (poly(&a), poly(&b));
        let x = Scalar::from_f64(x, P);
        let (px, qx) = (p.eval(&x), q.eval(&x));
        let prod = (&p * &q).eval(&x);
        let scale = (&p * &q).magnitude_at(&x);
        prop_assert!(close(&prod, &(&px * &qx), &scale));
        prop_assert!(close(&(&p + &q).eval(&x), &(&px + &qx), &(p.magnitude_at(&x) + q.magnitude_at(&x))));
    }

    #[test]
    fn real_polynomials_commute_with_conjugation(
        a in prop::collection::vec(-20i32..20, 1..8),
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
    ) {
        let p = poly(&a);
        let z = Complex::new(Scalar::from_f64(re, P), Scalar::from_f64(im, P));
        let lhs = p.eval_complex(&z.conj());
        let rhs = p.eval_complex(&z).conj();
        let scale = p.magnitude_at(&z.abs());
        prop_assert!(close(&lhs.re, &rhs.re, &scale));
        prop_assert!(close(&lhs.im, &rhs.im, &scale));
    }

    #[test]
    fn modifiers_are_even_with_imaginary_nodes(params in mp_strategy(), k in 0usize..4) {
        let family = mp(&params);
        let spec = family.modifier(k).unwrap();
        prop_assert_eq!(spec.c.degree(), Some(2 * k));
        prop_assert!(spec.c.is_even());
        for node in &spec.nodes {
            prop_assert!(node.re.is_zero());
            let value = spec.c.eval_complex(node);
            prop_assert!(value.abs() <= &tol().abs_tol * &spec.c.magnitude_at(&node.abs()));
        }
    }

    #[test]
    fn recurrence_coefficients_are_positive(mp_params in mp_strategy(), pj_params in pj_strategy(20)) {
        let (m, p) = (mp(&mp_params), pj(&pj_params));
        let reference = (Params::mp(&mp_params.0, &mp_params.1), Params::pj(&pj_params.0, &pj_params.1));
        for j in 2..=20 {
            prop_assert!(m.lambda(j).is_positive());
            prop_assert!(p.lambda(j).is_positive());
            prop_assert!(close(&m.lambda(j), &reference.0.lambda(j), &m.lambda(j)));
            prop_assert!(close(&p.c(j), &reference.1.c(j), &p.c(j).abs()));
        }
    }

    #[test]
    fn bridging_identity(params in mp_strategy(), n in 2usize..16, m in 2usize..16, x in -10.0f64..10.0) {
        prop_assume!(m <= n);
        let family = mp(&params);
        let mut cache = AssociatedCache::new(&family, n).unwrap();
        let r = cache.beardon(n, m, &Scalar::from_f64(x, P)).unwrap();
        prop_assert!(r.within(&tol().rel_tol), "relative residual {}", r.relative().to_sci(3));
    }

    #[test]
    fn extension_identity(params in pj_strategy(24), n in 1usize..12, m in 0usize..12, x in -10.0f64..10.0) {
        let family = pj(&params);
        let mut cache = AssociatedCache::new(&family, n + m).unwrap();
        let r = cache.extension(n, m, &Scalar::from_f64(x, P)).unwrap();
        prop_assert!(r.within(&tol().rel_tol), "relative residual {}", r.relative().to_sci(3));
    }

    #[test]
    fn consecutive_zeros_interlace(params in mp_strategy(), pj_params in pj_strategy(14), n in 2usize..14) {
        for family in [mp(&params), pj(&pj_params)] {
            let outer = zeros_golub_welsch(&family, n).unwrap();
            let inner = zeros_golub_welsch(&family, n - 1).unwrap();
            prop_assert!(interlace_values(&inner.values, &outer.values, &tol()).unwrap().is_strict());
        }
    }

    #[test]
    fn bounds_sit_between_extreme_zeros(params in mp_strategy(), pj_params in pj_strategy(14), n in 2usize..14) {
        for family in [mp(&params), pj(&pj_params)] {
            let report = bound_separation(&family, n).unwrap();
            prop_assert!(report.ordering_ok, "{}: bounds out of order", family.describe());
            prop_assert!(report.separated.iter().all(|&b| b), "{}: bound outside the zeros", family.describe());
        }
    }

    #[test]
    fn reflecting_phi_reflects_the_zeros(params in mp_strategy(), n in 1usize..14, x in -10.0f64..10.0) {
        let (lambda, phi) = (s(&params.0), s(&params.1));
        let mirror = mp_family(lambda.clone(), Scalar::pi(P) - &phi).unwrap();
        let zeros = zeros_golub_welsch(&mp(&params), n).unwrap();
        let mirrored = zeros_golub_welsch(&mirror, n).unwrap();
        for (a, b) in zeros.values.iter().zip(mirrored.values.iter().rev()) {
            prop_assert!(close(a, &-b, &a.abs()));
        }
        let x = Scalar::from_f64(x, P);
        let r = mp_symmetry_residual(&lambda, &phi, n, &x).unwrap();
        let scale = mp(&params).generate(n).unwrap().magnitude_at(&x);
        prop_assert!(r <= &tol().rel_tol * &scale);
    }
}
