//! Generated polynomials against their terminating hypergeometric closed forms.

mod common;

use common::{s, P};
use even_christoffel::{mp_family, pj_family, Complex, RecurrenceFamily, Scalar, TolerancePolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: Scalar, im: Scalar) -> Complex {
    Complex::new(re, im)
}

fn real(v: i64) -> Complex {
    Complex::from_real(Scalar::from_int(v, P))
}

fn rising(alpha: &Complex, n: usize) -> Complex {
    (0..n).fold(Complex::one(P), |acc, j| &acc * &(alpha + &real(j as i64)))
}

/// `2F1(-n, beta; gamma; z)`, a finite sum.
fn hyp2f1_terminating(n: usize, beta: &Complex, gamma: &Complex, z: &Complex) -> Complex {
    let mut term = Complex::one(P);
    let mut sum = Complex::one(P);
    for j in 0..n {
        let jj = real(j as i64);
        let num = &(&real(j as i64 - n as i64) * &(beta + &jj)) * z;
        let den = &(gamma + &jj) * &real(j as i64 + 1);
        term = &(&term * &num) / &den;
        sum = &sum + &term;
    }
    sum
}

fn cis(theta: &Scalar) -> Complex {
    c(theta.cos(), theta.sin())
}

/// Monic Meixner-Pollaczek polynomial from the closed form.
fn mp_closed(lambda: &Scalar, phi: &Scalar, n: usize, x: &Scalar) -> Complex {
    let two_lambda = Complex::from_real(lambda * 2);
    let beta = c(lambda.clone(), x.clone());
    let z = &Complex::one(P) - &cis(&(-(phi * 2)));
    let f = hyp2f1_terminating(n, &beta, &two_lambda, &z);
    let lead = (phi.sin() * 2).powi(n as i32);
    let front = (&rising(&two_lambda, n) * &cis(&(phi * n as i64))).scale(&lead.recip());
    &front * &f
}

/// Monic Pseudo-Jacobi polynomial from the closed form.
fn pj_closed(a: &Scalar, b: &Scalar, n: usize, x: &Scalar) -> Complex {
    let gamma = c(a + 1, b.clone());
    let beta = Complex::from_real(a * 2 + (n as i64 + 1));
    let half = Scalar::pow2(-1, P);
    let z = c(half.clone(), -(x * &half));
    let f = hyp2f1_terminating(n, &beta, &gamma, &z);
    let i_pow = match n % 4 {
        0 => real(1),
        1 => c(Scalar::zero(P), Scalar::one(P)),
        2 => real(-1),
        _ => c(Scalar::zero(P), -Scalar::one(P)),
    };
    let num = rising(&gamma, n).scale(&Scalar::pow2(n as i32, P));
    let den = &i_pow * &rising(&beta, n);
    &(&num / &den) * &f
}

fn check(family: &RecurrenceFamily, n: usize, x: &Scalar, closed: Complex) {
    let tol = TolerancePolicy::new(P).unwrap();
    let p = family.generate(n).unwrap();
    let value = p.eval(x);
    let scale = p.magnitude_at(x).max_of(&Scalar::one(P));
    let re_err = (&value - &closed.re).abs();
    assert!(
        re_err <= &tol.rel_tol * &scale,
        "{} n={n} x={}: recurrence {} vs closed form {}",
        family.describe(),
        x.to_sci(6),
        value.to_sci(20),
        closed.re.to_sci(20)
    );
    assert!(closed.im.abs() <= &tol.rel_tol * &scale, "closed form not real: {}", closed.im.to_sci(3));
}

#[test]
fn meixner_pollaczek_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = vec![("0.5".to_string(), "0.9".to_string()), ("1.5".into(), "2.0".into())];
    for _ in 0..10 {
        cases.push((format!("{:.6}", rng.gen_range(0.1..20.0)), format!("{:.6}", rng.gen_range(0.05..3.09))));
    }
    for (lambda, phi) in &cases {
        let family = mp_family(s(lambda), s(phi)).unwrap();
        for n in 0..=12 {
            for _ in 0..3 {
                let x = Scalar::from_f64(rng.gen_range(-15.0..15.0), P);
                check(&family, n, &x, mp_closed(&s(lambda), &s(phi), n, &x));
            }
        }
    }
}

#[test]
fn pseudo_jacobi_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases = vec![("-10".to_string(), "8".to_string()), ("-35".into(), "0".into())];
    for _ in 0..10 {
        cases.push((format!("{:.6}", -13.0 - rng.gen_range(0.01..40.0)), format!("{:.6}", rng.gen_range(-10.0..10.0))));
    }
    for (a, b) in &cases {
        let family = pj_family(s(a), s(b)).unwrap();
        for n in 0..=9 {
            for _ in 0..3 {
                let x = Scalar::from_f64(rng.gen_range(-15.0..15.0), P);
                check(&family, n, &x, pj_closed(&s(a), &s(b), n, &x));
            }
        }
    }
}

#[test]
fn first_degrees_by_hand() {
    // p_1 = x + b/(a+1) and p_1 = x + lambda cot(phi)
    let x = s("0.75");
    let pj = pj_family(s("-10"), s("8")).unwrap();
    let expected = &x + &(s("8") / s("-9"));
    assert!((pj.generate(1).unwrap().eval(&x) - expected).abs() <= Scalar::pow2(-200, P));
    let mp = mp_family(s("0.5"), s("0.9")).unwrap();
    let expected = &x + &(s("0.5") * s("0.9").cos() / s("0.9").sin());
    assert!((mp.generate(1).unwrap().eval(&x) - expected).abs() <= Scalar::pow2(-200, P));
}
