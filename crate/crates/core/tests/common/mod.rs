//! Reference computations written directly from the closed forms, sharing no
//! code with the library beyond the `Scalar` type.
#![allow(dead_code)]

use even_christoffel::Scalar;

pub const P: u32 = 256;

pub fn s(v: &str) -> Scalar {
    Scalar::parse(v, P).unwrap()
}

/// Recurrence coefficients from the closed forms.
#[derive(Clone, Debug)]
pub enum Params {
    Mp { lambda: Scalar, phi: Scalar },
    Pj { a: Scalar, b: Scalar },
}

impl Params {
    pub fn mp(lambda: &str, phi: &str) -> Self {
        Params::Mp { lambda: s(lambda), phi: s(phi) }
    }

    pub fn pj(a: &str, b: &str) -> Self {
        Params::Pj { a: s(a), b: s(b) }
    }

    pub fn c(&self, n: usize) -> Scalar {
        let n = n as i64;
        match self {
            Params::Mp { lambda, phi } => -((lambda + (n - 1)) * phi.cos() / phi.sin()),
            Params::Pj { a, b } => -(a * b) / ((a + (n - 1)) * (a + n)),
        }
    }

    pub fn lambda(&self, n: usize) -> Scalar {
        let n = n as i64;
        match self {
            Params::Mp { lambda, phi } => {
                Scalar::from_int(n - 1, P) * (lambda * 2 + (n - 2)) / (phi.sin().square() * 4)
            }
            Params::Pj { a, b } => {
                let t = a + (n - 1);
                -(Scalar::from_int(n - 1, P) * (a * 2 + (n - 1)) * (t.square() + b.square()))
                    / (t.square() * (t.square() * 4 - 1))
            }
        }
    }

    /// `p_0(x), ..., p_n(x)`.
    pub fn values(&self, n: usize, x: &Scalar) -> Vec<Scalar> {
        let mut v = vec![Scalar::one(P)];
        let mut prev = Scalar::zero(P);
        for j in 1..=n {
            let next = (x - &self.c(j)) * &v[j - 1] - if j >= 2 { self.lambda(j) * &prev } else { Scalar::zero(P) };
            prev = v[j - 1].clone();
            v.push(next);
        }
        v
    }

    /// Number of zeros of `p_n` greater than `x`: the sign changes along
    /// `p_0(x), ..., p_n(x)` (valid while every `lambda_j > 0`).
    pub fn zeros_above(&self, n: usize, x: &Scalar) -> usize {
        let mut changes = 0;
        let mut last: Option<bool> = None;
        for v in self.values(n, x) {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            if last.is_some_and(|l| l != neg) {
                changes += 1;
            }
            last = Some(neg);
        }
        changes
    }

    /// The `i`-th smallest zero of `p_n` (0-based) by bisection on the sign-change count.
    pub fn zero(&self, n: usize, i: usize) -> Scalar {
        // Gershgorin disc radius bounds every zero
        let mut r = Scalar::zero(P);
        for j in 1..=n {
            let off = self.lambda(j).abs().sqrt() + if j < n { self.lambda(j + 1).abs().sqrt() } else { Scalar::zero(P) };
            r = r.max_of(&(self.c(j).abs() + off));
        }
        let (mut lo, mut hi) = (-&r - 1, r + 1);
        // want the point where the count of zeros above drops from n-i to n-i-1
        for _ in 0..300 {
            let mid = (&lo + &hi) * Scalar::pow2(-1, P);
            if self.zeros_above(n, &mid) >= n - i {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * Scalar::pow2(-1, P)
    }
}

/// `(alpha)_n`.
pub fn rising(alpha: &Scalar, n: usize) -> Scalar {
    (0..n).fold(Scalar::one(P), |acc, i| acc * (alpha + i as i64))
}

/// Uncancelled Meixner-Pollaczek bound with `tan` in the denominator.
pub fn mp_bound_tan(lambda: &Scalar, phi: &Scalar, n: usize, k: usize) -> Scalar {
    let tan = phi.sin() / phi.cos();
    -(rising(lambda, k) * rising(lambda, n) / (rising(lambda, n + k - 1) * tan))
}

/// Largest coefficient deviation divided by the reference coefficient, with
/// zero reference coefficients measured against the reference sup-norm.
pub fn coefficientwise(p: &even_christoffel::Polynomial, reference: &even_christoffel::Polynomial) -> Scalar {
    let norm = reference.norm_inf();
    let len = p.coeffs().len().max(reference.coeffs().len());
    (0..len).fold(Scalar::zero(P), |worst, i| {
        let (a, b) = (p.coeff(i), reference.coeff(i));
        let d = (&a - &b).abs();
        let rel = if b.is_zero() { d / &norm } else { d / b.abs() };
        worst.max_of(&rel)
    })
}

impl Params {
    /// Coefficients of `p_n` from the recurrence.
    pub fn generate(&self, n: usize) -> even_christoffel::Polynomial {
        use even_christoffel::Polynomial;
        let x = Polynomial::new(vec![Scalar::zero(P), Scalar::one(P)], P);
        let (mut prev, mut cur) = (Polynomial::zero(P), Polynomial::one(P));
        for j in 1..=n {
            let shifted = &x - &Polynomial::constant(self.c(j));
            let next = &(&shifted * &cur) - &prev.scale(&self.lambda(j));
            prev = cur;
            cur = next;
        }
        cur
    }
}
