//! Orthogonal polynomial families given by their three-term recurrence
//! `p_n = (x - C_n) p_{n-1} - lambda_n p_{n-2}`, `p_0 = 1`, `p_{-1} = 0`,
//! and the even weight modifiers `c_{2k}` that go with them.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Complex, Scalar};

/// Which family a [`RecurrenceFamily`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    MeixnerPollaczek,
    PseudoJacobi,
    Custom,
}

/// Parameters of a family.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams {
    /// Monic Meixner-Pollaczek `P_n^lambda(x; phi)`.
    MeixnerPollaczek { lambda: Scalar, phi: Scalar },
    /// Monic Pseudo-Jacobi `P_n(x; a, b)`.
    PseudoJacobi { a: Scalar, b: Scalar },
    /// Explicit coefficient tables: `c[i] = C_{i+1}`, `lambda[i] = lambda_{i+1}`.
    Custom { c: Vec<Scalar>, lambda: Vec<Scalar> },
}

/// A monic orthogonal polynomial sequence defined by its recurrence coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceFamily {
    params: FamilyParams,
    prec: u32,
    /// `cot(phi)` for Meixner-Pollaczek, exact zero at `phi = pi/2`.
    cot_phi: Option<Scalar>,
    /// `1 / (4 sin^2 phi)` for Meixner-Pollaczek.
    inv_four_sin_sq: Option<Scalar>,
    max_valid_degree: Option<usize>,
}

/// Even polynomial `c_{2k}` together with one node from each zero pair `±x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModifierSpec {
    pub k: usize,
    pub c: Polynomial,
    pub nodes: Vec<Complex>,
    pub distinct: bool,
}

impl RecurrenceFamily {
    /// Meixner-Pollaczek family; requires `lambda > 0` and `0 < phi < pi`.
    pub fn meixner_pollaczek(lambda: Scalar, phi: Scalar) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::ParameterOutOfRange(format!("lambda = {} must be > 0", lambda.to_f64())));
        }
        let pi = Scalar::pi(phi.prec());
        if !phi.is_positive() || phi >= pi {
            return Err(Error::ParameterOutOfRange(format!(
                "phi = {} must lie in the open interval (0, pi)",
                phi.to_f64()
            )));
        }
        Ok(Self::mp_unchecked(lambda, phi))
    }

    /// Meixner-Pollaczek recurrence without the orthogonality checks on `phi`;
    /// used for the reflected family with `-phi`.
    pub(crate) fn mp_unchecked(lambda: Scalar, phi: Scalar) -> Self {
        let prec = lambda.prec().max(phi.prec());
        let (sin, cos) = (phi.sin(), phi.cos());
        // cos(pi/2) rounds to a few ulps rather than zero
        let cot = if cos.abs() <= Scalar::epsilon(prec) * 4 { Scalar::zero(prec) } else { &cos / &sin };
        let inv = (sin.square() * 4).recip();
        RecurrenceFamily {
            params: FamilyParams::MeixnerPollaczek { lambda, phi },
            prec,
            cot_phi: Some(cot),
            inv_four_sin_sq: Some(inv),
            max_valid_degree: None,
        }
    }

    /// Pseudo-Jacobi family; requires `a < -2` so that degree 2 is valid.
    pub fn pseudo_jacobi(a: Scalar, b: Scalar) -> Result<Self> {
        if !(a < -2.0) {
            return Err(Error::ParameterOutOfRange(format!("a = {} must be < -2", a.to_f64())));
        }
        Self::pj_unchecked(a, b)
    }

    fn pj_unchecked(a: Scalar, b: Scalar) -> Result<Self> {
        let prec = a.prec().max(b.prec());
        if !a.is_negative() {
            return Err(Error::ParameterOutOfRange(format!(
                "a = {} leaves no valid degree (need a < -n)",
                a.to_f64()
            )));
        }
        // largest n with a < -n
        let neg_a = -&a;
        let bound = if neg_a.is_integer() { neg_a - 1 } else { neg_a.floor() };
        let max = bound.to_f64() as usize;
        Ok(RecurrenceFamily {
            params: FamilyParams::PseudoJacobi { a, b },
            prec,
            cot_phi: None,
            inv_four_sin_sq: None,
            max_valid_degree: Some(max),
        })
    }

    /// Family from explicit tables `C_1..C_N` and `lambda_1..lambda_N` (`lambda_1` is unused).
    pub fn custom(c: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        if c.is_empty() || c.len() != lambda.len() {
            return Err(Error::ParameterOutOfRange(
                "custom family needs equally long, nonempty C and lambda tables".into(),
            ));
        }
        let prec = c[0].prec();
        let max = c.len();
        Ok(RecurrenceFamily {
            params: FamilyParams::Custom { c, lambda },
            prec,
            cot_phi: None,
            inv_four_sin_sq: None,
            max_valid_degree: Some(max),
        })
    }

    pub fn kind(&self) -> FamilyKind {
        match self.params {
            FamilyParams::MeixnerPollaczek { .. } => FamilyKind::MeixnerPollaczek,
            FamilyParams::PseudoJacobi { .. } => FamilyKind::PseudoJacobi,
            FamilyParams::Custom { .. } => FamilyKind::Custom,
        }
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `None` when every degree is valid.
    pub fn max_valid_degree(&self) -> Option<usize> {
        self.max_valid_degree
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        match self.max_valid_degree {
            Some(max) if n > max => Err(Error::DegreeOutOfRange { n, max }),
            _ => Ok(()),
        }
    }

    /// `cot(phi)` for Meixner-Pollaczek families.
    pub fn cot_phi(&self) -> Option<&Scalar> {
        self.cot_phi.as_ref()
    }

    /// Recurrence coefficient `C_n`, `n >= 1`.
    pub fn c(&self, n: usize) -> Scalar {
        let p = self.prec;
        match &self.params {
            FamilyParams::MeixnerPollaczek { lambda, .. } => {
                let cot = self.cot_phi.as_ref().expect("mp cot");
                -((lambda + (n as i64 - 1)) * cot)
            }
            FamilyParams::PseudoJacobi { a, b } => {
                if n == 0 {
                    return Scalar::zero(p);
                }
                let am1 = a + (n as i64 - 1);
                let an = a + n as i64;
                -(a * b) / (am1 * an)
            }
            FamilyParams::Custom { c, .. } => c
                .get(n.wrapping_sub(1))
                .cloned()
                .unwrap_or_else(|| panic!("custom family has no C_{n}")),
        }
    }

    /// Recurrence coefficient `lambda_n`; `lambda_1 = 0` for the built-in families.
    pub fn lambda(&self, n: usize) -> Scalar {
        let p = self.prec;
        if n <= 1 {
            return match &self.params {
                FamilyParams::Custom { lambda, .. } if n == 1 => lambda[0].clone(),
                _ => Scalar::zero(p),
            };
        }
        let nm1 = n as i64 - 1;
        match &self.params {
            FamilyParams::MeixnerPollaczek { lambda, .. } => {
                let inv = self.inv_four_sin_sq.as_ref().expect("mp sin");
                Scalar::from_int(nm1, p) * (lambda * 2 + (n as i64 - 2)) * inv
            }
            FamilyParams::PseudoJacobi { a, b } => {
                let s = a + nm1;
                let s2 = s.square();
                let num = Scalar::from_int(nm1, p) * (a * 2 + nm1) * (&s2 + b.square());
                let den = &s2 * (&s2 * 4 - 1);
                -(num / den)
            }
            FamilyParams::Custom { lambda, .. } => lambda
                .get(n - 1)
                .cloned()
                .unwrap_or_else(|| panic!("custom family has no lambda_{n}")),
        }
    }

    /// Checks `lambda_j > 0` for `2 <= j <= n`.
    pub fn check_positive(&self, n: usize) -> Result<()> {
        for j in 2..=n {
            if !self.lambda(j).is_positive() {
                return Err(Error::ParameterOutOfRange(format!(
                    "lambda_{j} = {} is not positive",
                    self.lambda(j).to_f64()
                )));
            }
        }
        Ok(())
    }

    /// The monic polynomial `p_n`.
    pub fn generate(&self, n: usize) -> Result<Polynomial> {
        Ok(self.generate_all(n)?.pop().expect("nonempty"))
    }

    /// `[p_0, p_1, ..., p_n]`.
    pub fn generate_all(&self, n: usize) -> Result<Vec<Polynomial>> {
        self.check_degree(n)?;
        let p = self.prec;
        let x = Polynomial::new(vec![Scalar::zero(p), Scalar::one(p)], p);
        let mut out = Vec::with_capacity(n + 1);
        out.push(Polynomial::one(p));
        for j in 1..=n {
            let shifted = &x - &Polynomial::constant(self.c(j));
            let mut next = &shifted * &out[j - 1];
            if j >= 2 {
                next = &next - &out[j - 2].scale(&self.lambda(j));
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Values `[p_0(x), ..., p_n(x)]` by running the recurrence pointwise.
    pub fn eval_all(&self, n: usize, x: &Scalar) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Scalar::one(self.prec));
        for j in 1..=n {
            let mut v = (x - &self.c(j)) * &out[j - 1];
            if j >= 2 {
                v -= &(self.lambda(j) * &out[j - 2]);
            }
            out.push(v);
        }
        out
    }

    /// `(p_n(x), p_n'(x))` by differentiating the recurrence.
    pub fn eval_with_derivative(&self, n: usize, x: &Scalar) -> (Scalar, Scalar) {
        let p = self.prec;
        let (mut v0, mut v1) = (Scalar::zero(p), Scalar::one(p));
        let (mut d0, mut d1) = (Scalar::zero(p), Scalar::zero(p));
        for j in 1..=n {
            let t = x - &self.c(j);
            let lam = self.lambda(j);
            let v2 = &t * &v1 - &lam * &v0;
            let d2 = &v1 + &t * &d1 - &lam * &d0;
            v0 = std::mem::replace(&mut v1, v2);
            d0 = std::mem::replace(&mut d1, d2);
        }
        (v1, d1)
    }

    /// The family orthogonal with respect to `c_{2k}(x) w(x)`: `lambda -> lambda + k`
    /// for Meixner-Pollaczek and `a -> a + k` for Pseudo-Jacobi.
    pub fn shifted(&self, k: usize) -> Result<RecurrenceFamily> {
        match &self.params {
            FamilyParams::MeixnerPollaczek { lambda, phi } => {
                Ok(Self::mp_unchecked(lambda + k as i64, phi.clone()))
            }
            FamilyParams::PseudoJacobi { a, b } => Self::pj_unchecked(a + k as i64, b.clone()),
            FamilyParams::Custom { .. } => {
                Err(Error::Unsupported("custom families have no parameter shift".into()))
            }
        }
    }

    /// The even modifier `c_{2k}`; repeated nodes are rejected.
    pub fn even_modifier(&self, k: usize) -> Result<ModifierSpec> {
        let spec = self.modifier(k)?;
        if !spec.distinct {
            return Err(Error::RepeatedNodes);
        }
        Ok(spec)
    }

    /// The even modifier `c_{2k}`, allowing repeated nodes (Pseudo-Jacobi with `k >= 2`).
    pub fn modifier(&self, k: usize) -> Result<ModifierSpec> {
        let p = self.prec;
        let (c, nodes) = match &self.params {
            FamilyParams::MeixnerPollaczek { lambda, .. } => {
                let mut c = Polynomial::one(p);
                let mut nodes = Vec::with_capacity(k);
                for j in 0..k {
                    let shift = lambda + j as i64;
                    c = &c * &Polynomial::quadratic_even(&shift.square());
                    nodes.push(Complex::imaginary(shift));
                }
                (c, nodes)
            }
            FamilyParams::PseudoJacobi { .. } => {
                let factor = Polynomial::quadratic_even(&Scalar::one(p));
                let mut c = Polynomial::one(p);
                for _ in 0..k {
                    c = &c * &factor;
                }
                (c, vec![Complex::imaginary(Scalar::one(p)); k])
            }
            FamilyParams::Custom { .. } => {
                return Err(Error::Unsupported("custom families carry no modifier".into()))
            }
        };
        let distinct = nodes
            .iter()
            .enumerate()
            .all(|(i, a)| nodes[..i].iter().all(|b| !(a - b).abs_max().is_zero()));
        Ok(ModifierSpec { k, c, nodes, distinct })
    }

    /// Short human-readable description, e.g. `mp(lambda=0.5, phi=0.9)`.
    pub fn describe(&self) -> String {
        match &self.params {
            FamilyParams::MeixnerPollaczek { lambda, phi } => {
                format!("mp(lambda={}, phi={})", lambda.to_f64(), phi.to_f64())
            }
            FamilyParams::PseudoJacobi { a, b } => format!("pj(a={}, b={})", a.to_f64(), b.to_f64()),
            FamilyParams::Custom { c, .. } => format!("custom(len={})", c.len()),
        }
    }
}

/// Meixner-Pollaczek family constructor.
pub fn mp_family(lambda: Scalar, phi: Scalar) -> Result<RecurrenceFamily> {
    RecurrenceFamily::meixner_pollaczek(lambda, phi)
}

/// Pseudo-Jacobi family constructor.
pub fn pj_family(a: Scalar, b: Scalar) -> Result<RecurrenceFamily> {
    RecurrenceFamily::pseudo_jacobi(a, b)
}

/// `|P_n(x; phi) - (-1)^n P_n(-x; -phi)|` for the Meixner-Pollaczek family,
/// both sides generated by recurrence.
pub fn mp_symmetry_residual(lambda: &Scalar, phi: &Scalar, n: usize, x: &Scalar) -> Result<Scalar> {
    let family = RecurrenceFamily::meixner_pollaczek(lambda.clone(), phi.clone())?;
    let reflected = RecurrenceFamily::mp_unchecked(lambda.clone(), -phi);
    let lhs = family.eval_all(n, x).pop().expect("nonempty");
    let mut rhs = reflected.eval_all(n, &-x).pop().expect("nonempty");
    if n % 2 == 1 {
        rhs = -rhs;
    }
    Ok((lhs - rhs).abs())
}

/// The reflected family `phi -> -phi` used by the symmetry checks.
pub fn mp_reflected(family: &RecurrenceFamily) -> Result<RecurrenceFamily> {
    match family.params() {
        FamilyParams::MeixnerPollaczek { lambda, phi } => {
            Ok(RecurrenceFamily::mp_unchecked(lambda.clone(), -phi))
        }
        _ => Err(Error::Unsupported("reflection is defined for Meixner-Pollaczek only".into())),
    }
}
