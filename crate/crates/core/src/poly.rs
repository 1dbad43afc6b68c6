//! Dense real-coefficient polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Complex, Scalar, TolerancePolicy};

/// Polynomial with ascending-degree coefficients.
///
/// The coefficient vector never ends in an exact zero, so the zero polynomial
/// has no coefficients and every other polynomial has a nonzero leading term.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
    prec: u32,
}

/// The ring operations accepted by [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale(Scalar),
    /// `p(x) -> p(-x)`; the second operand is ignored.
    ShiftArgNegate,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>, prec: u32) -> Self {
        let mut p = Polynomial {
            coeffs: coeffs.into_iter().map(|c| if c.prec() == prec { c } else { c.with_prec(prec) }).collect(),
            prec,
        };
        p.trim();
        p
    }

    pub fn from_f64(coeffs: &[f64], prec: u32) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Scalar::from_f64(c, prec)).collect(), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Polynomial { coeffs: Vec::new(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Polynomial::constant(Scalar::one(prec))
    }

    pub fn constant(c: Scalar) -> Self {
        let prec = c.prec();
        Polynomial::new(vec![c], prec)
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear_monic(root: &Scalar) -> Self {
        let prec = root.prec();
        Polynomial::new(vec![-root, Scalar::one(prec)], prec)
    }

    /// `x^2 + c`.
    pub fn quadratic_even(c: &Scalar) -> Self {
        let prec = c.prec();
        Polynomial::new(vec![c.clone(), Scalar::zero(prec), Scalar::one(prec)], prec)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.prec))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| Scalar::zero(self.prec))
    }

    pub fn norm_inf(&self) -> Scalar {
        self.coeffs.iter().fold(Scalar::zero(self.prec), |m, c| m.max_of(&c.abs()))
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.prec), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a complex point. For real `z` the imaginary part is exactly zero.
    /// `sum |c_i| |x|^i`: the magnitude against which rounding in `eval(x)` is measured.
    pub fn magnitude_at(&self, x: &Scalar) -> Scalar {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(Scalar::zero(self.prec), |acc, c| acc * &ax + c.abs())
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let mut acc = Complex::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc.re += c;
        }
        acc
    }

    pub fn scale(&self, factor: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect(), self.prec)
    }

    /// `p(-x)`.
    pub fn negate_arg(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        Polynomial::new(coeffs, self.prec)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as i64)
            .collect();
        Polynomial::new(coeffs, self.prec)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// True when every odd-power coefficient is zero.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Scalar::is_zero)
    }

    /// Zeroes every coefficient with `|c| <= threshold`.
    pub fn chop(&self, threshold: &Scalar) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| if c.abs() <= *threshold { Scalar::zero(self.prec) } else { c.clone() })
            .collect();
        Polynomial::new(coeffs, self.prec)
    }

    /// Zeroes coefficients below `rel * ||p||_inf`.
    pub fn chop_relative(&self, rel: &Scalar) -> Polynomial {
        self.chop(&(self.norm_inf() * rel))
    }

    /// Euclidean division; panics if `den` is zero.
    pub fn div_rem(&self, den: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = den.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return (Polynomial::zero(self.prec), self.clone());
        };
        let lead = den.leading();
        let mut quot = vec![Scalar::zero(self.prec); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] / &lead;
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &q * dc;
            }
            rem[i + dd] = Scalar::zero(self.prec);
            quot[i] = q;
        }
        rem.truncate(dd);
        (Polynomial::new(quot, self.prec), Polynomial::new(rem, self.prec))
    }

    /// Division that is expected to be exact. A remainder with
    /// `||r||_inf > abs_tol * ||num||_inf` is an error; a smaller one is dropped.
    pub fn divide_exact(&self, den: &Polynomial, tol: &TolerancePolicy) -> Result<Polynomial> {
        check_prec(self, den)?;
        if den.is_zero() {
            return Err(Error::Degenerate("division by the zero polynomial".into()));
        }
        let (quot, rem) = self.div_rem(den);
        let scale = self.norm_inf();
        if !scale.is_zero() {
            let rel = rem.norm_inf() / &scale;
            if rel > tol.abs_tol {
                return Err(Error::NotDivisible { remainder: rel.to_f64() });
            }
        }
        Ok(quot)
    }

    /// Applies `f` to each coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(f).collect(), self.prec)
    }
}

fn check_prec(p: &Polynomial, q: &Polynomial) -> Result<()> {
    if p.prec != q.prec {
        return Err(Error::PrecisionMismatch { left: p.prec, right: q.prec });
    }
    Ok(())
}

/// Ring operations on polynomials that share a working precision.
pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => {
            check_prec(p, q)?;
            Ok(p + q)
        }
        PolyOp::Sub => {
            check_prec(p, q)?;
            Ok(p - q)
        }
        PolyOp::Mul => {
            check_prec(p, q)?;
            Ok(p * q)
        }
        PolyOp::Scale(c) => {
            if c.prec() != p.prec {
                return Err(Error::PrecisionMismatch { left: p.prec, right: c.prec() });
            }
            Ok(p.scale(&c))
        }
        PolyOp::ShiftArgNegate => Ok(p.negate_arg()),
    }
}

/// Horner evaluation that rejects overflow.
pub fn poly_eval(p: &Polynomial, z: &Complex) -> Result<Complex> {
    let v = p.eval_complex(z);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("polynomial evaluation"))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let prec = self.prec.max(rhs.prec);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), prec)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let prec = self.prec.max(rhs.prec);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(), prec)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(prec);
        }
        let mut out = vec![Scalar::zero(prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out, prec)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_sci(12),
                1 => format!("{}*x", c.to_sci(12)),
                _ => format!("{}*x^{i}", c.to_sci(12)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::from_f64(c, P)
    }

    #[test]
    fn difference_of_squares() {
        let p = poly_arith(&poly(&[1.0, 1.0]), &poly(&[-1.0, 1.0]), PolyOp::Mul).unwrap();
        assert_eq!(p, poly(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn negate_argument_of_odd_monomial() {
        let p = poly(&[0.0, 0.0, 0.0, 1.0]);
        let q = poly_arith(&p, &Polynomial::zero(P), PolyOp::ShiftArgNegate).unwrap();
        assert_eq!(q, poly(&[0.0, 0.0, 0.0, -1.0]));
    }

    #[test]
    fn meixner_pollaczek_modifier_expansion() {
        let half = Scalar::parse("0.5", P).unwrap();
        let a = Polynomial::quadratic_even(&half.square());
        let b = Polynomial::quadratic_even(&(&half + 1).square());
        assert_eq!(&a * &b, poly(&[0.5625, 0.0, 2.5, 0.0, 1.0]));
    }

    #[test]
    fn precision_mismatch_is_rejected() {
        let p = Polynomial::from_f64(&[1.0], 128);
        let q = Polynomial::from_f64(&[1.0], 256);
        assert_eq!(
            poly_arith(&p, &q, PolyOp::Add),
            Err(Error::PrecisionMismatch { left: 128, right: 256 })
        );
    }

    #[test]
    fn evaluation_examples() {
        let i = Complex::imaginary(Scalar::one(P));
        assert!(poly_eval(&poly(&[1.0, 0.0, 1.0]), &i).unwrap().is_zero());
        let one = Complex::one(P);
        let v = poly_eval(&poly(&[-2.0, 0.0, 1.0]), &one).unwrap();
        assert_eq!(v.re, -1.0);
        assert!(v.im.is_zero());
        let half_i = Complex::imaginary(Scalar::parse("0.5", P).unwrap());
        assert!(poly_eval(&poly(&[0.5625, 0.0, 2.5, 0.0, 1.0]), &half_i).unwrap().is_zero());
    }

    #[test]
    fn exact_division_examples() {
        let tol = TolerancePolicy::default();
        let q = poly(&[-1.0, 0.0, 1.0]).divide_exact(&poly(&[-1.0, 1.0]), &tol).unwrap();
        assert_eq!(q, poly(&[1.0, 1.0]));
        let q = poly(&[0.0, 1.0, 0.0, 1.0]).divide_exact(&poly(&[1.0, 0.0, 1.0]), &tol).unwrap();
        assert_eq!(q, poly(&[0.0, 1.0]));
        assert!(matches!(
            poly(&[1.0, 0.0, 1.0]).divide_exact(&poly(&[-1.0, 1.0]), &tol),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = poly(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(poly(&[0.0, 0.0]).degree(), None);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn chop_drops_dust() {
        let p = poly(&[1.0, 1e-90, 1e-100]).chop(&Scalar::pow2(-200, P));
        assert_eq!(p, poly(&[1.0]));
    }
}
