//! Real and complex scalars at a configurable binary precision.
//!
//! [`Scalar`] wraps an MPFR float. Binary operations produce a result at the
//! larger of the two operand precisions; polynomial-level code checks that
//! operands agree before combining them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Smallest precision accepted by [`TolerancePolicy`].
pub const MIN_PRECISION: u32 = 64;

/// A finite real number carried at a fixed binary precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Scalar(Float);

impl Scalar {
    pub fn zero(prec: u32) -> Self {
        Scalar(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Scalar(Float::with_val(prec, 1))
    }

    pub fn from_f64(value: f64, prec: u32) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn from_int(value: i64, prec: u32) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    /// Parses a decimal literal correctly rounded at `prec` bits, so that
    /// `"0.9"` is the nearest `prec`-bit value rather than the nearest `f64`.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let trimmed = text.trim();
        let parsed = Float::parse(trimmed).map_err(|_| Error::Parse(trimmed.to_string()))?;
        let value = Float::with_val(prec, parsed);
        if !value.is_finite() {
            return Err(Error::Parse(trimmed.to_string()));
        }
        Ok(Scalar(value))
    }

    /// Nearest `prec`-bit value to an exact rational.
    pub fn from_rational(value: &rug::Rational, prec: u32) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn pi(prec: u32) -> Self {
        Scalar(Float::with_val(prec, Constant::Pi))
    }

    /// `2^exp` at the given precision.
    pub fn pow2(exp: i32, prec: u32) -> Self {
        Scalar(Float::with_val(prec, Float::i_exp(1, exp)))
    }

    /// Unit roundoff-sized quantity `2^(1 - prec)`.
    pub fn epsilon(prec: u32) -> Self {
        Self::pow2(1 - prec as i32, prec)
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Re-rounds the value to another precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Scalar(Float::with_val(prec, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    /// Returns the value if finite, otherwise a [`Error::NonFinite`] naming `context`.
    pub fn finite(self, context: &'static str) -> Result<Self> {
        if self.0.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context))
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        Scalar(self.0.clone().sqrt())
    }

    pub fn square(&self) -> Self {
        Scalar(self.0.clone().square())
    }

    pub fn sin(&self) -> Self {
        Scalar(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        Scalar(self.0.clone().cos())
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.clone().recip())
    }

    pub fn powi(&self, exp: i32) -> Self {
        Scalar(self.0.clone().pow(exp))
    }

    pub fn ceil(&self) -> Self {
        Scalar(self.0.clone().ceil())
    }

    pub fn floor(&self) -> Self {
        Scalar(self.0.clone().floor())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn max_of(self, other: &Scalar) -> Scalar {
        if *other > self {
            other.clone()
        } else {
            self
        }
    }

    pub fn min_of(self, other: &Scalar) -> Scalar {
        if *other < self {
            other.clone()
        } else {
            self
        }
    }

    /// Scientific notation with `digits` digits after the point.
    pub fn to_sci(&self, digits: usize) -> String {
        format!("{:.*e}", digits, self.0)
    }

    /// Fixed-point text with `decimals` digits after the point, rounded to nearest.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let scale = Float::with_val(self.prec(), Float::u_pow_u(10, decimals as u32));
        let scaled = Float::with_val(self.prec(), &self.0 * &scale).round();
        let int = scaled
            .to_integer()
            .map(|i| i.to_string())
            .unwrap_or_else(|| "0".to_string());
        let (sign, digits) = match int.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("", int),
        };
        if decimals == 0 {
            return format!("{sign}{digits}");
        }
        let padded = format!("{:0>width$}", digits, width = decimals + 1);
        let split = padded.len() - decimals;
        let text = format!("{sign}{}.{}", &padded[..split], &padded[split..]);
        if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            text.trim_start_matches('-').to_string()
        } else {
            text
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_sci(p)),
            None => write!(f, "{}", self.to_sci(19)),
        }
    }
}

impl PartialEq<f64> for Scalar {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Scalar {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

fn out_prec(a: &Scalar, b: &Scalar) -> u32 {
    a.prec().max(b.prec())
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(Float::with_val(out_prec(self, rhs), &self.0 $op &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: i64) -> Scalar {
                Scalar(Float::with_val(self.prec(), &self.0 $op rhs))
            }
        }
        impl $trait<i64> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: i64) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(Float::with_val(self.prec(), -&self.0))
    }
}

/// A complex number with [`Scalar`] parts.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Scalar,
    pub im: Scalar,
}

impl Complex {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Scalar) -> Self {
        let prec = re.prec();
        Complex { re, im: Scalar::zero(prec) }
    }

    pub fn imaginary(im: Scalar) -> Self {
        let prec = im.prec();
        Complex { re: Scalar::zero(prec), im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::from_real(Scalar::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_real(Scalar::one(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Scalar {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(Float::with_val(self.prec(), self.re.0.hypot_ref(&self.im.0)))
    }

    /// Max-norm `max(|re|, |im|)`; cheaper than [`Complex::abs`] for pivoting.
    pub fn abs_max(&self) -> Scalar {
        self.re.abs().max_of(&self.im.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, factor: &Scalar) -> Complex {
        Complex { re: &self.re * factor, im: &self.im * factor }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let den = rhs.norm_sqr();
        let num = self * &rhs.conj();
        Complex { re: &num.re / &den, im: &num.im / &den }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

/// Relative and absolute tolerances tied to a working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub precision_bits: u32,
    pub rel_tol: Scalar,
    pub abs_tol: Scalar,
}

impl TolerancePolicy {
    /// Default policy: both tolerances `2^(-precision_bits/2)`.
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION {
            return Err(Error::PrecisionTooLow(precision_bits));
        }
        let tol = Scalar::pow2(-((precision_bits / 2) as i32), precision_bits);
        Ok(TolerancePolicy { precision_bits, rel_tol: tol.clone(), abs_tol: tol })
    }

    pub fn with_overrides(mut self, rel_tol: Option<f64>, abs_tol: Option<f64>) -> Result<Self> {
        for (name, value) in [("rel_tol", rel_tol), ("abs_tol", abs_tol)] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Config(format!("{name} must be a positive number, got {v}")));
                }
            }
        }
        if let Some(v) = rel_tol {
            self.rel_tol = Scalar::from_f64(v, self.precision_bits);
        }
        if let Some(v) = abs_tol {
            self.abs_tol = Scalar::from_f64(v, self.precision_bits);
        }
        Ok(self)
    }

    pub fn prec(&self) -> u32 {
        self.precision_bits
    }

    pub fn scalar(&self, value: f64) -> Scalar {
        Scalar::from_f64(value, self.precision_bits)
    }

    pub fn int(&self, value: i64) -> Scalar {
        Scalar::from_int(value, self.precision_bits)
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy::new(DEFAULT_PRECISION).expect("default precision is valid")
    }
}

/// Rising factorial `(alpha)_n = alpha (alpha + 1) ... (alpha + n - 1)`, with `(alpha)_0 = 1`.
pub fn pochhammer(alpha: &Scalar, n: usize) -> Scalar {
    (0..n).fold(Scalar::one(alpha.prec()), |acc, i| acc * (alpha + i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn s(v: &str) -> Scalar {
        Scalar::parse(v, P).unwrap()
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&s("0.5"), 0), 1.0);
        assert_eq!(pochhammer(&s("0.5"), 2), 0.75);
        assert_eq!(pochhammer(&s("2"), 3), 24.0);
    }

    #[test]
    fn parse_is_correctly_rounded() {
        let tenth = s("0.1");
        let ten = Scalar::from_int(10, P);
        let err = (&tenth * &ten - Scalar::one(P)).abs();
        assert!(err < Scalar::pow2(-250, P));
        assert!(Scalar::parse("abc", P).is_err());
        assert!(Scalar::parse("inf", P).is_err());
    }

    #[test]
    fn tolerance_defaults() {
        let tol = TolerancePolicy::new(256).unwrap();
        assert_eq!(tol.rel_tol, Scalar::pow2(-128, 256));
        assert_eq!(tol.abs_tol, Scalar::pow2(-128, 256));
        assert_eq!(TolerancePolicy::new(63), Err(Error::PrecisionTooLow(63)));
    }

    #[test]
    fn conj_is_involution() {
        let z = Complex::new(s("1.25"), s("-3.5"));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let a = Complex::new(s("1.5"), s("2"));
        let b = Complex::new(s("-0.25"), s("4"));
        let back = &(&a * &b) / &b;
        assert!((&back - &a).abs() < Scalar::pow2(-240, P));
    }

    #[test]
    fn fixed_formatting() {
        assert_eq!(s("-650.5784").to_fixed(3), "-650.578");
        assert_eq!(s("0.00049").to_fixed(3), "0.000");
        assert_eq!(s("-0.00049").to_fixed(3), "0.000");
        assert_eq!(s("149988.0012").to_fixed(0), "149988");
        assert_eq!(s("2.66666666").to_fixed(4), "2.6667");
    }

    #[test]
    fn mixed_precision_promotes() {
        let a = Scalar::one(64);
        let b = Scalar::one(128);
        assert_eq!((&a + &b).prec(), 128);
    }
}
