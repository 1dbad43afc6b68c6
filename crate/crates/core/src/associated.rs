//! Associated polynomials `S_m^(n)` and the identities that tie them back to
//! the family:
//!
//! * `lambda_n ... lambda_{n-m+2} p_{n-m} = S_{m-1}^(n) p_{n-1} - S_{m-2}^(n-1) p_n`
//! * `p_{n+m} = S_m^(n+m) p_n - lambda_{n+1} S_{m-1}^(n+m) p_{n-1}`

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::RecurrenceFamily;
use crate::poly::Polynomial;
use crate::residual::Residual;
use crate::scalar::Scalar;

/// `S_0^(n), ..., S_len^(n)` for one anchor `n`, built by
/// `S_m = (x - C_{n-m+1}) S_{m-1} - lambda_{n-m+2} S_{m-2}`.
#[derive(Clone, Debug)]
pub struct AssociatedSequence {
    anchor: usize,
    polys: Vec<Polynomial>,
}

impl AssociatedSequence {
    pub fn new(family: &RecurrenceFamily, anchor: usize, len: usize) -> Result<Self> {
        if len > anchor {
            return Err(Error::IndexOutOfRange(format!(
                "S_{len}^({anchor}) needs m <= n"
            )));
        }
        family.check_degree(anchor)?;
        let p = family.prec();
        let mut polys = Vec::with_capacity(len + 1);
        polys.push(Polynomial::one(p));
        for m in 1..=len {
            let lin = Polynomial::linear_monic(&family.c(anchor + 1 - m));
            let mut next = &lin * &polys[m - 1];
            if m >= 2 {
                next = &next - &polys[m - 2].scale(&family.lambda(anchor + 2 - m));
            }
            polys.push(next);
        }
        Ok(AssociatedSequence { anchor, polys })
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `S_m^(anchor)`; panics past the built length.
    pub fn get(&self, m: usize) -> &Polynomial {
        &self.polys[m]
    }

    /// `S_m` with the convention `S_{-1} = 0`.
    pub fn get_signed(&self, m: isize) -> Polynomial {
        if m < 0 {
            Polynomial::zero(self.polys[0].prec())
        } else {
            self.polys[m as usize].clone()
        }
    }
}

/// `S_m^(n)`.
pub fn associated(family: &RecurrenceFamily, n: usize, m: usize) -> Result<Polynomial> {
    Ok(AssociatedSequence::new(family, n, m)?.polys.pop().expect("nonempty"))
}

/// Caches `p_0..p_N` and associated sequences per anchor for repeated identity checks.
pub struct AssociatedCache<'a> {
    family: &'a RecurrenceFamily,
    ps: Vec<Polynomial>,
    sequences: HashMap<usize, AssociatedSequence>,
}

impl<'a> AssociatedCache<'a> {
    /// Prepares `p_0..p_top`.
    pub fn new(family: &'a RecurrenceFamily, top: usize) -> Result<Self> {
        Ok(AssociatedCache { family, ps: family.generate_all(top)?, sequences: HashMap::new() })
    }

    pub fn family(&self) -> &RecurrenceFamily {
        self.family
    }

    pub fn p(&self, n: usize) -> Result<&Polynomial> {
        self.ps.get(n).ok_or_else(|| Error::IndexOutOfRange(format!("p_{n} not prepared")))
    }

    /// `S_m^(anchor)` with `S_{-1} = 0`; the sequence for `anchor` is built to full length once.
    pub fn s(&mut self, anchor: usize, m: isize) -> Result<Polynomial> {
        if m < 0 {
            return Ok(Polynomial::zero(self.family.prec()));
        }
        if !self.sequences.contains_key(&anchor) {
            let seq = AssociatedSequence::new(self.family, anchor, anchor)?;
            self.sequences.insert(anchor, seq);
        }
        let seq = &self.sequences[&anchor];
        if m as usize > seq.len() {
            return Err(Error::IndexOutOfRange(format!("S_{m}^({anchor})")));
        }
        Ok(seq.get(m as usize).clone())
    }

    /// Terms of the bridging identity at `x`:
    /// `lambda-prefix * p_{n-m} - S_{m-1}^(n) p_{n-1} + S_{m-2}^(n-1) p_n`.
    pub fn beardon(&mut self, n: usize, m: usize, x: &Scalar) -> Result<Residual> {
        if m < 2 || m > n {
            return Err(Error::IndexOutOfRange(format!("bridging identity needs 2 <= m <= n, got m={m}, n={n}")));
        }
        let prefix = lambda_prefix(self.family, n, m);
        let t1 = prefix * self.p(n - m)?.eval(x);
        let t2 = -(self.s(n, m as isize - 1)?.eval(x) * self.p(n - 1)?.eval(x));
        let t3 = self.s(n - 1, m as isize - 2)?.eval(x) * self.p(n)?.eval(x);
        Ok(Residual::of_terms(&[t1, t2, t3]))
    }

    /// Terms of `p_{n+m} - S_m^(n+m) p_n + lambda_{n+1} S_{m-1}^(n+m) p_{n-1}` at `x`.
    pub fn extension(&mut self, n: usize, m: usize, x: &Scalar) -> Result<Residual> {
        if n < 1 {
            return Err(Error::IndexOutOfRange("extension identity needs n >= 1".into()));
        }
        let top = n + m;
        self.family.check_degree(top)?;
        let t1 = self.p(top)?.eval(x);
        let t2 = -(self.s(top, m as isize)?.eval(x) * self.p(n)?.eval(x));
        let t3 = self.family.lambda(n + 1)
            * self.s(top, m as isize - 1)?.eval(x)
            * self.p(n - 1)?.eval(x);
        Ok(Residual::of_terms(&[t1, t2, t3]))
    }
}

/// `lambda_n lambda_{n-1} ... lambda_{n-m+2}`; a single factor `lambda_n` when `m = 2`.
pub fn lambda_prefix(family: &RecurrenceFamily, n: usize, m: usize) -> Scalar {
    (n + 2 - m..=n).fold(Scalar::one(family.prec()), |acc, j| acc * family.lambda(j))
}

/// Absolute residual of the bridging identity at `x`.
pub fn beardon_residual(family: &RecurrenceFamily, n: usize, m: usize, x: &Scalar) -> Result<Scalar> {
    if m < 2 || m > n {
        return Err(Error::IndexOutOfRange(format!("bridging identity needs 2 <= m <= n, got m={m}, n={n}")));
    }
    Ok(AssociatedCache::new(family, n)?.beardon(n, m, x)?.abs)
}

/// Absolute residual of the extension identity at `x`.
pub fn extension_residual(family: &RecurrenceFamily, n: usize, m: usize, x: &Scalar) -> Result<Scalar> {
    if n < 1 {
        return Err(Error::IndexOutOfRange("extension identity needs n >= 1".into()));
    }
    family.check_degree(n + m)?;
    Ok(AssociatedCache::new(family, n + m)?.extension(n, m, x)?.abs)
}
