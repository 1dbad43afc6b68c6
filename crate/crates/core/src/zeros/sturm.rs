//! Real-root isolation by Sturm sequences, for polynomials that are not
//! generated by a recurrence (connection coefficients, products).

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Scalar, TolerancePolicy};

/// Distinct real roots in ascending order, and the number of remaining
/// (non-real) roots counted against the degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RealRoots {
    pub roots: Vec<Scalar>,
    pub nonreal: usize,
}

struct Chain(Vec<Polynomial>);

impl Chain {
    fn new(p: &Polynomial, tol: &TolerancePolicy) -> Chain {
        let unit = |q: &Polynomial| q.scale(&q.norm_inf().recip());
        let mut chain = vec![unit(p)];
        let d = p.derivative();
        if d.is_zero() {
            return Chain(chain);
        }
        chain.push(unit(&d));
        loop {
            let len = chain.len();
            let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
            let r = r.chop(&tol.rel_tol);
            if r.is_zero() {
                break;
            }
            chain.push(unit(&-&r));
        }
        Chain(chain)
    }

    fn variations_at(&self, x: &Scalar) -> usize {
        count_changes(self.0.iter().map(|q| q.eval(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.0.iter().map(|q| {
            let lead = q.leading();
            let odd = q.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }
}

fn count_changes(values: impl Iterator<Item = Scalar>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values.filter(|v| !v.is_zero()) {
        let neg = v.is_negative();
        if last.is_some_and(|l| l != neg) {
            changes += 1;
        }
        last = Some(neg);
    }
    changes
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &Scalar, b: &Scalar, tol: &TolerancePolicy) -> usize {
    let chain = Chain::new(p, tol);
    chain.variations_at(a).saturating_sub(chain.variations_at(b))
}

/// Isolates and refines every real root of `p` by bisection on Sturm counts.
pub fn real_roots(p: &Polynomial, tol: &TolerancePolicy) -> Result<RealRoots> {
    let Some(deg) = p.degree() else {
        return Err(Error::Degenerate("roots of the zero polynomial".into()));
    };
    let prec = p.prec();
    if deg == 0 {
        return Ok(RealRoots { roots: Vec::new(), nonreal: 0 });
    }
    let chain = Chain::new(p, tol);
    let total = chain.variations_at_infinity(false) - chain.variations_at_infinity(true);
    let lead = p.leading();
    let radius = p.coeffs()[..deg]
        .iter()
        .fold(Scalar::zero(prec), |m, c| m.max_of(&(c / &lead).abs()))
        + 1;
    let width_floor = Scalar::epsilon(prec) * 8;
    let mut roots = Vec::with_capacity(total);
    let mut stack = vec![(-&radius, radius.clone(), total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        let mid = (&lo + &hi) * Scalar::pow2(-1, prec);
        let scale = lo.abs().max_of(&hi.abs()).max_of(&Scalar::one(prec));
        if &hi - &lo <= &width_floor * &scale {
            if count > 1 {
                return Err(Error::NoConvergence(format!("{count} roots cluster near {}", mid.to_sci(6))));
            }
            roots.push(mid);
            continue;
        }
        if count == 1 {
            roots.push(bisect(p, &lo, &hi, &width_floor));
            continue;
        }
        let v_mid = chain.variations_at(&mid);
        let left = chain.variations_at(&lo).saturating_sub(v_mid);
        stack.push((mid.clone(), hi, count.saturating_sub(left)));
        stack.push((lo, mid, left));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    Ok(RealRoots { roots, nonreal: deg - total })
}

/// Refines the single root of `p` in `(lo, hi]`.
fn bisect(p: &Polynomial, lo: &Scalar, hi: &Scalar, width_floor: &Scalar) -> Scalar {
    let prec = p.prec();
    let half = Scalar::pow2(-1, prec);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    if p.eval(&hi).is_zero() {
        return hi;
    }
    let lo_neg = p.eval(&lo).is_negative();
    for _ in 0..(prec as usize + 64) {
        let mid = (&lo + &hi) * &half;
        let v = p.eval(&mid);
        if v.is_zero() {
            return mid;
        }
        if v.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
        let scale = lo.abs().max_of(&hi.abs()).max_of(&Scalar::one(prec));
        if &hi - &lo <= width_floor * &scale {
            break;
        }
    }
    (&lo + &hi) * &half
}
