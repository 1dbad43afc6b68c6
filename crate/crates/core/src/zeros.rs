//! Zeros, Gauss rules, interlacing verdicts and inner bounds for extreme zeros.

use crate::error::{Error, Result};
use crate::families::{FamilyParams, RecurrenceFamily};
use crate::poly::Polynomial;
use crate::scalar::{pochhammer, Scalar, TolerancePolicy};

mod sturm;

pub use sturm::{real_roots, sturm_count, RealRoots};

const MAX_QL_SWEEPS: usize = 80;
const NEWTON_STEPS: usize = 12;

/// Ascending real zeros of one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub values: Vec<Scalar>,
    /// Family description and degree the zeros belong to.
    pub source: String,
}

impl ZeroSet {
    pub fn new(mut values: Vec<Scalar>, source: impl Into<String>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite zeros"));
        ZeroSet { values, source: source.into() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<&Scalar> {
        self.values.first()
    }

    pub fn max(&self) -> Option<&Scalar> {
        self.values.last()
    }

    /// Smallest gap between consecutive zeros.
    pub fn min_gap(&self) -> Option<Scalar> {
        self.values
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .reduce(|a, b| a.min_of(&b))
    }
}

/// Gauss nodes with weights normalized to unit total mass.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: ZeroSet,
    pub weights: Vec<Scalar>,
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off.len() = diag.len() - 1`), together with the
/// first component of each normalized eigenvector. Implicit-shift QL.
pub fn tridiagonal_eigen(diag: &[Scalar], off: &[Scalar]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    assert_eq!(off.len() + 1, n, "off-diagonal length");
    let prec = diag[0].prec();
    let eps = Scalar::epsilon(prec) * 4;
    let mut d = diag.to_vec();
    let mut e: Vec<Scalar> = off.iter().cloned().chain(std::iter::once(Scalar::zero(prec))).collect();
    let mut z = vec![Scalar::zero(prec); n];
    z[0] = Scalar::one(prec);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= &eps * &dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::NoConvergence(format!("QL sweep limit at eigenvalue {l}")));
            }
            let mut g = (&d[l + 1] - &d[l]) / (&e[l] * 2);
            let mut r = hypot(&g, &Scalar::one(prec));
            let signed_r = if g.is_negative() { -&r } else { r.clone() };
            g = &d[m] - &d[l] + &e[l] / (&g + &signed_r);
            let (mut s, mut c, mut p) = (Scalar::one(prec), Scalar::one(prec), Scalar::zero(prec));
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = &s * &e[i];
                let b = &c * &e[i];
                r = hypot(&f, &g);
                e[i + 1] = r.clone();
                if r.is_zero() {
                    d[i + 1] -= &p;
                    e[m] = Scalar::zero(prec);
                    underflow = true;
                    break;
                }
                s = &f / &r;
                c = &g / &r;
                g = &d[i + 1] - &p;
                r = (&d[i] - &g) * &s + &c * &b * 2;
                p = &s * &r;
                d[i + 1] = &g + &p;
                g = &c * &r - &b;
                let zf = z[i + 1].clone();
                z[i + 1] = &s * &z[i] + &c * &zf;
                z[i] = &c * &z[i] - &s * &zf;
            }
            if underflow {
                continue;
            }
            d[l] -= &p;
            e[l] = g;
            e[m] = Scalar::zero(prec);
        }
    }
    let mut pairs: Vec<(Scalar, Scalar)> = d.into_iter().zip(z).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite eigenvalues"));
    Ok(pairs.into_iter().unzip())
}

fn hypot(a: &Scalar, b: &Scalar) -> Scalar {
    (a.square() + b.square()).sqrt()
}

fn jacobi_matrix(family: &RecurrenceFamily, n: usize) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    family.check_degree(n)?;
    family.check_positive(n)?;
    let diag = (1..=n).map(|j| family.c(j)).collect();
    let off = (2..=n).map(|j| family.lambda(j).sqrt()).collect();
    Ok((diag, off))
}

/// Newton polish of an approximate zero of `p_n`, evaluated by recurrence.
fn polish(family: &RecurrenceFamily, n: usize, start: &Scalar) -> Scalar {
    let prec = family.prec();
    let eps = Scalar::epsilon(prec) * 16;
    let mut x = start.clone();
    for _ in 0..NEWTON_STEPS {
        let (v, dv) = family.eval_with_derivative(n, &x);
        if dv.is_zero() || v.is_zero() {
            break;
        }
        let step = v / dv;
        x -= &step;
        if step.abs() <= &eps * &x.abs().max_of(&Scalar::one(prec)) {
            break;
        }
    }
    x
}

fn source(family: &RecurrenceFamily, n: usize) -> String {
    format!("{} n={n}", family.describe())
}

/// Zeros of `p_n` as Jacobi-matrix eigenvalues, refined by Newton's method.
pub fn zeros_golub_welsch(family: &RecurrenceFamily, n: usize) -> Result<ZeroSet> {
    Ok(gauss_rule(family, n)?.nodes)
}

/// Gauss rule for the family's (unit-mass) measure.
pub fn gauss_rule(family: &RecurrenceFamily, n: usize) -> Result<GaussRule> {
    let (diag, off) = jacobi_matrix(family, n)?;
    let (eig, first) = tridiagonal_eigen(&diag, &off)?;
    let prec = family.prec();
    let values: Vec<Scalar> = eig.iter().map(|x| polish(family, n, x)).collect();
    let total = first.iter().fold(Scalar::zero(prec), |acc, v| acc + v.square());
    let weights = first.iter().map(|v| v.square() / &total).collect();
    let nodes = ZeroSet { values, source: source(family, n) };
    let tol = TolerancePolicy::new(prec)?;
    if let Some(gap) = nodes.min_gap() {
        if gap <= tol.abs_tol {
            return Err(Error::NoConvergence(format!("zeros of {} are not separated", nodes.source)));
        }
    }
    Ok(GaussRule { nodes, weights })
}

/// Outcome of an interlacing test.
#[derive(Clone, Debug, PartialEq)]
pub enum Interlacing {
    /// Every inner zero lies strictly between two consecutive outer zeros, one per gap.
    Strict,
    /// First inner index that breaks the pattern.
    Fails { index: usize },
    /// `(inner, outer)` index pairs that coincide within tolerance.
    CommonZeros(Vec<(usize, usize)>),
}

impl Interlacing {
    pub fn is_strict(&self) -> bool {
        matches!(self, Interlacing::Strict)
    }
}

fn coincidence_tol(tol: &TolerancePolicy, values: &[Scalar]) -> Scalar {
    let prec = tol.prec();
    let scale = values.iter().fold(Scalar::one(prec), |m, v| m.max_of(&v.abs()));
    &tol.abs_tol * &scale
}

fn coincidences(inner: &[Scalar], outer: &[Scalar], thr: &Scalar) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for (i, x) in inner.iter().enumerate() {
        for (j, y) in outer.iter().enumerate() {
            if (x - y).abs() <= *thr {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Interlacing of `inner` (size `s`) with `outer` (size `s + 1`).
pub fn interlace_values(inner: &[Scalar], outer: &[Scalar], tol: &TolerancePolicy) -> Result<Interlacing> {
    if outer.len() != inner.len() + 1 {
        return Err(Error::SizeMismatch { inner: inner.len(), outer: outer.len() });
    }
    let thr = coincidence_tol(tol, outer);
    let common = coincidences(inner, outer, &thr);
    if !common.is_empty() {
        return Ok(Interlacing::CommonZeros(common));
    }
    for (i, x) in inner.iter().enumerate() {
        if !(outer[i] < *x && *x < outer[i + 1]) {
            return Ok(Interlacing::Fails { index: i });
        }
    }
    Ok(Interlacing::Strict)
}

/// Interlacing of two zero sets.
pub fn interlace_strict(inner: &ZeroSet, outer: &ZeroSet, tol: &TolerancePolicy) -> Result<Interlacing> {
    interlace_values(&inner.values, &outer.values, tol)
}

/// Inner bound `B_n(k) = -(lambda)_k (lambda)_n / ((lambda)_{n+k-1} tan phi)`
/// for Meixner-Pollaczek, in cancelled form.
pub fn mp_bound(lambda: &Scalar, phi: &Scalar, n: usize, k: usize) -> Result<Scalar> {
    let family = RecurrenceFamily::meixner_pollaczek(lambda.clone(), phi.clone())?;
    mp_bound_for(&family, n, k)
}

fn mp_bound_for(family: &RecurrenceFamily, n: usize, k: usize) -> Result<Scalar> {
    let FamilyParams::MeixnerPollaczek { lambda, .. } = family.params() else {
        return Err(Error::Unsupported("mp_bound needs a Meixner-Pollaczek family".into()));
    };
    if n < 1 {
        return Err(Error::ParameterOutOfRange("bounds need n >= 1".into()));
    }
    let cot = family.cot_phi().expect("mp cot");
    match k {
        0 => Ok(-((lambda + (n as i64 - 1)) * cot)),
        1 => Ok(-(lambda * cot)),
        2 => Ok(-((lambda * (lambda + 1)) / (lambda + n as i64) * cot)),
        _ => Err(Error::ParameterOutOfRange(format!("k = {k} must be 0, 1 or 2"))),
    }
}

/// The same bound from the uncancelled Pochhammer ratio; used as a cross-check.
pub fn mp_bound_pochhammer(lambda: &Scalar, phi: &Scalar, n: usize, k: usize) -> Scalar {
    let ratio = pochhammer(lambda, k) * pochhammer(lambda, n) / pochhammer(lambda, n + k - 1);
    -(ratio * phi.cos() / phi.sin())
}

/// Pseudo-Jacobi inner bounds: `B_n(0) = -ab/((a+n)(a+n-1))`, `B_n(1) = -b/(a+n)`,
/// `B_n(2) = -b/(a+1)`; requires `a < -n`.
pub fn pj_bound(a: &Scalar, b: &Scalar, n: usize, k: usize) -> Result<Scalar> {
    if !(*a < -(n as f64)) {
        return Err(Error::ParameterOutOfRange(format!("a = {} must be < -n = -{n}", a.to_f64())));
    }
    match k {
        0 => Ok(-(a * b) / ((a + n as i64) * (a + (n as i64 - 1)))),
        1 => Ok(-(b / (a + n as i64))),
        2 => Ok(-(b / (a + 1))),
        _ => Err(Error::ParameterOutOfRange(format!("k = {k} must be 0, 1 or 2"))),
    }
}

/// `B_n(k)` for a built-in family.
pub fn family_bound(family: &RecurrenceFamily, n: usize, k: usize) -> Result<Scalar> {
    match family.params() {
        FamilyParams::MeixnerPollaczek { .. } => mp_bound_for(family, n, k),
        FamilyParams::PseudoJacobi { a, b } => pj_bound(a, b, n, k),
        FamilyParams::Custom { .. } => Err(Error::Unsupported("no closed-form bounds for custom families".into())),
    }
}

/// Bounds `B_n(0..=2)` against the extreme zeros of `p_n`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: usize,
    /// `bounds[k] = B_n(k)`.
    pub bounds: Vec<Scalar>,
    pub x_min: Scalar,
    pub x_max: Scalar,
    /// `separated[k] = x_min < B_n(k) < x_max`.
    pub separated: Vec<bool>,
    pub ordering_ok: bool,
}

/// Computes all three bounds and checks separation and ordering.
pub fn bound_separation(family: &RecurrenceFamily, n: usize) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange("bound separation needs n >= 2".into()));
    }
    let bounds = (0..=2).map(|k| family_bound(family, n, k)).collect::<Result<Vec<_>>>()?;
    let zeros = zeros_golub_welsch(family, n)?;
    let x_min = zeros.min().expect("n >= 2").clone();
    let x_max = zeros.max().expect("n >= 2").clone();
    let separated = bounds.iter().map(|b| x_min < *b && *b < x_max).collect();
    let ascending = bounds[0] < bounds[1] && bounds[1] < bounds[2];
    let descending = bounds[2] < bounds[1] && bounds[1] < bounds[0];
    let non_increasing = bounds[2] <= bounds[1] && bounds[1] <= bounds[0];
    let non_decreasing = bounds[0] <= bounds[1] && bounds[1] <= bounds[2];
    let ordering_ok = match family.params() {
        FamilyParams::MeixnerPollaczek { .. } => {
            let cot = family.cot_phi().expect("mp cot");
            if cot.is_positive() {
                ascending
            } else if cot.is_negative() {
                descending
            } else {
                bounds.iter().all(Scalar::is_zero)
            }
        }
        FamilyParams::PseudoJacobi { b, .. } => {
            if b.is_positive() {
                non_increasing
            } else if b.is_negative() {
                non_decreasing
            } else {
                bounds.iter().all(Scalar::is_zero)
            }
        }
        FamilyParams::Custom { .. } => unreachable!("rejected by family_bound"),
    };
    Ok(BoundReport { n, bounds, x_min, x_max, separated, ordering_ok })
}

/// Outcome of the mixed-recurrence interlacing check for `m = 2`.
#[derive(Clone, Debug, PartialEq)]
pub enum StieltjesVerdict {
    /// `g_{n-2,k}` and `p_n` share no zero; the zeros of `(x - B) g` interlace with those of `p_n`.
    CoPrime { bound: Scalar },
    /// One shared zero equal to `B`, at interior index `outer_index` of `p_n`.
    CommonZero { zero: Scalar, outer_index: usize },
    Violated { reason: String, indices: Vec<usize> },
}

impl StieltjesVerdict {
    pub fn holds(&self) -> bool {
        !matches!(self, StieltjesVerdict::Violated { .. })
    }
}

/// Checks the interlacing and inner-bound statements for `g_{n-2,k}` (parameter shift) against `p_n`.
pub fn stieltjes_check(family: &RecurrenceFamily, k: usize, n: usize, tol: &TolerancePolicy) -> Result<StieltjesVerdict> {
    if k > 2 {
        return Err(Error::ParameterOutOfRange(format!("k = {k} must be 0, 1 or 2")));
    }
    if n < 2 {
        return Err(Error::ParameterOutOfRange("Stieltjes check needs n >= 2".into()));
    }
    let outer = zeros_golub_welsch(family, n)?;
    let shifted = family.shifted(k)?;
    let inner = if n == 2 { ZeroSet::new(Vec::new(), "") } else { zeros_golub_welsch(&shifted, n - 2)? };
    let bound = family_bound(family, n, k)?;
    let x_min = outer.min().expect("n >= 2");
    let x_max = outer.max().expect("n >= 2");
    let thr = coincidence_tol(tol, &outer.values);

    let common = coincidences(&inner.values, &outer.values, &thr);

    let inside = *x_min < bound && bound < *x_max;
    if common.is_empty() {
        if !inside {
            return Ok(StieltjesVerdict::Violated { reason: "bound is not strictly inside the extreme zeros".into(), indices: vec![] });
        }
        let mut merged = inner.values.clone();
        merged.push(bound.clone());
        merged.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        return Ok(match interlace_values(&merged, &outer.values, tol)? {
            Interlacing::Strict => StieltjesVerdict::CoPrime { bound },
            Interlacing::Fails { index } => StieltjesVerdict::Violated {
                reason: "zeros of (x - B) g do not interlace with zeros of p_n".into(),
                indices: vec![index],
            },
            Interlacing::CommonZeros(pairs) => StieltjesVerdict::Violated {
                reason: "bound coincides with a zero of p_n".into(),
                indices: pairs.into_iter().map(|(_, j)| j).collect(),
            },
        });
    }
    if common.len() != 1 {
        return Ok(StieltjesVerdict::Violated {
            reason: format!("{} common zeros; at most one is allowed", common.len()),
            indices: common.iter().map(|&(_, j)| j).collect(),
        });
    }
    let (_, pj) = common[0];
    let zero = outer.values[pj].clone();
    if (&zero - &bound).abs() > thr {
        return Ok(StieltjesVerdict::Violated { reason: "common zero differs from the bound".into(), indices: vec![pj] });
    }
    if pj == 0 || pj + 1 == outer.len() {
        return Ok(StieltjesVerdict::Violated { reason: "common zero is an extreme zero".into(), indices: vec![pj] });
    }
    if !inside {
        return Ok(StieltjesVerdict::Violated { reason: "bound is not strictly inside the extreme zeros".into(), indices: vec![pj] });
    }
    let rest_outer: Vec<Scalar> = outer.values.iter().enumerate().filter(|&(j, _)| j != pj).map(|(_, v)| v.clone()).collect();
    match interlace_values(&inner.values, &rest_outer, tol)? {
        Interlacing::Strict => Ok(StieltjesVerdict::CommonZero { zero, outer_index: pj }),
        Interlacing::Fails { index } => Ok(StieltjesVerdict::Violated {
            reason: "zeros of g do not interlace with the non-common zeros of p_n".into(),
            indices: vec![index],
        }),
        Interlacing::CommonZeros(pairs) => Ok(StieltjesVerdict::Violated {
            reason: "unexpected coincidence after removing the common zero".into(),
            indices: pairs.into_iter().map(|(_, j)| j).collect(),
        }),
    }
}

/// Whether the zeros of `factor * g` interlace with `outer`, where `g_zeros`
/// are the (known real) zeros of `g` and the zeros of `factor` are found by
/// Sturm isolation.
#[derive(Clone, Debug, PartialEq)]
pub enum ProductVerdict {
    Interlaces,
    NonRealZeros(usize),
    CountMismatch { have: usize, need: usize },
    NoInterlacing(Interlacing),
}

impl ProductVerdict {
    pub fn interlaces(&self) -> bool {
        matches!(self, ProductVerdict::Interlaces)
    }
}

pub fn product_interlacing(
    factor: &Polynomial,
    g_zeros: &[Scalar],
    outer: &[Scalar],
    tol: &TolerancePolicy,
) -> Result<ProductVerdict> {
    let roots = real_roots(factor, tol)?;
    if roots.nonreal > 0 {
        return Ok(ProductVerdict::NonRealZeros(roots.nonreal));
    }
    let mut merged: Vec<Scalar> = roots.roots.into_iter().chain(g_zeros.iter().cloned()).collect();
    if merged.len() + 1 != outer.len() {
        return Ok(ProductVerdict::CountMismatch { have: merged.len(), need: outer.len().saturating_sub(1) });
    }
    merged.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(match interlace_values(&merged, outer, tol)? {
        Interlacing::Strict => ProductVerdict::Interlaces,
        other => ProductVerdict::NoInterlacing(other),
    })
}
