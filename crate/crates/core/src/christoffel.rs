//! Christoffel transforms for even modifiers and the connection decomposition
//!
//! ```text
//! c_2k(x) g_{n-m,k}(x) = a(x) p_n(x) - G(x) p_{n-1}(x)
//! ```
//!
//! `g_{n-m,k}` is the monic polynomial orthogonal with respect to `c_2k w`.
//! Two routes produce `(a, G)`: expanding `c_2k g` in the basis
//! `p_{n-m}, ..., p_{n-m+2k}` and folding each basis element onto `p_n`, `p_{n-1}`
//! through associated polynomials; and a direct linear solve on coefficient
//! vectors, which is unique whenever `deg G <= n - 1`. The first route always
//! runs; the second checks it wherever it is unique.

use crate::associated::{lambda_prefix, AssociatedCache};
use crate::error::{Error, Result};
use crate::families::{ModifierSpec, RecurrenceFamily};
use crate::linalg::{solve_complex, solve_real};
use crate::poly::Polynomial;
use crate::scalar::{Complex, Scalar, TolerancePolicy};

/// Output of the determinant construction.
#[derive(Clone, Debug)]
pub struct ChristoffelTransform {
    /// Monic `g_{deg,k}`.
    pub g: Polynomial,
    /// Expansion coefficients `d_j = (-1)^j U_j / U_2k`, `d_2k = 1`.
    pub d: Vec<Scalar>,
    /// Minors `U_j` of the node matrix (last row deleted, column `j` deleted).
    pub cofactors: Vec<Complex>,
}

/// How `g_{n-m,k}` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModifiedRoute {
    Determinant,
    ParameterShift,
}

/// Whether the linear-solve route confirmed the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossCheck {
    Agreed,
    /// `deg G > n - 1`, so the coefficient system has a one-parameter family of
    /// solutions and only the associated-polynomial construction is canonical.
    NotUnique,
}

/// Degrees predicted for `a` and `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeLaw {
    pub deg_a: usize,
    pub deg_g: usize,
    /// `G` is linear with `m = 2`, the case that yields interlacing and an inner bound.
    pub linear_g: bool,
}

/// `deg a = m-2` for `k <= m-1`, else `2k-m`; `deg G = max(m-1, 2k-m-1)`.
pub fn theorem1_degree_law(k: usize, m: usize) -> DegreeLaw {
    assert!(m >= 2, "degree law needs m >= 2");
    let (k, m) = (k as i64, m as i64);
    let deg_a = if k < m { m - 2 } else { 2 * k - m };
    let deg_g = (m - 1).max(2 * k - m - 1);
    DegreeLaw { deg_a: deg_a as usize, deg_g: deg_g as usize, linear_g: m == 2 && k <= 2 }
}

/// Connection identity `c_2k g_{n-m,k} = a p_n - G p_{n-1}` with `g` monic.
#[derive(Clone, Debug)]
pub struct ConnectionDecomposition {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub a_poly: Polynomial,
    pub g_poly: Polynomial,
    /// `g_{n-m,k}`.
    pub modified: Polynomial,
    /// `A_n = 1 / lead(G)`: the factor that makes the `p_{n-1}` coefficient monic.
    pub scale: Scalar,
    /// Root of `G` when `G` is linear.
    pub b: Option<Scalar>,
    /// `||c g - (a p_n - G p_{n-1})||_inf / ||c g||_inf`.
    pub residual: Scalar,
    /// `d_0, ..., d_2k`: coefficients of `c_2k g` in `p_{n-m}, ..., p_{n-m+2k}`.
    pub work: Vec<Scalar>,
    /// Minors `U_{n-m,j}` when the determinant route was used.
    pub cofactors: Vec<Complex>,
    pub route: ModifiedRoute,
    pub cross_check: CrossCheck,
}

impl ConnectionDecomposition {
    pub fn deg_a(&self) -> Option<usize> {
        self.a_poly.degree()
    }

    pub fn deg_g(&self) -> Option<usize> {
        self.g_poly.degree()
    }
}

/// `g_{deg,k}` by the Christoffel determinant at the default tolerance.
pub fn christoffel_transform(family: &RecurrenceFamily, modifier: &ModifierSpec, deg: usize) -> Result<Polynomial> {
    let tol = TolerancePolicy::new(family.prec())?;
    Ok(christoffel_transform_detailed(family, modifier, deg, &tol)?.g)
}

/// Determinant construction of `g_{deg,k}`.
///
/// The `2k` rows evaluate `p_deg, ..., p_{deg+2k}` at `x_1, -x_1, ..., x_k, -x_k`.
/// Solving for the kernel vector normalized by `d_2k = 1` is Cramer's rule for
/// the cofactor expansion along the last row; `U_2k` is the determinant of the
/// leading `2k x 2k` block.
pub fn christoffel_transform_detailed(
    family: &RecurrenceFamily,
    modifier: &ModifierSpec,
    deg: usize,
    tol: &TolerancePolicy,
) -> Result<ChristoffelTransform> {
    if !modifier.distinct {
        return Err(Error::RepeatedNodes);
    }
    let k = modifier.k;
    let prec = family.prec();
    let ps = family.generate_all(deg + 2 * k)?;
    if k == 0 {
        return Ok(ChristoffelTransform {
            g: ps[deg].clone(),
            d: vec![Scalar::one(prec)],
            cofactors: vec![Complex::one(prec)],
        });
    }
    let points: Vec<Complex> = modifier.nodes.iter().flat_map(|z| [z.clone(), -z]).collect();
    let size = 2 * k;
    let mut matrix = Vec::with_capacity(size);
    let mut rhs = Vec::with_capacity(size);
    for z in &points {
        let mut row: Vec<Complex> = (0..=size).map(|j| ps[deg + j].eval_complex(z)).collect();
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("node evaluation"));
        }
        rhs.push(-&row.pop().expect("nonempty"));
        matrix.push(row);
    }
    let solve = solve_complex(matrix, rhs, &tol.rel_tol)
        .map_err(|e| Error::Degenerate(format!("U_2k vanishes: {e}")))?;
    let mut d_complex = solve.x;
    d_complex.push(Complex::one(prec));
    let u_top = solve.det;
    let cofactors = d_complex
        .iter()
        .enumerate()
        .map(|(j, d)| {
            let u = d * &u_top;
            if j % 2 == 1 { -&u } else { u }
        })
        .collect();

    let mut num_re = Polynomial::zero(prec);
    let mut num_im = Polynomial::zero(prec);
    for (j, d) in d_complex.iter().enumerate() {
        num_re = &num_re + &ps[deg + j].scale(&d.re);
        num_im = &num_im + &ps[deg + j].scale(&d.im);
    }
    let scale = num_re.norm_inf();
    let imag = num_im.norm_inf() / &scale;
    if imag > tol.abs_tol {
        return Err(Error::ImaginaryResidue(imag.to_f64()));
    }
    let g = num_re.divide_exact(&modifier.c, tol)?.monic();
    let d = d_complex.into_iter().map(|z| z.re).collect();
    Ok(ChristoffelTransform { g, d, cofactors })
}

/// `g_{deg,k}` by whichever route the modifier allows: the determinant for
/// distinct nodes, the parameter shift otherwise.
pub fn modified_polynomial(
    family: &RecurrenceFamily,
    modifier: &ModifierSpec,
    deg: usize,
    tol: &TolerancePolicy,
) -> Result<(Polynomial, ModifiedRoute, Option<ChristoffelTransform>)> {
    if modifier.distinct {
        let t = christoffel_transform_detailed(family, modifier, deg, tol)?;
        Ok((t.g.clone(), ModifiedRoute::Determinant, Some(t)))
    } else {
        let g = family.shifted(modifier.k)?.generate(deg)?;
        Ok((g, ModifiedRoute::ParameterShift, None))
    }
}

/// Decomposition at the default tolerance.
pub fn connection_decompose(
    family: &RecurrenceFamily,
    modifier: &ModifierSpec,
    n: usize,
    m: usize,
) -> Result<ConnectionDecomposition> {
    let tol = TolerancePolicy::new(family.prec())?;
    connection_decompose_with(family, modifier, n, m, &tol)
}

pub fn connection_decompose_with(
    family: &RecurrenceFamily,
    modifier: &ModifierSpec,
    n: usize,
    m: usize,
    tol: &TolerancePolicy,
) -> Result<ConnectionDecomposition> {
    if m < 2 || m > n {
        return Err(Error::IndexOutOfRange(format!("decomposition needs 2 <= m <= n, got m={m}, n={n}")));
    }
    family.check_degree(n)?;
    let k = modifier.k;
    let base = n - m;
    let top = base + 2 * k;
    let (modified, route, transform) = modified_polynomial(family, modifier, base, tol)?;
    let lhs = &modifier.c * &modified;

    let mut cache = AssociatedCache::new(family, top.max(n))?;
    let d = expand_in_family_basis(&lhs, &cache, base, 2 * k, tol)?;
    let (a_raw, g_raw) = fold_onto_top_pair(&mut cache, &d, n, m)?;
    let a_poly = a_raw.chop_relative(&tol.rel_tol);
    let g_poly = g_raw.chop_relative(&tol.rel_tol);

    let p_n = cache.p(n)?.clone();
    let p_nm1 = cache.p(n - 1)?.clone();
    let rebuilt = &(&a_poly * &p_n) - &(&g_poly * &p_nm1);
    let residual = (&lhs - &rebuilt).norm_inf() / lhs.norm_inf();
    if residual > tol.rel_tol {
        return Err(Error::Residual {
            context: "connection identity",
            residual: residual.to_f64(),
            tolerance: tol.rel_tol.to_f64(),
        });
    }

    let law = theorem1_degree_law(k, m);
    let cross_check = if law.deg_g < n {
        let (a_lin, g_lin) = solve_connection_system(&lhs, &p_n, &p_nm1, law.deg_a, tol)?;
        let da = (&a_lin - &a_poly).norm_inf() / a_poly.norm_inf().max_of(&Scalar::one(family.prec()));
        let dg = (&g_lin - &g_poly).norm_inf() / g_poly.norm_inf().max_of(&Scalar::one(family.prec()));
        let worst = da.max_of(&dg);
        if worst > tol.rel_tol {
            return Err(Error::Residual {
                context: "linear-solve cross-check",
                residual: worst.to_f64(),
                tolerance: tol.rel_tol.to_f64(),
            });
        }
        CrossCheck::Agreed
    } else {
        CrossCheck::NotUnique
    };

    let lead = g_poly.leading();
    let scale = if lead.is_zero() { Scalar::zero(family.prec()) } else { lead.recip() };
    let b = (g_poly.degree() == Some(1)).then(|| -(g_poly.coeff(0) / g_poly.coeff(1)));
    Ok(ConnectionDecomposition {
        n,
        m,
        k,
        a_poly,
        g_poly,
        modified,
        scale,
        b,
        residual,
        work: d,
        cofactors: transform.map(|t| t.cofactors).unwrap_or_default(),
        route,
        cross_check,
    })
}

/// Coefficients `d_0..d_len` with `f = sum_j d_j p_{base+j}`. Fails when `f`
/// has a component below `p_base`, i.e. when `g` is not orthogonal to low degrees.
fn expand_in_family_basis(
    f: &Polynomial,
    cache: &AssociatedCache<'_>,
    base: usize,
    len: usize,
    tol: &TolerancePolicy,
) -> Result<Vec<Scalar>> {
    let prec = f.prec();
    let mut rest = f.clone();
    let mut d = vec![Scalar::zero(prec); len + 1];
    for j in (0..=len).rev() {
        let coef = rest.coeff(base + j);
        rest = &rest - &cache.p(base + j)?.scale(&coef);
        d[j] = coef;
    }
    let leftover = rest.norm_inf() / f.norm_inf();
    if leftover > tol.rel_tol {
        return Err(Error::Residual {
            context: "expansion of c_2k g in the family basis",
            residual: leftover.to_f64(),
            tolerance: tol.rel_tol.to_f64(),
        });
    }
    Ok(d)
}

/// Rewrites `sum_j d_j p_{n-m+j}` as `a p_n - G p_{n-1}`.
///
/// Below `p_{n-1}` each term uses the bridging identity, above `p_n` the
/// extension identity; `p_{n-1}` and `p_n` contribute directly.
fn fold_onto_top_pair(
    cache: &mut AssociatedCache<'_>,
    d: &[Scalar],
    n: usize,
    m: usize,
) -> Result<(Polynomial, Polynomial)> {
    let family = cache.family().clone();
    let prec = family.prec();
    let top_j = d.len() - 1;
    let mut a = Polynomial::zero(prec);
    // coefficient of p_{n-1} with the sign of sum_j d_j p_{n-m+j}; G is its negative
    let mut c_prev = Polynomial::zero(prec);

    for (j, dj) in d.iter().enumerate().take((m - 1).min(top_j + 1)) {
        let prefix = lambda_prefix(&family, n, m - j);
        let w = dj / &prefix;
        c_prev = &c_prev + &cache.s(n, (m - j - 1) as isize)?.scale(&w);
        a = &a - &cache.s(n - 1, (m - j - 2) as isize)?.scale(&w);
    }
    if m - 1 <= top_j {
        c_prev = &c_prev + &Polynomial::constant(d[m - 1].clone());
    }
    let lam_next = if top_j > m { family.lambda(n + 1) } else { Scalar::zero(prec) };
    for (j, dj) in d.iter().enumerate().skip(m) {
        let anchor = n - m + j;
        a = &a + &cache.s(anchor, (j - m) as isize)?.scale(dj);
        if j > m {
            let term = cache.s(anchor, (j - m - 1) as isize)?.scale(&(dj * &lam_next));
            c_prev = &c_prev - &term;
        }
    }
    Ok((a, -&c_prev))
}

/// Solves `a p_n - G p_{n-1} = f` for `deg a <= deg_a`, `deg G <= n - 1`.
fn solve_connection_system(
    f: &Polynomial,
    p_n: &Polynomial,
    p_nm1: &Polynomial,
    deg_a: usize,
    tol: &TolerancePolicy,
) -> Result<(Polynomial, Polynomial)> {
    let prec = f.prec();
    let n = p_n.degree().expect("p_n nonzero");
    let unknowns = n + deg_a + 1;
    let rows = (n + deg_a).max(2 * n - 2) + 1;
    if f.degree().is_some_and(|d| d >= rows) {
        return Err(Error::Degenerate("left side exceeds the degree budget".into()));
    }
    let mut matrix = vec![vec![Scalar::zero(prec); unknowns]; rows];
    for t in 0..=deg_a {
        for (i, c) in p_n.coeffs().iter().enumerate() {
            matrix[i + t][t] = c.clone();
        }
    }
    for t in 0..n {
        for (i, c) in p_nm1.coeffs().iter().enumerate() {
            matrix[i + t][deg_a + 1 + t] = -c;
        }
    }
    let rhs = (0..rows).map(|i| f.coeff(i)).collect();
    let x = solve_real(matrix, rhs, &tol.rel_tol)?;
    let a = Polynomial::new(x[..=deg_a].to_vec(), prec).chop_relative(&tol.rel_tol);
    let g = Polynomial::new(x[deg_a + 1..].to_vec(), prec).chop_relative(&tol.rel_tol);
    Ok((a, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{mp_family, pj_family};

    const P: u32 = 256;

    fn s(v: &str) -> Scalar {
        Scalar::parse(v, P).unwrap()
    }

    fn rel_diff(a: &Polynomial, b: &Polynomial) -> Scalar {
        (a - b).norm_inf() / b.norm_inf()
    }

    #[test]
    fn degree_law_examples() {
        assert_eq!(theorem1_degree_law(2, 2), DegreeLaw { deg_a: 2, deg_g: 1, linear_g: true });
        assert_eq!(theorem1_degree_law(3, 2), DegreeLaw { deg_a: 4, deg_g: 3, linear_g: false });
        assert_eq!(theorem1_degree_law(0, 5), DegreeLaw { deg_a: 3, deg_g: 4, linear_g: false });
        assert_eq!(theorem1_degree_law(4, 4).deg_a, 4);
        assert_eq!(theorem1_degree_law(3, 4).deg_a, 2);
    }

    #[test]
    fn k_zero_transform_is_identity() {
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let m = f.even_modifier(0).unwrap();
        assert_eq!(christoffel_transform(&f, &m, 6).unwrap(), f.generate(6).unwrap());
    }

    #[test]
    fn transform_matches_parameter_shift() {
        let tol = Scalar::pow2(-128, P);
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let g = christoffel_transform(&f, &f.even_modifier(1).unwrap(), 4).unwrap();
        let oracle = mp_family(s("1.5"), s("0.9")).unwrap().generate(4).unwrap();
        assert!(rel_diff(&g, &oracle) <= tol);

        let f = pj_family(s("-10"), s("8")).unwrap();
        let g = christoffel_transform(&f, &f.even_modifier(1).unwrap(), 3).unwrap();
        let oracle = pj_family(s("-9"), s("8")).unwrap().generate(3).unwrap();
        assert!(rel_diff(&g, &oracle) <= tol);
    }

    #[test]
    fn transform_rejects_repeated_nodes_and_range() {
        let f = pj_family(s("-10"), s("8")).unwrap();
        let m2 = f.modifier(2).unwrap();
        assert_eq!(christoffel_transform(&f, &m2, 2).unwrap_err(), Error::RepeatedNodes);
        let m1 = f.even_modifier(1).unwrap();
        assert!(matches!(christoffel_transform(&f, &m1, 8), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn mp_first_shift_decomposition() {
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let dec = connection_decompose(&f, &f.even_modifier(1).unwrap(), 5, 2).unwrap();
        let tiny = Scalar::pow2(-200, P);
        assert_eq!(dec.deg_a(), Some(0));
        assert!((dec.a_poly.coeff(0) + s("0.25")).abs() < tiny);
        let cot = f.cot_phi().unwrap().clone();
        let expected_g = Polynomial::linear_monic(&-(s("0.5") * &cot)).scale(&s("-1.25"));
        assert!(rel_diff(&dec.g_poly, &expected_g) < tiny);
        let b = dec.b.clone().unwrap();
        assert!((b + s("0.5") * cot).abs() < tiny);
        assert_eq!(dec.cross_check, CrossCheck::Agreed);
        assert_eq!(dec.route, ModifiedRoute::Determinant);
    }

    #[test]
    fn remark_case_has_cubic_g() {
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let dec = connection_decompose(&f, &f.even_modifier(3).unwrap(), 8, 2).unwrap();
        assert_eq!(dec.deg_g(), Some(3));
        assert_eq!(dec.deg_a(), Some(4));
    }

    #[test]
    fn pj_first_shift_bound() {
        let f = pj_family(s("-10"), s("8")).unwrap();
        let dec = connection_decompose(&f, &f.even_modifier(1).unwrap(), 5, 2).unwrap();
        let b = dec.b.unwrap();
        assert!((b - s("1.6")).abs() < Scalar::pow2(-200, P));
    }

    #[test]
    fn pj_second_shift_uses_parameter_shift() {
        let f = pj_family(s("-10"), s("8")).unwrap();
        let dec = connection_decompose(&f, &f.modifier(2).unwrap(), 5, 2).unwrap();
        assert_eq!(dec.route, ModifiedRoute::ParameterShift);
        assert_eq!(dec.deg_g(), Some(1));
        // B_n(2) = -b/(a+1)
        let expected = s("8") / 9;
        assert!((dec.b.unwrap() - expected).abs() < Scalar::pow2(-200, P));
    }

    #[test]
    fn k_zero_reduces_to_the_recurrence() {
        let f = mp_family(s("20"), s("0.1")).unwrap();
        let dec = connection_decompose(&f, &f.even_modifier(0).unwrap(), 7, 2).unwrap();
        let lam = f.lambda(7);
        let tiny = Scalar::pow2(-200, P);
        assert!((dec.a_poly.coeff(0) * &lam + 1).abs() < tiny);
        let expected_g = Polynomial::linear_monic(&f.c(7)).scale(&-lam.recip());
        assert!(rel_diff(&dec.g_poly, &expected_g) < tiny);
    }

    #[test]
    fn nonunique_cells_still_satisfy_the_identity() {
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let dec = connection_decompose(&f, &f.even_modifier(6).unwrap(), 4, 4).unwrap();
        assert_eq!(dec.cross_check, CrossCheck::NotUnique);
        let law = theorem1_degree_law(6, 4);
        assert_eq!(dec.deg_a(), Some(law.deg_a));
        assert_eq!(dec.deg_g(), Some(law.deg_g));
    }

    #[test]
    fn invalid_indices() {
        let f = mp_family(s("0.5"), s("0.9")).unwrap();
        let m = f.even_modifier(1).unwrap();
        assert!(connection_decompose(&f, &m, 5, 1).is_err());
        assert!(connection_decompose(&f, &m, 5, 6).is_err());
    }
}
