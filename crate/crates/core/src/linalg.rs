//! Small dense solvers at working precision (Gaussian elimination with partial pivoting).

use crate::error::{Error, Result};
use crate::scalar::{Complex, Scalar};

/// Solution of a square complex system plus the determinant of its matrix.
pub(crate) struct ComplexSolve {
    pub x: Vec<Complex>,
    pub det: Complex,
}

/// Solves `A x = b`. Rows are equilibrated first; the system is declared
/// singular when a pivot of the equilibrated matrix falls below `pivot_tol`.
pub(crate) fn solve_complex(mut a: Vec<Vec<Complex>>, mut b: Vec<Complex>, pivot_tol: &Scalar) -> Result<ComplexSolve> {
    let n = b.len();
    let prec = pivot_tol.prec();
    let mut det = Complex::one(prec);
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        let scale = row.iter().fold(Scalar::zero(prec), |m, v| m.max_of(&v.abs_max()));
        if scale.is_zero() {
            return Err(Error::Degenerate("zero row in determinant matrix".into()));
        }
        let inv = scale.recip();
        row.iter_mut().for_each(|v| *v = v.scale(&inv));
        *rhs = rhs.scale(&inv);
        det = det.scale(&scale);
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs_max().partial_cmp(&a[j][col].abs_max()).expect("finite"))
            .expect("nonempty");
        if a[pivot][col].abs_max() <= *pivot_tol {
            return Err(Error::Degenerate(format!("pivot {col} vanishes")));
        }
        if pivot != col {
            a.swap(pivot, col);
            b.swap(pivot, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        for row in col + 1..n {
            let factor = &a[row][col] / &a[col][col];
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[row][c] = &a[row][c] - &delta;
            }
            let delta = &factor * &b[col];
            b[row] = &b[row] - &delta;
        }
    }
    let mut x = vec![Complex::zero(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..n {
            acc = &acc - &(&a[row][c] * &x[c]);
        }
        x[row] = &acc / &a[row][row];
    }
    Ok(ComplexSolve { x, det })
}

/// Solves a real system `A x = b` with at least as many rows as unknowns,
/// using row equilibration and partial pivoting. Rows beyond the unknown count
/// must be consistent; their leftover is not returned, so callers verify the
/// solution against the original equations.
pub(crate) fn solve_real(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>, pivot_tol: &Scalar) -> Result<Vec<Scalar>> {
    let rows = b.len();
    let n = a.first().map_or(0, Vec::len);
    if rows < n {
        return Err(Error::Degenerate("underdetermined linear system".into()));
    }
    let prec = pivot_tol.prec();
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        let scale = row.iter().fold(Scalar::zero(prec), |m, v| m.max_of(&v.abs()));
        if scale.is_zero() {
            return Err(Error::Degenerate("zero row in linear system".into()));
        }
        let inv = scale.recip();
        row.iter_mut().for_each(|v| *v = &*v * &inv);
        *rhs = &*rhs * &inv;
    }
    for col in 0..n {
        let pivot = (col..rows)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite"))
            .expect("nonempty");
        if a[pivot][col].abs() <= *pivot_tol {
            return Err(Error::Degenerate(format!("linear system is singular at column {col}")));
        }
        a.swap(pivot, col);
        b.swap(pivot, col);
        for row in col + 1..rows {
            let factor = &a[row][col] / &a[col][col];
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[row][c] -= &delta;
            }
            let delta = &factor * &b[col];
            b[row] -= &delta;
        }
    }
    let mut x = vec![Scalar::zero(prec); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..n {
            acc -= &(&a[row][c] * &x[c]);
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}
