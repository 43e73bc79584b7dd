//! Cyclic Jacobi eigenvalues for small real symmetric matrices.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::Real;

/// Largest matrix accepted by [`symmetric_eigen`].
pub const MAX_JACOBI_DIM: usize = 64;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix, ascending.
///
/// Rows must all have length `n ≤ 64`; entries mirrored across the diagonal
/// may differ by at most `1e-10` (relative to the Frobenius norm when it
/// exceeds one). Sweeps continue until the off-diagonal Frobenius norm is
/// below `1e-12 ‖M‖_F`, or machine precision for `f32`.
pub fn symmetric_eigen<T: Real>(matrix: &[Vec<T>]) -> Result<Vec<T>> {
    let n = matrix.len();
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    if n > MAX_JACOBI_DIM {
        return Err(Error::OutOfRange { name: "matrix dimension", reason: format!("{n} exceeds {MAX_JACOBI_DIM}") });
    }
    let norm = frobenius(matrix);
    let sym_tol = T::lit(1e-10) * norm.max(T::one());
    for i in 0..n {
        for j in i + 1..n {
            let gap = (matrix[i][j] - matrix[j][i]).abs();
            if !(gap <= sym_tol) {
                return Err(Error::NotSymmetric { i, j, gap: gap.as_f64() });
            }
        }
    }

    let mut a: Vec<Vec<T>> = matrix.to_vec();
    // symmetrize so rounding in the input does not bias the rotations
    for i in 0..n {
        for j in i + 1..n {
            let mean = (a[i][j] + a[j][i]) * T::lit(0.5);
            a[i][j] = mean;
            a[j][i] = mean;
        }
    }
    let target = T::lit(1e-12).max(T::epsilon()) * norm;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut values: Vec<T> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

// Zero a[p][q] with a plane rotation, using the small-angle form of
// Rutishauser for stability.
fn rotate<T: Real>(a: &mut [Vec<T>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == T::zero() {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (apq + apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
    let t = if theta == T::zero() { T::one() } else { t };
    let c = (t * t + T::one()).sqrt().recip();
    let s = t * c;
    let n = a.len();
    for k in 0..n {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = T::zero();
    a[q][p] = T::zero();
}

fn frobenius<T: Real>(a: &[Vec<T>]) -> T {
    a.iter().flatten().map(|&x| x * x).sum::<T>().sqrt()
}

fn off_diagonal<T: Real>(a: &[Vec<T>]) -> T {
    let mut acc = T::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if i != j {
                acc += x * x;
            }
        }
    }
    acc.sqrt()
}
