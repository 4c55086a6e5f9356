use ndarray::{Array1, Array2};

use crate::error::RegressError;

/// Solves `A x = b` for symmetric positive-definite `A` by Cholesky
/// factorization.  Returns `Singular` when a pivot collapses, which for our
/// normal-equation callers means the unpenalized system is rank deficient.
pub(crate) fn cholesky_solve(a: &Array2<f64>, b: &Array1<f64>) -> Result<Array1<f64>, RegressError> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n, "matrix must be square");
    assert_eq!(b.len(), n, "rhs length must match");

    let diag_max = (0..n).map(|i| a[[i, i]].abs()).fold(0.0f64, f64::max);
    let tol = f64::EPSILON * diag_max.max(1.0) * n.max(1) as f64;

    // Lower-triangular factor, row by row.
    let mut l = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let mut d = a[[j, j]];
        for k in 0..j {
            d -= l[[j, k]] * l[[j, k]];
        }
        if !(d > tol) {
            return Err(RegressError::Singular(format!(
                "pivot {d:e} at column {j} of a {n}x{n} system"
            )));
        }
        let root = d.sqrt();
        l[[j, j]] = root;
        for i in j + 1..n {
            let mut s = a[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]];
            }
            l[[i, j]] = s / root;
        }
    }

    // Forward substitution: L z = b.
    let mut z = Array1::<f64>::zeros(n);
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[[i, k]] * z[k];
        }
        z[i] = s / l[[i, i]];
    }

    // Back substitution: L^T x = z.
    let mut x = Array1::<f64>::zeros(n);
    for i in (0..n).rev() {
        let mut s = z[i];
        for k in i + 1..n {
            s -= l[[k, i]] * x[k];
        }
        x[i] = s / l[[i, i]];
    }
    Ok(x)
}
