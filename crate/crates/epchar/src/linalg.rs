//! Exact Gaussian elimination over the rationals, used to solve the small
//! square systems that arise when matching recurrence initial values.

use crate::Rational;
use num::Zero;

/// Solves `A x = b` for square `A` by fraction-free-pivoting Gaussian
/// elimination. Returns `None` when `A` is singular.
pub(crate) fn solve_linear_system(
    mut a: Vec<Vec<Rational>>,
    mut b: Vec<Rational>,
) -> Option<Vec<Rational>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(b.len(), n, "right-hand side length must match");

    for col in 0..n {
        let pivot = (col..n).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let delta = &factor * &a[col][k];
                a[row][k] -= delta;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for col in row + 1..n {
            acc -= &a[row][col] * &x[col];
        }
        x[row] = acc / &a[row][row];
    }
    Some(x)
}
