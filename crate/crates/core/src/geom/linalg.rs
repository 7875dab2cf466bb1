use num_traits::Zero;
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("linear system is singular")]
pub struct SingularSystem;

/// Solves the square system `a x = b` exactly by Gaussian elimination.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, SingularSystem> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    for c in 0..n {
        let pivot = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(SingularSystem)?;
        a.swap(c, pivot);
        b.swap(c, pivot);
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            let (pivot_row, pivot_rhs) = (a[c].clone(), b[c].clone());
            for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
            b[r] -= &f * &pivot_rhs;
        }
    }
    Ok((0..n).map(|i| &b[i] / &a[i][i]).collect())
}
