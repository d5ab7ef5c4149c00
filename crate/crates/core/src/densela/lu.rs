//! LU factorization with partial pivoting.

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Pivots smaller than this fraction of the largest entry of `A` are treated as zero.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// `P A = L U` packed in one matrix; `perm[i]` is the row of `A` placed at row `i`.
#[derive(Clone, Debug)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> Lu<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        a.require_square("LU input")?;
        let n = a.rows();
        let threshold = PIVOT_TOLERANCE * a.max_abs();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pivot_row, magnitude) = (k..n)
                .map(|i| (i, lu[(i, k)].modulus()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if magnitude < threshold || magnitude == 0.0 {
                return Err(Error::Singular {
                    index: k,
                    magnitude,
                });
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == T::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[(k, j)];
                    lu[(i, j)] -= factor * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Solves `A X = rhs` for every column of `rhs`.
    pub fn solve(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        let n = self.dim();
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, system has {n}",
                rhs.rows()
            )));
        }
        let cols = rhs.cols();
        let mut x = Matrix::zeros(n, cols);
        for (i, &src) in self.perm.iter().enumerate() {
            for j in 0..cols {
                x[(i, j)] = rhs[(src, j)];
            }
        }
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                if l == T::zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = x[(k, j)];
                    x[(i, j)] -= l * v;
                }
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                if u == T::zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = x[(k, j)];
                    x[(i, j)] -= u * v;
                }
            }
            let d = self.lu[(i, i)];
            for j in 0..cols {
                x[(i, j)] = x[(i, j)] / d;
            }
        }
        Ok(x)
    }
}

pub fn lu_solve<T: Scalar>(a: &Matrix<T>, rhs: &Matrix<T>) -> Result<Matrix<T>> {
    Lu::factor(a)?.solve(rhs)
}

pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    lu_solve(a, &Matrix::identity(a.rows()))
}

/// `A^e` by binary exponentiation, on `A^{-1}` when `e < 0`.
pub fn mat_int_pow<T: Scalar>(a: &Matrix<T>, e: i64) -> Result<Matrix<T>> {
    a.require_square("matrix power base")?;
    let mut base = if e < 0 { inverse(a)? } else { a.clone() };
    let mut exp = e.unsigned_abs();
    let mut acc = Matrix::identity(a.rows());
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.matmul(&base)?;
        }
        exp >>= 1;
        if exp > 0 {
            base = base.matmul(&base)?;
        }
    }
    Ok(acc)
}
