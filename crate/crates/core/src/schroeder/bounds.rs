//! A priori error bounds and the binomial-series reference root.
//!
//! For `A = I - B` with `||B|| < 1`, `A^(1/p) = sum_i b_i B^i`. Since the
//! iterates agree with this series through degree `(m+1)^k - 1` and all later
//! coefficient gaps lie in `[0, -b_i]`,
//! `||X_k - A^(1/p)|| <= s_{(m+1)^k} ||B||^((m+1)^k) <= ||B||^((m+1)^k)`.

use super::coeffs::BinomialTable;
use super::iteration::bounds_from_table;
use crate::densela::{Matrix, NormKind, Scalar};
use crate::error::{Error, Result};

pub const MAX_REFERENCE_TERMS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AprioriBounds {
    pub plain: f64,
    pub sharp: f64,
}

pub fn apriori_bounds(norm_b: f64, p: u32, m: usize, k: usize) -> Result<AprioriBounds> {
    crate::pseries::taylor_poly(p, m)?;
    let (plain, sharp) = bounds_from_table(&BinomialTable::new(p)?, norm_b, m, k)?;
    Ok(AprioriBounds { plain, sharp })
}

#[derive(Clone, Debug)]
pub struct ReferenceRoot<T> {
    pub root: Matrix<T>,
    /// Bound on the norm of the omitted series tail, `s_N ||B||^N`.
    pub tail_bound: f64,
    pub terms: usize,
}

/// Partial sum `sum_{i<N} b_i B^i` with `N >= min_terms` grown until the tail
/// bound is at most `tail_target` (or `N` reaches [`MAX_REFERENCE_TERMS`]).
pub fn binomial_reference_root<T: Scalar>(
    a: &Matrix<T>,
    p: u32,
    min_terms: usize,
    tail_target: f64,
    norm: NormKind,
) -> Result<ReferenceRoot<T>> {
    reference_root_with(&BinomialTable::new(p)?, a, min_terms, tail_target, norm)
}

pub(crate) fn reference_root_with<T: Scalar>(
    table: &BinomialTable,
    a: &Matrix<T>,
    min_terms: usize,
    tail_target: f64,
    norm: NormKind,
) -> Result<ReferenceRoot<T>> {
    a.require_square("A")?;
    let b = a.identity_minus();
    let q = b.norm(norm);
    if !(q < 1.0) {
        return Err(Error::NotContractive(q));
    }
    let n = a.rows();
    if q == 0.0 {
        return Ok(ReferenceRoot {
            root: Matrix::identity(n),
            tail_bound: 0.0,
            terms: 1,
        });
    }
    let tail = |terms: usize| table.tail_sum(terms) * q.powi(terms as i32);
    let mut terms = min_terms.max(1);
    while tail(terms) > tail_target && terms < MAX_REFERENCE_TERMS {
        terms += 1;
    }
    let coeffs = table.coeffs(terms);
    let (last, rest) = coeffs.split_last().expect("terms >= 1");
    let mut acc = Matrix::identity(n).scale(T::from_real(*last));
    for &c in rest.iter().rev() {
        acc = acc.matmul(&b)?.add_identity(T::from_real(c));
    }
    Ok(ReferenceRoot {
        root: acc,
        tail_bound: tail(terms),
        terms,
    })
}
