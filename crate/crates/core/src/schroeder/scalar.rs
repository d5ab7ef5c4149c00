//! Scalar Schröder iteration `x_{k+1} = x_k T_m(1 - a x_k^(-p))`.
//!
//! Performs exactly the floating-point operations of the matrix path on a
//! 1x1 matrix, so both agree bit for bit.

use super::coeffs::to_f64;
use super::report::Termination;
use crate::densela::Scalar;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarStep<T> {
    pub k: usize,
    pub x: T,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarRun<T> {
    pub x: T,
    pub steps: Vec<ScalarStep<T>>,
    pub termination: Termination,
}

const DIVERGENCE_FACTOR: f64 = 10.0;

pub fn scalar_run<T: Scalar>(
    a: T,
    p: u32,
    m: usize,
    tol: f64,
    max_iter: usize,
) -> Result<ScalarRun<T>> {
    let taylor: Vec<f64> = crate::pseries::taylor_poly(p, m)?.iter().map(to_f64).collect();
    let (last, rest) = taylor.split_last().expect("m >= 1");

    let mut x = T::one();
    let mut steps = Vec::new();
    let mut initial = None;
    let mut k = 0;
    let termination = loop {
        if x == T::zero() {
            break Termination::SingularIterate;
        }
        let mut y = a;
        for _ in 0..p {
            y = y / x;
        }
        let r = -y + T::one();
        let residual = r.modulus();
        steps.push(ScalarStep { k, x, residual });
        if !residual.is_finite() {
            break Termination::Diverged;
        }
        if residual <= tol {
            break Termination::Converged;
        }
        let r0 = *initial.get_or_insert(residual);
        if residual > DIVERGENCE_FACTOR * r0 {
            break Termination::Diverged;
        }
        if k == max_iter {
            break Termination::MaxIter;
        }
        let mut t = T::from_real(*last);
        for &b in rest.iter().rev() {
            t = t * r + T::from_real(b);
        }
        let next = x * t;
        if !next.is_finite() {
            break Termination::Diverged;
        }
        x = next;
        k += 1;
    };
    Ok(ScalarRun {
        x,
        steps,
        termination,
    })
}
