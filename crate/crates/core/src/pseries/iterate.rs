//! The scalar Schröder iteration for `(1 - z)^(1/p)` carried out on power
//! series in `z`.
//!
//! Starting from `x_0 = 1`, each step is `x_{k+1} = x_k T_m(R(x_k))` with
//! residual `R(x) = 1 - (1 - z) x^(-p)`. Row `k` of a [`CoeffTable`] holds
//! the coefficients `c_{k,i}` of `x_k`.

use num_traits::One;

use super::coeffs::{check_pm, check_p, taylor_poly};
use super::{Rational, TruncatedSeries};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SeriesIteration {
    p: u32,
    m: usize,
    order: usize,
    taylor: Vec<Rational>,
}

impl SeriesIteration {
    pub fn new(p: u32, m: usize, order: usize) -> Result<Self> {
        check_pm(p, m)?;
        Ok(Self {
            p,
            m,
            order,
            taylor: taylor_poly(p, m)?,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_iterate(&self, x: &TruncatedSeries) -> Result<()> {
        if x.order() != self.order {
            return Err(Error::OrderMismatch {
                left: x.order(),
                right: self.order,
            });
        }
        check_unit_constant(x)
    }

    pub fn residual(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_iterate(x)?;
        residual_unchecked(x, self.p)
    }

    /// One step, also returning the residual of the input iterate.
    pub fn step_with_residual(
        &self,
        x: &TruncatedSeries,
    ) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let r = self.residual(x)?;
        let next = x.mul(&r.compose_poly(&self.taylor)?)?;
        Ok((next, r))
    }

    pub fn step(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        Ok(self.step_with_residual(x)?.0)
    }

    /// Rows `x_0 ..= x_{k_max}` together with their residual series.
    pub fn trace(&self, k_max: usize) -> Result<SeriesTrace> {
        let mut rows = vec![TruncatedSeries::one(self.order)];
        let mut residuals = Vec::with_capacity(k_max + 1);
        for _ in 0..k_max {
            let (next, r) = self.step_with_residual(rows.last().unwrap())?;
            residuals.push(r);
            rows.push(next);
        }
        residuals.push(self.residual(rows.last().unwrap())?);
        Ok(SeriesTrace {
            table: CoeffTable {
                p: self.p,
                m: self.m,
                order: self.order,
                rows,
            },
            residuals,
        })
    }
}

fn check_unit_constant(x: &TruncatedSeries) -> Result<()> {
    if !x[0].is_one() {
        return Err(Error::InvalidParameter(
            "iterate series must have constant term 1".into(),
        ));
    }
    Ok(())
}

fn residual_unchecked(x: &TruncatedSeries, p: u32) -> Result<TruncatedSeries> {
    let scaled = x.powi(-i64::from(p))?.mul_one_minus_z();
    TruncatedSeries::one(x.order()).sub(&scaled)
}

/// Coefficients `c_{k,i}` of the iterates `x_0 ..= x_{k_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    p: u32,
    m: usize,
    order: usize,
    rows: Vec<TruncatedSeries>,
}

impl CoeffTable {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[TruncatedSeries] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> &TruncatedSeries {
        &self.rows[k]
    }

    pub fn coeff(&self, k: usize, i: usize) -> &Rational {
        &self.rows[k][i]
    }
}

#[derive(Clone, Debug)]
pub struct SeriesTrace {
    pub table: CoeffTable,
    /// `residuals[k]` is the series of `R(x_k)`.
    pub residuals: Vec<TruncatedSeries>,
}

impl SeriesTrace {
    /// Series of `x_k R(x_k)`.
    pub fn xr(&self, k: usize) -> Result<TruncatedSeries> {
        self.table.row(k).mul(&self.residuals[k])
    }
}

/// `R(x) = 1 - (1 - z) x^(-p)`.
pub fn residual_series(x: &TruncatedSeries, p: u32) -> Result<TruncatedSeries> {
    check_p(p)?;
    check_unit_constant(x)?;
    residual_unchecked(x, p)
}

/// `x R(x)`.
pub fn xr_series(x: &TruncatedSeries, p: u32) -> Result<TruncatedSeries> {
    x.mul(&residual_series(x, p)?)
}

pub fn schroeder_step_series(x: &TruncatedSeries, p: u32, m: usize) -> Result<TruncatedSeries> {
    SeriesIteration::new(p, m, x.order())?.step(x)
}

pub fn schroeder_coeff_table(p: u32, m: usize, k_max: usize, order: usize) -> Result<CoeffTable> {
    Ok(SeriesIteration::new(p, m, order)?.trace(k_max)?.table)
}

/// Smallest `k` from which row `k` onward agrees with `b_i` at index `i`,
/// within the rows of `table`.
pub fn plateau_onset(table: &CoeffTable, b: &TruncatedSeries, i: usize) -> Option<usize> {
    let rows = table.rows();
    (0..rows.len())
        .rev()
        .take_while(|&k| rows[k][i] == b[i])
        .last()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseries::{binomial_coeffs, g_coeffs, rat};
    use num_traits::Zero;

    fn rats(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    fn is_zero_from(s: &TruncatedSeries, start: usize) -> bool {
        s.coeffs().iter().skip(start).all(Zero::is_zero)
    }

    #[test]
    fn first_step_is_taylor_polynomial() {
        let x1 = schroeder_step_series(&TruncatedSeries::one(2), 2, 1).unwrap();
        assert_eq!(x1.coeffs(), &rats(&[(1, 1), (-1, 2), (0, 1)])[..]);

        let x1 = schroeder_step_series(&TruncatedSeries::one(3), 2, 2).unwrap();
        assert_eq!(x1.coeffs(), &rats(&[(1, 1), (-1, 2), (-1, 8), (0, 1)])[..]);
        assert!(is_zero_from(&x1, 3));
    }

    #[test]
    fn second_newton_step_matches_binomial() {
        let x1 = schroeder_step_series(&TruncatedSeries::one(3), 2, 1).unwrap();
        let x2 = schroeder_step_series(&x1, 2, 1).unwrap();
        assert_eq!(
            x2.coeffs(),
            &rats(&[(1, 1), (-1, 2), (-1, 8), (-1, 16)])[..]
        );
    }

    #[test]
    fn residual_examples() {
        let r0 = residual_series(&TruncatedSeries::one(4), 3).unwrap();
        assert_eq!(r0, TruncatedSeries::variable(4));

        let x1 = schroeder_step_series(&TruncatedSeries::one(2), 2, 1).unwrap();
        let r1 = residual_series(&x1, 2).unwrap();
        assert_eq!(r1.coeffs(), &rats(&[(0, 1), (0, 1), (1, 4)])[..]);
    }

    #[test]
    fn xr_examples() {
        assert_eq!(
            xr_series(&TruncatedSeries::one(3), 2).unwrap(),
            TruncatedSeries::variable(3)
        );
        let x1 = schroeder_step_series(&TruncatedSeries::one(3), 2, 1).unwrap();
        let xr = xr_series(&x1, 2).unwrap();
        assert_eq!(xr.coeffs(), &rats(&[(0, 1), (0, 1), (1, 4), (1, 8)])[..]);
        assert_eq!(xr, g_coeffs(2, 1, 3).unwrap());
    }

    #[test]
    fn iterate_must_start_at_one() {
        let bad = TruncatedSeries::constant(rat(2, 1), 3);
        assert!(residual_series(&bad, 2).is_err());
        assert!(schroeder_step_series(&bad, 2, 1).is_err());
        let it = SeriesIteration::new(2, 1, 4).unwrap();
        assert!(matches!(
            it.step(&TruncatedSeries::one(3)),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn table_rows_follow_binomial_plateau() {
        let (p, m, order) = (3, 2, 30);
        let table = schroeder_coeff_table(p, m, 3, order).unwrap();
        let b = binomial_coeffs(p, order).unwrap();
        assert_eq!(table.row(0), &TruncatedSeries::one(order));
        for k in 0..=3u32 {
            let top = ((m as u64 + 1).pow(k) - 1).min(order as u64) as usize;
            for i in 0..=top {
                assert_eq!(table.coeff(k as usize, i), &b[i], "k={k} i={i}");
            }
        }
        assert_eq!(plateau_onset(&table, &b, 0), Some(0));
        assert_eq!(plateau_onset(&table, &b, 1), Some(1));
        assert_eq!(plateau_onset(&table, &b, 3), Some(2));
        assert_eq!(plateau_onset(&table, &b, 9), Some(3));
    }
}
