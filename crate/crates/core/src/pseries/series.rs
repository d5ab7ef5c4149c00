//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` carries the coefficients of `z^0 ..= z^N`. Every
//! binary operation requires both operands to have the same order; there is
//! no implicit re-truncation.

use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from `coeffs`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a truncated series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z` (zero when `order == 0`).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Polynomial with the given leading coefficients, zero-padded or cut to `order`.
    pub fn from_poly(coeffs: &[Rational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (dst, src) in s.coeffs.iter_mut().zip(coeffs) {
            *dst = src.clone();
        }
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `(1 - z) * self`, truncated.
    pub fn mul_one_minus_z(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for i in (1..coeffs.len()).rev() {
            coeffs[i] = &coeffs[i] - &self.coeffs[i - 1];
        }
        Self { coeffs }
    }

    /// Cauchy product truncated at the common order.
    ///
    /// Both operands are lifted to integer numerators over a common
    /// denominator so the inner convolution runs on integers; each output
    /// coefficient is reduced once.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let (u, du) = common_denominator(&self.coeffs);
        let (v, dv) = common_denominator(&other.coeffs);
        let den = du * dv;
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = BigInt::zero();
            for j in 0..=i {
                if u[j].is_zero() || v[i - j].is_zero() {
                    continue;
                }
                acc += &u[j] * &v[i - j];
            }
            coeffs.push(Rational::new(acc, den.clone()));
        }
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse by the convolution recurrence
    /// `w_0 = 1/u_0`, `w_i = -(1/u_0) * sum_{j=1..i} u_j w_{i-j}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let u0 = &self.coeffs[0];
        if u0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = u0.recip();
        let neg_inv0 = -&inv0;
        let mut w: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        w.push(inv0);
        for i in 1..self.coeffs.len() {
            let terms: Vec<Rational> = (1..=i)
                .filter(|&j| !self.coeffs[j].is_zero() && !w[i - j].is_zero())
                .map(|j| &self.coeffs[j] * &w[i - j])
                .collect();
            w.push(sum_rationals(&terms) * &neg_inv0);
        }
        Ok(Self { coeffs: w })
    }

    /// Integer power; negative exponents go through [`reciprocal`](Self::reciprocal).
    pub fn powi(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.order())))
    }

    /// Evaluates the polynomial `sum poly[i] t^i` at `t = self` by Horner's rule.
    pub fn compose_poly(&self, poly: &[Rational]) -> Result<Self> {
        let order = self.order();
        let Some((last, rest)) = poly.split_last() else {
            return Ok(Self::zero(order));
        };
        let mut acc = Self::constant(last.clone(), order);
        for c in rest.iter().rev() {
            acc = acc.mul(self)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl Index<usize> for TruncatedSeries {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }
}

/// Integer numerators over the least common denominator of `coeffs`.
fn common_denominator(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

/// Exact sum with a single reduction at the end.
pub(crate) fn sum_rationals(terms: &[Rational]) -> Rational {
    let (nums, den) = common_denominator(terms);
    Rational::new(nums.into_iter().sum(), den)
}
