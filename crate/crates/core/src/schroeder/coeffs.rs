//! binary64 copies of the binomial coefficients `b_i` and partial sums `s_k`.

use num_traits::ToPrimitive;

use crate::pseries::{binomial_coeffs, tail_sums};
use crate::error::Result;

/// Indices below this are converted from exact rationals; beyond it `b_i`
/// continues by the f64 ratio recurrence and `s_k` is capped at `s_EXACT_TERMS`.
pub const EXACT_TERMS: usize = 512;

#[derive(Clone, Debug)]
pub struct BinomialTable {
    p: u32,
    b: Vec<f64>,
    /// `s[k]` for `k = 0 ..= EXACT_TERMS`, with `s[0] = 0`.
    s: Vec<f64>,
}

impl BinomialTable {
    pub fn new(p: u32) -> Result<Self> {
        let exact = binomial_coeffs(p, EXACT_TERMS - 1)?;
        let b = exact.coeffs().iter().map(to_f64).collect();
        let s = std::iter::once(0.0)
            .chain(tail_sums(&exact).iter().map(to_f64))
            .collect();
        Ok(Self { p, b, s })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `b_0 .. b_{count-1}`.
    pub fn coeffs(&self, count: usize) -> Vec<f64> {
        let mut out: Vec<f64> = self.b.iter().copied().take(count).collect();
        let inv_p = 1.0 / f64::from(self.p);
        while out.len() < count {
            let i = out.len();
            let prev = out[i - 1];
            out.push(prev * ((i as f64 - 1.0) - inv_p) / i as f64);
        }
        out
    }

    /// `s_k = b_0 + ... + b_{k-1}`, or the upper bound `s_EXACT_TERMS` past the table.
    pub fn tail_sum(&self, k: usize) -> f64 {
        self.s[k.min(EXACT_TERMS)]
    }
}

pub(crate) fn to_f64(q: &crate::pseries::Rational) -> f64 {
    q.to_f64().expect("rational converts to f64")
}
