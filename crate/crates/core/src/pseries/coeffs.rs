//! Coefficient families of the binomial series of `(1 - t)^(1/p)` and the
//! series derived from its truncations `T_m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, TruncatedSeries};
use crate::error::{Error, Result};

pub(crate) fn check_p(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("p must be >= 2, got {p}")));
    }
    Ok(())
}

pub(crate) fn check_pm(p: u32, m: usize) -> Result<()> {
    check_p(p)?;
    if m < 1 {
        return Err(Error::InvalidParameter(format!("m must be >= 1, got {m}")));
    }
    Ok(())
}

/// Rising factorial `x (x+1) ... (x+i-1)`, equal to 1 for `i = 0`.
pub fn rising_factorial(x: &Rational, i: usize) -> Rational {
    (0..i).fold(Rational::one(), |acc, j| acc * (x + Rational::from_integer(BigInt::from(j))))
}

/// Coefficients `b_0 ..= b_order` of `(1 - t)^(1/p)`.
///
/// Built with the ratio `b_i / b_{i-1} = (i - 1 - 1/p) / i`.
pub fn binomial_coeffs(p: u32, order: usize) -> Result<TruncatedSeries> {
    check_p(p)?;
    let inv_p = Rational::new(BigInt::one(), BigInt::from(p));
    let mut b = Vec::with_capacity(order + 1);
    b.push(Rational::one());
    for i in 1..=order {
        let ratio = (Rational::from_integer(BigInt::from(i - 1)) - &inv_p)
            / Rational::from_integer(BigInt::from(i));
        let next = &b[i - 1] * ratio;
        b.push(next);
    }
    TruncatedSeries::new(b)
}

/// Partial sums `s_1 ..= s_{N+1}` with `s_k = b_0 + ... + b_{k-1}`.
pub fn tail_sums(b: &TruncatedSeries) -> Vec<Rational> {
    b.coeffs()
        .iter()
        .scan(Rational::zero(), |acc, bi| {
            *acc += bi;
            Some(acc.clone())
        })
        .collect()
}

/// The Taylor polynomial `T_m` as its coefficient list `b_0 ..= b_m`.
pub fn taylor_poly(p: u32, m: usize) -> Result<Vec<Rational>> {
    check_pm(p, m)?;
    Ok(binomial_coeffs(p, m)?.into_coeffs())
}

/// `a_0 ..= a_N` of `T_m(t)^(-p)`, by direct series inversion and powering.
pub fn a_coeffs_direct(p: u32, m: usize, order: usize) -> Result<TruncatedSeries> {
    let tm = TruncatedSeries::from_poly(&taylor_poly(p, m)?, order);
    tm.powi(-i64::from(p))
}

/// `a_0 ..= a_N` from the order-`m` linear recursion
/// `a_{k+1} = 1/(k+1) * sum_{s<m} (k - s + p(s+1)) (-b_{s+1}) a_{k-s}`,
/// seeded with `a_0 = ... = a_{m-1} = 1`.
pub fn a_coeffs_recursive(p: u32, m: usize, order: usize) -> Result<TruncatedSeries> {
    let b = taylor_poly(p, m)?;
    let p_big = BigInt::from(p);
    let mut a: Vec<Rational> = vec![Rational::one(); m.min(order + 1)];
    for k in (m - 1)..order {
        let mut acc = Rational::zero();
        for s in 0..m {
            let weight = BigInt::from(k - s) + &p_big * BigInt::from(s + 1);
            acc -= Rational::from_integer(weight) * &b[s + 1] * &a[k - s];
        }
        a.push(acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    TruncatedSeries::new(a)
}

/// Coefficients of `f(t) = 1 - T_m(t)^(-p) (1 - t)`: `c_0 = 0`, `c_i = a_{i-1} - a_i`.
pub fn f_coeffs(p: u32, m: usize, order: usize) -> Result<TruncatedSeries> {
    let a = a_coeffs_direct(p, m, order)?;
    Ok(TruncatedSeries::from_fn(order, |i| {
        if i == 0 {
            Rational::zero()
        } else {
            &a[i - 1] - &a[i]
        }
    }))
}

/// Coefficients of `g(t) = T_m(t) f(t)`: `d_i = sum_{j<=min(m,i)} b_j c_{i-j}`.
pub fn g_coeffs(p: u32, m: usize, order: usize) -> Result<TruncatedSeries> {
    let b = taylor_poly(p, m)?;
    let c = f_coeffs(p, m, order)?;
    Ok(TruncatedSeries::from_fn(order, |i| {
        (0..=m.min(i)).fold(Rational::zero(), |acc, j| acc + &b[j] * &c[i - j])
    }))
}

/// First iterate of the `[1/0]` dual Padé iteration, `1 / (1 + z/p)`.
///
/// Its coefficients alternate in sign, so it is the negative control for
/// every nonpositivity check.
pub fn pade10_first_iterate(p: u32, order: usize) -> Result<TruncatedSeries> {
    check_p(p)?;
    let ratio = Rational::new(BigInt::from(-1), BigInt::from(p));
    let mut term = Rational::one();
    Ok(TruncatedSeries::from_fn(order, |_| {
        let out = term.clone();
        term *= &ratio;
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseries::rat;
    use num_traits::Signed;

    fn rats(c: &[(i64, i64)]) -> Vec<Rational> {
        c.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn rising_factorial_examples() {
        assert_eq!(rising_factorial(&rat(-1, 2), 0), rat(1, 1));
        assert_eq!(rising_factorial(&rat(2, 1), 3), rat(24, 1));
        assert_eq!(rising_factorial(&rat(-1, 3), 2), rat(-2, 9));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_coeffs(2, 0).unwrap().coeffs(), &rats(&[(1, 1)])[..]);
        assert_eq!(
            binomial_coeffs(3, 1).unwrap().coeffs(),
            &rats(&[(1, 1), (-1, 3)])[..]
        );
        assert_eq!(
            binomial_coeffs(2, 4).unwrap().coeffs(),
            &rats(&[(1, 1), (-1, 2), (-1, 8), (-1, 16), (-5, 128)])[..]
        );
        assert!(binomial_coeffs(1, 3).is_err());
    }

    #[test]
    fn binomial_matches_rising_factorial_definition() {
        for p in 2..=7u32 {
            let b = binomial_coeffs(p, 40).unwrap();
            let x = Rational::new(BigInt::from(-1), BigInt::from(p));
            let mut fact = Rational::one();
            for i in 0..=40usize {
                if i > 0 {
                    fact *= Rational::from_integer(BigInt::from(i));
                }
                assert_eq!(b[i], rising_factorial(&x, i) / &fact, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn tail_sum_examples() {
        let s = tail_sums(&binomial_coeffs(2, 5).unwrap());
        assert_eq!(s[0], rat(1, 1));
        assert_eq!(s[1], rat(1, 2));
        assert_eq!(s[2], rat(3, 8));
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn a_coeff_examples() {
        assert_eq!(
            a_coeffs_direct(2, 1, 3).unwrap().coeffs(),
            &rats(&[(1, 1), (1, 1), (3, 4), (1, 2)])[..]
        );
        assert_eq!(
            a_coeffs_direct(3, 2, 2).unwrap().coeffs(),
            &rats(&[(1, 1), (1, 1), (1, 1)])[..]
        );
        assert_eq!(a_coeffs_direct(5, 3, 0).unwrap().coeffs(), &rats(&[(1, 1)])[..]);

        assert_eq!(a_coeffs_recursive(2, 1, 2).unwrap()[2], rat(3, 4));
        assert_eq!(a_coeffs_recursive(2, 1, 1).unwrap()[1], rat(1, 1));
        assert_eq!(a_coeffs_recursive(3, 2, 2).unwrap()[2], rat(1, 1));
    }

    #[test]
    fn a_recursion_short_orders() {
        // order below m-1 keeps only the seed
        let a = a_coeffs_recursive(3, 4, 1).unwrap();
        assert_eq!(a.order(), 1);
        assert_eq!(a, a_coeffs_direct(3, 4, 1).unwrap());
        for order in 0..6 {
            assert_eq!(
                a_coeffs_recursive(5, 3, order).unwrap(),
                a_coeffs_direct(5, 3, order).unwrap()
            );
        }
    }

    #[test]
    fn f_and_g_examples() {
        let c = f_coeffs(2, 1, 2).unwrap();
        assert_eq!(c[0], rat(0, 1));
        assert_eq!(c[1], rat(0, 1));
        assert_eq!(c[2], rat(1, 4));

        let d = g_coeffs(2, 1, 3).unwrap();
        assert_eq!(d[1], rat(0, 1));
        assert_eq!(d[2], rat(1, 4));
        assert_eq!(d[3], rat(1, 8));

        for (p, m) in [(3, 2), (5, 4), (7, 3)] {
            let c = f_coeffs(p, m, 30).unwrap();
            let d = g_coeffs(p, m, 30).unwrap();
            assert!(c[0].is_zero());
            assert!(d[m].is_zero());
            assert!((m + 1..=30).all(|i| c[i].is_positive() && d[i].is_positive()));
        }
    }

    #[test]
    fn pade10_examples() {
        assert_eq!(
            pade10_first_iterate(2, 2).unwrap().coeffs(),
            &rats(&[(1, 1), (-1, 2), (1, 4)])[..]
        );
        assert_eq!(
            pade10_first_iterate(3, 3).unwrap().coeffs(),
            &rats(&[(1, 1), (-1, 3), (1, 9), (-1, 27)])[..]
        );
    }
}
