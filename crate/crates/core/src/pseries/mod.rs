//! Exact-rational power series: the binomial coefficients of `(1 - t)^(1/p)`,
//! the derived families `a_i`, `c_i`, `d_i`, and the Schröder iterates as
//! series in `z`.

mod coeffs;
mod export;
mod iterate;
mod series;

use num_bigint::BigInt;

pub use coeffs::{
    a_coeffs_direct, a_coeffs_recursive, binomial_coeffs, f_coeffs, g_coeffs,
    pade10_first_iterate, rising_factorial, tail_sums, taylor_poly,
};
pub use export::{table_to_csv, table_to_json, RationalString};
pub use iterate::{
    plateau_onset, residual_series, schroeder_coeff_table, schroeder_step_series, xr_series,
    CoeffTable, SeriesIteration, SeriesTrace,
};
pub use series::TruncatedSeries;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `num/den` text form.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
