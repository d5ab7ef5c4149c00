//! Principal matrix pth roots by the Schröder family of iterations
//! `X_{k+1} = X_k T_m(I - A X_k^(-p))`, `X_0 = I`, where `T_m` is the degree-`m`
//! Taylor polynomial of `(1 - t)^(1/p)`. `m = 1` is Newton's method and `m = 2`
//! is Chebyshev's.
//!
//! * [`pseries`]: exact-rational power series behind the coefficient sign
//!   patterns of the iterates.
//! * [`densela`]: dense real/complex matrices, LU, norms, M-/H-matrix tests
//!   and file formats.
//! * [`schroeder`]: the matrix iteration, a priori error bounds and the
//!   binomial-series reference root.
//! * [`verify`]: campaigns that check the sign patterns, error bounds and
//!   structure preservation and emit certificates.

pub mod densela;
pub mod error;
pub mod pseries;
pub mod schroeder;
pub mod verify;

pub use error::{Error, Result};
