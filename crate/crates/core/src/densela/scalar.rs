use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex64;
use num_traits::NumAssign;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Real,
    Complex,
}

impl ScalarKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScalarKind::Real => "real",
            ScalarKind::Complex => "complex",
        }
    }
}

/// binary64 real or complex entry type.
pub trait Scalar:
    Copy + Debug + PartialEq + NumAssign + Neg<Output = Self> + Send + Sync + 'static
{
    const KIND: ScalarKind;

    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
    fn modulus_sqr(self) -> f64;
    fn is_finite(self) -> bool;
    /// The value as a real number, if this scalar type is real.
    fn as_real(self) -> Option<f64>;
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real;

    fn from_real(x: f64) -> Self {
        x
    }

    fn modulus(self) -> f64 {
        self.abs()
    }

    fn modulus_sqr(self) -> f64 {
        self * self
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn as_real(self) -> Option<f64> {
        Some(self)
    }
}

impl Scalar for Complex64 {
    const KIND: ScalarKind = ScalarKind::Complex;

    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn modulus(self) -> f64 {
        self.norm()
    }

    fn modulus_sqr(self) -> f64 {
        self.norm_sqr()
    }

    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }

    fn as_real(self) -> Option<f64> {
        None
    }
}
