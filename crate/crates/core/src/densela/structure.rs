//! Z-, M- and H-matrix tests for the classes M1 and H1: nonsingular M-matrices
//! (respectively real nonsingular H-matrices) with diagonal entries in `(0, 1]`.

use serde::Serialize;

use super::matrix::{DenseMatrix, Matrix};
use super::spectral::{
    spectral_radius_estimate, SpectralEstimate, DEFAULT_POWER_ITERS, DEFAULT_POWER_SEED,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    #[serde(rename = "is_Z")]
    pub is_z: bool,
    #[serde(rename = "is_M1")]
    pub is_m1: bool,
    #[serde(rename = "is_H1")]
    pub is_h1: bool,
    pub diag_range: (f64, f64),
    /// Estimate of rho(I - A) for Z-matrices, of rho(I - M(A)) otherwise.
    pub rho_estimate: f64,
    pub method_note: String,
}

/// `M(A)`: diagonal `|a_ii|`, off-diagonal `-|a_ij|`.
pub fn comparison_matrix(a: &Matrix<f64>) -> Matrix<f64> {
    let mut out = a.map(|v| -v.abs());
    for i in 0..a.rows().min(a.cols()) {
        out[(i, i)] = a[(i, i)].abs();
    }
    out
}

pub fn comparison_matrix_dense(a: &DenseMatrix) -> Result<Matrix<f64>> {
    match a {
        DenseMatrix::Real(m) => Ok(comparison_matrix(m)),
        DenseMatrix::Complex(_) => Err(Error::ComplexUnsupported),
    }
}

pub fn is_z_matrix(a: &Matrix<f64>) -> bool {
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| i == j || a[(i, j)] <= 0.0))
}

fn diag_in_unit_interval(a: &Matrix<f64>) -> bool {
    a.diag().iter().all(|&d| d > 0.0 && d <= 1.0)
}

fn diag_range(diag: &[f64]) -> (f64, f64) {
    diag.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| (lo.min(d), hi.max(d)))
}

/// Classifies a real square matrix.
pub fn classify_real(a: &Matrix<f64>) -> StructureReport {
    let is_z = is_z_matrix(a);
    let diag_ok = diag_in_unit_interval(a);
    // For a Z-matrix with diagonal in (0,1], I - A = I - M(A) >= 0.
    let b = if is_z {
        a.identity_minus()
    } else {
        comparison_matrix(a).identity_minus()
    };
    let rho: SpectralEstimate = spectral_radius_estimate(&b, DEFAULT_POWER_ITERS, DEFAULT_POWER_SEED);
    let is_m1 = is_z && diag_ok && rho.perron && rho.value < 1.0;
    let is_h1 = diag_ok && rho.perron && rho.value < 1.0;
    let subject = if is_z { "rho(I - A)" } else { "rho(I - M(A))" };
    StructureReport {
        is_z,
        is_m1,
        is_h1,
        diag_range: diag_range(&a.diag()),
        rho_estimate: rho.value,
        method_note: format!("{subject}: {}", rho.note()),
    }
}

/// Classifies a matrix of either kind; complex input gets every flag false.
pub fn classify(a: &DenseMatrix) -> Result<StructureReport> {
    match a {
        DenseMatrix::Real(m) => {
            m.require_square("structure input")?;
            Ok(classify_real(m))
        }
        DenseMatrix::Complex(m) => {
            m.require_square("structure input")?;
            let rho = spectral_radius_estimate(&m.identity_minus(), DEFAULT_POWER_ITERS, DEFAULT_POWER_SEED);
            let re: Vec<f64> = m.diag().iter().map(|z| z.re).collect();
            Ok(StructureReport {
                is_z: false,
                is_m1: false,
                is_h1: false,
                diag_range: diag_range(&re),
                rho_estimate: rho.value,
                method_note: format!(
                    "complex input: structure classes apply to real matrices only; rho(I - A): {}",
                    rho.note()
                ),
            })
        }
    }
}

/// True iff `a_ij <= b_ij + tol` for every entry.
pub fn entrywise_leq(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.data().iter().zip(b.data()).all(|(x, y)| *x <= *y + tol))
}

pub fn entrywise_leq_dense(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> Result<bool> {
    entrywise_leq(a.as_real()?, b.as_real()?, tol)
}
