//! Dense binary64 matrices (real or complex), LU with partial pivoting,
//! norms, spectral-radius estimates and M-/H-matrix classification.

mod io;
mod lu;
mod matrix;
mod scalar;
mod spectral;
mod structure;

pub use io::{
    from_json, from_matrix_market, parse_matrix, read_matrix, to_json, to_matrix_market,
    write_matrix,
};
pub use lu::{inverse, lu_solve, mat_int_pow, Lu, PIVOT_TOLERANCE};
pub use matrix::{DenseMatrix, Matrix, NormKind};
pub use scalar::{Scalar, ScalarKind};
pub use spectral::{
    gershgorin_in_unit_disk, spectral_radius_estimate, SpectralEstimate, DEFAULT_POWER_ITERS,
    DEFAULT_POWER_SEED,
};
pub use structure::{
    classify, classify_real, comparison_matrix, comparison_matrix_dense, entrywise_leq,
    entrywise_leq_dense, is_z_matrix, StructureReport,
};
