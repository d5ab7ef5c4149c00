//! Verification campaigns: exact sign checks on the iterate series, error
//! bounds and structure preservation on random matrices, and the
//! certificates that record each verdict.

mod campaign;
mod certificate;
mod ensemble;
mod matrix_checks;
mod series_checks;

pub use campaign::{run_campaign, CampaignOutcome, CampaignSpec};
pub use certificate::{sort_certificates, CertParams, CheckId, Certificate, Verdict};
pub use ensemble::{generate_ensemble, sample_seed, EnsembleKind};
pub use matrix_checks::{
    check_matrix_sample, check_matrix_theorems, BOUND_SLACK, MONOTONE_TOL, REFERENCE_TAIL,
};
pub use series_checks::{
    check_a_recursion, check_coefficient_signs, check_iterate_gap, check_lemma_nonneg,
    check_pade10_control, check_sign_pattern,
};
