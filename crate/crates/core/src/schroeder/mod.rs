//! The matrix Schröder iteration, its stopping logic and a priori bounds.

mod bounds;
mod coeffs;
mod iteration;
mod report;
mod scalar;

pub use bounds::{apriori_bounds, binomial_reference_root, AprioriBounds, ReferenceRoot, MAX_REFERENCE_TERMS};
pub(crate) use bounds::reference_root_with;
pub use coeffs::{BinomialTable, EXACT_TERMS};
pub use iteration::{eval_tm, residual, run, step, RunOutcome, Schroeder};
pub use report::{IterationReport, Precheck, SchroederConfig, StepRecord, Termination};
pub use scalar::{scalar_run, ScalarRun, ScalarStep};
