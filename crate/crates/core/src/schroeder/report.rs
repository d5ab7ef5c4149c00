use serde::{Deserialize, Serialize};

use crate::densela::NormKind;
use crate::error::{Error, Result};

/// Parameters of one Schröder run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchroederConfig {
    pub p: u32,
    pub m: usize,
    /// Target for the residual norm `||I - A X^(-p)||`.
    pub tol: f64,
    pub max_iter: usize,
    pub norm: NormKind,
    /// Abort once the residual norm exceeds this multiple of the initial one.
    pub divergence_factor: f64,
    pub skip_precheck: bool,
}

impl SchroederConfig {
    pub fn new(p: u32, m: usize) -> Self {
        Self {
            p,
            m,
            tol: 1e-13,
            max_iter: 60,
            norm: NormKind::Inf,
            divergence_factor: 10.0,
            skip_precheck: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        crate::pseries::taylor_poly(self.p, self.m)?;
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be > 0, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        if !(self.divergence_factor > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "divergence_factor must be > 1, got {}",
                self.divergence_factor
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIter,
    Diverged,
    SingularIterate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub k: usize,
    pub residual_norm: f64,
    /// `||B||^((m+1)^k)`, present only when `||B|| < 1` in the run's norm.
    pub bound_plain: Option<f64>,
    /// `s_{(m+1)^k} ||B||^((m+1)^k)`.
    pub bound_sharp: Option<f64>,
    /// `||X_k - X_{k-1}||`; absent at `k = 0`.
    pub delta_norm: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precheck {
    #[serde(rename = "normB_one")]
    pub norm_b_one: f64,
    #[serde(rename = "normB_inf")]
    pub norm_b_inf: f64,
    pub gershgorin_ok: bool,
    pub rho_estimate: f64,
    pub rho_reliable: bool,
}

impl Precheck {
    /// Whether the spectrum of `A` is known to lie in `|z - 1| < 1`.
    pub fn disk_certified(&self) -> bool {
        self.gershgorin_ok || self.norm_b_one.min(self.norm_b_inf) < 1.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub p: u32,
    pub m: usize,
    pub norm: NormKind,
    pub steps: Vec<StepRecord>,
    pub termination: Termination,
    pub precheck: Option<Precheck>,
    pub warnings: Vec<String>,
}

impl IterationReport {
    /// Number of Schröder steps taken.
    pub fn iterations(&self) -> usize {
        self.steps.last().map_or(0, |s| s.k)
    }

    pub fn final_residual(&self) -> Option<f64> {
        self.steps.last().map(|s| s.residual_norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SchroederConfig::new(2, 1).validate().is_ok());
        assert!(SchroederConfig::new(1, 1).validate().is_err());
        assert!(SchroederConfig::new(2, 0).validate().is_err());
        let mut c = SchroederConfig::new(3, 2);
        c.tol = 0.0;
        assert!(c.validate().is_err());
        c.tol = 1e-10;
        c.divergence_factor = 1.0;
        assert!(c.validate().is_err());
        c.divergence_factor = 2.0;
        c.max_iter = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn report_field_names() {
        let step = StepRecord {
            k: 0,
            residual_norm: 0.25,
            bound_plain: Some(0.25),
            bound_sharp: Some(0.25),
            delta_norm: None,
        };
        let v = serde_json::to_value(&step).unwrap();
        for key in ["k", "residual_norm", "bound_plain", "bound_sharp", "delta_norm"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(
            serde_json::to_value(Termination::SingularIterate).unwrap(),
            "singular_iterate"
        );
        assert_eq!(serde_json::to_value(Termination::MaxIter).unwrap(), "max_iter");
    }
}
