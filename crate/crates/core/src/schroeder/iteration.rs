//! The matrix iteration `X_{k+1} = X_k T_m(R(X_k))`, `X_0 = I`, with
//! residual `R(X) = I - A X^(-p)`.

use super::coeffs::BinomialTable;
use super::report::{IterationReport, Precheck, SchroederConfig, StepRecord, Termination};
use crate::densela::{
    gershgorin_in_unit_disk, spectral_radius_estimate, Lu, Matrix, NormKind, Scalar,
    DEFAULT_POWER_ITERS, DEFAULT_POWER_SEED,
};
use crate::error::{Error, Result};

/// A configured Schröder solver; holds `b_0 ..= b_m` and the partial sums in binary64.
#[derive(Clone, Debug)]
pub struct Schroeder {
    config: SchroederConfig,
    taylor: Vec<f64>,
    table: BinomialTable,
}

/// Final iterate and the per-step record of a run. On early termination `x`
/// is the last iterate that was formed successfully.
#[derive(Clone, Debug)]
pub struct RunOutcome<T> {
    pub x: Matrix<T>,
    pub report: IterationReport,
}

impl Schroeder {
    pub fn new(config: SchroederConfig) -> Result<Self> {
        config.validate()?;
        let table = BinomialTable::new(config.p)?;
        Ok(Self {
            taylor: table.coeffs(config.m + 1),
            table,
            config,
        })
    }

    pub fn config(&self) -> &SchroederConfig {
        &self.config
    }

    pub fn binomial_table(&self) -> &BinomialTable {
        &self.table
    }

    /// `T_m(r) = sum_{i<=m} b_i r^i` by Horner's rule.
    pub fn eval_tm<T: Scalar>(&self, r: &Matrix<T>) -> Result<Matrix<T>> {
        r.require_square("residual")?;
        let n = r.rows();
        let (last, rest) = self.taylor.split_last().expect("m >= 1");
        let mut acc = Matrix::identity(n).scale(T::from_real(*last));
        for &b in rest.iter().rev() {
            acc = acc.matmul(r)?.add_identity(T::from_real(b));
        }
        Ok(acc)
    }

    /// `I - A X^(-p)`, realized as `p` solves against one LU factorization of `X`
    /// applied to `A`.
    pub fn residual<T: Scalar>(&self, a: &Matrix<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
        let lu = Lu::factor(x)?;
        let mut y = a.clone();
        for _ in 0..self.config.p {
            y = lu.solve(&y)?;
        }
        Ok(y.identity_minus())
    }

    pub fn step<T: Scalar>(&self, a: &Matrix<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
        let r = self.residual(a, x)?;
        x.matmul(&self.eval_tm(&r)?)
    }

    /// `(||B||^((m+1)^k), s_{(m+1)^k} ||B||^((m+1)^k))` for `0 <= ||B|| < 1`.
    pub fn bounds_at(&self, norm_b: f64, k: usize) -> Result<(f64, f64)> {
        bounds_from_table(&self.table, norm_b, self.config.m, k)
    }

    pub fn precheck<T: Scalar>(&self, a: &Matrix<T>) -> Precheck {
        let b = a.identity_minus();
        let rho = spectral_radius_estimate(&b, DEFAULT_POWER_ITERS, DEFAULT_POWER_SEED);
        Precheck {
            norm_b_one: b.norm(NormKind::One),
            norm_b_inf: b.norm(NormKind::Inf),
            gershgorin_ok: gershgorin_in_unit_disk(a),
            rho_estimate: rho.value,
            rho_reliable: rho.perron,
        }
    }

    pub fn run<T: Scalar>(&self, a: &Matrix<T>) -> Result<RunOutcome<T>> {
        self.run_with(a, |_, _| {})
    }

    /// Runs the iteration, handing every iterate `X_0, X_1, ...` to `observer`.
    pub fn run_with<T: Scalar>(
        &self,
        a: &Matrix<T>,
        mut observer: impl FnMut(usize, &Matrix<T>),
    ) -> Result<RunOutcome<T>> {
        a.require_square("A")?;
        let cfg = &self.config;
        let n = a.rows();
        let mut warnings = Vec::new();

        let precheck = (!cfg.skip_precheck).then(|| self.precheck(a));
        if let Some(pc) = &precheck {
            if !pc.disk_certified() {
                warnings.push(format!(
                    "could not certify eigenvalues in |z - 1| < 1 (Gershgorin fails, ||B||_1 = {:.3e}, ||B||_inf = {:.3e}, rho estimate {:.3e}); relying on the divergence guard",
                    pc.norm_b_one, pc.norm_b_inf, pc.rho_estimate
                ));
            }
        }
        let norm_b = a.identity_minus().norm(cfg.norm);
        let contractive = norm_b < 1.0;
        if !contractive {
            warnings.push(format!(
                "||I - A|| = {norm_b:.3e} >= 1 in the {:?} norm; a priori bounds omitted",
                cfg.norm
            ));
        }

        let mut x = Matrix::identity(n);
        let mut steps = Vec::new();
        let mut delta_norm = None;
        let mut initial_residual = None;
        let mut k = 0;
        observer(0, &x);
        let termination = loop {
            let r = match self.residual(a, &x) {
                Ok(r) => r,
                Err(Error::Singular { .. }) => break Termination::SingularIterate,
                Err(e) => return Err(e),
            };
            let residual_norm = r.norm(cfg.norm);
            let (bound_plain, bound_sharp) = if contractive {
                let (plain, sharp) = self.bounds_at(norm_b, k)?;
                (Some(plain), Some(sharp))
            } else {
                (None, None)
            };
            steps.push(StepRecord {
                k,
                residual_norm,
                bound_plain,
                bound_sharp,
                delta_norm,
            });
            if !residual_norm.is_finite() {
                break Termination::Diverged;
            }
            if residual_norm <= cfg.tol {
                break Termination::Converged;
            }
            let r0 = *initial_residual.get_or_insert(residual_norm);
            if residual_norm > cfg.divergence_factor * r0 {
                break Termination::Diverged;
            }
            if k == cfg.max_iter {
                break Termination::MaxIter;
            }
            let next = x.matmul(&self.eval_tm(&r)?)?;
            if !next.all_finite() {
                break Termination::Diverged;
            }
            delta_norm = Some(next.sub(&x)?.norm(cfg.norm));
            x = next;
            k += 1;
            observer(k, &x);
        };

        Ok(RunOutcome {
            x,
            report: IterationReport {
                p: cfg.p,
                m: cfg.m,
                norm: cfg.norm,
                steps,
                termination,
                precheck,
                warnings,
            },
        })
    }
}

pub(crate) fn bounds_from_table(
    table: &BinomialTable,
    norm_b: f64,
    m: usize,
    k: usize,
) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&norm_b) {
        return Err(Error::NotContractive(norm_b));
    }
    let exponent = ((m + 1) as f64).powi(k as i32);
    let plain = norm_b.powf(exponent);
    let index = if exponent >= usize::MAX as f64 {
        usize::MAX
    } else {
        exponent as usize
    };
    Ok((plain, table.tail_sum(index) * plain))
}

pub fn eval_tm<T: Scalar>(r: &Matrix<T>, p: u32, m: usize) -> Result<Matrix<T>> {
    Schroeder::new(SchroederConfig::new(p, m))?.eval_tm(r)
}

pub fn residual<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, p: u32) -> Result<Matrix<T>> {
    Schroeder::new(SchroederConfig::new(p, 1))?.residual(a, x)
}

pub fn step<T: Scalar>(a: &Matrix<T>, x: &Matrix<T>, p: u32, m: usize) -> Result<Matrix<T>> {
    Schroeder::new(SchroederConfig::new(p, m))?.step(a, x)
}

pub fn run<T: Scalar>(a: &Matrix<T>, config: &SchroederConfig) -> Result<RunOutcome<T>> {
    Schroeder::new(config.clone())?.run(a)
}
