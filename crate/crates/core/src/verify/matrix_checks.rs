//! Per-sample checks of the matrix iteration on generated ensembles.

use rayon::prelude::*;
use serde_json::json;

use super::campaign::CampaignSpec;
use super::certificate::{CertParams, CheckId, Certificate, sort_certificates};
use super::ensemble::{generate_ensemble, sample_seed, EnsembleKind};
use crate::densela::{classify_real, entrywise_leq, Matrix, NormKind};
use crate::error::{Error, Result};
use crate::schroeder::{reference_root_with, ReferenceRoot, Schroeder, SchroederConfig, Termination};

/// Absolute slack added to the error bounds on top of the oracle tail.
pub const BOUND_SLACK: f64 = 1e-12;
/// Entrywise slack for `X_{k+1} <= X_k` after scaling both to unit max entry.
pub const MONOTONE_TOL: f64 = 1e-12;
/// Target for the tail bound of the binomial-series reference root.
pub const REFERENCE_TAIL: f64 = 1e-14;

const MATRIX_CHECKS: [CheckId; 5] = [
    CheckId::BoundPlain,
    CheckId::BoundSharp,
    CheckId::Monotone,
    CheckId::Membership,
    CheckId::Converged,
];

/// Certificates for one matrix under one solver configuration.
///
/// `class` selects the structure checks: monotonicity and `M1` membership for
/// [`EnsembleKind::M1`], `H1` membership for [`EnsembleKind::H1`], none otherwise.
pub fn check_matrix_sample(
    a: &Matrix<f64>,
    class: EnsembleKind,
    solver: &Schroeder,
    reference: Option<&ReferenceRoot<f64>>,
    params: CertParams,
) -> Result<Vec<Certificate>> {
    let cfg = solver.config();
    let mut iterates = Vec::new();
    let outcome = solver.run_with(a, |_, x| iterates.push(x.clone()))?;
    let report = &outcome.report;
    let cert = |id| Certificate::new(id, params.clone());
    let mut out = Vec::with_capacity(MATRIX_CHECKS.len());

    for (id, sharp) in [(CheckId::BoundPlain, false), (CheckId::BoundSharp, true)] {
        let Some(reference) = reference else {
            out.push(cert(id).skipped("||B||_inf >= 1: no reference root or bound"));
            continue;
        };
        let mut witness = None;
        let mut last_k = 0;
        for step in &report.steps {
            let bound = if sharp { step.bound_sharp } else { step.bound_plain };
            let Some(bound) = bound else { continue };
            last_k = step.k;
            let error = iterates[step.k].sub(&reference.root)?.norm(NormKind::Inf);
            if !(error <= bound + reference.tail_bound + BOUND_SLACK) {
                witness = Some(json!({
                    "k": step.k,
                    "error": error,
                    "bound": bound,
                    "reference_tail": reference.tail_bound,
                }));
                break;
            }
        }
        out.push(cert(id).range(format!("k=0..={last_k}")).outcome(witness));
    }

    let last = iterates.len() - 1;
    let monotone = cert(CheckId::Monotone);
    out.push(if class != EnsembleKind::M1 {
        monotone.skipped("monotonicity applies to M1 inputs")
    } else if last == 0 {
        monotone.skipped("no step taken").range("k=0")
    } else {
        let mut witness = None;
        for k in 0..last {
            let (cur, next) = (&iterates[k], &iterates[k + 1]);
            let scale = cur.max_abs().max(next.max_abs());
            let scale = if scale > 0.0 { scale } else { 1.0 };
            let (cs, ns) = (cur.scale(1.0 / scale), next.scale(1.0 / scale));
            if !entrywise_leq(&ns, &cs, MONOTONE_TOL)? {
                let (i, j, excess) = worst_excess(&ns, &cs);
                witness = Some(json!({ "k": k, "row": i, "col": j, "excess": excess }));
                break;
            }
        }
        monotone
            .range(format!("k=0..={}", last - 1))
            .outcome(witness)
    });

    let membership = cert(CheckId::Membership);
    out.push(match class {
        EnsembleKind::DiskSpectrum => membership.skipped("no structure class for this ensemble"),
        EnsembleKind::M1 | EnsembleKind::H1 => {
            let witness = iterates.iter().enumerate().find_map(|(k, x)| {
                let r = classify_real(x);
                let ok = if class == EnsembleKind::M1 { r.is_m1 } else { r.is_h1 };
                (!ok).then(|| {
                    json!({
                        "k": k,
                        "class": class.as_str(),
                        "is_Z": r.is_z,
                        "diag_range": [r.diag_range.0, r.diag_range.1],
                        "rho_estimate": r.rho_estimate,
                    })
                })
            });
            membership.range(format!("k=0..={last}")).outcome(witness)
        }
    });

    let final_residual = report.final_residual().unwrap_or(f64::NAN);
    let converged = report.termination == Termination::Converged && final_residual <= cfg.tol;
    out.push(
        cert(CheckId::Converged)
            .range(format!("k<={}", cfg.max_iter))
            .outcome((!converged).then(|| {
                json!({
                    "termination": report.termination,
                    "iterations": report.iterations(),
                    "final_residual": final_residual,
                })
            })),
    );
    Ok(out)
}

fn worst_excess(next: &Matrix<f64>, cur: &Matrix<f64>) -> (usize, usize, f64) {
    let mut worst = (0, 0, f64::NEG_INFINITY);
    for i in 0..cur.rows() {
        for j in 0..cur.cols() {
            let e = next[(i, j)] - cur[(i, j)];
            if e > worst.2 {
                worst = (i, j, e);
            }
        }
    }
    worst
}

/// Per-sample certificates over `matrix_sizes x samples_per_cell x p_list x m_list`.
pub fn check_matrix_theorems(spec: &CampaignSpec) -> Result<Vec<Certificate>> {
    spec.validate()?;
    let solvers: Vec<Schroeder> = spec
        .p_list
        .iter()
        .flat_map(|&p| spec.m_list.iter().map(move |&m| (p, m)))
        .map(|(p, m)| {
            let mut cfg = SchroederConfig::new(p, m);
            cfg.tol = spec.tol;
            cfg.max_iter = spec.max_iter;
            cfg.skip_precheck = true;
            Schroeder::new(cfg)
        })
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = spec
        .matrix_sizes
        .iter()
        .flat_map(|&n| (0..spec.samples_per_cell).map(move |s| (n, s)))
        .collect();

    let per_job: Vec<Vec<Certificate>> = jobs
        .par_iter()
        .map(|&(n, sample)| sample_certificates(spec, &solvers, n, sample))
        .collect::<Result<_>>()?;
    let mut certs: Vec<Certificate> = per_job.into_iter().flatten().collect();
    sort_certificates(&mut certs);
    Ok(certs)
}

fn sample_certificates(
    spec: &CampaignSpec,
    solvers: &[Schroeder],
    n: usize,
    sample: usize,
) -> Result<Vec<Certificate>> {
    let seed = sample_seed(spec.seed, n, sample);
    let params = |p: u32, m: usize| CertParams {
        p: Some(p),
        m: Some(m),
        ensemble: Some(spec.ensemble.as_str().to_owned()),
        n: Some(n),
        sample: Some(sample),
        seed: Some(seed),
        ..CertParams::default()
    };
    let mut out = Vec::new();
    let a = match generate_ensemble(spec.ensemble, n, spec.rho_target, seed)
        .and_then(|a| a.as_real().cloned())
    {
        Ok(a) => a,
        Err(e) => {
            for s in solvers {
                for id in MATRIX_CHECKS {
                    out.push(
                        Certificate::new(id, params(s.config().p, s.config().m))
                            .skipped(format!("generator failure: {e}")),
                    );
                }
            }
            return Ok(out);
        }
    };

    let mut reference: Option<(u32, Option<ReferenceRoot<f64>>)> = None;
    for solver in solvers {
        let (p, m) = (solver.config().p, solver.config().m);
        if reference.as_ref().map(|r| r.0) != Some(p) {
            let root = match reference_root_with(solver.binomial_table(), &a, 1, REFERENCE_TAIL, NormKind::Inf) {
                Ok(r) => Some(r),
                Err(Error::NotContractive(_)) => None,
                Err(e) => return Err(e),
            };
            reference = Some((p, root));
        }
        let root = reference.as_ref().and_then(|r| r.1.as_ref());
        out.extend(check_matrix_sample(&a, spec.ensemble, solver, root, params(p, m))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Verdict;

    fn solver(p: u32, m: usize) -> Schroeder {
        let mut cfg = SchroederConfig::new(p, m);
        cfg.skip_precheck = true;
        Schroeder::new(cfg).unwrap()
    }

    #[test]
    fn identity_passes_degenerately() {
        let a = Matrix::identity(4);
        let s = solver(3, 2);
        let reference = reference_root_with(s.binomial_table(), &a, 1, REFERENCE_TAIL, NormKind::Inf).unwrap();
        let certs = check_matrix_sample(&a, EnsembleKind::M1, &s, Some(&reference), CertParams::default()).unwrap();
        assert_eq!(certs.len(), 5);
        for c in &certs {
            assert_ne!(c.verdict, Verdict::Fail, "{c:?}");
        }
    }

    #[test]
    fn m1_sample_monotone() {
        let a = generate_ensemble(EnsembleKind::M1, 30, 0.9, 4).unwrap();
        let a = a.as_real().unwrap();
        let s = solver(3, 2);
        let reference = reference_root_with(s.binomial_table(), a, 1, REFERENCE_TAIL, NormKind::Inf).unwrap();
        let certs = check_matrix_sample(a, EnsembleKind::M1, &s, Some(&reference), CertParams::default()).unwrap();
        for c in &certs {
            assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
        }
    }

    #[test]
    fn wrong_reference_fails_bound() {
        let a = Matrix::from_diag(&[0.75]);
        let s = solver(2, 1);
        let bogus = ReferenceRoot {
            root: Matrix::from_diag(&[0.5]),
            tail_bound: 0.0,
            terms: 1,
        };
        let certs = check_matrix_sample(&a, EnsembleKind::M1, &s, Some(&bogus), CertParams::default()).unwrap();
        assert_eq!(certs[0].check_id, CheckId::BoundPlain);
        assert_eq!(certs[0].verdict, Verdict::Fail);
        assert!(certs[0].witness.is_some());
    }
}
