//! Exact-rational checks on the coefficient series of the scalar iterates.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::certificate::{CertParams, CheckId, Certificate};
use crate::error::Result;
use crate::pseries::{
    a_coeffs_direct, a_coeffs_recursive, binomial_coeffs, format_rational, g_coeffs,
    pade10_first_iterate, plateau_onset, CoeffTable, Rational, SeriesIteration, SeriesTrace,
    TruncatedSeries,
};

fn at(k: Option<usize>, i: usize, value: &Rational) -> Value {
    let mut w = json!({ "i": i, "value": format_rational(value) });
    if let Some(k) = k {
        w["k"] = json!(k);
    }
    w
}

/// First `i >= from` with a positive coefficient.
fn first_positive(s: &TruncatedSeries, from: usize) -> Option<usize> {
    (from..=s.order()).find(|&i| s[i].is_positive())
}

fn first_negative(s: &TruncatedSeries, from: usize) -> Option<usize> {
    (from..=s.order()).find(|&i| s[i].is_negative())
}

fn plateau_end(m: usize, k: usize, order: usize) -> usize {
    // (m+1)^k - 1, clamped to the order before it can overflow.
    let mut span: usize = 1;
    for _ in 0..k {
        span = span.saturating_mul(m + 1);
        if span > order {
            return order;
        }
    }
    span - 1
}

/// Sign-pattern certificates for rows `0 ..= k_max` at truncation order `order`.
pub fn check_sign_pattern(p: u32, m: usize, k_max: usize, order: usize) -> Result<Vec<Certificate>> {
    let trace = SeriesIteration::new(p, m, order)?.trace(k_max)?;
    sign_pattern_certificates(&trace.table, &binomial_coeffs(p, order)?)
}

pub(crate) fn sign_pattern_certificates(
    table: &CoeffTable,
    b: &TruncatedSeries,
) -> Result<Vec<Certificate>> {
    let (p, m, order, k_max) = (table.p(), table.m(), table.order(), table.k_max());
    let params = CertParams::series(p, Some(m), Some(k_max), order);
    let rows = table.rows();
    let mut out = Vec::with_capacity(5);

    let witness = rows
        .iter()
        .enumerate()
        .find_map(|(k, row)| first_positive(row, 1).map(|i| at(Some(k), i, &row[i])));
    out.push(
        Certificate::new(CheckId::SignNonpositive, params.clone())
            .range(format!("k=0..={k_max}, i=1..={order}"))
            .outcome(witness),
    );

    let strict = Certificate::new(CheckId::SignStrictNegative, params.clone());
    out.push(if k_max < 2 || order < 1 {
        strict.skipped("needs k_max >= 2 and order >= 1")
    } else {
        let witness = (2..=k_max).find_map(|k| {
            (1..=order)
                .find(|&i| !rows[k][i].is_negative())
                .map(|i| at(Some(k), i, &rows[k][i]))
        });
        strict
            .range(format!("k=2..={k_max}, i=1..={order}"))
            .outcome(witness)
    });

    let monotone = Certificate::new(CheckId::SignMonotone, params.clone());
    out.push(if k_max < 1 {
        monotone.skipped("needs k_max >= 1")
    } else {
        let witness = (0..k_max).find_map(|k| {
            (0..=order).find(|&i| rows[k + 1][i] > rows[k][i]).map(|i| {
                json!({
                    "k": k,
                    "i": i,
                    "current": format_rational(&rows[k][i]),
                    "next": format_rational(&rows[k + 1][i]),
                })
            })
        });
        monotone
            .range(format!("k=0..={}, i=0..={order}", k_max - 1))
            .outcome(witness)
    });

    let witness = rows.iter().enumerate().find_map(|(k, row)| {
        (0..=plateau_end(m, k, order)).find(|&i| row[i] != b[i]).map(|i| {
            json!({
                "k": k,
                "i": i,
                "value": format_rational(&row[i]),
                "expected": format_rational(&b[i]),
            })
        })
    });
    let onset: Vec<Option<usize>> = (0..=order).map(|i| plateau_onset(table, b, i)).collect();
    let mut plateau = Certificate::new(CheckId::Plateau, params.clone())
        .range(format!("k=0..={k_max}, i=0..=min((m+1)^k - 1, {order})"))
        .outcome(witness);
    plateau.detail = Some(json!({ "onset_k": onset }));
    out.push(plateau);

    let tail = Certificate::new(CheckId::FirstIterateTail, params);
    out.push(if k_max < 1 {
        tail.skipped("needs k_max >= 1")
    } else if order <= m {
        tail.skipped("order <= m leaves no indices to check")
    } else {
        let row = &rows[1];
        let witness = (m + 1..=order)
            .find(|&i| !row[i].is_zero())
            .map(|i| at(Some(1), i, &row[i]));
        tail.range(format!("k=1, i={}..={order}", m + 1)).outcome(witness)
    });
    Ok(out)
}

/// Nonpositivity run on the first `[1/0]` Padé iterate `sum (-1/p)^i z^i`.
/// The certificate is marked as a control: it is expected to fail at `i = 2`.
pub fn check_pade10_control(p: u32, order: usize) -> Result<Certificate> {
    let s = pade10_first_iterate(p, order)?;
    let mut cert = Certificate::new(CheckId::Pade10Control, CertParams::series(p, None, None, order))
        .range(format!("i=1..={order}"))
        .outcome(first_positive(&s, 1).map(|i| at(None, i, &s[i])));
    cert.control = true;
    Ok(cert)
}

/// Nonnegativity of the series `R(x_k)` and `x_k R(x_k)` for `k = 0 ..= k_max`.
pub fn check_lemma_nonneg(p: u32, m: usize, k_max: usize, order: usize) -> Result<Vec<Certificate>> {
    let trace = SeriesIteration::new(p, m, order)?.trace(k_max)?;
    nonneg_certificates(&trace)
}

pub(crate) fn nonneg_certificates(trace: &SeriesTrace) -> Result<Vec<Certificate>> {
    let table = &trace.table;
    let (order, k_max) = (table.order(), table.k_max());
    let params = CertParams::series(table.p(), Some(table.m()), Some(k_max), order);
    let range = format!("k=0..={k_max}, i=0..={order}");

    let witness = trace
        .residuals
        .iter()
        .enumerate()
        .find_map(|(k, r)| first_negative(r, 0).map(|i| at(Some(k), i, &r[i])));
    let residual = Certificate::new(CheckId::ResidualNonnegative, params.clone())
        .range(range.clone())
        .outcome(witness);

    let mut witness = None;
    for k in 0..=k_max {
        let xr = trace.xr(k)?;
        if let Some(i) = first_negative(&xr, 0) {
            witness = Some(at(Some(k), i, &xr[i]));
            break;
        }
    }
    let xr = Certificate::new(CheckId::XrNonnegative, params)
        .range(range)
        .outcome(witness);
    Ok(vec![residual, xr])
}

/// Exact agreement of the recursive and direct computations of `a_0 ..= a_N`.
pub fn check_a_recursion(p: u32, m: usize, order: usize) -> Result<Certificate> {
    let direct = a_coeffs_direct(p, m, order)?;
    a_recursion_certificate(p, m, &direct)
}

fn a_recursion_certificate(p: u32, m: usize, direct: &TruncatedSeries) -> Result<Certificate> {
    let order = direct.order();
    let recursive = a_coeffs_recursive(p, m, order)?;
    let witness = (0..=order).find(|&i| direct[i] != recursive[i]).map(|i| {
        json!({
            "i": i,
            "direct": format_rational(&direct[i]),
            "recursive": format_rational(&recursive[i]),
        })
    });
    Ok(Certificate::new(CheckId::ARecursion, CertParams::series(p, Some(m), None, order))
        .range(format!("i=0..={order}"))
        .outcome(witness))
}

/// Sign certificates for `c_i` (coefficients of `1 - T_m^(-p) (1 - t)`) and
/// `d_i` (coefficients of `T_m` times that series), plus the recursion check.
pub fn check_coefficient_signs(p: u32, m: usize, order: usize) -> Result<Vec<Certificate>> {
    let a = a_coeffs_direct(p, m, order)?;
    let params = CertParams::series(p, Some(m), None, order);
    let c = TruncatedSeries::from_fn(order, |i| {
        if i == 0 {
            Rational::zero()
        } else {
            &a[i - 1] - &a[i]
        }
    });

    let witness = (0..=order.min(m))
        .find(|&i| !c[i].is_zero())
        .or_else(|| (m + 1..=order).find(|&i| !c[i].is_positive()))
        .map(|i| at(None, i, &c[i]));
    let f_sign = Certificate::new(CheckId::FSign, params.clone())
        .range(format!("i=0..={order}"))
        .outcome(witness);

    let g = g_coeffs(p, m, order)?;
    let g_cert = Certificate::new(CheckId::GPositive, params);
    let g_cert = if order <= m {
        g_cert.skipped("order <= m leaves no indices to check")
    } else {
        let witness = (m + 1..=order)
            .find(|&i| !g[i].is_positive())
            .map(|i| at(None, i, &g[i]));
        g_cert
            .range(format!("i={}..={order}", m + 1))
            .outcome(witness)
    };
    Ok(vec![a_recursion_certificate(p, m, &a)?, f_sign, g_cert])
}

/// `x_1 - x_2 >= -b_1 d_i` coefficientwise for `m < i <= N`.
pub fn check_iterate_gap(p: u32, m: usize, order: usize) -> Result<Certificate> {
    let table = SeriesIteration::new(p, m, order)?.trace(2)?.table;
    iterate_gap_certificate(&table)
}

pub(crate) fn iterate_gap_certificate(table: &CoeffTable) -> Result<Certificate> {
    let (p, m, order) = (table.p(), table.m(), table.order());
    let cert = Certificate::new(CheckId::IterateGap, CertParams::series(p, Some(m), None, order));
    if table.k_max() < 2 {
        return Ok(cert.skipped("needs rows x_1 and x_2"));
    }
    if order <= m {
        return Ok(cert.skipped("order <= m leaves no indices to check"));
    }
    let gap = table.row(1).sub(table.row(2))?;
    let d = g_coeffs(p, m, order)?;
    let weight = Rational::one() / Rational::from_integer(p.into());
    let witness = (m + 1..=order)
        .find(|&i| gap[i] < &d[i] * &weight)
        .map(|i| {
            json!({
                "i": i,
                "gap": format_rational(&gap[i]),
                "lower": format_rational(&(&d[i] * &weight)),
            })
        });
    Ok(cert
        .range(format!("i={}..={order}", m + 1))
        .outcome(witness))
}

/// Every series certificate for one `(p, m)` cell, sharing one trace.
pub(crate) fn series_cell(p: u32, m: usize, k_max: usize, order: usize) -> Result<Vec<Certificate>> {
    let trace = SeriesIteration::new(p, m, order)?.trace(k_max)?;
    let b = binomial_coeffs(p, order)?;
    let mut out = sign_pattern_certificates(&trace.table, &b)?;
    out.extend(nonneg_certificates(&trace)?);
    out.extend(check_coefficient_signs(p, m, order)?);
    out.push(if k_max >= 2 {
        iterate_gap_certificate(&trace.table)?
    } else {
        check_iterate_gap(p, m, order)?
    });
    Ok(out)
}
