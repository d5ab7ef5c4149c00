use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Named checks. Declaration order is the merge order of a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `c_{k,i} <= 0` for `i >= 1`.
    SignNonpositive,
    /// `c_{k,i} < 0` for `k >= 2`, `i >= 1`.
    SignStrictNegative,
    /// `c_{k+1,i} <= c_{k,i}`.
    SignMonotone,
    /// `c_{k,i} = b_i` for `i <= (m+1)^k - 1`.
    Plateau,
    /// `c_{1,i} = 0` for `i > m`.
    FirstIterateTail,
    /// Nonpositivity run on the `[1/0]` Padé series; must fail.
    Pade10Control,
    /// Coefficients of `R(x_k)` are nonnegative.
    ResidualNonnegative,
    /// Coefficients of `x_k R(x_k)` are nonnegative.
    XrNonnegative,
    /// The linear recursion for `a_i` reproduces the direct expansion.
    ARecursion,
    /// `c_i = 0` for `i <= m` and `c_i > 0` beyond.
    FSign,
    /// `d_i > 0` for `i > m`.
    GPositive,
    /// Coefficients of `x_1 - x_2` are at least `-b_1 d_i` for `i > m`.
    IterateGap,
    /// `||X_k - X_*|| <= ||B||^((m+1)^k)` up to oracle tail and slack.
    BoundPlain,
    /// `||X_k - X_*|| <= s_{(m+1)^k} ||B||^((m+1)^k)` up to oracle tail and slack.
    BoundSharp,
    /// `X_{k+1} <= X_k` entrywise.
    Monotone,
    /// Every iterate stays in the class of the input.
    Membership,
    Converged,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::SignNonpositive => "sign_nonpositive",
            Self::SignStrictNegative => "sign_strict_negative",
            Self::SignMonotone => "sign_monotone",
            Self::Plateau => "plateau",
            Self::FirstIterateTail => "first_iterate_tail",
            Self::Pade10Control => "pade10_control",
            Self::ResidualNonnegative => "residual_nonnegative",
            Self::XrNonnegative => "xr_nonnegative",
            Self::ARecursion => "a_recursion",
            Self::FSign => "f_sign",
            Self::GPositive => "g_positive",
            Self::IterateGap => "iterate_gap",
            Self::BoundPlain => "bound_plain",
            Self::BoundSharp => "bound_sharp",
            Self::Monotone => "monotone",
            Self::Membership => "membership",
            Self::Converged => "converged",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Everything needed to rerun one check. Unused fields are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CertParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CertParams {
    pub fn series(p: u32, m: Option<usize>, k_max: Option<usize>, order: usize) -> Self {
        Self {
            p: Some(p),
            m,
            k_max,
            order: Some(order),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check_id: CheckId,
    pub params: CertParams,
    pub verdict: Verdict,
    /// Index range actually examined, e.g. `k=0..=4, i=1..=200`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_range: Option<String>,
    /// First offending location and values on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// A negative control is expected to fail.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub control: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Certificate {
    pub fn new(check_id: CheckId, params: CertParams) -> Self {
        Self {
            check_id,
            params,
            verdict: Verdict::Pass,
            verified_range: None,
            witness: None,
            control: false,
            note: None,
            detail: None,
        }
    }

    pub(crate) fn range(mut self, range: impl Into<String>) -> Self {
        self.verified_range = Some(range.into());
        self
    }

    pub(crate) fn outcome(mut self, witness: Option<Value>) -> Self {
        self.verdict = if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        self.witness = witness;
        self
    }

    pub(crate) fn skipped(mut self, note: impl Into<String>) -> Self {
        self.verdict = Verdict::Skipped;
        self.note = Some(note.into());
        self
    }

    /// Whether the verdict is the expected one: fail for controls, not fail otherwise.
    pub fn as_expected(&self) -> bool {
        if self.control {
            self.verdict == Verdict::Fail
        } else {
            self.verdict != Verdict::Fail
        }
    }
}

/// Sorts by `(check_id, params)`.
pub fn sort_certificates(certs: &mut [Certificate]) {
    certs.sort_by(|a, b| (a.check_id, &a.params).cmp(&(b.check_id, &b.params)));
}
