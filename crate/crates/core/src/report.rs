//! One verification datum per identity and grid point.

use crate::complex::CVal;
use serde::Serialize;
use std::collections::BTreeMap;

/// Outcome of a single check. `pass` is None for budget refusals (skips).
/// Field order is alphabetical so the serialized form has sorted keys.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub abs_err: f64,
    pub elapsed_ms: u64,
    pub identity: String,
    pub lhs_im: f64,
    pub lhs_re: f64,
    pub params: BTreeMap<String, String>,
    pub pass: Option<bool>,
    pub rhs_im: f64,
    pub rhs_re: f64,
    pub suite: String,
    pub terms: u64,
}

impl CheckRecord {
    pub fn new(
        suite: &str,
        identity: &str,
        params: BTreeMap<String, String>,
        lhs: CVal,
        rhs: CVal,
        terms: u64,
        tol: f64,
    ) -> CheckRecord {
        let abs_err = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        // values assembled from exact sums with table prefactors up to ~q^8
        // carry float dust of that size when the underlying sum is zero; the
        // floor keeps such zeros from failing while staying well below any
        // genuinely nonzero table value on the grids
        let floor = if tol > 0.0 { 2e-8 } else { 0.0 };
        CheckRecord {
            suite: suite.to_string(),
            identity: identity.to_string(),
            params,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            abs_err,
            terms,
            pass: Some(abs_err <= (tol * scale).max(floor)),
            elapsed_ms: 0,
        }
    }

    pub fn skipped(
        suite: &str,
        identity: &str,
        params: BTreeMap<String, String>,
        terms: u64,
    ) -> CheckRecord {
        CheckRecord {
            suite: suite.to_string(),
            identity: identity.to_string(),
            params,
            lhs_re: 0.0,
            lhs_im: 0.0,
            rhs_re: 0.0,
            rhs_im: 0.0,
            abs_err: 0.0,
            terms,
            pass: None,
            elapsed_ms: 0,
        }
    }

    /// Stable ordering key for deterministic reports.
    pub fn sort_key(&self) -> (String, String, String) {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        (self.suite.clone(), self.identity.clone(), params)
    }
}

/// Oracle-vs-closed-form tolerance: 1e-6 + 1e-12·terms.
pub fn oracle_tol(terms: u64) -> f64 {
    1e-6 + 1e-12 * terms as f64
}

/// Closed-form-vs-closed-form tolerance.
pub const CLOSED_TOL: f64 = 1e-9;

/// |lhs - rhs| ≤ tol·max(1, |lhs|, |rhs|): the stated tolerances are read on
/// the scale of the values, since the tables reach sizes ~q^{2|val|} where a
/// bare f64 cannot hold absolute 1e-9.
pub fn close_scaled(lhs: CVal, rhs: CVal, tol: f64) -> bool {
    (lhs - rhs).norm() <= tol * lhs.norm().max(rhs.norm()).max(1.0)
}
