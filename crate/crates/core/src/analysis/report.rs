use crate::error::{Error, Result};
use crate::operators::format_float;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Outcome of one numerical check of an estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    pub p: usize,
    pub n: usize,
    pub h: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convention: Option<String>,
    pub value: f64,
    pub bound: f64,
    /// `value / bound` for upper bounds, `bound / value` for lower bounds.
    pub ratio: f64,
    pub pass: bool,
}

impl BoundReport {
    /// Check of `value <= bound`.
    pub fn upper(
        quantity: &str,
        p: usize,
        n: usize,
        h: f64,
        value: f64,
        bound: f64,
        tol: f64,
    ) -> Self {
        Self::build(quantity, p, n, h, value, bound, value / bound, tol)
    }

    /// Check of `value >= bound`.
    pub fn lower(
        quantity: &str,
        p: usize,
        n: usize,
        h: f64,
        value: f64,
        bound: f64,
        tol: f64,
    ) -> Self {
        Self::build(quantity, p, n, h, value, bound, bound / value, tol)
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        quantity: &str,
        p: usize,
        n: usize,
        h: f64,
        value: f64,
        bound: f64,
        ratio: f64,
        tol: f64,
    ) -> Self {
        BoundReport {
            quantity: quantity.to_string(),
            p,
            n,
            h,
            convention: None,
            value,
            bound,
            ratio,
            pass: ratio.is_finite() && ratio <= 1.0 + tol,
        }
    }

    pub fn with_convention(mut self, convention: &str) -> Self {
        self.convention = Some(convention.to_string());
        self
    }
}

/// CSV with columns `quantity,p,n,h,value,bound,ratio,pass`.
pub fn reports_to_csv<W: Write>(reports: &[BoundReport], w: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["quantity", "p", "n", "h", "value", "bound", "ratio", "pass"])
        .map_err(io)?;
    for r in reports {
        out.write_record([
            r.quantity.clone(),
            r.p.to_string(),
            r.n.to_string(),
            format_float(r.h),
            format_float(r.value),
            format_float(r.bound),
            format_float(r.ratio),
            r.pass.to_string(),
        ])
        .map_err(io)?;
    }
    out.flush()
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

/// JSON array of reports.
pub fn reports_to_json<W: Write>(reports: &[BoundReport], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, reports).map_err(|e| Error::InvalidArgument(e.to_string()))
}
