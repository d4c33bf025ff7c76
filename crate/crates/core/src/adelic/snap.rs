//! Exact product-formula bookkeeping for sequences approaching a point.
//!
//! Sums are additive: Σ N_v·v(x) over a set of places. A tracked product
//! tending to 0 is a tracked sum tending to +∞; an untracked product
//! bounded by C_0 = q^c0 is an untracked sum ≥ −c0.

use crate::error::Result;
use crate::field::KElem;
use crate::places::{check_product_formula, Place};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SnapStep {
    pub n: usize,
    pub difference: String,
    /// None when x_n = y0.
    pub tracked_sum: Option<i64>,
    pub untracked_sum: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "outcome")]
pub enum SnapOutcome {
    /// x_n = y0 for every n ≥ from_index, and no earlier term breaks the
    /// untracked bound.
    SnapCertificate { from_index: usize, c0: i64, steps: Vec<SnapStep> },
    /// A term x_n ≠ y0 whose tracked sum exceeds c0: its untracked sum is
    /// then below −c0, so the claimed bound fails.
    ContradictionTrace { n: usize, tracked_sum: i64, untracked_sum: i64, c0: i64, steps: Vec<SnapStep> },
    NoConvergence { c0: i64, steps: Vec<SnapStep> },
}

pub fn product_formula_snap(seq: &[KElem], y0: &KElem, tracked: &[Place], c0: i64) -> Result<SnapOutcome> {
    let mut steps = Vec::with_capacity(seq.len());
    for (n, x) in seq.iter().enumerate() {
        let d = x - y0;
        if d.is_zero() {
            steps.push(SnapStep { n, difference: "0".into(), tracked_sum: None, untracked_sum: None });
            continue;
        }
        let pf = check_product_formula(&d)?;
        let (mut ts, mut us) = (0i64, 0i64);
        for term in &pf.terms {
            let w = term.weight as i64 * term.valuation;
            if tracked.contains(&term.place) {
                ts += w;
            } else {
                us += w;
            }
        }
        assert_eq!(ts + us, pf.sum);
        assert_eq!(pf.sum, 0, "product formula fails for {}", d.to_text());
        steps.push(SnapStep { n, difference: d.to_text(), tracked_sum: Some(ts), untracked_sum: Some(us) });
    }
    if let Some(s) = steps.iter().find(|s| s.tracked_sum.is_some_and(|t| t > c0)) {
        return Ok(SnapOutcome::ContradictionTrace {
            n: s.n,
            tracked_sum: s.tracked_sum.unwrap(),
            untracked_sum: s.untracked_sum.unwrap(),
            c0,
            steps,
        });
    }
    let tail = steps.iter().rev().take_while(|s| s.tracked_sum.is_none()).count();
    if tail > 0 {
        Ok(SnapOutcome::SnapCertificate { from_index: steps.len() - tail, c0, steps })
    } else {
        Ok(SnapOutcome::NoConvergence { c0, steps })
    }
}
