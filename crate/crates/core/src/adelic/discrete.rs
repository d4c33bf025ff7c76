//! Valuation strata of bounded Γ-elements at one place.
//!
//! W_k is the F_p-space of coefficient vectors (deg a_i ≤ d) with
//! v(Σ Φ_{a_i}(x_i)) ≥ k; it is the kernel of reduction mod u^k. The strata
//! shrink to the exact relations, and the last k with W_k larger than the
//! relations is the largest valuation of a nonzero element.

use super::{require_omega1, span_dim, LocalTable};
use crate::base::{Hermite, RPoly};
use crate::drinfeld::{estimate_torsion_level_m, Characteristic, DivisionOptions};
use crate::error::Result;
use crate::field::KElem;
use crate::module::{point_text, PhiModule, SpanSolver};
use crate::places::Place;

const MAX_CUTOFF: i64 = 64;

pub(crate) fn point_valuation(v: &Place, x: &[KElem]) -> Option<i64> {
    x.iter().filter_map(|c| v.valuation(c)).min()
}

pub(crate) struct Strata {
    pub span: SpanSolver,
    pub exact_dim: usize,
    pub n: usize,
    /// dims[k] = dim W_k, until it reaches exact_dim.
    pub dims: Vec<usize>,
    pub kernels: Vec<Vec<Vec<u32>>>,
}

pub(crate) fn strata(gamma: &PhiModule, v: &Place, deg_bound: usize) -> Strata {
    let p = gamma.modulus();
    let span = gamma.span_solver(deg_bound);
    let pts = span.table.flat_points();
    let n = pts.len();
    let exact_dim = span.kernel().len();
    let mut cutoff = 8;
    let mut table = LocalTable::new(&pts, v, cutoff, p);
    let mut dims = vec![n];
    let mut kernels = vec![(0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()];
    let mut k = 1;
    while dims.last().copied().unwrap() > exact_dim && k <= MAX_CUTOFF {
        if k > cutoff {
            cutoff = (cutoff * 2).min(MAX_CUTOFF);
            table = LocalTable::new(&pts, v, cutoff, p);
        }
        let w = table.kernel(k);
        dims.push(w.len());
        kernels.push(w);
        k += 1;
    }
    Strata { span, exact_dim, n, dims, kernels }
}

impl Strata {
    fn finished(&self) -> bool {
        *self.dims.last().unwrap() == self.exact_dim
    }

    /// A vector of W_k outside the exact relations.
    fn witness(&self, k: usize, p: u32) -> Option<Vec<u32>> {
        let base = self.span.kernel();
        let d0 = span_dim(base, self.n, p);
        self.kernels[k].iter().find(|w| {
            let mut all = base.to_vec();
            all.push((*w).clone());
            span_dim(&all, self.n, p) > d0
        }).cloned()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiscretenessCertificate {
    pub place: Place,
    pub weight: u32,
    pub deg_bound: usize,
    pub effective_bound: usize,
    /// Largest v(γ) over nonzero γ in the bounded set, so that
    /// min |γ|_v = p^(−N_v · max_nonzero_valuation).
    pub max_nonzero_valuation: Option<i64>,
    pub witness_coeffs: Option<Vec<RPoly>>,
    pub witness_point: Option<String>,
    /// dim_Fp W_k for k = 0, 1, ...
    pub strata_dims: Vec<usize>,
    /// Hermite basis of the R-module spanned by I_1 within the bound.
    pub i_generators: Vec<Vec<RPoly>>,
    pub principal_generator: Option<RPoly>,
    pub ideal_checked: bool,
    pub complete: bool,
}

pub fn discreteness_certificate(gamma: &PhiModule, v: &Place, deg_bound: usize) -> Result<DiscretenessCertificate> {
    require_omega1(gamma, v)?;
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    if r == 0 || gamma.gens().iter().flatten().all(|c| c.is_zero()) {
        return Ok(DiscretenessCertificate {
            place: v.clone(),
            weight: v.weight(),
            deg_bound,
            effective_bound: deg_bound,
            max_nonzero_valuation: None,
            witness_coeffs: None,
            witness_point: None,
            strata_dims: Vec::new(),
            i_generators: Vec::new(),
            principal_generator: None,
            ideal_checked: true,
            complete: true,
        });
    }
    let st = strata(gamma, v, deg_bound);
    let finished = st.finished();
    let top = st.dims.len().saturating_sub(2);
    let (max_val, witness_coeffs, witness_point) = match st.witness(top, p) {
        Some(w) if finished && st.dims.len() >= 2 => {
            let c = st.span.coeffs_of(&w);
            let x = gamma.combination(&c);
            assert_eq!(point_valuation(v, &x), Some(top as i64), "witness valuation mismatch");
            (Some(top as i64), Some(c), Some(point_text(&x)))
        }
        _ => (None, None, None),
    };
    // I_1 and its closure under R
    let i1: Vec<Vec<RPoly>> = st.kernels.get(1).map_or(Vec::new(), |w| w.iter().map(|e| st.span.coeffs_of(e)).collect());
    let h = Hermite::new(&i1, r, p);
    let t = RPoly::monomial(1, 1, p);
    let mut ideal_checked = true;
    for b in h.rows() {
        let y = gamma.combination(b);
        let vy = point_valuation(v, &y);
        ideal_checked &= vy.map_or(true, |k| k >= 1);
        let tb: Vec<RPoly> = b.iter().map(|c| &t * c).collect();
        ideal_checked &= point_valuation(v, &gamma.combination(&tb)).map_or(true, |k| k >= 1);
        if let Some(k) = vy {
            // Φ_t(y) = t·y + L(t, y) with v(L) > v(y)
            let l: Vec<KElem> = y.iter().map(|c| &gamma.phi().phi_t().eval(c) - &c.mul_ref(&KElem::t(p))).collect();
            ideal_checked &= point_valuation(v, &l).map_or(true, |m| m > k);
        }
    }
    let principal_generator = (r == 1 && h.rank() == 1).then(|| h.rows()[0][0].clone());
    Ok(DiscretenessCertificate {
        place: v.clone(),
        weight: v.weight(),
        deg_bound,
        effective_bound: st.span.table.effective_bound(),
        max_nonzero_valuation: max_val,
        witness_coeffs,
        witness_point,
        strata_dims: st.dims.clone(),
        i_generators: h.rows().to_vec(),
        principal_generator,
        ideal_checked,
        complete: finished && !st.span.table.is_truncated(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub valuation_at_least: usize,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NeighborhoodReport {
    pub place: Place,
    pub n: usize,
    pub deg_bound: usize,
    pub effective_bound: usize,
    /// Every bounded Γ-element with v ≥ epsilon lies in Φ_{t^n}(Γ).
    pub epsilon: usize,
    /// Below epsilon: elements outside Φ_{t^n}(Γ), one per threshold.
    pub violations_below: Vec<Violation>,
    pub torsion_level_m: Option<usize>,
    pub note: String,
}

pub fn tn_neighborhood(gamma: &PhiModule, v: &Place, n: usize, deg_bound: usize) -> Result<NeighborhoodReport> {
    require_omega1(gamma, v)?;
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    let tn = RPoly::monomial(1, n, p);
    let mut rows = gamma.presentation().relations.clone();
    for i in 0..r {
        let mut e = vec![RPoly::zero(p); r];
        e[i] = tn.clone();
        rows.push(e);
    }
    let target = Hermite::new(&rows, r, p);
    let st = strata(gamma, v, deg_bound);
    let mut epsilon = st.dims.len();
    let mut violations = Vec::new();
    for (k, w) in st.kernels.iter().enumerate() {
        let bad = w.iter().map(|e| st.span.coeffs_of(e)).find(|c| !target.contains(c));
        match bad {
            None => {
                epsilon = k;
                break;
            }
            Some(c) => violations.push(Violation { valuation_at_least: k, point: point_text(&gamma.combination(&c)) }),
        }
    }
    let torsion_level_m = match gamma.phi().characteristic() {
        Characteristic::Special => estimate_torsion_level_m(gamma.phi(), 3, &DivisionOptions::default()).ok().map(|l| l.m),
        Characteristic::Generic => None,
    };
    Ok(NeighborhoodReport {
        place: v.clone(),
        n,
        deg_bound,
        effective_bound: st.span.table.effective_bound(),
        epsilon,
        violations_below: violations,
        torsion_level_m,
        note: "m is the K-rational proxy from Φ[t^k](K), not the K^sep torsion level".into(),
    })
}
