//! Γ/Φ_a(Γ) from the Smith form of [relations; a·I].

use super::{member_with, PhiModule};
use crate::base::snf::{smith_normal_form, RMatrix};
use crate::base::{Hermite, RPoly};
use crate::field::KElem;

/// Quotients with more than p^MAX_REPS_LOG cosets are not enumerated.
pub const MAX_REPS_LOG: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuotientStructure {
    pub a: RPoly,
    /// Non-unit invariant factors, monic.
    pub invariant_factors: Vec<RPoly>,
    /// The order is p^order_log.
    pub order_log: usize,
    /// Coefficient vectors c of the representatives Σ Φ_{c_i}(x_i).
    pub rep_coeffs: Vec<Vec<RPoly>>,
    #[serde(skip)]
    pub representatives: Vec<Vec<KElem>>,
    pub enumerated: bool,
    pub presentation_complete: bool,
}

impl QuotientStructure {
    pub fn order(&self, p: u32) -> u128 {
        (p as u128).pow(self.order_log as u32)
    }
}

fn stacked(gamma: &PhiModule, a: &RPoly) -> Vec<Vec<RPoly>> {
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    let mut rows = gamma.presentation().relations.clone();
    for i in 0..r {
        let mut v = vec![RPoly::zero(p); r];
        v[i] = a.clone();
        rows.push(v);
    }
    rows
}

impl PhiModule {
    pub fn quotient(&self, a: &RPoly) -> QuotientStructure {
        assert!(!a.is_zero(), "quotient by Φ_0");
        let p = self.modulus();
        let r = self.rank_bound();
        let rows = stacked(self, a);
        let complete = self.presentation().complete;
        if r == 0 {
            return QuotientStructure {
                a: a.clone(),
                invariant_factors: Vec::new(),
                order_log: 0,
                rep_coeffs: vec![Vec::new()],
                representatives: vec![self.zero_point()],
                enumerated: true,
                presentation_complete: complete,
            };
        }
        let smith = smith_normal_form(&RMatrix::from_rows(rows.clone(), r, p));
        let invariant_factors: Vec<RPoly> =
            smith.invariant_factors().into_iter().filter(|d| d.degree().unwrap_or(0) > 0).collect();
        let order_log: usize = invariant_factors.iter().map(|d| d.degree().unwrap()).sum();
        let h = Hermite::new(&rows, r, p);
        assert_eq!(h.quotient_order_log(), Some(order_log), "Smith and Hermite orders disagree");
        let enumerated = order_log <= MAX_REPS_LOG;
        let rep_coeffs = if enumerated { h.quotient_representatives().unwrap() } else { Vec::new() };
        let representatives = rep_coeffs.iter().map(|c| self.combination(c)).collect();
        QuotientStructure { a: a.clone(), invariant_factors, order_log, rep_coeffs, representatives, enumerated, presentation_complete: complete }
    }

    /// Whether every pair of representatives stays apart: no difference is
    /// found in Φ_a(Γ) at the presentation bound.
    pub fn reps_pairwise_distinct(&self, q: &QuotientStructure) -> bool {
        let img = self.image(&q.a);
        let s = img.span_solver(self.presentation().deg_bound);
        let reps = &q.representatives;
        for i in 0..reps.len() {
            for j in 0..i {
                let d: Vec<KElem> = reps[i].iter().zip(&reps[j]).map(|(x, y)| x - y).collect();
                if member_with(&s, &d).is_member() {
                    return false;
                }
            }
        }
        true
    }
}

/// Counts the classes of Γ-points Σ Φ_{c_i}(x_i), deg c_i ≤ deg, modulo
/// Φ_a(Γ), deciding each comparison by membership.
pub fn exhaustive_coset_count(gamma: &PhiModule, a: &RPoly, deg: usize, deg_bound: usize) -> usize {
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    let img = gamma.image(a);
    let s = img.span_solver(deg_bound);
    let polys = RPoly::enumerate_below(deg + 1, p);
    let mut vecs: Vec<Vec<RPoly>> = vec![Vec::new()];
    for _ in 0..r {
        vecs = vecs
            .into_iter()
            .flat_map(|v| {
                polys.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    let mut classes: Vec<Vec<KElem>> = Vec::new();
    for c in vecs {
        let x = gamma.combination(&c);
        let known = classes.iter().any(|rep| {
            let d: Vec<KElem> = x.iter().zip(rep).map(|(u, v)| u - v).collect();
            member_with(&s, &d).is_member()
        });
        if !known {
            classes.push(x);
        }
    }
    classes.len()
}

impl PhiModule {
    /// The torsion points of Γ: for relations in Smith form d_j·f_j, the
    /// combinations Σ c_j f_j with deg c_j < deg d_j over non-unit d_j.
    pub fn torsion_submodule(&self) -> Vec<Vec<KElem>> {
        let p = self.modulus();
        let r = self.rank_bound();
        let rels = &self.presentation().relations;
        if rels.is_empty() {
            return vec![self.zero_point()];
        }
        let smith = smith_normal_form(&RMatrix::from_rows(rels.clone(), r, p));
        let d = smith.invariant_factors();
        let mut vecs: Vec<Vec<RPoly>> = vec![vec![RPoly::zero(p); r]];
        let mut exponent = RPoly::one(p);
        for (j, dj) in d.iter().enumerate() {
            let deg = dj.degree().unwrap_or(0);
            if dj.is_zero() || deg == 0 {
                continue;
            }
            exponent = exponent.lcm(dj);
            let f = smith.v_inv.row(j);
            let choices = RPoly::enumerate_below(deg, p);
            let f = &f;
            vecs = vecs
                .into_iter()
                .flat_map(|v| {
                    choices.iter().map(move |c| v.iter().zip(f).map(|(x, y)| x + &(c * y)).collect::<Vec<RPoly>>())
                })
                .collect();
            assert!(vecs.len() <= (p as usize).pow(MAX_REPS_LOG as u32), "torsion submodule too large to list");
        }
        let act = self.phi().phi_action(&exponent);
        let mut pts: Vec<Vec<KElem>> = vecs.iter().map(|c| self.combination(c)).collect();
        for x in &pts {
            assert!(x.iter().all(|c| act.eval(c).is_zero()), "torsion point not killed by the exponent");
        }
        pts.sort_by(|a, b| {
            a.iter().zip(b).map(|(x, y)| x.cmp_canonical(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        });
        pts.dedup();
        pts
    }
}
