//! Finitely generated Φ(R)-submodules of K^g.

mod decompose;
mod hull;
mod iterates;
mod quotient;
mod span;

use std::sync::OnceLock;

pub use decompose::{decompose, reduce_module, Decomposition};
pub use hull::{divisible_hull, is_full, FullnessVerdict, HullBounds, HullReport};
pub use iterates::{height, HeightVar, IterateTable, ITERATE_SIZE_CAP};
pub use quotient::{exhaustive_coset_count, QuotientStructure};
pub use span::SpanSolver;

use crate::base::{Hermite, RPoly};
use crate::drinfeld::DrinfeldModule;
use crate::field::KElem;

/// Default degree bound for relations and membership.
pub const DEFAULT_DEG_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Presentation {
    pub deg_bound: usize,
    /// Hermite basis of the relations found.
    pub relations: Vec<Vec<RPoly>>,
    /// True when the relation search provably covers every relation with
    /// coefficients of degree ≤ deg_bound.
    pub complete: bool,
    pub effective_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum Membership {
    Certificate { coeffs: Vec<RPoly> },
    NotFoundUpTo { deg_bound: usize, complete: bool },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Certificate { .. })
    }
}

#[derive(Debug)]
pub struct PhiModule {
    phi: DrinfeldModule,
    g: usize,
    gens: Vec<Vec<KElem>>,
    presentation: OnceLock<Presentation>,
}

impl Clone for PhiModule {
    fn clone(&self) -> Self {
        let m = PhiModule::new(self.phi.clone(), self.g, self.gens.clone());
        if let Some(pr) = self.presentation.get() {
            let _ = m.presentation.set(pr.clone());
        }
        m
    }
}

impl PhiModule {
    pub fn new(phi: DrinfeldModule, g: usize, gens: Vec<Vec<KElem>>) -> Self {
        assert!(g >= 1, "ambient power must be positive");
        for x in &gens {
            assert_eq!(x.len(), g, "generator of the wrong length");
        }
        PhiModule { phi, g, gens, presentation: OnceLock::new() }
    }

    /// Cyclic submodule of K generated by the given elements.
    pub fn scalar(phi: DrinfeldModule, gens: &[KElem]) -> Self {
        Self::new(phi, 1, gens.iter().map(|x| vec![x.clone()]).collect())
    }

    pub fn phi(&self) -> &DrinfeldModule {
        &self.phi
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn gens(&self) -> &[Vec<KElem>] {
        &self.gens
    }

    pub fn rank_bound(&self) -> usize {
        self.gens.len()
    }

    pub fn modulus(&self) -> u32 {
        self.phi.modulus()
    }

    pub fn zero_point(&self) -> Vec<KElem> {
        vec![KElem::zero(self.modulus()); self.g]
    }

    /// Σ Φ_{c_i}(x_i).
    pub fn combination(&self, coeffs: &[RPoly]) -> Vec<KElem> {
        assert_eq!(coeffs.len(), self.gens.len());
        let mut acc = self.zero_point();
        for (c, x) in coeffs.iter().zip(&self.gens) {
            if c.is_zero() {
                continue;
            }
            let f = self.phi.phi_action(c);
            for (a, xi) in acc.iter_mut().zip(x) {
                *a = &*a + &f.eval(xi);
            }
        }
        acc
    }

    /// Relations Σ Φ_{b_i}(x_i) = 0 with deg b_i ≤ deg_bound, as a Hermite
    /// basis of the R-module they generate.
    pub fn syzygies(&self, deg_bound: usize) -> Presentation {
        let p = self.modulus();
        let r = self.gens.len();
        if r == 0 {
            return Presentation { deg_bound, relations: Vec::new(), complete: true, effective_bound: deg_bound };
        }
        let s = self.span_solver(deg_bound);
        let h = Hermite::new(&s.relations(), r, p);
        Presentation {
            deg_bound,
            relations: h.rows().to_vec(),
            complete: s.table.complete_for(None),
            effective_bound: s.table.effective_bound(),
        }
    }

    pub fn span_solver(&self, deg_bound: usize) -> SpanSolver {
        SpanSolver::new(&self.phi, &self.gens, self.g, deg_bound)
    }

    /// The presentation at [`DEFAULT_DEG_BOUND`], computed once.
    pub fn presentation(&self) -> &Presentation {
        self.presentation.get_or_init(|| self.syzygies(DEFAULT_DEG_BOUND))
    }

    pub fn relation_module(&self) -> Hermite {
        Hermite::new(&self.presentation().relations, self.gens.len(), self.modulus())
    }

    /// Coefficients a_i with deg a_i ≤ deg_bound and Σ Φ_{a_i}(x_i) = y.
    pub fn member(&self, y: &[KElem], deg_bound: usize) -> Membership {
        if y.iter().all(|c| c.is_zero()) {
            return Membership::Certificate { coeffs: vec![RPoly::zero(self.modulus()); self.gens.len()] };
        }
        if self.gens.is_empty() {
            return Membership::NotFoundUpTo { deg_bound, complete: true };
        }
        member_with(&self.span_solver(deg_bound), y)
    }

    /// The submodule generated by Φ_a of the generators.
    pub fn image(&self, a: &RPoly) -> PhiModule {
        let f = self.phi.phi_action(a);
        let gens = self.gens.iter().map(|x| x.iter().map(|c| f.eval(c)).collect()).collect();
        PhiModule::new(self.phi.clone(), self.g, gens)
    }

    /// Same module with extra generators.
    pub fn extended(&self, extra: &[Vec<KElem>]) -> PhiModule {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        PhiModule::new(self.phi.clone(), self.g, gens)
    }

    pub fn gens_text(&self) -> Vec<String> {
        self.gens.iter().map(|x| point_text(x)).collect()
    }
}

/// Membership against a prepared span.
pub fn member_with(s: &SpanSolver, y: &[KElem]) -> Membership {
    match s.solve(y) {
        Some(coeffs) => Membership::Certificate { coeffs },
        None => Membership::NotFoundUpTo { deg_bound: s.table.deg_bound, complete: s.table.complete_for(Some(y)) },
    }
}

/// `θ` for g = 1, `(θ, t)` otherwise.
pub fn point_text(x: &[KElem]) -> String {
    if x.len() == 1 {
        x[0].to_text()
    } else {
        format!("({})", x.iter().map(|c| c.to_text()).collect::<Vec<_>>().join(", "))
    }
}

#[cfg(test)]
mod tests;
