//! Divisible hulls: x ∉ Γ with Φ_q(x) ∈ Γ for primes q of small degree.
//!
//! If Φ_q(x) = γ then γ = ρ + Φ_q(z) for a coset representative ρ of
//! Γ/Φ_q(Γ) and some z ∈ Γ, and x − z divides ρ. So it suffices to divide
//! the finitely many representatives.

use super::{point_text, PhiModule, DEFAULT_DEG_BOUND};
use crate::base::RPoly;
use crate::drinfeld::{division_points_vec, DivisionOptions};
use crate::field::KElem;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HullBounds {
    pub prime_bound: usize,
    pub deg_bound: usize,
    pub max_rounds: usize,
    #[serde(skip)]
    pub division: DivisionOptions,
}

impl Default for HullBounds {
    fn default() -> Self {
        HullBounds { prime_bound: 2, deg_bound: DEFAULT_DEG_BOUND, max_rounds: 6, division: DivisionOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Adjoined {
    pub point: String,
    pub prime: RPoly,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct HullReport {
    #[serde(skip)]
    pub hull: PhiModule,
    pub generators: Vec<String>,
    pub adjoined: Vec<Adjoined>,
    pub primes: Vec<RPoly>,
    pub rounds: usize,
    pub fixpoint: bool,
    /// All searches (quotients, divisions, memberships) were complete.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum FullnessVerdict {
    FullUpToBounds { primes: Vec<RPoly>, complete: bool },
    NotFull { witness: String, prime: RPoly },
}

fn primes(bounds: &HullBounds, p: u32) -> Vec<RPoly> {
    RPoly::monic_irreducibles(bounds.prime_bound, p)
}

/// A point x ∉ Γ with Φ_q(x) ∈ Γ, if one is found, and whether the search
/// was complete.
fn new_division_point(gamma: &PhiModule, q: &RPoly, bounds: &HullBounds) -> (Option<Vec<KElem>>, bool) {
    let quot = gamma.quotient(q);
    let mut complete = quot.enumerated && quot.presentation_complete;
    let s = gamma.span_solver(bounds.deg_bound);
    for rep in &quot.representatives {
        let (sols, c) = division_points_vec(gamma.phi(), q, rep, &bounds.division);
        complete &= c;
        for x in sols {
            match super::member_with(&s, &x) {
                super::Membership::Certificate { .. } => {}
                super::Membership::NotFoundUpTo { complete: c, .. } => {
                    if gamma.gens().is_empty() || c {
                        return (Some(x), complete);
                    }
                    complete = false;
                }
            }
        }
    }
    (None, complete)
}

pub fn divisible_hull(gamma: &PhiModule, bounds: &HullBounds) -> HullReport {
    let p = gamma.modulus();
    let qs = primes(bounds, p);
    let mut cur = gamma.clone();
    let mut adjoined = Vec::new();
    let mut rounds = 0;
    let mut fixpoint = false;
    let mut complete = true;
    while rounds < bounds.max_rounds {
        rounds += 1;
        let mut grew = false;
        let mut round_complete = true;
        for q in &qs {
            let (x, c) = new_division_point(&cur, q, bounds);
            round_complete &= c;
            if let Some(x) = x {
                adjoined.push(Adjoined { point: point_text(&x), prime: q.clone() });
                cur = cur.extended(&[x]);
                grew = true;
                break;
            }
        }
        if !grew {
            fixpoint = true;
            complete = round_complete;
            break;
        }
    }
    HullReport { generators: cur.gens_text(), hull: cur, adjoined, primes: qs, rounds, fixpoint, complete: complete && fixpoint }
}

pub fn is_full(gamma: &PhiModule, bounds: &HullBounds) -> FullnessVerdict {
    let qs = primes(bounds, gamma.modulus());
    let mut complete = true;
    for q in &qs {
        let (x, c) = new_division_point(gamma, q, bounds);
        complete &= c;
        if let Some(x) = x {
            let y: Vec<KElem> = x.iter().map(|c| gamma.phi().act(q, c)).collect();
            assert!(gamma.member(&y, bounds.deg_bound).is_member(), "Φ_q(x) must lie in Γ");
            return FullnessVerdict::NotFull { witness: point_text(&x), prime: q.clone() };
        }
    }
    FullnessVerdict::FullUpToBounds { primes: qs, complete }
}
