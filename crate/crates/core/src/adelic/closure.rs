//! Closure membership, local divisibility, torsion of the closure and
//! separation of quotient classes at finite precision.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::discrete::point_valuation;
use super::{common_kernel, omega1_linear_places, require_omega1, span_dim, LocalTable};
use crate::base::RPoly;
use crate::drinfeld::{division_points_vec, DivisionOptions};
use crate::error::{Error, Result};
use crate::field::KElem;
use crate::local::{hensel_solve, LocalElem};
use crate::module::{decompose, point_text, Membership, PhiModule};
use crate::places::Place;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PlaceApproximation {
    pub place: Place,
    /// max v(y − γ) over bounded γ, capped at the cutoff.
    pub best_valuation: i64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum ClosureVerdict {
    InGamma { coeffs: Vec<RPoly> },
    RejectedUpToBounds { deg_bound: usize, cutoff: i64, places: Vec<PlaceApproximation>, member_search_complete: bool },
    Inconclusive { deg_bound: usize, cutoff: i64, places: Vec<PlaceApproximation>, member_search_complete: bool },
}

/// Best approximation of y by bounded Γ-elements at v.
pub fn approximation(gamma: &PhiModule, y: &[KElem], v: &Place, cutoff: i64, deg_bound: usize) -> Result<PlaceApproximation> {
    for c in y {
        if !v.is_integral(c) {
            return Err(Error::NotIntegral(v.to_text()));
        }
    }
    let span = gamma.span_solver(deg_bound);
    let pts = span.table.flat_points();
    let table = LocalTable::new(&pts, v, cutoff, gamma.modulus());
    let yl: Vec<LocalElem> = y.iter().map(|c| LocalElem::embed(c, v, cutoff)).collect();
    let mut best = (0, None);
    for k in 1..=cutoff {
        match table.solve(&yl, k) {
            Some(e) => best = (k, Some(e)),
            None => break,
        }
    }
    let witness = best.1.map(|e| point_text(&gamma.combination(&span.coeffs_of(&e))));
    Ok(PlaceApproximation { place: v.clone(), best_valuation: best.0, witness })
}

/// y is accepted only with an exact membership certificate; it is rejected
/// when some tracked place keeps it farther than u^cutoff from every
/// bounded Γ-element.
pub fn closure_member(gamma: &PhiModule, y: &[KElem], places: &[Place], cutoff: i64, deg_bound: usize) -> Result<ClosureVerdict> {
    for v in places {
        require_omega1(gamma, v)?;
    }
    let complete = match gamma.member(y, deg_bound) {
        Membership::Certificate { coeffs } => return Ok(ClosureVerdict::InGamma { coeffs }),
        Membership::NotFoundUpTo { complete, .. } => complete,
    };
    let approx = places.iter().map(|v| approximation(gamma, y, v, cutoff, deg_bound)).collect::<Result<Vec<_>>>()?;
    if approx.iter().any(|a| a.best_valuation < cutoff) {
        Ok(ClosureVerdict::RejectedUpToBounds { deg_bound, cutoff, places: approx, member_search_complete: complete })
    } else {
        Ok(ClosureVerdict::Inconclusive { deg_bound, cutoff, places: approx, member_search_complete: complete })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum PrimeToTVerdict {
    LocallyDivisibleEverywhereSampled {
        places: Vec<Place>,
        undecided: Vec<Place>,
        division_points: Vec<String>,
        division_complete: bool,
    },
    ObstructionAt { place: Place, coordinate: usize, sampled_before: usize },
}

/// Scans Ω_1 in order for a place where y ∉ Φ_a(O_v^g).
pub fn prime_to_t_test(gamma: &PhiModule, a: &RPoly, y: &[KElem], samples: usize, n: i64) -> Result<PrimeToTVerdict> {
    if a.coeff(0) == 0 {
        return Err(Error::Config("a must be prime to t".into()));
    }
    let phi = gamma.phi();
    let mut used = Vec::new();
    let mut undecided = Vec::new();
    for v in omega1_linear_places(gamma, samples)? {
        if y.iter().any(|c| !v.is_integral(c)) {
            continue;
        }
        for (k, c) in y.iter().enumerate() {
            match hensel_solve(phi, a, &LocalElem::embed(c, &v, n), n) {
                Ok(_) => {}
                Err(Error::NoResidueRoot(_)) => {
                    return Ok(PrimeToTVerdict::ObstructionAt { place: v, coordinate: k, sampled_before: used.len() })
                }
                Err(Error::BoundExceeded(_)) => undecided.push(v.clone()),
                Err(e) => return Err(e),
            }
        }
        used.push(v);
    }
    let (sols, complete) = division_points_vec(phi, a, y, &DivisionOptions::default());
    Ok(PrimeToTVerdict::LocallyDivisibleEverywhereSampled {
        places: used,
        undecided,
        division_points: sols.iter().map(|x| point_text(x)).collect(),
        division_complete: complete,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ClosureTorsionReport {
    pub witness_places: Vec<Place>,
    pub gamma0: Vec<String>,
    pub gamma1: Vec<String>,
    pub gamma1_free: bool,
    pub torsion: Vec<String>,
    pub gamma0_torsion: Vec<String>,
    pub torsion_matches: bool,
    /// Bounded elements reducing to 0 at every witness place, with whether
    /// each is torsion.
    pub pseudo_torsion: Vec<(String, bool)>,
    pub confirmed: bool,
}

pub fn closure_torsion_check(gamma: &PhiModule, places: &[Place], deg_bound: usize) -> Result<ClosureTorsionReport> {
    for v in places {
        require_omega1(gamma, v)?;
    }
    let p = gamma.modulus();
    let d = decompose(gamma, places, deg_bound)?;
    let texts = |pts: Vec<Vec<KElem>>| pts.iter().map(|x| point_text(x)).collect::<Vec<_>>();
    let torsion = texts(gamma.torsion_submodule());
    let gamma0_torsion = texts(d.gamma0.torsion_submodule());
    let span = gamma.span_solver(deg_bound);
    let pts = span.table.flat_points();
    let tables: Vec<LocalTable> = places.iter().map(|v| LocalTable::new(&pts, v, 1, p)).collect();
    let exact = span.kernel().to_vec();
    let mut basis = exact.clone();
    let mut pseudo = Vec::new();
    for w in common_kernel(&tables, 1) {
        let mut next = basis.clone();
        next.push(w.clone());
        if span_dim(&next, pts.len(), p) == span_dim(&basis, pts.len(), p) {
            continue;
        }
        basis = next;
        let x = gamma.combination(&span.coeffs_of(&w));
        let single = PhiModule::new(gamma.phi().clone(), gamma.g(), vec![x.clone()]);
        let is_torsion = !single.syzygies(deg_bound).relations.is_empty();
        pseudo.push((point_text(&x), is_torsion));
    }
    let torsion_matches = torsion == gamma0_torsion;
    let confirmed = d.gamma1_free && torsion_matches && pseudo.iter().all(|(x, tor)| *tor && torsion.contains(x));
    Ok(ClosureTorsionReport {
        witness_places: places.to_vec(),
        gamma0: d.gamma0_gens,
        gamma1: d.gamma1_gens,
        gamma1_free: d.gamma1_free,
        torsion,
        gamma0_torsion,
        torsion_matches,
        pseudo_torsion: pseudo,
        confirmed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PairSeparation {
    pub i: usize,
    pub j: usize,
    pub separated_at: Option<Place>,
    pub valuation: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuotientIsoReport {
    pub a: RPoly,
    pub order: u128,
    pub representatives: Vec<String>,
    pub pairs: Vec<PairSeparation>,
    pub injective: bool,
    pub samples: usize,
    /// Samples landing in exactly one class at the witness places.
    pub classified: usize,
    /// Samples whose class a residue search bound left open.
    pub undecided: usize,
    pub surjective_on_samples: bool,
}

/// Whether d ∈ Φ_a(O_v^g), decided coordinatewise by Hensel; None when a
/// residue search ran past its bound.
fn locally_divisible(gamma: &PhiModule, a: &RPoly, d: &[KElem], v: &Place, n: i64) -> Result<Option<bool>> {
    let mut decided = true;
    for c in d {
        match hensel_solve(gamma.phi(), a, &LocalElem::embed(c, v, n), n) {
            Ok(_) => {}
            Err(Error::NoResidueRoot(_)) => return Ok(Some(false)),
            Err(Error::BoundExceeded(_)) => decided = false,
            Err(e) => return Err(e),
        }
    }
    Ok(decided.then_some(true))
}

pub fn quotient_iso_check(
    gamma: &PhiModule,
    a: &RPoly,
    places: &[Place],
    n: i64,
    samples: usize,
    seed: u64,
) -> Result<QuotientIsoReport> {
    for v in places {
        require_omega1(gamma, v)?;
    }
    let p = gamma.modulus();
    let q = gamma.quotient(a);
    let reps = &q.representatives;
    let mut pairs = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let d: Vec<KElem> = reps[i].iter().zip(&reps[j]).map(|(x, y)| x - y).collect();
            let mut sep = PairSeparation { i, j, separated_at: None, valuation: None };
            for v in places {
                if locally_divisible(gamma, a, &d, v, n)? == Some(false) {
                    sep.separated_at = Some(v.clone());
                    sep.valuation = point_valuation(v, &d);
                    break;
                }
            }
            pairs.push(sep);
        }
    }
    let injective = pairs.iter().all(|s| s.separated_at.is_some());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classified = 0;
    let mut undecided = 0;
    for _ in 0..samples {
        let c: Vec<RPoly> = (0..gamma.rank_bound())
            .map(|_| RPoly::from_coeffs((0..4).map(|_| rng.gen_range(0..p)).collect(), p))
            .collect();
        let z = gamma.combination(&c);
        let mut hits = 0;
        let mut open = false;
        for r in reps {
            let d: Vec<KElem> = z.iter().zip(r).map(|(x, y)| x - y).collect();
            let mut all = Some(true);
            for v in places {
                match locally_divisible(gamma, a, &d, v, n)? {
                    Some(false) => {
                        all = Some(false);
                        break;
                    }
                    None => all = None,
                    Some(true) => {}
                }
            }
            match all {
                Some(true) => hits += 1,
                None => open = true,
                Some(false) => {}
            }
        }
        if open {
            undecided += 1;
        } else {
            classified += usize::from(hits == 1);
        }
    }
    Ok(QuotientIsoReport {
        a: a.clone(),
        order: q.order(p),
        representatives: reps.iter().map(|x| point_text(x)).collect(),
        pairs,
        injective,
        samples,
        classified,
        undecided,
        surjective_on_samples: classified == samples,
    })
}
