//! End-to-end comparisons of V(K)∩Γ with its adelic counterpart at
//! finite precision.

pub mod uniformity;
pub mod variety;

use std::collections::BTreeSet;

pub use uniformity::{enumerate_hypersurface, subgroup_translate_check, uniformity_probe, SearchBox, UniformityTable};
pub use variety::{MPoly, VarietySpec};

use crate::adelic::{
    approximation, closure_member, closure_torsion_check, discreteness_certificate, omega1_linear_places, ClosureTorsionReport,
    ClosureVerdict, DiscretenessCertificate, PlaceApproximation,
};
use crate::base::RPoly;
use crate::drinfeld::{division_points_vec, DivisionOptions};
use crate::error::{Error, Result};
use crate::field::KElem;
use crate::module::{is_full, point_text, FullnessVerdict, HullBounds, PhiModule};
use crate::places::Place;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    TheoremConfirmed,
    BoundInconclusive { reason: String },
    /// A point of V(K) outside Γ (complete negative search) that bounded
    /// Γ-elements approximate to the cutoff at every tracked place.
    CounterexampleCandidate { point: String, trace: Vec<PlaceApproximation> },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::TheoremConfirmed => 0,
            Verdict::BoundInconclusive { .. } => 2,
            Verdict::CounterexampleCandidate { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExperimentBounds {
    pub deg_bound: usize,
    /// Coefficient degree for enumerating bounded Γ-elements.
    pub enum_deg: usize,
    pub places: usize,
    pub cutoff: i64,
    pub prime_bound: usize,
    pub search_box: SearchBox,
}

impl Default for ExperimentBounds {
    fn default() -> Self {
        ExperimentBounds { deg_bound: 8, enum_deg: 2, places: 3, cutoff: 10, prime_bound: 2, search_box: SearchBox::default() }
    }
}

impl ExperimentBounds {
    pub fn hull_bounds(&self) -> HullBounds {
        HullBounds { prime_bound: self.prime_bound, deg_bound: self.deg_bound, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Assignment {
    /// Candidate limit at each tracked place, in place order.
    pub limits: Vec<String>,
    /// Annihilators of pairwise differences y_v − y_w (first place vs the rest).
    pub difference_annihilators: Vec<Option<RPoly>>,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub drinfeld_module: String,
    pub generators: Vec<String>,
    pub variety: VarietySpec,
    pub bounds: ExperimentBounds,
    pub places: Vec<Place>,
    pub k_side: Vec<String>,
    pub adelic_side: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discreteness: Vec<DiscretenessCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub closure: Vec<(String, ClosureVerdict)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assignments: Vec<Assignment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_check: Option<ClosureTorsionReport>,
    pub caveats: Vec<String>,
    pub verdict: Verdict,
}

impl ExperimentReport {
    fn new(name: &str, gamma: &PhiModule, v: &VarietySpec, b: &ExperimentBounds, places: Vec<Place>) -> Self {
        ExperimentReport {
            experiment: name.into(),
            drinfeld_module: gamma.phi().phi_t().to_text(),
            generators: gamma.gens_text(),
            variety: v.clone(),
            bounds: b.clone(),
            places,
            k_side: Vec::new(),
            adelic_side: Vec::new(),
            discreteness: Vec::new(),
            closure: Vec::new(),
            assignments: Vec::new(),
            torsion_check: None,
            caveats: Vec::new(),
            verdict: Verdict::TheoremConfirmed,
        }
    }

    /// Checks V(K)∩Γ ⊆ adelic side and sets the verdict.
    fn finish(&mut self, inconclusive: Vec<String>, candidate: Option<(String, Vec<PlaceApproximation>)>) {
        for x in &self.k_side {
            assert!(self.adelic_side.contains(x), "K-side point {x} missing from the adelic side");
        }
        self.verdict = if let Some((point, trace)) = candidate {
            Verdict::CounterexampleCandidate { point, trace }
        } else if !inconclusive.is_empty() {
            Verdict::BoundInconclusive { reason: inconclusive.join("; ") }
        } else {
            Verdict::TheoremConfirmed
        };
    }
}

const ENUM_CAP: usize = 20000;

/// All Σ Φ_{c_i}(P_i) with deg c_i ≤ d.
pub fn bounded_points(gamma: &PhiModule, d: usize) -> Result<Vec<Vec<KElem>>> {
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    let digits = (d + 1) * r;
    let total = (p as usize).checked_pow(digits as u32).filter(|&n| n <= ENUM_CAP);
    let Some(total) = total else {
        return Err(Error::BoundExceeded(format!("{p}^{digits} bounded elements exceed {ENUM_CAP}")));
    };
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut cs = Vec::with_capacity(r);
        for _ in 0..r {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                c.push((idx % p as usize) as u32);
                idx /= p as usize;
            }
            cs.push(RPoly::from_coeffs(c, p));
        }
        out.push(gamma.combination(&cs));
    }
    Ok(out)
}

fn check_g(gamma: &PhiModule, v: &VarietySpec) -> Result<()> {
    if gamma.g() != v.g() {
        return Err(Error::Config(format!("variety lives in K^{} but Γ in K^{}", v.g(), gamma.g())));
    }
    Ok(())
}

fn texts(pts: &BTreeSet<Vec<KElem>>) -> Vec<String> {
    let mut v: Vec<String> = pts.iter().map(|x| point_text(x)).collect();
    v.sort();
    v
}

/// Sorts ZeroDim membership into K-side, adelic side, open points and a
/// possible counterexample.
struct Tally {
    k: BTreeSet<Vec<KElem>>,
    adelic: BTreeSet<Vec<KElem>>,
    open: Vec<String>,
    candidate: Option<(String, Vec<PlaceApproximation>)>,
}

impl Tally {
    fn new() -> Self {
        Tally { k: BTreeSet::new(), adelic: BTreeSet::new(), open: Vec::new(), candidate: None }
    }

    fn record(&mut self, y: &[KElem], verdict: &ClosureVerdict) {
        match verdict {
            ClosureVerdict::InGamma { .. } => {
                self.k.insert(y.to_vec());
                self.adelic.insert(y.to_vec());
            }
            ClosureVerdict::RejectedUpToBounds { .. } => {}
            ClosureVerdict::Inconclusive { places, member_search_complete, .. } => {
                self.adelic.insert(y.to_vec());
                if *member_search_complete && self.candidate.is_none() {
                    self.candidate = Some((point_text(y), places.clone()));
                } else {
                    self.open.push(format!("{} approximated to the cutoff without a membership certificate", point_text(y)));
                }
            }
        }
    }
}

pub fn generic_char_experiment(gamma: &PhiModule, v: &VarietySpec, b: &ExperimentBounds) -> Result<ExperimentReport> {
    gamma.phi().require_generic()?;
    check_g(gamma, v)?;
    let places = omega1_linear_places(gamma, b.places)?;
    let mut rep = ExperimentReport::new("generic", gamma, v, b, places.clone());
    rep.discreteness = crate::par_map(&places, |w| discreteness_certificate(gamma, w, b.deg_bound)).into_iter().collect::<Result<Vec<_>>>()?;
    let mut tally = Tally::new();
    match v {
        VarietySpec::ZeroDim { points, .. } => {
            for y in points {
                let c = closure_member(gamma, y, &places, b.cutoff, b.deg_bound)?;
                tally.record(y, &c);
                rep.closure.push((point_text(y), c));
            }
        }
        VarietySpec::Hypersurface { .. } => {
            // Γ is discrete, so its closure adds nothing: both sides are the
            // bounded Γ-points on V.
            for x in bounded_points(gamma, b.enum_deg)? {
                if v.contains(&x) {
                    tally.k.insert(x.clone());
                    tally.adelic.insert(x);
                }
            }
            rep.caveats.push(format!("Γ-points enumerated with coefficient degree ≤ {}", b.enum_deg));
        }
    }
    for c in &rep.discreteness {
        if !c.complete {
            tally.open.push(format!("discreteness at {} not certified within the bounds", c.place.to_text()));
        }
    }
    rep.k_side = texts(&tally.k);
    rep.adelic_side = texts(&tally.adelic);
    rep.finish(tally.open, tally.candidate);
    Ok(rep)
}

fn require_full(gamma: &PhiModule, b: &ExperimentBounds) -> Result<()> {
    match is_full(gamma, &b.hull_bounds()) {
        FullnessVerdict::FullUpToBounds { .. } => Ok(()),
        FullnessVerdict::NotFull { witness, prime } => {
            Err(Error::NotFullUpToBounds(format!("Φ_{}({witness}) ∈ Γ but {witness} ∉ Γ", prime)))
        }
    }
}

fn special_caveats(gamma: &PhiModule) -> Vec<String> {
    let phi = gamma.phi();
    let probe = phi.modular_transcendence_probe(2);
    let mut out = vec![format!(
        "modular transcendence probe: {}",
        serde_json::to_string(&probe.verdict).unwrap_or_default()
    )];
    if let Ok(l) = crate::drinfeld::estimate_torsion_level_m(phi, 3, &DivisionOptions::default()) {
        out.push(format!("K-rational t-power torsion level m = {} (proxy for Φ[t^∞](K^sep))", l.m));
    }
    out
}

const MAX_ASSIGNMENTS: usize = 4096;

fn is_torsion_point(gamma: &PhiModule, d: &[KElem], deg_bound: usize) -> Option<RPoly> {
    let p = gamma.modulus();
    if d.iter().all(|c| c.is_zero()) {
        return Some(RPoly::one(p));
    }
    let single = PhiModule::new(gamma.phi().clone(), gamma.g(), vec![d.to_vec()]);
    single.syzygies(deg_bound).relations.first().map(|r| r[0].clone())
}

pub fn zero_dim_intersection(gamma: &PhiModule, v: &VarietySpec, tracked: &[Place], b: &ExperimentBounds) -> Result<ExperimentReport> {
    gamma.phi().require_special()?;
    check_g(gamma, v)?;
    let VarietySpec::ZeroDim { points, .. } = v else {
        return Err(Error::Config("zero-dimensional variety required".into()));
    };
    require_full(gamma, b)?;
    let places = if tracked.is_empty() { omega1_linear_places(gamma, b.places)? } else { tracked.to_vec() };
    let mut rep = ExperimentReport::new("zero-dim", gamma, v, b, places.clone());
    rep.caveats = special_caveats(gamma);
    let mut tally = Tally::new();
    for y in points {
        if gamma.member(y, b.deg_bound).is_member() {
            tally.k.insert(y.clone());
        }
    }
    // limit candidates at each place: points of V(K) approximable to the cutoff
    let per_place = crate::par_map(&places, |w| {
        let mut here = Vec::new();
        for y in points {
            if approximation(gamma, y, w, b.cutoff, b.deg_bound)?.best_valuation >= b.cutoff {
                here.push(y);
            }
        }
        Ok(here)
    });
    let cands: Vec<Vec<&Vec<KElem>>> = per_place.into_iter().collect::<Result<_>>()?;
    let n_assign: usize = cands.iter().map(Vec::len).product();
    if n_assign > MAX_ASSIGNMENTS {
        return Err(Error::BoundExceeded(format!("{n_assign} place assignments exceed {MAX_ASSIGNMENTS}")));
    }
    let mut checked = BTreeSet::new();
    for mut idx in 0..n_assign {
        let mut limits = Vec::with_capacity(places.len());
        for c in &cands {
            limits.push(c[idx % c.len()]);
            idx /= c.len();
        }
        let mut anns = Vec::new();
        for y in &limits[1..] {
            let d: Vec<KElem> = limits[0].iter().zip(y.iter()).map(|(a, c)| a - c).collect();
            anns.push(is_torsion_point(gamma, &d, b.deg_bound));
        }
        let texts_l = limits.iter().map(|x| point_text(x)).collect();
        let status = if anns.iter().any(Option::is_none) {
            "rejected: limits differ by a non-torsion point".to_string()
        } else {
            let y = limits[0];
            if checked.insert(y.clone()) {
                let c = closure_member(gamma, y, &places, b.cutoff, b.deg_bound)?;
                tally.record(y, &c);
                rep.closure.push((point_text(y), c));
            }
            format!("snapped to {}", point_text(y))
        };
        rep.assignments.push(Assignment { limits: texts_l, difference_annihilators: anns, status });
    }
    // points of Γ are limits of themselves at every place
    for y in &tally.k {
        tally.adelic.insert(y.clone());
    }
    match closure_torsion_check(gamma, &places, b.deg_bound) {
        Ok(t) => {
            if !t.confirmed {
                tally.open.push("closure torsion check not confirmed".into());
            }
            rep.torsion_check = Some(t);
        }
        Err(e) => rep.caveats.push(format!("closure torsion check skipped: {e}")),
    }
    rep.k_side = texts(&tally.k);
    rep.adelic_side = texts(&tally.adelic);
    rep.finish(tally.open, tally.candidate);
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Reduction {
    pub m: usize,
    pub coset_representatives: Vec<String>,
    pub box_points: usize,
    pub w: VarietySpec,
    pub report: ExperimentReport,
}

pub fn uniform_dml_reduce(gamma: &PhiModule, v: &VarietySpec, m: usize, b: &ExperimentBounds) -> Result<Reduction> {
    gamma.phi().require_special()?;
    check_g(gamma, v)?;
    let VarietySpec::Hypersurface { poly, g } = v else {
        return Err(Error::Config("hypersurface required".into()));
    };
    subgroup_translate_check(poly, *g)?;
    require_full(gamma, b)?;
    let p = gamma.modulus();
    let tm = RPoly::monomial(1, m, p);
    let q = gamma.quotient(&tm);
    if !q.enumerated {
        return Err(Error::BoundExceeded(format!("Γ/Φ_t^{m}Γ has p^{} classes", q.order_log)));
    }
    let vbox = enumerate_hypersurface(poly, *g, &b.search_box)?;
    let opts = DivisionOptions::default();
    let mut w = BTreeSet::new();
    for x in &vbox {
        for r in &q.representatives {
            let d: Vec<KElem> = x.iter().zip(r).map(|(a, c)| a - c).collect();
            if m == 0 || !division_points_vec(gamma.phi(), &tm, &d, &opts).0.is_empty() {
                w.insert(x.clone());
                break;
            }
        }
    }
    for x in &w {
        assert!(v.contains(x), "W-point {} is not on V", point_text(x));
    }
    // every Γ-point of V in the box must land in W
    for x in &vbox {
        if gamma.member(x, b.deg_bound).is_member() {
            assert!(w.contains(x), "Γ-point {} missing from W", point_text(x));
        }
    }
    let wspec = VarietySpec::zero_dim(w.into_iter().collect(), *g)?;
    let mut report = zero_dim_intersection(gamma, &wspec, &[], b)?;
    report.experiment = "reduce-dml".into();
    report.variety = v.clone();
    report.caveats.push("V assumed to contain no translate of a positive-dimensional algebraic subgroup".into());
    Ok(Reduction {
        m,
        coset_representatives: q.representatives.iter().map(|x| point_text(x)).collect(),
        box_points: vbox.len(),
        w: wspec,
        report,
    })
}


#[cfg(test)]
mod tests;
