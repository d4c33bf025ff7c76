//! Torsion: annihilators by F_p-dependence of iterates, K-rational kernels
//! and the torsion level estimate.

use super::solve::{division_points, DivisionOptions};
use super::DrinfeldModule;
use crate::base::{Hermite, RPoly};
use crate::field::KElem;
use crate::module::{PhiModule, ITERATE_SIZE_CAP};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum TorsionCertificate {
    Torsion { annihilator: RPoly },
    NotTorsionUpTo { deg_bound: usize, theta_degrees: Vec<i64>, note: String },
}

/// The minimal-degree monic a with Φ_a(x) = 0, searched up to `max_deg`.
pub fn torsion_annihilator(phi: &DrinfeldModule, x: &KElem, max_deg: usize) -> TorsionCertificate {
    let p = phi.modulus();
    if x.is_zero() {
        return TorsionCertificate::Torsion { annihilator: RPoly::one(p) };
    }
    let m = PhiModule::scalar(phi.clone(), std::slice::from_ref(x));
    let s = m.span_solver(max_deg);
    let rels = Hermite::new(&s.relations(), 1, p);
    if let Some(row) = rels.rows().first() {
        let a = row[0].monic();
        assert!(phi.act(&a, x).is_zero(), "annihilator failed re-verification");
        return TorsionCertificate::Torsion { annihilator: a };
    }
    let degs = s.table.theta_degrees(0);
    let reached = s.table.effective_bound();
    let complete = s.table.complete_for(None);
    let (deg_bound, note) = if complete && reached < max_deg {
        (max_deg, format!("iterates computed to degree {reached}; higher iterates escape in height"))
    } else if complete {
        (max_deg, format!("iterates independent up to degree {reached}"))
    } else {
        (reached, format!("iterates independent up to degree {reached}; size cap {ITERATE_SIZE_CAP} reached"))
    };
    TorsionCertificate::NotTorsionUpTo { deg_bound, theta_degrees: degs, note }
}

/// Φ[a](K) within the solver bounds, checked to be an F_p-space stable
/// under Φ_t.
pub fn k_rational_torsion(phi: &DrinfeldModule, a: &RPoly, opts: &DivisionOptions) -> (Vec<KElem>, bool) {
    let r = division_points(phi, a, &KElem::zero(phi.modulus()), opts);
    let set = &r.solutions;
    for x in set {
        for y in set {
            assert!(set.contains(&(x + y)), "torsion set not closed under addition");
        }
        assert!(set.contains(&phi.phi_t().eval(x)), "torsion set not stable under Φ_t");
    }
    (r.solutions, r.complete)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorsionLevel {
    pub m: usize,
    pub inconclusive: bool,
    pub kernel_sizes: Vec<usize>,
    pub complete: bool,
}

/// Smallest m ≤ m_max with Φ[t^{m+1}](K) = Φ[t^m](K).
pub fn estimate_torsion_level_m(phi: &DrinfeldModule, m_max: usize, opts: &DivisionOptions) -> crate::Result<TorsionLevel> {
    phi.require_special()?;
    let p = phi.modulus();
    let mut sizes = vec![1];
    let mut complete = true;
    for m in 0..=m_max {
        let (next, c) = k_rational_torsion(phi, &RPoly::monomial(1, m + 1, p), opts);
        complete &= c;
        sizes.push(next.len());
        if next.len() == sizes[m] {
            return Ok(TorsionLevel { m, inconclusive: false, kernel_sizes: sizes, complete });
        }
    }
    Ok(TorsionLevel { m: m_max, inconclusive: true, kernel_sizes: sizes, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_k, parse_r};
    use crate::twisted::TwistedPoly;

    fn module(s: &str) -> DrinfeldModule {
        DrinfeldModule::new(TwistedPoly::parse(s, 3).unwrap(), None).unwrap()
    }

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    #[test]
    fn annihilators() {
        let c = module("[t, 1]");
        assert_eq!(torsion_annihilator(&c, &k("0"), 5), TorsionCertificate::Torsion { annihilator: RPoly::one(3) });
        let phi = module("[t, 2*t/θ^2]");
        assert_eq!(torsion_annihilator(&phi, &k("θ"), 5), TorsionCertificate::Torsion { annihilator: parse_r("t", 3).unwrap() });
        match torsion_annihilator(&c, &k("θ"), 8) {
            TorsionCertificate::NotTorsionUpTo { deg_bound, theta_degrees, .. } => {
                assert_eq!(deg_bound, 8);
                assert_eq!(theta_degrees[..4], [1, 3, 9, 27]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rational_torsion() {
        let opts = DivisionOptions::default();
        let t = parse_r("t", 3).unwrap();
        let (s, _) = k_rational_torsion(&module("[t, 2*t/θ^2]"), &t, &opts);
        assert_eq!(s, vec![k("0"), k("θ"), k("2*θ")]);
        assert_eq!(k_rational_torsion(&module("[t, 1]"), &t, &opts).0, vec![k("0")]);
        assert_eq!(k_rational_torsion(&module("[0, θ, 1]"), &t, &opts).0, vec![k("0")]);
    }

    #[test]
    fn torsion_levels() {
        let opts = DivisionOptions::default();
        let psi = module("[0, θ, 1]");
        assert_eq!(estimate_torsion_level_m(&psi, 3, &opts).unwrap().m, 0);
        let special = module("[0, 2*θ^6, 1]");
        let lvl = estimate_torsion_level_m(&special, 3, &opts).unwrap();
        assert_eq!((lvl.m, lvl.inconclusive), (1, false));
        let lvl = estimate_torsion_level_m(&special, 0, &opts).unwrap();
        assert!(lvl.inconclusive);
        assert!(estimate_torsion_level_m(&module("[t, 1]"), 2, &opts).is_err());
    }
}
