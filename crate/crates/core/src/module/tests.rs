use super::*;
use crate::drinfeld::DrinfeldModule;
use crate::field::{parse_k, parse_r};
use crate::places::Place;
use crate::twisted::TwistedPoly;

fn module(s: &str) -> DrinfeldModule {
    DrinfeldModule::new(TwistedPoly::parse(s, 3).unwrap(), None).unwrap()
}

fn k(s: &str) -> KElem {
    parse_k(s, 3).unwrap()
}

fn r(s: &str) -> RPoly {
    parse_r(s, 3).unwrap()
}

fn texts(pts: &[Vec<KElem>]) -> Vec<String> {
    pts.iter().map(|x| point_text(x)).collect()
}

#[test]
fn syzygy_examples() {
    let c = DrinfeldModule::carlitz(3);
    let free = PhiModule::scalar(c.clone(), &[k("θ")]);
    let pres = free.syzygies(8);
    assert!(pres.relations.is_empty());
    assert!(pres.complete);
    let two = PhiModule::scalar(c.clone(), &[k("θ"), k("t*θ+θ^3")]);
    assert_eq!(two.syzygies(1).relations, vec![vec![r("t"), r("2")]]);
    let tors = PhiModule::scalar(module("[t, 2*t/θ^2]"), &[k("θ")]);
    assert_eq!(tors.syzygies(4).relations, vec![vec![r("t")]]);
}

#[test]
fn psi_presentation_uses_height_escape() {
    let g = PhiModule::scalar(module("[0, θ, 1]"), &[k("θ")]);
    let pres = g.presentation();
    assert!(pres.relations.is_empty());
    assert!(pres.effective_bound < 8);
    assert!(pres.complete);
}

#[test]
fn membership_examples() {
    let g = PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("θ")]);
    assert_eq!(g.member(&[k("t*θ+θ^3")], 2), Membership::Certificate { coeffs: vec![r("t")] });
    assert_eq!(g.member(&[k("0")], 3), Membership::Certificate { coeffs: vec![r("0")] });
    assert_eq!(g.member(&[k("θ^2")], 6), Membership::NotFoundUpTo { deg_bound: 6, complete: true });
}

#[test]
fn quotient_examples() {
    let c = DrinfeldModule::carlitz(3);
    let g = PhiModule::scalar(c.clone(), &[k("θ")]);
    let q = g.quotient(&r("t"));
    assert_eq!(q.order(3), 3);
    assert_eq!(texts(&q.representatives), vec!["0", "θ", "2*θ"]);
    assert!(g.reps_pairwise_distinct(&q));
    assert_eq!(g.quotient(&r("1")).order(3), 1);
    let g2 = PhiModule::new(c, 2, vec![vec![k("θ"), k("0")], vec![k("0"), k("θ")]]);
    let q2 = g2.quotient(&r("t"));
    assert_eq!((q2.order(3), q2.representatives.len()), (9, 9));
    assert_eq!(exhaustive_coset_count(&g, &r("t"), 1, 8), 3);
}

#[test]
fn torsion_submodules() {
    let c = DrinfeldModule::carlitz(3);
    assert_eq!(texts(&PhiModule::scalar(c.clone(), &[k("θ")]).torsion_submodule()), vec!["0"]);
    let t = PhiModule::scalar(module("[t, 2*t/θ^2]"), &[k("θ")]);
    assert_eq!(texts(&t.torsion_submodule()), vec!["0", "θ", "2*θ"]);
    assert_eq!(texts(&PhiModule::scalar(c, &[]).torsion_submodule()), vec!["0"]);
}

#[test]
fn hull_and_fullness() {
    let psi = module("[0, θ, 1]");
    let g = PhiModule::scalar(psi.clone(), &[k("θ^4+θ^9")]);
    let b = HullBounds { prime_bound: 1, ..Default::default() };
    match is_full(&g, &b) {
        FullnessVerdict::NotFull { witness, prime } => assert_eq!((witness.as_str(), prime), ("θ", r("t"))),
        other => panic!("{other:?}"),
    }
    let h = divisible_hull(&g, &b);
    assert!(h.hull.member(&[k("θ")], 8).is_member());
    assert!(h.fixpoint);
    assert!(matches!(is_full(&h.hull, &b), FullnessVerdict::FullUpToBounds { .. }));
}

#[test]
fn decomposition() {
    let psi = module("[0, θ, 1]");
    let g = PhiModule::scalar(psi, &[k("θ")]);
    let d = decompose(&g, &[Place::parse("finite:θ+t", 3).unwrap()], 8).unwrap();
    assert!(d.gamma0_gens.is_empty());
    assert_eq!(d.gamma1_gens, vec!["θ"]);
    assert!(d.gamma1_free);
    let t = PhiModule::scalar(module("[t, 2*t/θ^2]"), &[k("θ")]);
    let d = decompose(&t, &[Place::parse("finite:θ+1", 3).unwrap()], 8).unwrap();
    assert_eq!(d.gamma0_gens, vec!["θ"]);
    assert!(d.gamma1_gens.is_empty());
}
