use super::*;
use crate::drinfeld::DrinfeldModule;
use crate::field::{parse_k, parse_r};
use crate::base::RPoly;

fn k(s: &str) -> KElem {
    parse_k(s, 3).unwrap()
}

fn r(s: &str) -> RPoly {
    parse_r(s, 3).unwrap()
}

fn place(s: &str) -> Place {
    Place::parse(s, 3).unwrap()
}

fn carlitz_theta() -> PhiModule {
    PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("θ")])
}

#[test]
fn discreteness_at_theta() {
    let c = discreteness_certificate(&carlitz_theta(), &place("finite:θ"), 4).unwrap();
    assert_eq!(c.max_nonzero_valuation, Some(1));
    assert_eq!(c.principal_generator, Some(r("1")));
    assert!(c.ideal_checked);
    assert!(c.complete);
}

#[test]
fn discreteness_at_torsion_reduction() {
    let c = discreteness_certificate(&carlitz_theta(), &place("finite:θ^2+t"), 4).unwrap();
    assert_eq!(c.principal_generator, Some(r("t")));
    assert_eq!(c.max_nonzero_valuation, Some(1));
    assert_eq!(c.witness_coeffs, Some(vec![r("t")]));
    assert!(c.ideal_checked);
}

#[test]
fn discreteness_of_zero_module() {
    let g = PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("0")]);
    let c = discreteness_certificate(&g, &place("finite:θ"), 4).unwrap();
    assert_eq!(c.max_nonzero_valuation, None);
    assert!(c.complete);
}

#[test]
fn closure_membership() {
    let g = carlitz_theta();
    let places = [place("finite:θ"), place("finite:θ^2+t")];
    let v = closure_member(&g, &[k("t*θ+θ^3")], &places, 6, 4).unwrap();
    assert_eq!(v, ClosureVerdict::InGamma { coeffs: vec![r("t")] });
    match closure_member(&g, &[k("θ+1")], &places, 6, 4).unwrap() {
        ClosureVerdict::RejectedUpToBounds { places, .. } => assert_eq!(places[0].best_valuation, 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn prime_to_t_divisible_image() {
    let g = carlitz_theta();
    let a = r("t+1");
    let y = g.phi().act(&a, &k("θ"));
    match prime_to_t_test(&g, &a, &[y], 3, 4).unwrap() {
        PrimeToTVerdict::LocallyDivisibleEverywhereSampled { places, division_points, .. } => {
            assert_eq!(places.len(), 3);
            assert_eq!(division_points, vec!["θ"]);
        }
        other => panic!("{other:?}"),
    }
    assert!(prime_to_t_test(&g, &r("t"), &[k("θ")], 3, 4).is_err());
}

#[test]
fn quotient_iso_trivial_and_t() {
    let g = carlitz_theta();
    let places = omega1_linear_places(&g, 3).unwrap();
    let one = quotient_iso_check(&g, &r("1"), &places, 4, 3, 7).unwrap();
    assert_eq!(one.order, 1);
    assert!(one.injective && one.surjective_on_samples);
    let t = quotient_iso_check(&g, &r("t"), &places, 4, 3, 7).unwrap();
    assert_eq!(t.order, 3);
    assert!(t.injective);
    assert_eq!(t.classified, 3);
}

#[test]
fn snap_outcomes() {
    let y0 = k("θ");
    let c = product_formula_snap(&[y0.clone(), y0.clone()], &y0, &[], 0).unwrap();
    assert!(matches!(c, SnapOutcome::SnapCertificate { from_index: 0, .. }));
    let tracked = [place("finite:θ")];
    let seq = [k("θ"), k("θ^2"), k("θ^3"), k("θ^4")];
    match product_formula_snap(&seq, &k("0"), &tracked, 2).unwrap() {
        SnapOutcome::ContradictionTrace { n, tracked_sum, untracked_sum, .. } => {
            assert_eq!((n, tracked_sum, untracked_sum), (2, 3, -3));
        }
        other => panic!("{other:?}"),
    }
    let seq = [k("θ+1"), k("0"), k("0")];
    let s = product_formula_snap(&seq, &k("0"), &tracked, 5).unwrap();
    assert!(matches!(s, SnapOutcome::SnapCertificate { from_index: 1, .. }));
}

#[test]
fn neighborhood_carlitz() {
    let g = carlitz_theta();
    let rep = tn_neighborhood(&g, &place("finite:θ^2+t"), 1, 4).unwrap();
    assert_eq!(rep.epsilon, 1);
    assert_eq!(rep.violations_below[0].point, "θ");
}
