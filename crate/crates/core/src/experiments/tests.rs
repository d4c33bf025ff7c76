use super::*;
use crate::drinfeld::DrinfeldModule;
use crate::field::parse_k;
use crate::module::{divisible_hull, HullBounds};
use crate::twisted::TwistedPoly;

fn k(s: &str) -> KElem {
    parse_k(s, 3).unwrap()
}

fn psi() -> DrinfeldModule {
    DrinfeldModule::new(TwistedPoly::parse("[0, θ, 1]", 3).unwrap(), None).unwrap()
}

fn psi_hull() -> PhiModule {
    let g = PhiModule::scalar(psi(), &[k("θ")]);
    divisible_hull(&g, &HullBounds::default()).hull
}

fn zero_dim(s: &str) -> VarietySpec {
    VarietySpec::parse_points(s, 3, 1).unwrap()
}

#[test]
fn generic_zero_dim() {
    let g = PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("θ")]);
    let r = generic_char_experiment(&g, &zero_dim("θ; θ+1"), &ExperimentBounds::default()).unwrap();
    assert_eq!(r.k_side, vec!["θ"]);
    assert_eq!(r.adelic_side, vec!["θ"]);
    assert_eq!(r.verdict, Verdict::TheoremConfirmed);
    let e = generic_char_experiment(&g, &zero_dim(""), &ExperimentBounds::default()).unwrap();
    assert!(e.k_side.is_empty() && e.adelic_side.is_empty());
}

#[test]
fn generic_hypersurface() {
    let g = PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("θ")]);
    let v = VarietySpec::hypersurface(MPoly::parse("x - θ", 3, 1).unwrap(), 1).unwrap();
    let r = generic_char_experiment(&g, &v, &ExperimentBounds::default()).unwrap();
    assert_eq!(r.k_side, vec!["θ"]);
    assert_eq!(r.verdict, Verdict::TheoremConfirmed);
}

#[test]
fn generic_rejects_special() {
    let g = PhiModule::scalar(psi(), &[k("θ")]);
    assert_eq!(generic_char_experiment(&g, &zero_dim("θ"), &ExperimentBounds::default()).unwrap_err(), Error::NotGeneric);
}

#[test]
fn zero_dim_examples() {
    let g = psi_hull();
    let b = ExperimentBounds::default();
    // Ψ_{t-1}(1) = θ, so 1 and Ψ_t(1) = θ+1 lie in the hull
    assert!(g.member(&[k("1")], 8).is_member());
    let r = zero_dim_intersection(&g, &zero_dim("θ; θ+1"), &[], &b).unwrap();
    assert_eq!(r.k_side, vec!["θ", "θ+1"]);
    assert_eq!(r.adelic_side, r.k_side);
    assert_eq!(r.verdict, Verdict::TheoremConfirmed, "{r:?}");
    let z = zero_dim_intersection(&g, &zero_dim("0"), &[], &b).unwrap();
    assert_eq!(z.adelic_side, vec!["0"]);
    let n = zero_dim_intersection(&g, &zero_dim("θ^2"), &[], &b).unwrap();
    assert!(n.k_side.is_empty() && n.adelic_side.is_empty(), "{n:?}");
    assert_eq!(n.verdict, Verdict::TheoremConfirmed);
}

#[test]
fn uniformity_parabola() {
    let x = VarietySpec::hypersurface(MPoly::parse("y - x^2", 3, 2).unwrap(), 2).unwrap();
    let tr: Vec<Vec<KElem>> = ["0,0", "θ,0", "0,θ", "1,t", "θ,θ^4+θ^9"]
        .iter()
        .map(|s| s.split(',').map(k).collect())
        .collect();
    let t = uniformity_probe(psi().phi_t(), &x, &tr, 3, &SearchBox::default()).unwrap();
    assert_eq!(t.candidates, 729);
    assert!(t.monotone);
    assert!(t.certified);
    assert_eq!(t.counts[0], vec![729, 1, 1, 1]);
    assert_eq!(t.max_per_m, vec![729, 1, 1, 1]);
}

#[test]
fn additive_graph_refused() {
    let x = VarietySpec::hypersurface(MPoly::parse("y - x^3", 3, 2).unwrap(), 2).unwrap();
    assert!(uniformity_probe(psi().phi_t(), &x, &[], 1, &SearchBox::default()).is_err());
}

#[test]
fn reduce_linear() {
    let g = psi_hull();
    let v = VarietySpec::hypersurface(MPoly::parse("x - θ", 3, 1).unwrap(), 1).unwrap();
    let b = ExperimentBounds::default();
    let r1 = uniform_dml_reduce(&g, &v, 1, &b).unwrap();
    assert!(r1.w.contains(&[k("θ")]));
    assert_eq!(r1.report.k_side, vec!["θ"]);
    let r0 = uniform_dml_reduce(&g, &v, 0, &b).unwrap();
    assert_eq!(r0.coset_representatives.len(), 1);
    assert_eq!(r0.report.adelic_side, vec!["θ"]);
}
