//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 12 fails against its stated value (see README, "Known
//! deviations"); the binary exits nonzero only on other failures.

use std::time::{Duration, Instant};

use adelic_core::adelic::{
    closure_member, discreteness_certificate, omega1_linear_places, product_formula_snap, quotient_iso_check, ClosureVerdict,
    SnapOutcome,
};
use adelic_core::base::RPoly;
use adelic_core::cli::{build_config, run};
use adelic_core::drinfeld::{k_rational_torsion, DivisionOptions, DrinfeldModule};
use adelic_core::experiments::{
    generic_char_experiment, uniformity_probe, zero_dim_intersection, ExperimentBounds, MPoly, SearchBox, Verdict, VarietySpec,
};
use adelic_core::field::{parse_k, parse_r, BiPoly, KElem};
use adelic_core::local::{eval_local, hensel_solve, local_torsion, LocalElem};
use adelic_core::module::{divisible_hull, exhaustive_coset_count, point_text, HullBounds, Membership, PhiModule};
use adelic_core::places::{check_product_formula, Place};
use adelic_core::twisted::TwistedPoly;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose stated expected value conflicts with the mathematics.
const KNOWN_CONFLICTS: &[usize] = &[12];

type Check = std::result::Result<String, String>;

fn k(s: &str, p: u32) -> KElem {
    parse_k(s, p).unwrap()
}

fn r(s: &str, p: u32) -> RPoly {
    parse_r(s, p).unwrap()
}

fn module(s: &str, p: u32) -> DrinfeldModule {
    DrinfeldModule::new(TwistedPoly::parse(s, p).unwrap(), None).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Random polynomial of degree at most max_deg.
fn rand_rpoly(rng: &mut ChaCha8Rng, max_deg: usize, p: u32) -> RPoly {
    let deg = rng.gen_range(0..=max_deg);
    RPoly::from_coeffs((0..=deg).map(|_| rng.gen_range(0..p)).collect(), p)
}

fn rand_bipoly(rng: &mut ChaCha8Rng, dtheta: usize, dt: usize, p: u32) -> BiPoly {
    let n = rng.gen_range(0..=dtheta);
    let rows = (0..=n).map(|_| rand_rpoly(rng, dt, p)).collect();
    BiPoly::from_coeffs(rows, p)
}

fn c1_ring_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut n = 0;
    for p in [2u32, 3, 5] {
        for phi in [DrinfeldModule::carlitz(p)] {
            for _ in 0..200 {
                let a = rand_rpoly(&mut rng, 4, p);
                let b = rand_rpoly(&mut rng, 4, p);
                let (fa, fb) = (phi.phi_action(&a), phi.phi_action(&b));
                ensure(phi.phi_action(&(&a * &b)) == fa.compose(&fb), format!("Φ_ab ≠ Φ_a∘Φ_b for a={a}, b={b}, p={p}"))?;
                ensure(phi.phi_action(&(&a + &b)) == fa.add(&fb), format!("Φ_(a+b) ≠ Φ_a+Φ_b for a={a}, b={b}, p={p}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn c2_product_formula() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = 3;
    let mut n = 0;
    while n < 500 {
        let num = rand_bipoly(&mut rng, 5, 5, p);
        let den = rand_bipoly(&mut rng, 5, 5, p);
        let Ok(x) = KElem::new(num, den) else { continue };
        if x.is_zero() {
            continue;
        }
        let pf = check_product_formula(&x).map_err(|e| format!("{}: {e}", x.to_text()))?;
        ensure(pf.sum == 0, format!("Σ N_v v(x) = {} for {}", pf.sum, x.to_text()))?;
        n += 1;
    }
    Ok(format!("{n} elements"))
}

fn c3_carlitz_composition() -> Check {
    let c = DrinfeldModule::carlitz(3);
    let got = c.phi_action(&r("t^2", 3));
    let want = TwistedPoly::from_coeffs(vec![k("t^2", 3), k("t+t^3", 3), k("1", 3)], 3);
    ensure(got == want, format!("got {}", got.to_poly_text()))?;
    Ok(got.to_poly_text())
}

fn c4_torsion() -> Check {
    let opts = DivisionOptions::default();
    let t = r("t", 3);
    let texts = |phi: &DrinfeldModule| {
        let (pts, complete) = k_rational_torsion(phi, &t, &opts);
        (pts.iter().map(|x| x.to_text()).collect::<Vec<_>>(), complete)
    };
    let a = texts(&module("[t, 2*t/θ^2]", 3));
    ensure(a == (vec!["0".into(), "θ".into(), "2*θ".into()], true), format!("twisted: {a:?}"))?;
    let b = texts(&DrinfeldModule::carlitz(3));
    ensure(b == (vec!["0".into()], true), format!("Carlitz: {b:?}"))?;
    let c = texts(&module("[0, θ, 1]", 3));
    ensure(c == (vec!["0".into()], true), format!("Ψ: {c:?}"))?;
    Ok("{0, θ, 2θ}, {0}, {0}".into())
}

fn residual(phi: &DrinfeldModule, a: &RPoly, x: &LocalElem, y: &LocalElem, v: &Place, n: i64) -> Ratio<i64> {
    let coeffs: Vec<LocalElem> = phi.phi_action(a).coeffs().iter().map(|c| LocalElem::embed(c, v, n)).collect();
    eval_local(&coeffs, x).sub(y).valuation_or_precision()
}

fn c5_hensel_separable() -> Check {
    let p = 3;
    let n = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let phis = [DrinfeldModule::carlitz(p), module("[t, θ, 1]", p)];
    let mut roundtrips = 0;
    for i in 0..50 {
        let phi = &phis[i % 2];
        let a = loop {
            let a = rand_rpoly(&mut rng, 3, p);
            if a.coeff(0) != 0 {
                break a;
            }
        };
        let x = KElem::from_bipoly(rand_bipoly(&mut rng, 2, 1, p));
        let gamma = PhiModule::scalar(phi.clone(), &[x.clone()]);
        let places = omega1_linear_places(&gamma, 3).map_err(|e| e.to_string())?;
        let v = &places[rng.gen_range(0..places.len())];
        let y = LocalElem::embed(&phi.act(&a, &x), v, n);
        let sol = hensel_solve(phi, &a, &y, n).map_err(|e| format!("instance {i}: {e}"))?;
        let res = residual(phi, &a, &sol, &y, v, n);
        ensure(res >= Ratio::from(n), format!("instance {i}: residual valuation {res}"))?;
        // the lift differs from x by an a-torsion point of O_v
        let diff = sol.sub(&LocalElem::embed(&x, v, n));
        let tors = local_torsion(phi, &a, v, n).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(tors.iter().any(|z| z.congruent(&diff)), format!("instance {i}: lift is not x modulo a-torsion"))?;
        roundtrips += 1;
    }
    Ok(format!("50 instances, residual ≥ u^{n}, {roundtrips} round-trips"))
}

fn c6_hensel_inseparable() -> Check {
    let p = 3;
    let psi = module("[0, θ, 1]", p);
    let v = Place::parse("finite:θ+t", p).unwrap();
    let t = r("t", p);
    let y = LocalElem::embed(&psi.act(&t, &k("θ", p)), &v, 9);
    let x = hensel_solve(&psi, &t, &y, 9).map_err(|e| e.to_string())?;
    ensure(x.grid() == 1, format!("grid {}", x.grid()))?;
    let res = residual(&psi, &t, &x, &y, &v, 9);
    ensure(res >= Ratio::from(9), format!("residual valuation {res}"))?;
    Ok(format!("X̂ = {} on the 1/3-grid", x.to_text()))
}

fn c7_discreteness() -> Check {
    let p = 3;
    let gamma = PhiModule::scalar(DrinfeldModule::carlitz(p), &[k("θ", p)]);
    let places = ["θ", "θ^2+t", "θ^2+t+1", "θ^2+t+2", "θ^6+2*t*θ^4+t^2*θ^2+t"];
    let mut out = Vec::new();
    for s in places {
        let v = Place::parse(&format!("finite:{s}"), p).unwrap();
        let c = discreteness_certificate(&gamma, &v, 8).map_err(|e| format!("{s}: {e}"))?;
        ensure(c.ideal_checked, format!("{s}: I_1 not closed"))?;
        let c1 = c.principal_generator.clone().ok_or(format!("{s}: no principal generator"))?;
        let x = gamma.phi().act(&c1, &k("θ", p));
        let vx = v.valuation(&x);
        ensure(c.max_nonzero_valuation.is_some() && c.max_nonzero_valuation == vx, format!("{s}: max valuation {:?} vs v(Φ_c1(θ)) = {vx:?}", c.max_nonzero_valuation))?;
        out.push(format!("{s}: c1={c1}, v={}", vx.unwrap()));
    }
    Ok(out.join("; "))
}

fn c8_quotient() -> Check {
    let p = 3;
    let c = DrinfeldModule::carlitz(p);
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["θ"], "t"),
        (vec!["θ"], "t+1"),
        (vec!["θ"], "t^2"),
        (vec!["θ"], "t^2+1"),
        (vec!["θ", "θ^2"], "t"),
        (vec!["θ", "θ^2"], "t+2"),
    ];
    let mut out = Vec::new();
    for (gens, a) in cases {
        let gamma = PhiModule::scalar(c.clone(), &gens.iter().map(|g| k(g, p)).collect::<Vec<_>>());
        let a = r(a, p);
        let q = gamma.quotient(&a);
        let da = a.degree().unwrap_or(0);
        let ex = exhaustive_coset_count(&gamma, &a, da, 8);
        ensure(q.order(p) == ex as u128, format!("⟨{}⟩/Φ_{a}: SNF {} vs exhaustive {ex}", gens.join(","), q.order(p)))?;
        out.push(format!("⟨{}⟩/Φ_{a}={ex}", gens.join(",")));
    }
    let q = PhiModule::scalar(c, &[k("θ", p)]).quotient(&r("t", p));
    let reps: Vec<String> = q.representatives.iter().map(|x| point_text(x)).collect();
    ensure(reps == ["0", "θ", "2*θ"], format!("reps {reps:?}"))?;
    Ok(out.join(", "))
}

fn c9_quotient_iso() -> Check {
    let p = 3;
    let gamma = PhiModule::scalar(module("[0, θ, 1]", p), &[k("θ", p)]);
    let places = omega1_linear_places(&gamma, 3).map_err(|e| e.to_string())?;
    let rep = quotient_iso_check(&gamma, &r("t", p), &places, 10, 0, 0).map_err(|e| e.to_string())?;
    ensure(rep.injective, format!("unseparated pairs: {:?}", rep.pairs))?;
    Ok(format!("{} classes, {} pairs separated", rep.order, rep.pairs.len()))
}

fn c10_closure_member() -> Check {
    let p = 3;
    let gamma = PhiModule::scalar(module("[0, θ, 1]", p), &[k("θ", p)]);
    let places = omega1_linear_places(&gamma, 3).map_err(|e| e.to_string())?;
    let d = adelic_core::module::decompose(&gamma, &places, 8).map_err(|e| e.to_string())?;
    ensure(d.gamma0_gens.iter().all(|g| g == "0"), format!("Γ0 = {:?}", d.gamma0_gens))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut acc, mut rej) = (0, 0);
    while acc < 20 {
        let c = rand_rpoly(&mut rng, 2, p);
        let y = gamma.combination(&[c]);
        match closure_member(&gamma, &y, &places, 10, 8).map_err(|e| e.to_string())? {
            ClosureVerdict::InGamma { .. } => acc += 1,
            other => return Err(format!("member {} not accepted: {other:?}", point_text(&y))),
        }
    }
    while rej < 20 {
        let y = vec![KElem::from_bipoly(rand_bipoly(&mut rng, 3, 2, p))];
        if !matches!(gamma.member(&y, 8), Membership::NotFoundUpTo { complete: true, .. }) {
            continue;
        }
        match closure_member(&gamma, &y, &places, 10, 8).map_err(|e| e.to_string())? {
            ClosureVerdict::RejectedUpToBounds { .. } => rej += 1,
            other => return Err(format!("non-member {} not rejected: {other:?}", point_text(&y))),
        }
    }
    Ok(format!("{acc} accepted, {rej} rejected at 3 places, cutoff 10, degree 8"))
}

fn c11_snap() -> Check {
    let p = 3;
    let y0 = k("θ+t", p);
    let c = product_formula_snap(&vec![y0.clone(); 3], &y0, &[], 0).map_err(|e| e.to_string())?;
    ensure(matches!(c, SnapOutcome::SnapCertificate { from_index: 0, .. }), format!("{c:?}"))?;
    // |x_n| shrinks at the tracked place (θ) while the claimed untracked bound is q^2
    let seq: Vec<KElem> = (1..=5).map(|n| k(&format!("θ^{n}"), p)).collect();
    let tracked = [Place::parse("finite:θ", p).unwrap()];
    match product_formula_snap(&seq, &KElem::zero(p), &tracked, 2).map_err(|e| e.to_string())? {
        SnapOutcome::ContradictionTrace { n, tracked_sum, untracked_sum, c0, .. } => {
            ensure(tracked_sum + untracked_sum == 0 && tracked_sum > c0 && untracked_sum < -c0, "trace does not violate the bound")?;
            Ok(format!("x_{n}: tracked {tracked_sum} > c0 = {c0}, untracked {untracked_sum} < -c0"))
        }
        other => Err(format!("{other:?}")),
    }
}

fn psi_hull() -> PhiModule {
    let gamma = PhiModule::scalar(module("[0, θ, 1]", 3), &[k("θ", 3)]);
    divisible_hull(&gamma, &HullBounds::default()).hull
}

fn c12_zero_dim() -> Check {
    let gamma = psi_hull();
    let v = VarietySpec::parse_points("θ; θ+1", 3, 1).unwrap();
    let rep = zero_dim_intersection(&gamma, &v, &[], &ExperimentBounds::default()).map_err(|e| e.to_string())?;
    let got = format!("hull ⟨{}⟩, K-side {:?}, adelic side {:?}", rep.generators.join(", "), rep.k_side, rep.adelic_side);
    ensure(rep.k_side == ["θ"] && rep.adelic_side == ["θ"], format!("expected both sides {{θ}}; {got}"))?;
    Ok(got)
}

fn c13_generic() -> Check {
    let gamma = PhiModule::scalar(DrinfeldModule::carlitz(3), &[k("θ", 3)]);
    let v = VarietySpec::parse_points("θ; θ+1", 3, 1).unwrap();
    let rep = generic_char_experiment(&gamma, &v, &ExperimentBounds::default()).map_err(|e| e.to_string())?;
    ensure(rep.verdict == Verdict::TheoremConfirmed, format!("{:?}", rep.verdict))?;
    ensure(rep.k_side == ["θ"], format!("{:?}", rep.k_side))?;
    Ok("TheoremConfirmed, V(K)∩Γ = {θ}".into())
}

fn c14_uniformity() -> Check {
    let p = 3;
    let x = VarietySpec::hypersurface(MPoly::parse("y - x^2", p, 2).unwrap(), 2).unwrap();
    let tr: Vec<Vec<KElem>> = ["0,0", "θ,0", "0,θ", "1,t", "θ,θ^4+θ^9"]
        .iter()
        .map(|s| s.split(',').map(|c| k(c, p)).collect())
        .collect();
    let t = uniformity_probe(module("[0, θ, 1]", p).phi_t(), &x, &tr, 3, &SearchBox::default()).map_err(|e| e.to_string())?;
    ensure(t.monotone && t.certified, format!("monotone {}, certified {}", t.monotone, t.certified))?;
    Ok(format!("{} candidates, max per m {:?}", t.candidates, t.max_per_m))
}

const CONFIGS: &[&[&str]] = &[
    &["product-formula", "x=θ^2/(θ+t)"],
    &["compose", "a=t^2"],
    &["torsion", "phi=[t, 2*t/θ^2]", "a=t"],
    &["hensel", "phi=[0, θ, 1]", "a=t", "y=θ^4+θ^9", "place=finite:θ+t", "precision=9"],
    &["discreteness", "place=finite:θ^2+t"],
    &["module-quotient", "a=t"],
    &["quotient-iso", "phi=[0, θ, 1]", "a=t", "samples=4", "seed=9"],
    &["closure-member", "phi=[0, θ, 1]", "y=θ+1"],
    &["snap", "seq=θ; θ^2; θ^3", "y0=0", "tracked=finite:θ", "c0=1"],
    &["generic", "points=θ; θ+1"],
    &["uniformity", "phi=[0, θ, 1]", "g=2", "poly=y - x^2", "translates=0,0; θ,0", "m=2", "box_t=1"],
];

fn c15_determinism() -> Check {
    for c in CONFIGS {
        let args: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        let cfg = build_config(&args, None, None).map_err(|e| format!("{}: {e}", c[0]))?;
        let a = run(&cfg, 1).map_err(|e| format!("{}: {e}", c[0]))?.to_json();
        let b = run(&cfg, 4).map_err(|e| format!("{}: {e}", c[0]))?.to_json();
        ensure(a == b, format!("{}: reports differ", c[0]))?;
    }
    Ok(format!("{} configs byte-identical across reruns (1 and 4 threads)", CONFIGS.len()))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Check)> = vec![
        ("ring-homomorphism laws", 10, c1_ring_laws),
        ("product formula", 60, c2_product_formula),
        ("Carlitz composition witness", 1, c3_carlitz_composition),
        ("torsion witnesses", 5, c4_torsion),
        ("Hensel residual, separable", 60, c5_hensel_separable),
        ("Hensel, inseparable", 10, c6_hensel_inseparable),
        ("discreteness", 60, c7_discreteness),
        ("quotient structure", 30, c8_quotient),
        ("quotient separation at precision", 30, c9_quotient_iso),
        ("closure membership", 120, c10_closure_member),
        ("product-formula snap", 5, c11_snap),
        ("zero-dimensional theorem", 120, c12_zero_dim),
        ("generic-characteristic theorem", 60, c13_generic),
        ("uniformity probe", 120, c14_uniformity),
        ("determinism", 600, c15_determinism),
    ];
    // optional criterion numbers select a subset: `-- 3 7`
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = start.elapsed();
        let res = match res {
            Ok(d) if el > Duration::from_secs(limit) => Err(format!("{d} (over the {limit} s budget)")),
            other => other,
        };
        match res {
            Ok(d) => println!("criterion {id:>2} PASS [{:.2}s] {name}: {d}", el.as_secs_f64()),
            Err(d) => {
                let tag = if KNOWN_CONFLICTS.contains(&id) { " (known conflict)" } else { "" };
                println!("criterion {id:>2} FAIL{tag} [{:.2}s] {name}: {d}", el.as_secs_f64());
                if tag.is_empty() {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
