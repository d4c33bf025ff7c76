//! Exact solutions of f(X) = y in K for an additive polynomial f.
//!
//! For every valuation w of K (the places, the Gauss valuations of primes
//! of F_p[t], and the degree valuations in θ and t), a nonzero solution has
//! w(X) in a finite candidate set read off the Newton polygon: either two
//! terms w(α_i) + p^i w(X) tie for the minimum, or the unique minimum equals
//! w(y). Lower bounds give a denominator D and a numerator box, and the
//! unknown numerator coefficients solve an F_p-linear system.

use super::DrinfeldModule;
use crate::base::sparse::{sparse_from_entries, SparseSolver, SparseVec};
use crate::base::RPoly;
use crate::field::coprime::{coprime_base, multiplicity};
use crate::field::{BiPoly, KElem};
use crate::twisted::TwistedPoly;

/// Default cap on the numerator degrees in θ and t.
pub const DEFAULT_DEGREE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionOptions {
    pub cap: usize,
    /// Caller overrides; smaller than the derived bound flags the result.
    pub max_deg_theta: Option<usize>,
    pub max_deg_t: Option<usize>,
    /// At most p^max_kernel_dim solutions are listed.
    pub max_kernel_dim: usize,
}

impl Default for DivisionOptions {
    fn default() -> Self {
        DivisionOptions { cap: DEFAULT_DEGREE_CAP, max_deg_theta: None, max_deg_t: None, max_kernel_dim: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SolveBounds {
    pub denominator: String,
    pub deg_theta: usize,
    pub deg_t: usize,
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DivisionResult {
    pub solutions: Vec<KElem>,
    /// True when every solution in K is listed.
    pub complete: bool,
    pub bound_too_small: bool,
    pub truncated: bool,
    pub kernel_dim: usize,
    pub bounds: Option<SolveBounds>,
}

impl DivisionResult {
    fn trivial(y_is_zero: bool, p: u32) -> Self {
        DivisionResult {
            solutions: if y_is_zero { vec![KElem::zero(p)] } else { Vec::new() },
            complete: true,
            bound_too_small: false,
            truncated: false,
            kernel_dim: 0,
            bounds: None,
        }
    }
}

/// Integer candidates for w(X) given w(α_i) (None for α_i = 0) and w(y).
fn candidates(wa: &[(usize, i64)], wy: Option<i64>, p: u32) -> Vec<i64> {
    let pw = |i: usize| (p as i64).pow(i as u32);
    let mut out = Vec::new();
    if let Some(wy) = wy {
        for &(i, w) in wa {
            let n = wy - w;
            if n.rem_euclid(pw(i)) == 0 {
                out.push(n.div_euclid(pw(i)));
            }
        }
    }
    for (k, &(i, wi)) in wa.iter().enumerate() {
        for &(j, wj) in &wa[k + 1..] {
            let n = wi - wj;
            let d = pw(j) - pw(i);
            if n.rem_euclid(d) == 0 {
                out.push(n.div_euclid(d));
            }
        }
    }
    out
}

/// Lower bound min(0, candidates), or None when no nonzero X is possible.
fn lower_bound(wa: &[(usize, i64)], wy: Option<i64>, p: u32) -> Option<i64> {
    let c = candidates(wa, wy, p);
    c.into_iter().min().map(|m| m.min(0))
}

fn pow_checked(p: u32, i: usize) -> Option<usize> {
    (p as usize).checked_pow(i as u32)
}

/// All X in K with f(X) = y, within the derived (or overridden) bounds.
pub fn solve_additive(f: &TwistedPoly, y: &KElem, opts: &DivisionOptions) -> DivisionResult {
    assert!(!f.is_zero(), "division by the zero map");
    let p = f.modulus();
    let alphas: Vec<(usize, &KElem)> = f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let y_zero = y.is_zero();
    let wy = |v: &dyn Fn(&KElem) -> i64| if y_zero { None } else { Some(v(y)) };

    // finite valuations via a coprime square-free base
    let mut polys: Vec<BiPoly> = Vec::new();
    for (_, a) in &alphas {
        polys.push(a.num().clone());
        polys.push(a.den().clone());
    }
    if !y_zero {
        polys.push(y.num().clone());
        polys.push(y.den().clone());
    }
    let base = coprime_base(&polys);
    let mut den = BiPoly::one(p);
    for b in &base {
        let val = |z: &KElem| multiplicity(z.num(), b) - multiplicity(z.den(), b);
        let wa: Vec<(usize, i64)> = alphas.iter().map(|(i, a)| (*i, val(a))).collect();
        match lower_bound(&wa, wy(&val), p) {
            None => return DivisionResult::trivial(y_zero, p),
            Some(l) if l < 0 => den = den.mul_ref(&b.pow((-l) as u64)),
            _ => {}
        }
    }
    // degree valuations: w = −deg_θ and w = −deg_t
    let vtheta = |z: &KElem| z.den().dtheta() - z.num().dtheta();
    let vt = |z: &KElem| z.den().deg_t() as i64 - z.num().deg_t() as i64;
    let wa: Vec<(usize, i64)> = alphas.iter().map(|(i, a)| (*i, vtheta(a))).collect();
    let Some(lth) = lower_bound(&wa, wy(&vtheta), p) else { return DivisionResult::trivial(y_zero, p) };
    let wa: Vec<(usize, i64)> = alphas.iter().map(|(i, a)| (*i, vt(a))).collect();
    let Some(lt) = lower_bound(&wa, wy(&vt), p) else { return DivisionResult::trivial(y_zero, p) };

    let mut bth = (-lth) as usize + den.dtheta() as usize;
    let mut bt = (-lt) as usize + den.deg_t();
    let mut complete = true;
    let mut bound_too_small = false;
    let mut capped = false;
    if let Some(m) = opts.max_deg_theta.filter(|&m| m < bth) {
        bth = m;
        bound_too_small = true;
    }
    if let Some(m) = opts.max_deg_t.filter(|&m| m < bt) {
        bt = m;
        bound_too_small = true;
    }
    if bth > opts.cap {
        bth = opts.cap;
        capped = true;
    }
    if bt > opts.cap {
        bt = opts.cap;
        capped = true;
    }
    complete &= !(bound_too_small || capped);
    let bounds = SolveBounds { denominator: den.to_text(), deg_theta: bth, deg_t: bt, capped };

    // Σ C_i N^{p^i} = y·E with E = L·D^{p^T}, C_i = A_i·(L/B_i)·D^{p^T − p^i}
    let top = alphas.last().unwrap().0;
    let lden = alphas.iter().fold(BiPoly::one(p), |acc, (_, a)| crate::field::coords::lcm(&acc, a.den()));
    let dtop = den.frobenius(top as u32);
    let (yn, yd) = if y_zero { (BiPoly::zero(p), BiPoly::one(p)) } else { (y.num().clone(), y.den().clone()) };
    let mut gs: Vec<(usize, Vec<(u64, u64, u32)>)> = Vec::new();
    for (i, a) in &alphas {
        let mut c = a.num().mul_ref(&lden.exact_div(a.den()).unwrap());
        if !den.is_one() && *i < top {
            c = c.mul_ref(&dtop.exact_div(&den.frobenius(*i as u32)).unwrap());
        }
        let g = c.mul_ref(&yd);
        let terms = g
            .coeffs()
            .iter()
            .enumerate()
            .flat_map(|(j, r)| {
                r.coeffs().iter().enumerate().filter(|(_, &v)| v != 0).map(move |(k, &v)| (j as u64, k as u64, v))
            })
            .collect();
        gs.push((*i, terms));
    }
    let key = |th: u64, t: u64| (th << 32) | t;
    let target: SparseVec = if y_zero {
        Vec::new()
    } else {
        let e = lden.mul_ref(&dtop);
        let rhs = yn.mul_ref(&e);
        sparse_from_entries(
            rhs.coeffs().iter().enumerate().flat_map(|(j, r)| {
                r.coeffs().iter().enumerate().filter(|(_, &v)| v != 0).map(move |(k, &v)| (key(j as u64, k as u64), v))
            }),
            p,
        )
    };
    let monos: Vec<(usize, usize)> = (0..=bth).flat_map(|b| (0..=bt).map(move |a| (b, a))).collect();
    let columns: Vec<SparseVec> = monos
        .iter()
        .map(|&(b, a)| {
            sparse_from_entries(
                gs.iter().flat_map(|(i, terms)| {
                    let q = pow_checked(p, *i).expect("τ-degree overflow") as u64;
                    terms.iter().map(move |&(j, k, v)| (key(j + b as u64 * q, k + a as u64 * q), v))
                }),
                p,
            )
        })
        .collect();
    let solver = SparseSolver::new(&columns, p);
    let Some(part) = solver.solve(&target) else {
        return DivisionResult { solutions: Vec::new(), complete, bound_too_small, truncated: false, kernel_dim: solver.kernel().len(), bounds: Some(bounds) };
    };
    let to_elem = |v: &[u32]| -> KElem {
        let mut rows: Vec<Vec<u32>> = vec![vec![0; bt + 1]; bth + 1];
        for (&(b, a), &x) in monos.iter().zip(v) {
            rows[b][a] = x;
        }
        let num = BiPoly::from_coeffs(rows.into_iter().map(|r| RPoly::from_coeffs(r, p)).collect(), p);
        KElem::new(num, den.clone()).unwrap()
    };
    let x0 = to_elem(&part);
    assert_eq!(f.eval(&x0), *y, "division solver produced a non-solution");
    let kernel: Vec<KElem> = solver.kernel().iter().map(|k| to_elem(k)).collect();
    for k in &kernel {
        assert!(f.eval(k).is_zero(), "division solver produced a non-kernel element");
    }
    let kdim = kernel.len();
    let truncated = kdim > opts.max_kernel_dim;
    let used = &kernel[..kdim.min(opts.max_kernel_dim)];
    let mut sols = vec![x0];
    for k in used {
        let mut next = Vec::with_capacity(sols.len() * p as usize);
        for s in &sols {
            for c in 0..p {
                next.push(s + &k.scale(c));
            }
        }
        sols = next;
    }
    if sols.len() <= 243 {
        for s in &sols {
            assert_eq!(f.eval(s), *y, "division solver produced a non-solution");
        }
    }
    sols.sort_by(|a, b| a.cmp_canonical(b));
    sols.dedup();
    DivisionResult { solutions: sols, complete: complete && !truncated, bound_too_small, truncated, kernel_dim: kdim, bounds: Some(bounds) }
}

/// All X in K with Φ_a(X) = y within bounds.
pub fn division_points(phi: &DrinfeldModule, a: &RPoly, y: &KElem, opts: &DivisionOptions) -> DivisionResult {
    assert!(!a.is_zero(), "a must be nonzero");
    solve_additive(&phi.phi_action(a), y, opts)
}

/// Coordinatewise division in K^g; the solution set is the product.
pub fn division_points_vec(
    phi: &DrinfeldModule,
    a: &RPoly,
    y: &[KElem],
    opts: &DivisionOptions,
) -> (Vec<Vec<KElem>>, bool) {
    let f = phi.phi_action(a);
    let mut out: Vec<Vec<KElem>> = vec![Vec::new()];
    let mut complete = true;
    let limit = (phi.modulus() as usize).pow(opts.max_kernel_dim as u32);
    for yk in y {
        let r = solve_additive(&f, yk, opts);
        complete &= r.complete;
        let mut next = Vec::new();
        for prefix in &out {
            for s in &r.solutions {
                if next.len() >= limit {
                    complete = false;
                    break;
                }
                let mut v = prefix.clone();
                v.push(s.clone());
                next.push(v);
            }
        }
        out = next;
    }
    (out, complete)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_k, parse_r};

    fn module(s: &str) -> DrinfeldModule {
        DrinfeldModule::new(TwistedPoly::parse(s, 3).unwrap(), None).unwrap()
    }

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    fn texts(r: &DivisionResult) -> Vec<String> {
        r.solutions.iter().map(|x| x.to_text()).collect()
    }

    #[test]
    fn carlitz_kernel_is_trivial() {
        let c = module("[t, 1]");
        let r = division_points(&c, &parse_r("t", 3).unwrap(), &k("0"), &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["0"]);
        assert!(r.complete);
    }

    #[test]
    fn carlitz_division_of_image() {
        let c = module("[t, 1]");
        let r = division_points(&c, &parse_r("t", 3).unwrap(), &k("t*θ+θ^3"), &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["θ"]);
        let r = division_points(&c, &parse_r("t^2+1", 3).unwrap(), &c.act(&parse_r("t^2+1", 3).unwrap(), &k("(θ+1)/(t*θ)")), &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["(θ+1)/(t*θ)"]);
    }

    #[test]
    fn torsion_of_twisted_generic_module() {
        let phi = module("[t, 2*t/θ^2]");
        let r = division_points(&phi, &parse_r("t", 3).unwrap(), &k("0"), &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["0", "θ", "2*θ"]);
    }

    #[test]
    fn inseparable_kernel() {
        let psi = module("[0, θ, 1]");
        let r = division_points(&psi, &parse_r("t", 3).unwrap(), &k("0"), &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["0"]);
        let y = psi.act(&parse_r("t", 3).unwrap(), &k("θ/(θ+t)"));
        let r = division_points(&psi, &parse_r("t", 3).unwrap(), &y, &DivisionOptions::default());
        assert_eq!(texts(&r), vec!["θ/(θ+t)"]);
    }

    #[test]
    fn override_flags() {
        let c = module("[t, 1]");
        let opts = DivisionOptions { max_deg_theta: Some(0), ..Default::default() };
        let r = division_points(&c, &parse_r("t", 3).unwrap(), &k("t*θ+θ^3"), &opts);
        assert!(r.bound_too_small && !r.complete && r.solutions.is_empty());
    }
}
