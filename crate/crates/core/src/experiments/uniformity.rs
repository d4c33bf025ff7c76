//! Counting points of translates of X in iterated images ψ^m(K^g).

use std::collections::HashMap;

use super::variety::{MPoly, VarietySpec};
use crate::base::RPoly;
use crate::drinfeld::{solve_additive, DivisionOptions};
use crate::error::{Error, Result};
use crate::field::{BiPoly, KElem};
use crate::module::point_text;
use crate::twisted::TwistedPoly;

/// Polynomials Σ c_ij θ^i t^j with i ≤ theta_deg, j ≤ t_deg.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SearchBox {
    pub theta_deg: usize,
    pub t_deg: usize,
}

impl Default for SearchBox {
    fn default() -> Self {
        SearchBox { theta_deg: 1, t_deg: 2 }
    }
}

const BOX_CAP: usize = 20000;

impl SearchBox {
    pub fn elements(&self, p: u32) -> Result<Vec<KElem>> {
        let digits = (self.theta_deg + 1) * (self.t_deg + 1);
        let Some(n) = (p as usize).checked_pow(digits as u32).filter(|&n| n <= BOX_CAP) else {
            return Err(Error::BoundExceeded(format!("search box of {p}^{digits} elements exceeds {BOX_CAP}")));
        };
        let mut out = Vec::with_capacity(n);
        for mut idx in 0..n {
            let mut rows = Vec::with_capacity(self.theta_deg + 1);
            for _ in 0..=self.theta_deg {
                let mut c = Vec::with_capacity(self.t_deg + 1);
                for _ in 0..=self.t_deg {
                    c.push((idx % p as usize) as u32);
                    idx /= p as usize;
                }
                rows.push(RPoly::from_coeffs(c, p));
            }
            out.push(KElem::from_bipoly(BiPoly::from_coeffs(rows, p)));
        }
        Ok(out)
    }
}

/// Points of V(f) whose first g−1 coordinates lie in the box; f must be
/// linear in its last variable.
pub fn enumerate_hypersurface(f: &MPoly, g: usize, b: &SearchBox) -> Result<Vec<Vec<KElem>>> {
    let p = f.modulus();
    let (a, c) = f
        .linear_in(g - 1)
        .ok_or_else(|| Error::Config("the equation must be linear in its last variable".into()))?;
    let elems = if g > 1 { b.elements(p)? } else { Vec::new() };
    let total = elems.len().checked_pow(g as u32 - 1).filter(|&n| n <= BOX_CAP);
    let Some(total) = total else {
        return Err(Error::BoundExceeded(format!("{} box points exceed {BOX_CAP}", elems.len())));
    };
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut x = Vec::with_capacity(g);
        for _ in 0..g - 1 {
            x.push(elems[idx % elems.len()].clone());
            idx /= elems.len();
        }
        x.push(KElem::zero(p));
        let av = a.eval(&x);
        if av.is_zero() {
            continue;
        }
        x[g - 1] = (-&c.eval(&x)).div(&av)?;
        out.push(x);
    }
    Ok(out)
}

/// Refutes the obvious translates of algebraic subgroups: hyperplanes and
/// graphs of additive polynomials.
pub fn subgroup_translate_check(f: &MPoly, g: usize) -> Result<()> {
    if g < 2 {
        return Ok(());
    }
    let total_deg = f.terms().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0);
    if total_deg == 1 {
        return Err(Error::Config("V is a translate of a hyperplane".into()));
    }
    if let Some((a, c)) = f.linear_in(g - 1) {
        let p = f.modulus();
        let additive = a.nvars() == 0
            && c.terms().all(|(e, _)| {
                let s: u32 = e.iter().sum();
                s == 0 || (e.iter().filter(|&&k| k > 0).count() == 1 && is_power_of(s, p))
            });
        if additive {
            return Err(Error::Config("V is a translate of the graph of an additive polynomial".into()));
        }
    }
    Ok(())
}

fn is_power_of(mut s: u32, p: u32) -> bool {
    while s % p == 0 {
        s /= p;
    }
    s == 1
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UniformityTable {
    pub psi: String,
    pub variety: VarietySpec,
    pub search_box: SearchBox,
    pub candidates: usize,
    pub translates: Vec<String>,
    /// counts[i][m] = |(a_i + X(K)) ∩ ψ^m(K^g)| within the box.
    pub counts: Vec<Vec<usize>>,
    pub max_per_m: Vec<usize>,
    pub monotone: bool,
    /// Every division solve listed all solutions.
    pub certified: bool,
    pub assumption: String,
}

/// Largest k ≤ m_max with c ∈ ψ^k(K), by chains of division solves.
fn image_depth(psi: &TwistedPoly, c: &KElem, m_max: usize, opts: &DivisionOptions, certified: &mut bool) -> usize {
    let mut level = vec![c.clone()];
    for k in 0..m_max {
        let mut next = Vec::new();
        for w in &level {
            let r = solve_additive(psi, w, opts);
            *certified &= r.complete;
            for s in r.solutions {
                if !next.contains(&s) {
                    next.push(s);
                }
            }
        }
        if next.is_empty() {
            return k;
        }
        level = next;
    }
    m_max
}

pub fn uniformity_probe(
    psi: &TwistedPoly,
    x: &VarietySpec,
    translates: &[Vec<KElem>],
    m_max: usize,
    search_box: &SearchBox,
) -> Result<UniformityTable> {
    if psi.tau_valuation().unwrap_or(0) < 1 {
        return Err(Error::Config("ψ must have τ-valuation at least 1".into()));
    }
    let VarietySpec::Hypersurface { poly, g } = x else {
        return Err(Error::Config("hypersurface required".into()));
    };
    subgroup_translate_check(poly, *g)?;
    for a in translates {
        if a.len() != *g {
            return Err(Error::Config(format!("translate {} is not in K^{g}", point_text(a))));
        }
    }
    let pts = enumerate_hypersurface(poly, *g, search_box)?;
    let opts = DivisionOptions::default();
    let mut certified = true;
    let mut memo: HashMap<KElem, usize> = HashMap::new();
    let mut counts = Vec::new();
    for a in translates {
        let mut row = vec![0usize; m_max + 1];
        for z in &pts {
            let mut depth = m_max;
            for (c, s) in z.iter().zip(a) {
                let y = c + s;
                let d = match memo.get(&y) {
                    Some(&d) => d,
                    None => {
                        let d = image_depth(psi, &y, m_max, &opts, &mut certified);
                        memo.insert(y, d);
                        d
                    }
                };
                depth = depth.min(d);
                if depth == 0 {
                    break;
                }
            }
            for r in row.iter_mut().take(depth + 1) {
                *r += 1;
            }
        }
        counts.push(row);
    }
    let max_per_m = (0..=m_max).map(|m| counts.iter().map(|r| r[m]).max().unwrap_or(0)).collect();
    let monotone = counts.iter().all(|r| r.windows(2).all(|w| w[0] >= w[1]));
    Ok(UniformityTable {
        psi: psi.to_text(),
        variety: x.clone(),
        search_box: search_box.clone(),
        candidates: pts.len(),
        translates: translates.iter().map(|a| point_text(a)).collect(),
        counts,
        max_per_m,
        monotone,
        certified,
        assumption: "X contains no translate of a positive-dimensional algebraic subgroup beyond the refuted families".into(),
    })
}
