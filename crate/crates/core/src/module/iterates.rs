//! Tables of iterates Φ_{t^j}(x_i) with a size cap, and the height-escape
//! argument that covers the iterates beyond the cap.
//!
//! For a degree valuation w (in θ or in t) put h = −w. Once
//! h(c_D) + p^D·H beats h(c_i) + p^i·H for every lower coefficient and
//! exceeds H, the top term of Φ_t dominates forever and h grows strictly
//! along the orbit. A linear relation whose highest term is such an
//! uncomputed iterate cannot cancel, provided those heights are distinct
//! and exceed every height that was computed.

use crate::drinfeld::DrinfeldModule;
use crate::field::{BiPoly, KElem};

/// Iterates whose θ- or t-degree would pass this are not computed.
pub const ITERATE_SIZE_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum HeightVar {
    Theta,
    T,
}

fn deg(f: &BiPoly, var: HeightVar) -> i64 {
    match var {
        HeightVar::Theta => f.dtheta(),
        HeightVar::T => f.deg_t() as i64,
    }
}

/// h(x) = deg num − deg den in the chosen variable; None for 0.
pub fn height(x: &KElem, var: HeightVar) -> Option<i64> {
    (!x.is_zero()).then(|| deg(x.num(), var) - deg(x.den(), var))
}

fn size(x: &KElem) -> usize {
    if x.is_zero() {
        return 0;
    }
    [x.num().dtheta().max(0) as usize, x.den().dtheta().max(0) as usize, x.num().deg_t(), x.den().deg_t()]
        .into_iter()
        .max()
        .unwrap()
}

#[derive(Clone, Debug)]
pub struct IterateTable {
    pub deg_bound: usize,
    /// points[i][j] = Φ_{t^j}(x_i) for the computed j.
    pub points: Vec<Vec<Vec<KElem>>>,
    /// Heights that uncomputed iterates are certified to exceed, if any.
    escape: Option<(HeightVar, usize, i64)>,
}

impl IterateTable {
    pub fn new(phi: &DrinfeldModule, gens: &[Vec<KElem>], deg_bound: usize) -> Self {
        let p = phi.modulus() as usize;
        let top = phi.phi_t().tau_degree().unwrap();
        let growth = p.pow(top as u32);
        let mut points = Vec::new();
        for x in gens {
            let mut its = vec![x.clone()];
            while its.len() <= deg_bound {
                let last = its.last().unwrap();
                let s = last.iter().map(size).max().unwrap_or(0).max(1);
                if s.saturating_mul(growth) > ITERATE_SIZE_CAP {
                    break;
                }
                its.push(last.iter().map(|c| phi.phi_t().eval(c)).collect());
            }
            points.push(its);
        }
        let mut t = IterateTable { deg_bound, points, escape: None };
        t.escape = t.find_escape(phi);
        t
    }

    pub fn is_truncated(&self) -> bool {
        self.points.iter().any(|its| its.len() <= self.deg_bound)
    }

    /// Number of computed iterates for generator i.
    pub fn computed(&self, i: usize) -> usize {
        self.points[i].len()
    }

    /// Columns (generator, j) in order.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        self.points.iter().enumerate().flat_map(|(i, its)| (0..its.len()).map(move |j| (i, j))).collect()
    }

    pub fn flat_points(&self) -> Vec<Vec<KElem>> {
        self.points.iter().flatten().cloned().collect()
    }

    fn find_escape(&self, phi: &DrinfeldModule) -> Option<(HeightVar, usize, i64)> {
        if !self.is_truncated() {
            return None;
        }
        let g = self.points[0][0].len();
        let p = phi.modulus() as i64;
        let coeffs: Vec<(usize, &KElem)> = phi.phi_t().coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for var in [HeightVar::Theta, HeightVar::T] {
            let (dtop, ctop) = *coeffs.last().unwrap();
            let htop = height(ctop, var).unwrap();
            let pd = p.pow(dtop as u32);
            let escapes = |hh: i64| {
                htop + pd * hh > hh
                    && coeffs[..coeffs.len() - 1]
                        .iter()
                        .all(|(i, c)| htop + pd * hh > height(c, var).unwrap() + p.pow(*i as u32) * hh)
            };
            'coord: for k in 0..g {
                let mut beyond = Vec::new();
                for its in &self.points {
                    if its.len() > self.deg_bound {
                        continue;
                    }
                    let Some(mut hh) = height(&its.last().unwrap()[k], var) else { continue 'coord };
                    if !escapes(hh) {
                        continue 'coord;
                    }
                    for _ in its.len()..=self.deg_bound {
                        hh = htop + pd * hh;
                        beyond.push(hh);
                    }
                }
                let computed_max = self.points.iter().flatten().filter_map(|x| height(&x[k], var)).max().unwrap_or(i64::MIN);
                let mut sorted = beyond.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() == beyond.len() && sorted.first().is_some_and(|&m| m > computed_max) {
                    return Some((var, k, sorted[0]));
                }
            }
        }
        None
    }

    /// Whether relations (with right-hand side `target`, if any) that use
    /// uncomputed iterates are excluded, so the computed table is complete.
    pub fn complete_for(&self, target: Option<&[KElem]>) -> bool {
        if !self.is_truncated() {
            return true;
        }
        match (self.escape, target) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some((var, k, floor)), Some(y)) => height(&y[k], var).map_or(true, |h| h < floor),
        }
    }

    /// Degree bound up to which every generator was fully iterated.
    pub fn effective_bound(&self) -> usize {
        self.points.iter().map(|its| its.len() - 1).min().unwrap_or(self.deg_bound).min(self.deg_bound)
    }

    /// The θ-degrees of the computed iterates of generator i.
    pub fn theta_degrees(&self, i: usize) -> Vec<i64> {
        self.points[i].iter().map(|x| x.iter().map(|c| c.num().dtheta()).max().unwrap_or(-1)).collect()
    }
}
