//! Bounded adelic computations over a finite set of tracked places:
//! discreteness, neighborhoods Φ_{t^n}(Γ), closure membership, local
//! divisibility, quotient separation and the product-formula snap.

mod closure;
mod discrete;
mod snap;

pub use closure::{
    approximation, closure_member, closure_torsion_check, prime_to_t_test, quotient_iso_check, ClosureVerdict, ClosureTorsionReport,
    PairSeparation, PlaceApproximation, PrimeToTVerdict, QuotientIsoReport,
};
pub use discrete::{discreteness_certificate, tn_neighborhood, DiscretenessCertificate, NeighborhoodReport};
pub use snap::{product_formula_snap, SnapOutcome, SnapStep};

use std::collections::BTreeMap;

use crate::base::matrix::{fp_nullspace, fp_solve};
use crate::base::FpMatrix;
use crate::error::{Error, Result};
use crate::field::{coordinates_vec, KElem};
use crate::local::LocalElem;
use crate::module::PhiModule;
use crate::places::{classify_places, Place};

/// Standard acceptance bounds: 3 places, cutoff 10, degree 8.
pub const DEFAULT_CUTOFF: i64 = 10;

/// A point of Π_v K_v^g recorded at finitely many places, integral at
/// every other place of Ω_1.
#[derive(Clone, Debug)]
pub struct AdelicPoint {
    pub tracked: BTreeMap<Place, Vec<LocalElem>>,
    pub integral_elsewhere: bool,
}

impl AdelicPoint {
    /// The diagonal image of a K-point integral on Ω_1.
    pub fn diagonal(x: &[KElem], places: &[Place], n: i64) -> Self {
        let tracked = places.iter().map(|v| (v.clone(), x.iter().map(|c| LocalElem::embed(c, v, n)).collect())).collect();
        AdelicPoint { tracked, integral_elsewhere: true }
    }
}

/// Ω_1 check for the module and its Drinfeld module.
pub fn require_omega1(gamma: &PhiModule, v: &Place) -> Result<()> {
    let sets = classify_places(gamma.phi().phi_t().coeffs(), gamma.gens())?;
    if !sets.in_omega1(v) {
        return Err(Error::BadReduction(format!("{} is not in Ω_1", v.to_text())));
    }
    Ok(())
}

/// Degree-one places in Ω_1 for gamma, in sampling order.
pub fn omega1_linear_places(gamma: &PhiModule, count: usize) -> Result<Vec<Place>> {
    let sets = classify_places(gamma.phi().phi_t().coeffs(), gamma.gens())?;
    let mut out = Vec::new();
    let mut n = count;
    while out.len() < count {
        n += count;
        out = crate::places::linear_places(gamma.modulus(), n).into_iter().filter(|v| sets.in_omega1(v)).take(count).collect();
    }
    Ok(out)
}

/// Points embedded once at a place; F_p-linear questions about their
/// classes modulo u^k.
pub struct LocalTable {
    pub place: Place,
    pub cutoff: i64,
    local: Vec<Vec<LocalElem>>,
    p: u32,
}

impl LocalTable {
    pub fn new(points: &[Vec<KElem>], place: &Place, cutoff: i64, p: u32) -> Self {
        let local = points.iter().map(|x| x.iter().map(|c| LocalElem::embed(c, place, cutoff)).collect()).collect();
        LocalTable { place: place.clone(), cutoff, local, p }
    }

    fn truncations(&self, extra: Option<&[LocalElem]>, k: i64) -> FpMatrix {
        let g = self.local.first().map(|x| x.len()).or(extra.map(|e| e.len())).unwrap_or(1);
        let mut pts: Vec<Vec<KElem>> = self.local.iter().map(|x| x.iter().map(|c| encode(&c.truncate(k), self.p)).collect()).collect();
        if let Some(e) = extra {
            pts.push(e.iter().map(|c| encode(&c.truncate(k), self.p)).collect());
        }
        coordinates_vec(&pts, g, self.p).1
    }

    pub fn len(&self) -> usize {
        self.local.len()
    }

    pub fn is_empty(&self) -> bool {
        self.local.is_empty()
    }

    /// Combinations Σ e_j P_j with valuation ≥ k.
    pub fn kernel(&self, k: i64) -> Vec<Vec<u32>> {
        if self.local.is_empty() {
            return Vec::new();
        }
        fp_nullspace(&self.truncations(None, k))
    }

    /// A combination congruent to y modulo u^k.
    pub fn solve(&self, y: &[LocalElem], k: i64) -> Option<Vec<u32>> {
        let n = self.local.len();
        let m = self.truncations(Some(y), k);
        let mut a = FpMatrix::zeros(m.rows(), n, self.p);
        let mut b = vec![0; m.rows()];
        for i in 0..m.rows() {
            for j in 0..n {
                a.set(i, j, m.get(i, j));
            }
            b[i] = m.get(i, n);
        }
        if n == 0 {
            return b.iter().all(|&x| x == 0).then(Vec::new);
        }
        fp_solve(&a, &b).map(|(x, _)| x)
    }
}

fn encode(f: &crate::field::FPoly, p: u32) -> KElem {
    if f.is_zero() {
        return KElem::zero(p);
    }
    let (num, den) = f.to_bipoly();
    KElem::new(num, crate::field::BiPoly::from_rpoly(den)).unwrap()
}

/// Combinations with valuation ≥ k at every table's place.
pub fn common_kernel(tables: &[LocalTable], k: i64) -> Vec<Vec<u32>> {
    let Some(first) = tables.first() else { return Vec::new() };
    let n = first.len();
    if n == 0 {
        return Vec::new();
    }
    let ms: Vec<FpMatrix> = tables.iter().map(|t| t.truncations(None, k)).collect();
    let rows: usize = ms.iter().map(|m| m.rows()).sum();
    let mut all = FpMatrix::zeros(rows, n, first.p);
    let mut off = 0;
    for m in &ms {
        for i in 0..m.rows() {
            for j in 0..n {
                all.set(off + i, j, m.get(i, j));
            }
        }
        off += m.rows();
    }
    fp_nullspace(&all)
}

/// Dimension of an F_p-span given by vectors.
pub fn span_dim(vs: &[Vec<u32>], len: usize, p: u32) -> usize {
    if vs.is_empty() {
        return 0;
    }
    FpMatrix::from_rows(vs, len, p).rank()
}

#[cfg(test)]
mod tests;
