//! F_p-coordinates of K-elements over a common denominator, turning
//! K-linear data into F_p-linear systems.

use std::collections::BTreeMap;

use super::bipoly::BiPoly;
use super::kelem::KElem;
use crate::base::{FpMatrix, RPoly};

/// A monomial `t^t_exp θ^theta_exp`; ordered by θ-exponent, then t-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub theta_exp: usize,
    pub t_exp: usize,
}

#[derive(Clone, Debug)]
pub struct Coordinates {
    pub den: BiPoly,
    pub basis: Vec<Monomial>,
    /// `matrix[i][j]` is the coefficient of `basis[i]` in `xs[j]·den`.
    pub matrix: FpMatrix,
}

pub fn lcm(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = a.gcd(b);
    a.exact_div(&g).unwrap().mul_ref(b).normalized()
}

pub fn common_denominator(xs: &[KElem]) -> BiPoly {
    let p = xs.first().map_or(2, |x| x.modulus());
    xs.iter().fold(BiPoly::one(p), |d, x| lcm(&d, x.den()))
}

fn terms(f: &BiPoly) -> impl Iterator<Item = (Monomial, u32)> + '_ {
    f.coeffs().iter().enumerate().flat_map(|(j, r)| {
        r.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(i, &v)| (Monomial { theta_exp: j, t_exp: i }, v))
    })
}

/// Coordinates of `xs` over their least common denominator.
pub fn coordinates(xs: &[KElem], p: u32) -> Coordinates {
    let den = if xs.is_empty() { BiPoly::one(p) } else { common_denominator(xs) };
    let scaled: Vec<BiPoly> =
        xs.iter().map(|x| x.num().mul_ref(&den.exact_div(x.den()).expect("lcm is a multiple"))).collect();
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for f in &scaled {
        for (m, _) in terms(f) {
            index.insert(m, 0);
        }
    }
    let basis: Vec<Monomial> = index.keys().copied().collect();
    for (k, m) in basis.iter().enumerate() {
        index.insert(*m, k);
    }
    let mut matrix = FpMatrix::zeros(basis.len(), xs.len(), p);
    for (j, f) in scaled.iter().enumerate() {
        for (m, v) in terms(f) {
            matrix.set(index[&m], j, v);
        }
    }
    Coordinates { den, basis, matrix }
}

/// Stacked coordinates for points of K^g: coordinate k of every point is
/// written over its own common denominator; rows are concatenated.
pub fn coordinates_vec(points: &[Vec<KElem>], g: usize, p: u32) -> (Vec<Coordinates>, FpMatrix) {
    let per: Vec<Coordinates> =
        (0..g).map(|k| coordinates(&points.iter().map(|x| x[k].clone()).collect::<Vec<_>>(), p)).collect();
    let rows: usize = per.iter().map(|c| c.matrix.rows()).sum();
    let mut m = FpMatrix::zeros(rows, points.len(), p);
    let mut off = 0;
    for c in &per {
        for i in 0..c.matrix.rows() {
            for j in 0..points.len() {
                m.set(off + i, j, c.matrix.get(i, j));
            }
        }
        off += c.matrix.rows();
    }
    (per, m)
}

impl Coordinates {
    /// Rebuilds the element whose coordinate column is `col`.
    pub fn reconstruct(&self, col: &[u32]) -> KElem {
        let p = self.den.modulus();
        let mut coeffs: Vec<Vec<u32>> = Vec::new();
        for (m, &v) in self.basis.iter().zip(col) {
            if v == 0 {
                continue;
            }
            if coeffs.len() <= m.theta_exp {
                coeffs.resize(m.theta_exp + 1, Vec::new());
            }
            let row = &mut coeffs[m.theta_exp];
            if row.len() <= m.t_exp {
                row.resize(m.t_exp + 1, 0);
            }
            row[m.t_exp] = v;
        }
        let num = BiPoly::from_coeffs(coeffs.into_iter().map(|c| RPoly::from_coeffs(c, p)).collect(), p);
        KElem::new(num, self.den.clone()).expect("nonzero denominator")
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.matrix.rows()).map(|i| self.matrix.get(i, j)).collect()
    }
}
