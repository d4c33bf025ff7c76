//! F_p-span of an iterate table, solved sparsely against many targets.

use super::iterates::IterateTable;
use crate::base::sparse::{sparse_from_entries, SparseSolver, SparseVec};
use crate::base::RPoly;
use crate::drinfeld::DrinfeldModule;
use crate::field::coords::common_denominator;
use crate::field::{BiPoly, KElem};

pub struct SpanSolver {
    pub table: IterateTable,
    cols: Vec<(usize, usize)>,
    dens: Vec<BiPoly>,
    solver: SparseSolver,
    p: u32,
    r: usize,
}

fn key(k: usize, th: usize, t: usize) -> u64 {
    ((k as u64) << 48) | ((th as u64) << 24) | t as u64
}

fn scaled_entries(x: &KElem, den: &BiPoly, k: usize) -> Option<Vec<(u64, u32)>> {
    if x.is_zero() {
        return Some(Vec::new());
    }
    let f = x.num().mul_ref(&den.exact_div(x.den())?);
    Some(
        f.coeffs()
            .iter()
            .enumerate()
            .flat_map(|(j, r)| r.coeffs().iter().enumerate().filter(|(_, &v)| v != 0).map(move |(i, &v)| (key(k, j, i), v)))
            .collect(),
    )
}

impl SpanSolver {
    pub fn new(phi: &DrinfeldModule, gens: &[Vec<KElem>], g: usize, deg_bound: usize) -> Self {
        let p = phi.modulus();
        let table = IterateTable::new(phi, gens, deg_bound);
        let cols = table.columns();
        let pts = table.flat_points();
        let dens: Vec<BiPoly> = (0..g)
            .map(|k| {
                let xs: Vec<KElem> = pts.iter().map(|x| x[k].clone()).collect();
                if xs.is_empty() { BiPoly::one(p) } else { common_denominator(&xs) }
            })
            .collect();
        let columns: Vec<SparseVec> = pts
            .iter()
            .map(|x| {
                let e = (0..g).flat_map(|k| scaled_entries(&x[k], &dens[k], k).unwrap());
                sparse_from_entries(e, p)
            })
            .collect();
        let solver = SparseSolver::new(&columns, p);
        SpanSolver { table, cols, dens, solver, p, r: gens.len() }
    }

    fn to_coeffs(&self, v: &[u32]) -> Vec<RPoly> {
        let mut c: Vec<Vec<u32>> = vec![Vec::new(); self.r];
        for (k, &(i, j)) in self.cols.iter().enumerate() {
            if v[k] == 0 {
                continue;
            }
            if c[i].len() <= j {
                c[i].resize(j + 1, 0);
            }
            c[i][j] = v[k];
        }
        c.into_iter().map(|c| RPoly::from_coeffs(c, self.p)).collect()
    }

    /// F_p-combination of the table equal to y, as coefficients a_i.
    pub fn solve(&self, y: &[KElem]) -> Option<Vec<RPoly>> {
        let mut e = Vec::new();
        for (k, x) in y.iter().enumerate() {
            e.extend(scaled_entries(x, &self.dens[k], k)?);
        }
        let v = self.solver.solve(&sparse_from_entries(e, self.p))?;
        let mut check: Vec<KElem> = vec![KElem::zero(self.p); y.len()];
        for (k, pt) in self.table.flat_points().iter().enumerate() {
            if v[k] != 0 {
                for (acc, c) in check.iter_mut().zip(pt) {
                    *acc = &*acc + &c.scale(v[k]);
                }
            }
        }
        assert_eq!(check, y, "membership certificate failed re-verification");
        Some(self.to_coeffs(&v))
    }

    /// F_p-kernel vectors over the table columns.
    pub fn kernel(&self) -> &[Vec<u32>] {
        self.solver.kernel()
    }

    /// Coefficient polynomials a_i of an F_p-vector over the columns.
    pub fn coeffs_of(&self, v: &[u32]) -> Vec<RPoly> {
        self.to_coeffs(v)
    }

    /// Relations among the table, verified.
    pub fn relations(&self) -> Vec<Vec<RPoly>> {
        let pts = self.table.flat_points();
        self.solver
            .kernel()
            .iter()
            .map(|v| {
                let g = pts.first().map_or(0, |x| x.len());
                let mut check = vec![KElem::zero(self.p); g];
                for (k, pt) in pts.iter().enumerate() {
                    if v[k] != 0 {
                        for (acc, c) in check.iter_mut().zip(pt) {
                            *acc = &*acc + &c.scale(v[k]);
                        }
                    }
                }
                assert!(check.iter().all(|c| c.is_zero()), "relation failed re-verification");
                self.to_coeffs(v)
            })
            .collect()
    }
}
