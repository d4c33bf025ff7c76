//! Sparse F_p elimination for tall systems given column by column.

use std::collections::BTreeMap;

use super::fp;

pub type SparseVec = Vec<(u64, u32)>;

/// Adds `k * b` to `a`; both sorted by row.
fn axpy(a: &SparseVec, k: u32, b: &SparseVec, p: u32) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = fp::mul(k, b[j].1, p);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = fp::add(a[i].1, fp::mul(k, b[j].1, p), p);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sorted sparse vector, summing duplicate rows.
pub fn sparse_from_entries(entries: impl IntoIterator<Item = (u64, u32)>, p: u32) -> SparseVec {
    let mut m: BTreeMap<u64, u32> = BTreeMap::new();
    for (r, v) in entries {
        let e = m.entry(r).or_insert(0);
        *e = fp::add(*e, v % p, p);
    }
    m.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// Column echelon form with the combination of input columns behind each
/// pivot, so that solutions and kernel vectors come out directly.
pub struct SparseSolver {
    p: u32,
    ncols: usize,
    pivots: BTreeMap<u64, (SparseVec, Vec<u32>)>,
    kernel: Vec<Vec<u32>>,
}

impl SparseSolver {
    pub fn new(columns: &[SparseVec], p: u32) -> Self {
        let ncols = columns.len();
        let mut s = SparseSolver { p, ncols, pivots: BTreeMap::new(), kernel: Vec::new() };
        for (j, col) in columns.iter().enumerate() {
            let mut combo = vec![0u32; ncols];
            combo[j] = 1;
            let (v, combo) = s.reduce(col.clone(), combo);
            match v.first() {
                None => s.kernel.push(combo),
                Some(&(row, lead)) => {
                    let k = fp::inv(lead, p);
                    let v: SparseVec = v.into_iter().map(|(r, x)| (r, fp::mul(x, k, p))).collect();
                    let combo = combo.into_iter().map(|x| fp::mul(x, k, p)).collect();
                    s.pivots.insert(row, (v, combo));
                }
            }
        }
        s
    }

    fn reduce(&self, mut v: SparseVec, mut combo: Vec<u32>) -> (SparseVec, Vec<u32>) {
        let p = self.p;
        let mut start = 0;
        while start < v.len() {
            let (row, x) = v[start];
            match self.pivots.get(&row) {
                Some((pv, pc)) => {
                    let k = fp::neg(x, p);
                    v = axpy(&v, k, pv, p);
                    for (c, &d) in combo.iter_mut().zip(pc) {
                        if d != 0 {
                            *c = fp::add(*c, fp::mul(k, d, p), p);
                        }
                    }
                    start = v.partition_point(|e| e.0 < row);
                }
                None => start += 1,
            }
        }
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of `{x : Σ x_j col_j = 0}`.
    pub fn kernel(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    /// A particular solution of `Σ x_j col_j = target`.
    pub fn solve(&self, target: &SparseVec) -> Option<Vec<u32>> {
        let (v, combo) = self.reduce(target.clone(), vec![0u32; self.ncols]);
        if !v.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|x| fp::neg(x, self.p)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_finds_kernel() {
        let p = 5;
        let c0 = sparse_from_entries([(0, 1), (7, 2)], p);
        let c1 = sparse_from_entries([(7, 1), (9, 1)], p);
        let c2 = sparse_from_entries([(0, 2), (7, 2), (9, 3)], p);
        let s = SparseSolver::new(&[c0.clone(), c1.clone(), c2.clone()], p);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.kernel().len(), 1);
        let k = &s.kernel()[0];
        let sum = axpy(&axpy(&axpy(&vec![], k[0], &c0, p), k[1], &c1, p), k[2], &c2, p);
        assert!(sum.is_empty());
        let target = axpy(&c0, 3, &c1, p);
        let x = s.solve(&target).unwrap();
        let got = axpy(&axpy(&axpy(&vec![], x[0], &c0, p), x[1], &c1, p), x[2], &c2, p);
        assert_eq!(got, target);
        assert!(s.solve(&sparse_from_entries([(1, 1)], p)).is_none());
    }
}
