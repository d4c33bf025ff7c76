//! Dense linear algebra over F_p: reduced row echelon form, null spaces and
//! affine solves.

use super::fp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(x).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let k = fp::inv(self.get(r, c), p);
            for j in c..cols {
                let v = fp::mul(self.get(r, j), k, p);
                self.set(r, j, v);
            }
            let pivot_row: Vec<u32> = self.row(r).to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let base = i * cols;
                for j in c..cols {
                    let pj = pivot_row[j];
                    if pj != 0 {
                        self.data[base + j] = fp::sub(self.data[base + j], fp::mul(f, pj, p), p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// An F_p-basis of `{x : A x = 0}`, one vector per free column in
/// increasing column order.
pub fn fp_nullspace(a: &FpMatrix) -> Vec<Vec<u32>> {
    let mut m = a.clone();
    let pivots = m.rref();
    nullspace_from_rref(&m, &pivots)
}

fn nullspace_from_rref(m: &FpMatrix, pivots: &[usize]) -> Vec<Vec<u32>> {
    let p = m.modulus();
    let mut is_pivot = vec![false; m.cols()];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0; m.cols()];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = fp::neg(m.get(r, f), p);
            }
            v
        })
        .collect()
}

/// Solves `A x = b`: a particular solution plus a null-space basis, or
/// `None` when the system is inconsistent.
pub fn fp_solve(a: &FpMatrix, b: &[u32]) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    assert_eq!(b.len(), a.rows());
    let p = a.modulus();
    let n = a.cols();
    let mut aug = FpMatrix::zeros(a.rows(), n + 1, p);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, n, b[i]);
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![0; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, n);
    }
    let mut coeff = FpMatrix::zeros(aug.rows(), n, p);
    for i in 0..aug.rows() {
        for j in 0..n {
            coeff.set(i, j, aug.get(i, j));
        }
    }
    Some((x, nullspace_from_rref(&coeff, &pivots)))
}

/// All F_p-combinations of `basis` (p^len vectors), in a fixed order.
pub fn span_elements(basis: &[Vec<u32>], len: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; len]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for k in 0..p {
                next.push(v.iter().zip(b).map(|(&x, &y)| fp::add(x, fp::mul(k, y, p), p)).collect());
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_injective() {
        assert!(fp_nullspace(&FpMatrix::identity(3, 3)).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(fp_nullspace(&FpMatrix::zeros(2, 2, 3)).len(), 2);
    }

    #[test]
    fn rank_one_over_f5() {
        let a = FpMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 2, 5);
        let ns = fp_nullspace(&a);
        assert_eq!(ns, vec![vec![3, 1]]);
        assert_eq!(a.mul_vec(&ns[0]), vec![0, 0]);
    }

    #[test]
    fn affine_solve() {
        let a = FpMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]], 3, 3);
        let (x, ns) = fp_solve(&a, &[1, 2]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![1, 2]);
        assert_eq!(ns.len(), 1);
        let bad = FpMatrix::from_rows(&[vec![1, 1], vec![1, 1]], 2, 3);
        assert!(fp_solve(&bad, &[1, 2]).is_none());
    }

    #[test]
    fn span_size() {
        assert_eq!(span_elements(&[vec![1, 0], vec![0, 1]], 2, 3).len(), 9);
    }
}
