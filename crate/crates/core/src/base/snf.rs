//! Matrices over R = F_p[t]: Smith normal form with transforms, and row
//! Hermite normal form for submodules of R^n.

use std::fmt;

use super::rpoly::RPoly;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    e: Vec<RPoly>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        RMatrix { rows, cols, p, e: vec![RPoly::zero(p); rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, RPoly::one(p));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RPoly>>, cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn diagonal(d: &[RPoly], p: u32) -> Self {
        let mut m = Self::zeros(d.len(), d.len(), p);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &RPoly {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RPoly) {
        self.e[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<RPoly> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vectors(&self) -> Vec<Vec<RPoly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, o: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = RMatrix::zeros(self.rows, o.cols, self.p);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RPoly::zero(self.p);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * o.get(k, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> RPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let p = self.p;
        if n == 0 {
            return RPoly::one(p);
        }
        let mut a: Vec<Vec<RPoly>> = self.row_vectors();
        let mut sign_neg = false;
        let mut prev = RPoly::one(p);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign_neg = !sign_neg;
                    }
                    None => return RPoly::zero(p),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign_neg {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.e.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.e.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &RPoly) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) - &(q * s);
                self.set(dst, j, v);
            }
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &RPoly) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) - &(q * s);
                self.set(i, dst, v);
            }
        }
    }

    fn scale_row(&mut self, i: usize, k: u32) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(k);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", (0..self.cols).map(|j| self.get(i, j).to_text()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: RMatrix,
    pub d: RMatrix,
    pub v: RMatrix,
    pub v_inv: RMatrix,
}

impl Smith {
    /// Diagonal entries d_1 | d_2 | ..., each monic or zero.
    pub fn invariant_factors(&self) -> Vec<RPoly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form over F_p[t]. Pivots are chosen by minimal degree, ties
/// broken by lowest row and then lowest column.
pub fn smith_normal_form(m: &RMatrix) -> Smith {
    let p = m.modulus();
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = RMatrix::identity(rows, p);
    let mut v = RMatrix::identity(cols, p);
    let mut v_inv = RMatrix::identity(cols, p);
    for k in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(dg) = d.get(i, j).degree() {
                        if best.map_or(true, |(bd, _, _)| dg < bd) {
                            best = Some((dg, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Smith { u, d, v, v_inv };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            v_inv.swap_rows(k, pj);

            let mut dirty = false;
            let pivot = d.get(k, k).clone();
            for i in k + 1..rows {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, k).divrem(&pivot).unwrap();
                d.row_axpy(i, k, &q);
                u.row_axpy(i, k, &q);
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(k, j).divrem(&pivot).unwrap();
                d.col_axpy(j, k, &q);
                v.col_axpy(j, k, &q);
                v_inv.row_axpy(k, j, &(-&q));
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !pivot.divides(d.get(i, j))));
            match offender {
                Some(i) => {
                    let one = -RPoly::one(p);
                    d.row_axpy(k, i, &one);
                    u.row_axpy(k, i, &one);
                }
                None => break,
            }
        }
        let lead = d.get(k, k).lead();
        if lead != 1 {
            let inv = super::fp::inv(lead, p);
            d.scale_row(k, inv);
            u.scale_row(k, inv);
        }
    }
    Smith { u, d, v, v_inv }
}

/// Row Hermite normal form of the submodule of R^n spanned by some rows:
/// pivot columns strictly increase, pivots are monic and entries above a
/// pivot have smaller degree than it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    n: usize,
    p: u32,
    rows: Vec<Vec<RPoly>>,
    pivots: Vec<usize>,
}

impl Hermite {
    pub fn new(generators: &[Vec<RPoly>], n: usize, p: u32) -> Self {
        let mut pool: Vec<Vec<RPoly>> =
            generators.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
        for r in &pool {
            assert_eq!(r.len(), n, "ragged generators");
        }
        let mut rows: Vec<Vec<RPoly>> = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..n {
            loop {
                let live: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][c].is_zero()).collect();
                if live.len() <= 1 {
                    break;
                }
                let best = *live.iter().min_by_key(|&&i| (pool[i][c].degree(), i)).unwrap();
                for &i in &live {
                    if i == best {
                        continue;
                    }
                    let q = pool[i][c].divrem(&pool[best][c]).unwrap().0;
                    let src = pool[best].clone();
                    for (x, s) in pool[i].iter_mut().zip(&src) {
                        *x = &*x - &(&q * s);
                    }
                }
                pool.retain(|r| r.iter().any(|x| !x.is_zero()));
            }
            if let Some(i) = (0..pool.len()).find(|&i| !pool[i][c].is_zero()) {
                let mut r = pool.remove(i);
                let k = super::fp::inv(r[c].lead(), p);
                for x in r.iter_mut() {
                    *x = x.scale(k);
                }
                rows.push(r);
                pivots.push(c);
            }
        }
        let mut h = Hermite { n, p, rows, pivots };
        for i in 1..h.rows.len() {
            let (c, src) = (h.pivots[i], h.rows[i].clone());
            for j in 0..i {
                let q = h.rows[j][c].divrem(&src[c]).unwrap().0;
                if !q.is_zero() {
                    for (x, s) in h.rows[j].iter_mut().zip(&src) {
                        *x = &*x - &(&q * s);
                    }
                }
            }
        }
        h
    }

    pub fn rows(&self) -> &[Vec<RPoly>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Canonical representative of `v` modulo the row module, together with
    /// the coefficients `c` such that `v = reduced + Σ c_i rows_i`.
    pub fn reduce_with_coeffs(&self, v: &[RPoly]) -> (Vec<RPoly>, Vec<RPoly>) {
        let mut v = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].divrem(&row[c]).unwrap().0;
            if !q.is_zero() {
                for (x, s) in v.iter_mut().zip(row) {
                    *x = &*x - &(&q * s);
                }
            }
            coeffs.push(q);
        }
        (v, coeffs)
    }

    pub fn reduce(&self, v: &[RPoly]) -> Vec<RPoly> {
        self.reduce_with_coeffs(v).0
    }

    pub fn contains(&self, v: &[RPoly]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// For a full-rank module: every canonical representative of R^n / M,
    /// i.e. vectors with `deg v_i < deg pivot_i`. Count is p^(Σ deg pivots).
    pub fn quotient_representatives(&self) -> Option<Vec<Vec<RPoly>>> {
        if self.rank() != self.n {
            return None;
        }
        let mut out: Vec<Vec<RPoly>> = vec![Vec::new()];
        for i in 0..self.n {
            let deg = self.rows[i][i].degree().unwrap();
            let choices = RPoly::enumerate_below(deg, self.p);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }

    pub fn quotient_order_log(&self) -> Option<usize> {
        (self.rank() == self.n).then(|| (0..self.n).map(|i| self.rows[i][i].degree().unwrap()).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &[i64]) -> RPoly {
        RPoly::from_i64s(c, 3)
    }

    fn check(m: &RMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.det().is_constant() && !s.u.det().is_zero());
        assert!(s.v.det().is_constant() && !s.v.det().is_zero());
        assert_eq!(s.v.mul(&s.v_inv), RMatrix::identity(m.cols(), 3));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn already_diagonal() {
        let s = check(&RMatrix::from_rows(vec![vec![r(&[0, 1])]], 1, 3));
        assert_eq!(s.invariant_factors(), vec![r(&[0, 1])]);
        let s = check(&RMatrix::from_rows(vec![vec![r(&[0, 1]), r(&[])], vec![r(&[]), r(&[0, 0, 1])]], 2, 3));
        assert_eq!(s.invariant_factors(), vec![r(&[0, 1]), r(&[0, 0, 1])]);
    }

    #[test]
    fn jordan_block() {
        let m = RMatrix::from_rows(vec![vec![r(&[0, 1]), r(&[1])], vec![r(&[]), r(&[0, 1])]], 2, 3);
        assert_eq!(check(&m).invariant_factors(), vec![r(&[1]), r(&[0, 0, 1])]);
    }

    #[test]
    fn rectangular_and_zero() {
        let m = RMatrix::from_rows(vec![vec![r(&[1, 1]), r(&[2, 0, 1]), r(&[])]], 3, 3);
        let s = check(&m);
        assert_eq!(s.rank(), 1);
        check(&RMatrix::zeros(2, 3, 3));
    }

    #[test]
    fn hermite_reduction() {
        let t = r(&[0, 1]);
        let h = Hermite::new(&[vec![t.clone(), r(&[])], vec![r(&[1]), t.clone()]], 2, 3);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.quotient_order_log(), Some(2));
        assert!(h.contains(&[t.clone(), r(&[])]));
        assert!(!h.contains(&[r(&[1]), r(&[])]));
        assert_eq!(h.quotient_representatives().unwrap().len(), 9);
    }
}
