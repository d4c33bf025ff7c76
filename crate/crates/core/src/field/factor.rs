//! Factorization of polynomials in F_p[t][θ] over F = F_p(t), by Kronecker
//! substitution θ ↦ t^N and recombination of the univariate factors.

use std::collections::HashSet;

use super::bipoly::BiPoly;
use crate::base::factor::factor as factor_univariate;
use crate::base::RPoly;
use crate::error::{Error, Result};

/// Subsets tried during recombination before giving up.
const MAX_COMBINATIONS: usize = 400_000;

/// Irreducible factors of positive θ-degree, primitive and normalized, with
/// multiplicities, in canonical order. Content in F_p[t] is dropped (it is
/// a unit of F).
pub fn factor_over_f(f: &BiPoly) -> Result<Vec<(BiPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = f.modulus();
    let mut out = Vec::new();
    let mut g = f.primitive_part().normalized();
    if let Some(k) = g.low_theta().filter(|&k| k > 0) {
        out.push((BiPoly::theta(p), k));
        g = BiPoly::from_coeffs(g.coeffs()[k..].to_vec(), p);
    }
    if g.dtheta() >= 1 {
        out.extend(recombine(&g)?);
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Ok(out)
}

fn recombine(f: &BiPoly) -> Result<Vec<(BiPoly, usize)>> {
    let p = f.modulus();
    let n = f.deg_t() + 1;
    let (_, uni) = factor_univariate(&f.kronecker(n));
    let mut pool: Vec<RPoly> = uni.iter().flat_map(|(g, e)| std::iter::repeat(g.clone()).take(*e)).collect();
    let mut rest = f.clone();
    let mut found: Vec<(BiPoly, usize)> = Vec::new();
    let mut tried: HashSet<RPoly> = HashSet::new();
    let mut budget = MAX_COMBINATIONS;
    let mut size = 1;
    while rest.dtheta() >= 1 {
        if 2 * size > pool.len() {
            // whatever is left is irreducible
            let g = rest.primitive_part().normalized();
            found.push((g, 1));
            break;
        }
        let mut hit = None;
        for idx in Combinations::new(pool.len(), size) {
            if budget == 0 {
                return Err(Error::FactorLimit(format!("recombination of {} univariate factors", pool.len())));
            }
            budget -= 1;
            let prod = idx.iter().fold(RPoly::one(p), |acc, &i| &acc * &pool[i]);
            if !tried.insert(prod.clone()) {
                continue;
            }
            let cand = BiPoly::unkronecker(&prod, n);
            if cand.dtheta() < 1 || cand.deg_t() >= n {
                continue;
            }
            let cand = cand.primitive_part().normalized();
            if let Some(q) = rest.exact_div(&cand) {
                hit = Some((cand, q, idx));
                break;
            }
        }
        match hit {
            Some((g, q, _)) => {
                let mut e = 1;
                rest = q;
                while let Some(q) = rest.exact_div(&g) {
                    rest = q;
                    e += 1;
                }
                let (_, gf) = factor_univariate(&g.kronecker(n));
                for (h, k) in gf {
                    for _ in 0..k * e {
                        let pos = pool.iter().position(|x| *x == h).expect("factor of the image");
                        pool.remove(pos);
                    }
                }
                tried.clear();
                found.push((g, e));
            }
            None => size += 1,
        }
    }
    Ok(found)
}

/// Irreducibility over F of a polynomial of positive θ-degree.
pub fn is_irreducible_over_f(f: &BiPoly) -> Result<bool> {
    if f.dtheta() < 1 {
        return Ok(false);
    }
    let fs = factor_over_f(f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Index subsets of a fixed size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_k;

    fn b(s: &str, p: u32) -> BiPoly {
        parse_k(s, p).unwrap().num().clone()
    }

    #[test]
    fn splits_and_counts() {
        let p = 3;
        let f = b("t*θ^2*(θ+t)^2*(θ^2+t)", p);
        let fs = factor_over_f(&f).unwrap();
        assert_eq!(fs, vec![(b("θ", p), 2), (b("θ+t", p), 2), (b("θ^2+t", p), 1)]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_over_f(&b("θ^3-t", 3)).unwrap());
        assert!(is_irreducible_over_f(&b("θ^2+t", 3)).unwrap());
        assert!(!is_irreducible_over_f(&b("θ^2-t^2", 3)).unwrap());
        assert!(is_irreducible_over_f(&b("t*θ^2+θ+1", 5)).unwrap());
        assert!(!is_irreducible_over_f(&b("θ^4+2*θ^2+1", 3)).unwrap());
    }

    #[test]
    fn combinations() {
        assert_eq!(Combinations::new(4, 2).count(), 6);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }
}
