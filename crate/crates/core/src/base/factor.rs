//! Factorization in F_p[t]: square-free decomposition followed by
//! Berlekamp splitting.

use super::fp;
use super::matrix::{fp_nullspace, FpMatrix};
use super::rpoly::RPoly;

/// Monic factorization `f = lead * Π g_i^{e_i}` with the g_i irreducible,
/// sorted canonically. Returns `(lead, factors)`.
pub fn factor(f: &RPoly) -> (u32, Vec<(RPoly, usize)>) {
    assert!(!f.is_zero(), "factor of zero");
    let lead = f.lead();
    let mut out: Vec<(RPoly, usize)> = Vec::new();
    for (g, e) in squarefree(&f.monic()) {
        for h in berlekamp(&g) {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(RPoly, usize)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => merged.push((g, e)),
        }
    }
    (lead, merged)
}

pub fn is_irreducible(f: &RPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let m = f.monic();
            if !m.gcd(&m.derivative()).is_one() {
                return false;
            }
            berlekamp_rank_deficit(&m) == 1
        }
    }
}

/// Square-free decomposition of a monic polynomial: pairs `(g, e)` with
/// `f = Π g^e`, each g square-free and monic.
pub fn squarefree(f: &RPoly) -> Vec<(RPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        let r = f.pth_root().expect("zero derivative implies p-th power");
        for (g, e) in squarefree(&r) {
            out.push((g, e * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).unwrap();
    }
    if !c.is_one() {
        let r = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, e) in squarefree(&r) {
            out.push((g, e * p as usize));
        }
    }
    out
}

/// Columns j: x^{pj} - x^j mod f.
fn berlekamp_matrix(f: &RPoly) -> FpMatrix {
    let p = f.modulus();
    let n = f.degree().unwrap();
    let mut m = FpMatrix::zeros(n, n, p);
    let xp = RPoly::monomial(1, p as usize, p).rem(f).unwrap();
    let mut cur = RPoly::one(p);
    for j in 0..n {
        for i in 0..n {
            let mut v = cur.coeff(i);
            if i == j {
                v = fp::sub(v, 1, p);
            }
            m.set(i, j, v);
        }
        cur = cur.mul_ref(&xp).rem(f).unwrap();
    }
    m
}

fn berlekamp_rank_deficit(f: &RPoly) -> usize {
    let m = berlekamp_matrix(f);
    m.cols() - m.rank()
}

/// Splits a monic square-free polynomial into its irreducible factors.
fn berlekamp(f: &RPoly) -> Vec<RPoly> {
    let p = f.modulus();
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let basis: Vec<RPoly> =
        fp_nullspace(&berlekamp_matrix(f)).into_iter().map(|v| RPoly::from_coeffs(v, p)).collect();
    let r = basis.len();
    let mut parts = vec![f.clone()];
    for v in basis.iter().filter(|v| !v.is_constant()) {
        if parts.len() == r {
            break;
        }
        let mut next = Vec::new();
        for g in parts {
            if g.deg() <= 1 {
                next.push(g);
                continue;
            }
            let mut rest = g.clone();
            for c in 0..p {
                if rest.deg() <= 0 {
                    break;
                }
                let h = rest.gcd(&v.sub_ref(&RPoly::constant(c as i64, p)));
                if !h.is_one() && h != rest {
                    rest = rest.exact_div(&h).unwrap();
                    next.push(h);
                }
            }
            if rest.deg() > 0 {
                next.push(rest);
            }
        }
        parts = next;
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(c: &[i64], p: u32) -> RPoly {
        RPoly::from_i64s(c, p)
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&r(&[1, 0, 1], 3)));
        assert!(!is_irreducible(&r(&[1, 0, 1], 5)));
        assert!(is_irreducible(&r(&[1, 1, 0, 0, 1], 2)));
        assert!(!is_irreducible(&r(&[1, 0, 0, 0, 1], 2)));
    }

    #[test]
    fn factor_roundtrip() {
        let p = 3;
        let f = r(&[1, 1], p).pow(3).mul_ref(&r(&[1, 0, 1], p)).mul_ref(&r(&[0, 1], p).pow(2)).scale(2);
        let (lead, fs) = factor(&f);
        assert_eq!(lead, 2);
        let mut prod = RPoly::constant(lead as i64, p);
        for (g, e) in &fs {
            assert!(is_irreducible(g));
            prod = prod.mul_ref(&g.pow(*e as u64));
        }
        assert_eq!(prod, f);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn splits_products_of_equal_degree() {
        let p = 2;
        let f = r(&[1, 1, 1], p).mul_ref(&r(&[1, 1, 0, 1], p)).mul_ref(&r(&[1, 0, 1, 1], p));
        let (_, fs) = factor(&f);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 3 over F_3 is 8
        assert_eq!(RPoly::monic_irreducibles(3, 3).iter().filter(|f| f.deg() == 3).count(), 8);
    }
}
