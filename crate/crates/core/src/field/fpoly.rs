//! Polynomials over F = F_p(t) in one variable (θ, or the local chart
//! variable at the infinite place). Residue fields and truncated
//! completions are quotients of this ring.

use std::fmt;

use super::bipoly::BiPoly;
use crate::base::{FElem, RPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FPoly {
    p: u32,
    c: Vec<FElem>,
}

impl FPoly {
    pub fn zero(p: u32) -> Self {
        FPoly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(FElem::one(p))
    }

    pub fn x(p: u32) -> Self {
        Self::from_coeffs(vec![FElem::zero(p), FElem::one(p)], p)
    }

    pub fn constant(c: FElem) -> Self {
        let p = c.modulus();
        Self::from_coeffs(vec![c], p)
    }

    pub fn from_coeffs(mut c: Vec<FElem>, p: u32) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FPoly { p, c }
    }

    pub fn from_bipoly(f: &BiPoly) -> Self {
        let p = f.modulus();
        Self::from_coeffs(f.coeffs().iter().map(|x| FElem::from_poly(x.clone())).collect(), p)
    }

    /// Clears denominators: returns `(g, d)` with `self = g / d`, `g` in
    /// F_p[t][θ] and `d` the monic lcm of the coefficient denominators.
    pub fn to_bipoly(&self) -> (BiPoly, RPoly) {
        let mut d = RPoly::one(self.p);
        for x in &self.c {
            d = d.lcm(x.den());
        }
        let c = self.c.iter().map(|x| x.num() * &d.exact_div(x.den()).unwrap()).collect();
        (BiPoly::from_coeffs(c, self.p), d)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FElem {
        self.c.get(i).cloned().unwrap_or_else(|| FElem::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> FElem {
        self.c.last().cloned().unwrap_or_else(|| FElem::zero(self.p))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(c, self.p)
    }

    pub fn neg(&self) -> Self {
        FPoly { p: self.p, c: self.c.iter().map(|x| x.scale(self.p - 1)).collect() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        if self.c.iter().chain(&o.c).all(|x| x.den().is_one()) {
            let (a, _) = self.to_bipoly();
            let (b, _) = o.to_bipoly();
            return Self::from_bipoly(&a.mul_ref(&b));
        }
        let mut acc = vec![FElem::zero(self.p); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] = &acc[i + j] + &(a * b);
                }
            }
        }
        Self::from_coeffs(acc, self.p)
    }

    pub fn scale(&self, k: &FElem) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect(), self.p)
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![FElem::zero(self.p); k];
        c.extend(self.c.iter().cloned());
        FPoly { p: self.p, c }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv().unwrap())
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let li = d.lead().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![FElem::zero(self.p); self.c.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let f = top * &li;
            for (i, x) in d.c.iter().enumerate() {
                if !x.is_zero() {
                    r[k + i] = &r[k + i] - &(&f * x);
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q, self.p), Self::from_coeffs(r, self.p)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < d.c.len() {
            return Ok(self.clone());
        }
        Ok(self.divrem(d)?.1)
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Returns (g, s, u) with s*self + u*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut u0, mut u1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub_ref(&q.mul_ref(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = u0.sub_ref(&q.mul_ref(&u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let k = r0.lead().inv().unwrap();
        (r0.scale(&k), s0.scale(&k), u0.scale(&k))
    }

    /// Inverse modulo `m`, when `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ok()?.ext_gcd(m);
        g.is_one().then(|| s.rem(m).unwrap())
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul_ref(o).rem(m).unwrap()
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m).unwrap();
        let mut b = self.rem(m).unwrap();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_mod(&b, m);
            }
        }
        r
    }

    /// `self^(p^e)` computed by Frobenius on coefficients and exponents.
    pub fn frobenius(&self, e: u32) -> Self {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let q = (self.p as usize).pow(e);
        let mut c = vec![FElem::zero(self.p); (self.c.len() - 1) * q + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * q] = x.frobenius(e);
        }
        FPoly { p: self.p, c }
    }

    /// Number of times `pi` divides `self` (None for zero), and the cofactor.
    pub fn split_valuation(&self, pi: &Self) -> Option<(usize, Self)> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(pi) {
            cur = q;
            k += 1;
        }
        Some((k, cur))
    }

    pub fn to_text_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let v = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let xs = x.to_text();
            let simple = x.den().is_one() && x.num().num_terms() == 1;
            parts.push(match (i, x.is_one(), simple) {
                (0, _, _) => xs,
                (_, true, _) => v,
                (_, false, true) => format!("{xs}*{v}"),
                _ => format!("({xs})*{v}"),
            });
        }
        parts.join("+")
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_in("θ"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_square() {
        let p = 3;
        let t = FElem::from_poly(RPoly::t(p));
        let pi = FPoly::x(p).add_ref(&FPoly::constant(t.clone()));
        let m = pi.mul_ref(&pi);
        let a = FPoly::x(p).add_ref(&FPoly::constant(FElem::one(p)));
        let inv = a.inv_mod(&m).unwrap();
        assert!(a.mul_mod(&inv, &m).is_one());
        assert_eq!(m.split_valuation(&pi).unwrap().0, 2);
    }

    #[test]
    fn frobenius_is_power() {
        let p = 3;
        let t = FElem::new(RPoly::t(p), RPoly::from_i64s(&[1, 1], p)).unwrap();
        let a = FPoly::x(p).add_ref(&FPoly::constant(t));
        assert_eq!(a.frobenius(1), a.mul_ref(&a).mul_ref(&a));
    }
}
