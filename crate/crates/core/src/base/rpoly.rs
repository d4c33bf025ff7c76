//! Univariate polynomials over F_p in the variable `t`: the ring R = F_p[t].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp;
use crate::error::{Error, Result};

/// A polynomial in `t` with coefficients in F_p, stored in ascending order
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RPoly {
    p: u32,
    c: Vec<u32>,
}

impl RPoly {
    pub fn zero(p: u32) -> Self {
        RPoly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(v: i64, p: u32) -> Self {
        Self::from_coeffs(vec![fp::from_i64(v, p)], p)
    }

    /// The variable `t`.
    pub fn t(p: u32) -> Self {
        Self::monomial(1, 1, p)
    }

    pub fn monomial(coeff: u32, exp: usize, p: u32) -> Self {
        let mut c = vec![0; exp + 1];
        c[exp] = coeff % p;
        Self::from_coeffs(c, p)
    }

    /// Builds a polynomial from ascending coefficients, reducing mod p.
    pub fn from_coeffs(mut c: Vec<u32>, p: u32) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut r = RPoly { p, c };
        r.trim();
        r
    }

    pub fn from_i64s(c: &[i64], p: u32) -> Self {
        Self::from_coeffs(c.iter().map(|&v| fp::from_i64(v, p)).collect(), p)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    /// Lowest index with a nonzero coefficient (the t-adic valuation).
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|&x| x != 0)
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|&&x| x != 0).count()
    }

    fn check(&self, o: &Self) -> u32 {
        assert_eq!(self.p, o.p, "mixing F_p moduli");
        self.p
    }

    pub fn scale(&self, k: u32) -> Self {
        let k = k % self.p;
        if k == 0 {
            return Self::zero(self.p);
        }
        RPoly { p: self.p, c: self.c.iter().map(|&x| fp::mul(x, k, self.p)).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        RPoly { p: self.p, c }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(fp::inv(self.lead(), self.p))
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| fp::add(self.coeff(i), o.coeff(i), p)).collect();
        Self::from_coeffs(c, p)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| fp::sub(self.coeff(i), o.coeff(i), p)).collect();
        Self::from_coeffs(c, p)
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        if self.c.len() == 1 {
            return o.scale(self.c[0]);
        }
        if o.c.len() == 1 {
            return self.scale(o.c[0]);
        }
        // p^2 < 2^16, so u64 accumulators cannot overflow at any practical degree.
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += a as u64 * b as u64;
            }
        }
        RPoly::from_coeffs(acc.into_iter().map(|x| (x % p as u64) as u32).collect(), p)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let p = self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < d.c.len() {
            return Ok((Self::zero(p), self.clone()));
        }
        let inv_lead = fp::inv(d.lead(), p);
        let dl = d.c.len();
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = fp::mul(r[k + dl - 1], inv_lead, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                r[k + j] = fp::sub(r[k + j], fp::mul(coef, dj, p), p);
            }
        }
        r.truncate(dl - 1);
        Ok((Self::from_coeffs(q, p), Self::from_coeffs(r, p)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, u) with s*self + u*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.check(o);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut u0, mut u1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub_ref(&q.mul_ref(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = u0.sub_ref(&q.mul_ref(&u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let k = fp::inv(r0.lead(), p);
        (r0.scale(k), s0.scale(k), u0.scale(k))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let g = self.gcd(o);
        self.exact_div(&g).expect("gcd divides").mul_ref(o).monic()
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::one(self.p);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        r
    }

    /// `f(t)^(p^e)`, which equals `f(t^(p^e))` because coefficients lie in F_p.
    pub fn frobenius(&self, e: u32) -> Self {
        if e == 0 || self.is_constant() {
            return self.clone();
        }
        let q = (self.p as usize).pow(e);
        let mut c = vec![0; (self.c.len() - 1) * q + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * q] = x;
        }
        RPoly { p: self.p, c }
    }

    /// The p-th root when every exponent is divisible by p.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        if self.c.iter().enumerate().any(|(i, &x)| x != 0 && i % p != 0) {
            return None;
        }
        Some(Self::from_coeffs(self.c.iter().step_by(p).copied().collect(), self.p))
    }

    pub fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &x)| fp::mul(x, (i as u32) % self.p, self.p)).collect();
        Self::from_coeffs(c, self.p)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.c.iter().rev().fold(0, |acc, &c| fp::add(fp::mul(acc, x, self.p), c, self.p))
    }

    /// Composition `self(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut r = Self::zero(self.p);
        for &c in self.c.iter().rev() {
            r = r.mul_ref(g).add_ref(&Self::constant(c as i64, self.p));
        }
        r
    }

    /// Deterministic order: by degree, then coefficients from the top.
    pub fn cmp_canonical(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }

    /// All polynomials of degree < `n`, in canonical order (size p^n).
    pub fn enumerate_below(n: usize, p: u32) -> Vec<Self> {
        let total = (p as usize).pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut c = Vec::with_capacity(n);
                for _ in 0..n {
                    c.push((k % p as usize) as u32);
                    k /= p as usize;
                }
                Self::from_coeffs(c, p)
            })
            .collect()
    }

    /// Monic irreducible polynomials of degree 1..=max_deg in canonical order.
    pub fn monic_irreducibles(max_deg: usize, p: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 1..=max_deg {
            for low in Self::enumerate_below(d, p) {
                let f = low.add_ref(&Self::monomial(1, d, p));
                if super::factor::is_irreducible(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    /// Canonical text form, e.g. `t^2+2*t+1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "t".into(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        parts.join("+")
    }
}

impl fmt::Display for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&RPoly> for &RPoly {
            type Output = RPoly;
            fn $m(self, o: &RPoly) -> RPoly {
                self.$imp(o)
            }
        }
        impl $tr<RPoly> for RPoly {
            type Output = RPoly;
            fn $m(self, o: RPoly) -> RPoly {
                self.$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        RPoly { p: self.p, c: self.c.iter().map(|&x| fp::neg(x, self.p)).collect() }
    }
}

impl Neg for RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        -&self
    }
}


impl serde::Serialize for RPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}
