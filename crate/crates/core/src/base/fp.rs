//! Arithmetic in the prime field F_p.
//!
//! Residues are stored as `u32` in `[0, p)`. The free functions are the hot
//! path used by the polynomial code; [`FpElem`] is the checked value type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const MAX_PRIME: u32 = 251;

pub fn check_prime(p: u32) -> Result<u32> {
    if !(2..=MAX_PRIME).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(Error::InvalidPrime(p));
    }
    Ok(p)
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue; panics on zero (callers check first).
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero in F_{p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn from_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// An element of F_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    p: u32,
}

impl FpElem {
    pub fn new(value: i64, p: u32) -> Self {
        FpElem { value: from_i64(value, p), p }
    }
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn modulus(self) -> u32 {
        self.p
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FpElem { value: inv(self.value, self.p), p: self.p })
    }
    fn same(self, o: Self) -> u32 {
        assert_eq!(self.p, o.p, "mixing F_p moduli");
        self.p
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, o: Self) -> Self {
        let p = self.same(o);
        FpElem { value: add(self.value, o.value, p), p }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, o: Self) -> Self {
        let p = self.same(o);
        FpElem { value: sub(self.value, o.value, p), p }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, o: Self) -> Self {
        let p = self.same(o);
        FpElem { value: mul(self.value, o.value, p), p }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> Self {
        FpElem { value: neg(self.value, self.p), p: self.p }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
