//! The rational function field F = F_p(t).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rpoly::RPoly;
use crate::error::{Error, Result};

/// A reduced fraction `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FElem {
    num: RPoly,
    den: RPoly,
}

impl FElem {
    pub fn new(num: RPoly, den: RPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: RPoly, den: RPoly) -> Self {
        let p = den.modulus();
        if num.is_zero() {
            return FElem { num, den: RPoly::one(p) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let k = super::fp::inv(den.lead(), p);
        FElem { num: num.scale(k), den: den.scale(k) }
    }

    pub fn from_poly(num: RPoly) -> Self {
        let p = num.modulus();
        FElem { num, den: RPoly::one(p) }
    }

    pub fn zero(p: u32) -> Self {
        Self::from_poly(RPoly::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::from_poly(RPoly::one(p))
    }

    pub fn constant(v: i64, p: u32) -> Self {
        Self::from_poly(RPoly::constant(v, p))
    }

    pub fn num(&self) -> &RPoly {
        &self.num
    }

    pub fn den(&self) -> &RPoly {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Element of F_p when the fraction is a constant.
    pub fn as_constant(&self) -> Option<u32> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num + &o.num);
        }
        if self.den == o.den {
            return Self::normalize(&self.num + &o.num, self.den.clone());
        }
        Self::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&-o)
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(&self.num * &o.num);
        }
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.modulus());
        }
        // cross-cancel so the product is already reduced
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = &self.num.exact_div(&g1).unwrap() * &o.num.exact_div(&g2).unwrap();
        let d = &self.den.exact_div(&g2).unwrap() * &o.den.exact_div(&g1).unwrap();
        Self::normalize(n, d)
    }

    pub fn scale(&self, k: u32) -> Self {
        Self::normalize(self.num.scale(k), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(FElem { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `x^(p^e)`; reduced fractions stay reduced and the denominator stays monic.
    pub fn frobenius(&self, e: u32) -> Self {
        FElem { num: self.num.frobenius(e), den: self.den.frobenius(e) }
    }

    pub fn pth_root(&self) -> Option<Self> {
        Some(FElem { num: self.num.pth_root()?, den: self.den.pth_root()? })
    }

    /// Valuation at the monic irreducible `q` of F_p[t].
    pub fn q_valuation(&self, q: &RPoly) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(poly_q_valuation(&self.num, q) as i64 - poly_q_valuation(&self.den, q) as i64)
    }

    /// Degree valuation `deg(den) - deg(num)`.
    pub fn degree_valuation(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.den.deg() - self.num.deg())
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

fn wrap(r: &RPoly) -> String {
    if r.num_terms() <= 1 {
        r.to_text()
    } else {
        format!("({})", r.to_text())
    }
}

pub(crate) fn poly_q_valuation(f: &RPoly, q: &RPoly) -> usize {
    let mut f = f.clone();
    let mut n = 0;
    while let Some(next) = f.exact_div(q) {
        if f.is_zero() {
            break;
        }
        f = next;
        n += 1;
    }
    n
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &FElem {
    type Output = FElem;
    fn add(self, o: &FElem) -> FElem {
        self.add_ref(o)
    }
}

impl Sub for &FElem {
    type Output = FElem;
    fn sub(self, o: &FElem) -> FElem {
        self.sub_ref(o)
    }
}

impl Mul for &FElem {
    type Output = FElem;
    fn mul(self, o: &FElem) -> FElem {
        self.mul_ref(o)
    }
}

impl Neg for &FElem {
    type Output = FElem;
    fn neg(self) -> FElem {
        FElem { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: &[i64], d: &[i64]) -> FElem {
        FElem::new(RPoly::from_i64s(n, 3), RPoly::from_i64s(d, 3)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2t+2)/(2t^2+2) = (t+1)/(t^2+1)
        let x = f(&[2, 2], &[2, 0, 2]);
        assert_eq!(x.num(), &RPoly::from_i64s(&[1, 1], 3));
        assert!(x.den().is_monic());
        assert_eq!(x.to_text(), "(t+1)/(t^2+1)");
    }

    #[test]
    fn inverse_of_one_and_zero() {
        assert_eq!(FElem::one(3).inv().unwrap(), FElem::one(3));
        assert_eq!(FElem::zero(3).inv(), Err(Error::DivisionByZero));
        assert!(FElem::new(RPoly::one(3), RPoly::zero(3)).is_err());
    }

    #[test]
    fn field_identities() {
        let a = f(&[1, 1], &[0, 1]);
        let b = f(&[2], &[1, 0, 1]);
        assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        assert_eq!(a.add_ref(&b).sub_ref(&b), a);
        assert_eq!(a.mul_ref(&b).div(&b).unwrap(), a);
        assert_eq!(a.frobenius(1), a.pow(3).unwrap());
        assert_eq!(a.q_valuation(&RPoly::t(3)), Some(-1));
    }
}
