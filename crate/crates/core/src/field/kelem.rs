//! The function field K = F_p(t)(θ).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use crate::base::{FElem, RPoly};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` in F_p[t][θ] and `den` normalized so
/// that the leading t-coefficient of its leading θ-coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KElem {
    num: BiPoly,
    den: BiPoly,
}

impl KElem {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BiPoly, den: BiPoly) -> Self {
        let p = den.modulus();
        if num.is_zero() {
            return Self::zero(p);
        }
        if den.is_one() {
            return KElem { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Self::normalize_unit(num, den)
    }

    fn normalize_unit(num: BiPoly, den: BiPoly) -> Self {
        let k = den.normalizing_unit();
        if k == 1 {
            KElem { num, den }
        } else {
            KElem { num: num.scale(k), den: den.scale(k) }
        }
    }

    pub fn zero(p: u32) -> Self {
        KElem { num: BiPoly::zero(p), den: BiPoly::one(p) }
    }

    pub fn one(p: u32) -> Self {
        KElem { num: BiPoly::one(p), den: BiPoly::one(p) }
    }

    pub fn theta(p: u32) -> Self {
        Self::from_bipoly(BiPoly::theta(p))
    }

    pub fn t(p: u32) -> Self {
        Self::from_bipoly(BiPoly::t(p))
    }

    pub fn constant(v: i64, p: u32) -> Self {
        Self::from_rpoly(RPoly::constant(v, p))
    }

    pub fn from_bipoly(num: BiPoly) -> Self {
        let p = num.modulus();
        KElem { num, den: BiPoly::one(p) }
    }

    pub fn from_rpoly(r: RPoly) -> Self {
        Self::from_bipoly(BiPoly::from_rpoly(r))
    }

    pub fn from_felem(x: &FElem) -> Self {
        KElem { num: BiPoly::from_rpoly(x.num().clone()), den: BiPoly::from_rpoly(x.den().clone()) }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.den.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the element lies in F_p[t][θ].
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The element as an element of F = F_p(t), when it has θ-degree 0.
    pub fn as_felem(&self) -> Option<FElem> {
        let n = self.num.as_rpoly()?;
        let d = self.den.as_rpoly()?;
        Some(FElem::new(n, d).expect("nonzero denominator"))
    }

    pub fn as_rpoly(&self) -> Option<RPoly> {
        if self.den.is_one() {
            self.num.as_rpoly()
        } else {
            None
        }
    }

    /// The element as a constant in F_p.
    pub fn as_constant(&self) -> Option<u32> {
        let r = self.as_rpoly()?;
        r.is_constant().then(|| r.coeff(0))
    }

    fn check(&self, o: &Self) -> u32 {
        assert_eq!(self.modulus(), o.modulus(), "mixing F_p moduli");
        self.modulus()
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.check(o);
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_bipoly(self.num.add_ref(&o.num));
            }
            return Self::reduce(self.num.add_ref(&o.num), self.den.clone());
        }
        if o.den.is_one() {
            // gcd(a + c·b, b) = gcd(a, b) = 1
            return KElem { num: self.num.add_ref(&o.num.mul_ref(&self.den)), den: self.den.clone() };
        }
        if self.den.is_one() {
            return KElem { num: o.num.add_ref(&self.num.mul_ref(&o.den)), den: o.den.clone() };
        }
        let g = self.den.gcd(&o.den);
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = o.den.exact_div(&g).unwrap();
        let num = self.num.mul_ref(&d1).add_ref(&o.num.mul_ref(&b1));
        if num.is_zero() {
            return Self::zero(self.modulus());
        }
        let den = b1.mul_ref(&o.den);
        if g.is_one() {
            return Self::normalize_unit(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() {
            Self::normalize_unit(num, den)
        } else {
            Self::normalize_unit(num.exact_div(&h).unwrap(), den.exact_div(&h).unwrap())
        }
    }

    pub fn neg(&self) -> Self {
        KElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_bipoly(self.num.mul_ref(&o.num));
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (self.num.exact_div(&g1).unwrap(), o.den.exact_div(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (o.num.exact_div(&g2).unwrap(), self.den.exact_div(&g2).unwrap())
        };
        Self::normalize_unit(a.mul_ref(&c), b.mul_ref(&d))
    }

    /// Multiplication by an element of F_p[t][θ].
    pub fn mul_bipoly(&self, f: &BiPoly) -> Self {
        self.mul_ref(&Self::from_bipoly(f.clone()))
    }

    pub fn scale(&self, k: u32) -> Self {
        let k = k % self.modulus();
        if k == 0 {
            return Self::zero(self.modulus());
        }
        KElem { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_unit(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if self.den.is_one() {
            return Ok(Self::from_bipoly(self.num.pow(e as u64)));
        }
        Ok(KElem { num: self.num.pow(e as u64), den: self.den.pow(e as u64) })
    }

    /// `x^(p^e)`; a field endomorphism that preserves the canonical form.
    pub fn frobenius(&self, e: u32) -> Self {
        KElem { num: self.num.frobenius(e), den: self.den.frobenius(e) }
    }

    /// The p-th root in K, when it exists.
    pub fn pth_root(&self) -> Option<Self> {
        Some(KElem { num: self.num.pth_root()?, den: self.den.pth_root()? })
    }

    /// Deterministic total order used for sorting reports.
    pub fn cmp_canonical(&self, o: &Self) -> std::cmp::Ordering {
        self.den.cmp_canonical(&o.den).then_with(|| self.num.cmp_canonical(&o.num))
    }

    pub fn height(&self) -> HeightProfile {
        HeightProfile {
            deg_theta_num: self.num.deg_theta().unwrap_or(0),
            deg_theta_den: self.den.deg_theta().unwrap_or(0),
            deg_t_num: self.num.deg_t(),
            deg_t_den: self.den.deg_t(),
        }
    }

    /// Canonical text, e.g. `((t+1)*θ^2+t)/(θ+t^2)`.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        let n = if self.num.is_monomial_text() { self.num.to_text() } else { format!("({})", self.num) };
        let d = if self.den.is_atom_text() { self.den.to_text() } else { format!("({})", self.den) };
        format!("{n}/{d}")
    }
}

/// Degree data of the canonical form of a [`KElem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
pub struct HeightProfile {
    pub deg_theta_num: usize,
    pub deg_theta_den: usize,
    pub deg_t_num: usize,
    pub deg_t_den: usize,
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&KElem> for &KElem {
            type Output = KElem;
            fn $m(self, o: &KElem) -> KElem {
                self.$imp(o)
            }
        }
        impl $tr<KElem> for KElem {
            type Output = KElem;
            fn $m(self, o: KElem) -> KElem {
                self.$imp(&o)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::neg(self)
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_k;

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    #[test]
    fn frobenius_of_sum() {
        assert_eq!(k("θ+t").frobenius(1), k("θ^3+t^3"));
    }

    #[test]
    fn inverse_pair() {
        assert!((&k("θ/t") * &k("t/θ")).is_one());
    }

    #[test]
    fn addition_keeps_coprime_numerator() {
        let s = &k("θ^2/(θ+t)") + &k("(t*θ+t^2)/(θ+t)");
        assert_eq!(s, k("(θ^2+t*θ+t^2)/(θ+t)"));
        assert_eq!(s.to_text(), "(θ^2+t*θ+t^2)/(θ+t)");
    }

    #[test]
    fn printer_forms() {
        assert_eq!(k("((t+1)*θ^2 + t)/(θ + t^2)").to_text(), "((t+1)*θ^2+t)/(θ+t^2)");
        assert_eq!(k("θ^2/(θ+t)").to_text(), "θ^2/(θ+t)");
        assert_eq!(k("2*t^3*θ^2").to_text(), "2*t^3*θ^2");
        assert_eq!(k("1/(2*t*θ)").to_text(), "2/(t*θ)");
        assert_eq!(k("θ/t^2").to_text(), "θ/t^2");
    }

    #[test]
    fn heights() {
        assert_eq!(k("0").height(), HeightProfile::default());
        let h = k("θ^3/(θ+t)").height();
        assert_eq!((h.deg_theta_num, h.deg_theta_den), (3, 1));
        let h = k("t^2").height();
        assert_eq!(h, HeightProfile { deg_t_num: 2, ..Default::default() });
    }
}

impl serde::Serialize for KElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl PartialOrd for KElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for KElem {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.cmp_canonical(o)
    }
}
