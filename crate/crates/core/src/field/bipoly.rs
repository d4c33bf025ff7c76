//! Polynomials in F_p[t][θ], stored densely in θ.

use std::cmp::Ordering;
use std::fmt;

use crate::base::{fp, RPoly};

/// `Σ c_j(t) θ^j` with `c` trimmed so that the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiPoly {
    p: u32,
    c: Vec<RPoly>,
}

impl BiPoly {
    pub fn zero(p: u32) -> Self {
        BiPoly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rpoly(RPoly::one(p))
    }

    pub fn theta(p: u32) -> Self {
        Self::from_coeffs(vec![RPoly::zero(p), RPoly::one(p)], p)
    }

    pub fn t(p: u32) -> Self {
        Self::from_rpoly(RPoly::t(p))
    }

    pub fn from_rpoly(r: RPoly) -> Self {
        let p = r.modulus();
        Self::from_coeffs(vec![r], p)
    }

    /// `coeff * t^i * θ^j`
    pub fn monomial(coeff: u32, i: usize, j: usize, p: u32) -> Self {
        let mut c = vec![RPoly::zero(p); j + 1];
        c[j] = RPoly::monomial(coeff % p, i, p);
        Self::from_coeffs(c, p)
    }

    pub fn from_coeffs(mut c: Vec<RPoly>, p: u32) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        BiPoly { p, c }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[RPoly] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> RPoly {
        self.c.get(j).cloned().unwrap_or_else(|| RPoly::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// θ-degree 0 (including zero).
    pub fn is_rpoly(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn as_rpoly(&self) -> Option<RPoly> {
        match self.c.len() {
            0 => Some(RPoly::zero(self.p)),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn deg_theta(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// θ-degree, with −1 for zero.
    pub fn dtheta(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    /// Largest t-degree over all coefficients (0 for zero).
    pub fn deg_t(&self) -> usize {
        self.c.iter().filter_map(|x| x.degree()).max().unwrap_or(0)
    }

    /// Leading coefficient in θ.
    pub fn lead(&self) -> RPoly {
        self.c.last().cloned().unwrap_or_else(|| RPoly::zero(self.p))
    }

    /// Lowest θ-exponent with nonzero coefficient.
    pub fn low_theta(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().map(|x| x.num_terms()).sum()
    }

    fn check(&self, o: &Self) -> u32 {
        assert_eq!(self.p, o.p, "mixing F_p moduli");
        self.p
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        let n = self.c.len().max(o.c.len());
        let z = RPoly::zero(p);
        let c = (0..n).map(|j| self.c.get(j).unwrap_or(&z) + o.c.get(j).unwrap_or(&z)).collect();
        Self::from_coeffs(c, p)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        let n = self.c.len().max(o.c.len());
        let z = RPoly::zero(p);
        let c = (0..n).map(|j| self.c.get(j).unwrap_or(&z) - o.c.get(j).unwrap_or(&z)).collect();
        Self::from_coeffs(c, p)
    }

    pub fn neg(&self) -> Self {
        BiPoly { p: self.p, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let p = self.check(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(p);
        }
        if self.c.len() == 1 {
            return o.mul_rpoly(&self.c[0]);
        }
        if o.c.len() == 1 {
            return self.mul_rpoly(&o.c[0]);
        }
        let dt = self.deg_t() + o.deg_t() + 1;
        let mut acc = vec![vec![0u64; dt]; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (ka, &x) in a.coeffs().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, b) in o.c.iter().enumerate() {
                    let row = &mut acc[i + j];
                    for (kb, &y) in b.coeffs().iter().enumerate() {
                        row[ka + kb] += x as u64 * y as u64;
                    }
                }
            }
            // keep accumulators bounded for very long products
            if i % 1024 == 1023 {
                for row in acc.iter_mut() {
                    for v in row.iter_mut() {
                        *v %= p as u64;
                    }
                }
            }
        }
        let c = acc
            .into_iter()
            .map(|row| RPoly::from_coeffs(row.into_iter().map(|v| (v % p as u64) as u32).collect(), p))
            .collect();
        Self::from_coeffs(c, p)
    }

    pub fn mul_rpoly(&self, r: &RPoly) -> Self {
        if r.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.c.iter().map(|x| x * r).collect(), self.p)
    }

    pub fn scale(&self, k: u32) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x.scale(k)).collect(), self.p)
    }

    /// Multiplication by θ^k.
    pub fn shift_theta(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![RPoly::zero(self.p); k];
        c.extend(self.c.iter().cloned());
        BiPoly { p: self.p, c }
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

    /// Monic gcd of the t-coefficients (zero for the zero polynomial).
    pub fn content(&self) -> RPoly {
        let mut g = RPoly::zero(self.p);
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_rpoly(&self, r: &RPoly) -> Option<Self> {
        let c: Option<Vec<RPoly>> = self.c.iter().map(|x| x.exact_div(r)).collect();
        c.map(|c| Self::from_coeffs(c, self.p))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        if g.is_one() {
            return self.clone();
        }
        self.div_rpoly(&g).expect("content divides")
    }

    /// Unit in F_p^× that makes the leading t-coefficient of the leading
    /// θ-coefficient equal to 1.
    pub fn normalizing_unit(&self) -> u32 {
        if self.is_zero() {
            1
        } else {
            fp::inv(self.lead().lead(), self.p)
        }
    }

    pub fn normalized(&self) -> Self {
        let k = self.normalizing_unit();
        if k == 1 {
            self.clone()
        } else {
            self.scale(k)
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || self.lead().lead() == 1
    }

    /// Pseudo-remainder of `self` by `d` (which must be nonzero).
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.dtheta();
        assert!(dd >= 0, "pseudo-division by zero");
        let lc = d.lead();
        let mut r = self.clone();
        while r.dtheta() >= dd {
            let k = (r.dtheta() - dd) as usize;
            let lr = r.lead();
            r = r.mul_rpoly(&lc).sub_ref(&d.mul_rpoly(&lr).shift_theta(k));
        }
        r
    }

    /// Remainder by a divisor that is monic in θ.
    pub fn rem_monic(&self, d: &Self) -> Self {
        assert!(d.lead().is_one(), "divisor must be monic in θ");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return self.clone();
        }
        let mut r = self.c.clone();
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut r[i], RPoly::zero(self.p));
            for j in 0..dd {
                if !d.c[j].is_zero() {
                    r[i - dd + j] = &r[i - dd + j] - &(&c * &d.c[j]);
                }
            }
        }
        r.truncate(dd);
        Self::from_coeffs(r, self.p)
    }

    /// Exact division in F_p[t][θ], or `None` if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.c.len() == 1 {
            return self.div_rpoly(&d.c[0]);
        }
        if self.dtheta() < d.dtheta() {
            return None;
        }
        let dd = d.c.len() - 1;
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = vec![RPoly::zero(self.p); self.c.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = r[i].exact_div(&lc)?;
            r[i] = RPoly::zero(self.p);
            for j in 0..dd {
                if !d.c[j].is_zero() {
                    r[i - dd + j] = &r[i - dd + j] - &(&c * &d.c[j]);
                }
            }
            q[i - dd] = c;
        }
        r[..dd].iter().all(RPoly::is_zero).then(|| Self::from_coeffs(q, self.p))
    }

    pub fn divides(&self, o: &Self) -> bool {
        o.exact_div(self).is_some()
    }

    /// Normalized gcd in F_p[t][θ] via primitive remainder sequences.
    pub fn gcd(&self, o: &Self) -> Self {
        self.check(o);
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let cont = self.content().gcd(&o.content());
        if self.c.len() == 1 || o.c.len() == 1 {
            return BiPoly::from_rpoly(cont);
        }
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.dtheta() < b.dtheta() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.c.len() == 1 {
                return BiPoly::from_rpoly(cont);
            }
            let r = a.prem(&b);
            if r.is_zero() {
                return b.mul_rpoly(&cont).normalized();
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// `self^(p^e)`: both variables' exponents are scaled by p^e.
    pub fn frobenius(&self, e: u32) -> Self {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let q = (self.p as usize).pow(e);
        let mut c = vec![RPoly::zero(self.p); (self.c.len() - 1) * q + 1];
        for (j, x) in self.c.iter().enumerate() {
            c[j * q] = x.frobenius(e);
        }
        BiPoly { p: self.p, c }
    }

    /// The p-th root when `self` is a p-th power in F_p[t, θ].
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        let mut c = Vec::new();
        for (j, x) in self.c.iter().enumerate() {
            if j % p == 0 {
                c.push(x.pth_root()?);
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(Self::from_coeffs(c, self.p))
    }

    pub fn derivative_theta(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(j, x)| x.scale((j as u32) % self.p)).collect();
        Self::from_coeffs(c, self.p)
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x.derivative()).collect(), self.p)
    }

    /// Coefficient reversal: `θ^d f(1/θ)` with `d = deg_θ f`.
    pub fn reverse(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::from_coeffs(c, self.p)
    }

    /// Kronecker substitution θ ↦ t^n (requires `n > deg_t`).
    pub fn kronecker(&self, n: usize) -> RPoly {
        let mut c = vec![0u32; self.c.len() * n + 1];
        for (j, x) in self.c.iter().enumerate() {
            for (i, &v) in x.coeffs().iter().enumerate() {
                c[j * n + i] = fp::add(c[j * n + i], v, self.p);
            }
        }
        RPoly::from_coeffs(c, self.p)
    }

    /// Inverse of [`Self::kronecker`] on polynomials with t-degrees below n.
    pub fn unkronecker(f: &RPoly, n: usize) -> Self {
        let p = f.modulus();
        let c: Vec<RPoly> = f.coeffs().chunks(n).map(|ch| RPoly::from_coeffs(ch.to_vec(), p)).collect();
        Self::from_coeffs(c, p)
    }

    /// Deterministic total order: θ-degree, then coefficients from the top.
    pub fn cmp_canonical(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| {
            for (a, b) in self.c.iter().rev().zip(o.c.iter().rev()) {
                match a.cmp_canonical(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    /// Terms as `(coefficient text, θ-exponent)` in descending θ order.
    fn term_texts(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (j, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let th = match j {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{j}"),
            };
            if j == 0 {
                out.push(x.to_text());
            } else if x.is_one() {
                out.push(th);
            } else if x.num_terms() == 1 {
                out.push(format!("{}*{th}", x.to_text()));
            } else {
                out.push(format!("({})*{th}", x.to_text()));
            }
        }
        out
    }

    /// Canonical text, θ-major and descending: `(t+1)*θ^2+t`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.term_texts().join("+")
    }

    /// True when the text is a single product of factors (no top-level `+`).
    pub fn is_monomial_text(&self) -> bool {
        let terms = self.term_texts();
        terms.len() == 1 && (self.c.len() > 1 || self.c[0].num_terms() == 1)
    }

    /// True when the text is a single power `t^i` or `θ^j` (or a constant).
    pub fn is_atom_text(&self) -> bool {
        if !self.is_monomial_text() {
            return false;
        }
        let lead = self.lead();
        if self.c.len() == 1 {
            lead.is_constant() || lead.lead() == 1
        } else {
            lead.is_one()
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(p: u32) -> BiPoly {
        BiPoly::theta(p)
    }

    fn t(p: u32) -> BiPoly {
        BiPoly::t(p)
    }

    #[test]
    fn text_is_theta_major() {
        let p = 3;
        let f = t(p).add_ref(&BiPoly::one(p)).mul_ref(&th(p).pow(2)).add_ref(&t(p));
        assert_eq!(f.to_text(), "(t+1)*θ^2+t");
        assert_eq!(BiPoly::monomial(2, 3, 2, p).to_text(), "2*t^3*θ^2");
    }

    #[test]
    fn gcd_and_exact_division() {
        let p = 3;
        let a = th(p).add_ref(&t(p));
        let b = th(p).sub_ref(&t(p)).mul_ref(&t(p));
        let f = a.mul_ref(&b);
        assert_eq!(f.exact_div(&a), Some(b.clone()));
        assert_eq!(f.gcd(&a.mul_ref(&th(p))), a);
        assert_eq!(f.gcd(&BiPoly::from_rpoly(RPoly::t(p).pow(2))), t(p));
        assert!(th(p).exact_div(&a).is_none());
    }

    #[test]
    fn frobenius_matches_power() {
        let p = 3;
        let f = th(p).add_ref(&t(p)).add_ref(&th(p).mul_ref(&t(p)));
        assert_eq!(f.frobenius(1), f.pow(3));
        assert_eq!(f.frobenius(1).pth_root(), Some(f));
    }

    #[test]
    fn kronecker_roundtrip() {
        let p = 5;
        let f = th(p).pow(3).add_ref(&BiPoly::monomial(3, 2, 1, p)).add_ref(&t(p));
        let n = f.deg_t() + 1;
        assert_eq!(BiPoly::unkronecker(&f.kronecker(n), n), f);
    }
}
