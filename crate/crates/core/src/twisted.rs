//! Additive polynomials Σ c_i x^(p^i) over K under addition and composition.

use std::fmt;

use crate::field::{parse_k, KElem};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwistedPoly {
    p: u32,
    c: Vec<KElem>,
}

impl TwistedPoly {
    pub fn zero(p: u32) -> Self {
        TwistedPoly { p, c: Vec::new() }
    }

    /// The map x ↦ x.
    pub fn identity(p: u32) -> Self {
        Self::from_coeffs(vec![KElem::one(p)], p)
    }

    /// x ↦ c·x^(p^i)
    pub fn monomial(c: KElem, i: usize) -> Self {
        let p = c.modulus();
        let mut v = vec![KElem::zero(p); i + 1];
        v[i] = c;
        Self::from_coeffs(v, p)
    }

    pub fn from_coeffs(mut c: Vec<KElem>, p: u32) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        TwistedPoly { p, c }
    }

    /// Parses `[c0, c1, ..., cD]`.
    pub fn parse(s: &str, p: u32) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or(Error::Parse { column: 1, message: "expected `[c0, c1, ...]`".into() })?;
        let offset = s.find('[').unwrap() + 2;
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let chars: Vec<char> = inner.chars().collect();
        for i in 0..=chars.len() {
            let c = chars.get(i).copied();
            match c {
                Some('(') => depth += 1,
                Some(')') => depth -= 1,
                Some(',') | None if depth == 0 => {
                    let item: String = chars[start..i].iter().collect();
                    if item.trim().is_empty() && c.is_none() && out.is_empty() {
                        break;
                    }
                    out.push(parse_k(&item, p).map_err(|e| match e {
                        Error::Parse { column, message } => Error::Parse { column: column + offset + start - 1, message },
                        e => e,
                    })?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        Ok(Self::from_coeffs(out, p))
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> KElem {
        self.c.get(i).cloned().unwrap_or_else(|| KElem::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn tau_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn tau_valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(), self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(), self.p)
    }

    pub fn neg(&self) -> Self {
        TwistedPoly { p: self.p, c: self.c.iter().map(|x| -x).collect() }
    }

    /// x ↦ k·f(x)
    pub fn scale(&self, k: &KElem) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x * k).collect(), self.p)
    }

    /// `self ∘ g`: (f∘g)_k = Σ_{i+j=k} f_i · g_j^(p^i).
    pub fn compose(&self, g: &Self) -> Self {
        if self.is_zero() || g.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![KElem::zero(self.p); self.c.len() + g.c.len() - 1];
        for (i, fi) in self.c.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.c.iter().enumerate() {
                if !gj.is_zero() {
                    out[i + j] = &out[i + j] + &(fi * &gj.frobenius(i as u32));
                }
            }
        }
        Self::from_coeffs(out, self.p)
    }

    pub fn eval(&self, x: &KElem) -> KElem {
        let mut acc = KElem::zero(self.p);
        if x.is_zero() {
            return acc;
        }
        for (i, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &x.frobenius(i as u32));
            }
        }
        acc
    }

    /// (τ-valuation, differential c_0).
    pub fn inseparability(&self) -> Result<(usize, KElem)> {
        let v = self.tau_valuation().ok_or(Error::ZeroMap)?;
        Ok((v, self.coeff(0)))
    }

    /// h with h(x^(p^k)) = f(x)-style exponent shift and coefficients
    /// h_i = f_(i+k)^(1/p^k), on the refined grid K^(1/p^k).
    pub fn pth_root(&self, k: usize) -> Result<RefinedTwisted> {
        let v = self.tau_valuation().ok_or(Error::ZeroMap)?;
        if v < k {
            return Err(Error::PrecisionGrid { valuation: v, k });
        }
        Ok(RefinedTwisted { grid: k as u32, stored: Self::from_coeffs(self.c[k..].to_vec(), self.p) })
    }

    pub fn to_text(&self) -> String {
        format!("[{}]", self.c.iter().map(|x| x.to_text()).collect::<Vec<_>>().join(", "))
    }

    /// Human form `t*x + x^3`.
    pub fn to_poly_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xe = if i == 0 { "x".to_string() } else { format!("x^{}", (self.p as u64).pow(i as u32)) };
            parts.push(if c.is_one() {
                xe
            } else if c.num().is_monomial_text() && c.is_polynomial() {
                format!("{c}*{xe}")
            } else {
                format!("({c})*{xe}")
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl serde::Serialize for TwistedPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// An additive polynomial over K^(1/p^grid). Coefficient i is stored as its
/// p^grid-th power, an element of K.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RefinedTwisted {
    pub grid: u32,
    pub stored: TwistedPoly,
}

impl RefinedTwisted {
    pub fn is_separable(&self) -> bool {
        !self.stored.coeff(0).is_zero()
    }

    pub fn to_text(&self) -> String {
        if self.grid == 0 {
            return self.stored.to_text();
        }
        let q = (self.stored.p as u64).pow(self.grid);
        let items: Vec<String> = self
            .stored
            .c
            .iter()
            .map(|c| if c.is_zero() || c.is_one() { c.to_text() } else { format!("({c})^(1/{q})") })
            .collect();
        format!("[{}]", items.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(s: &str) -> TwistedPoly {
        TwistedPoly::parse(s, 3).unwrap()
    }

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    #[test]
    fn carlitz_square() {
        let c = tp("[t, 1]");
        assert_eq!(c.compose(&c), tp("[t^2, t+t^3, 1]"));
        assert_eq!(c.compose(&TwistedPoly::identity(3)), c);
    }

    #[test]
    fn psi_square() {
        let psi = tp("[0, θ, 1]");
        assert_eq!(psi.compose(&psi), tp("[0, 0, θ^4, θ+θ^9, 1]"));
    }

    #[test]
    fn evaluation() {
        let c = tp("[t, 1]");
        assert_eq!(c.eval(&k("θ")), k("t*θ+θ^3"));
        assert_eq!(c.eval(&k("0")), k("0"));
        assert_eq!(c.eval(&k("1")), k("t+1"));
    }

    #[test]
    fn roots_and_inseparability() {
        let h = tp("[0, 0, 1]").pth_root(2).unwrap();
        assert_eq!((h.grid, h.stored.clone()), (2, TwistedPoly::identity(3)));
        let h = tp("[0, θ, 1]").pth_root(1).unwrap();
        assert_eq!(h.to_text(), "[(θ)^(1/3), 1]");
        assert!(h.is_separable());
        assert_eq!(tp("[t, 1]").pth_root(1), Err(Error::PrecisionGrid { valuation: 0, k: 1 }));
        assert_eq!(tp("[t, 1]").inseparability().unwrap(), (0, k("t")));
        assert_eq!(tp("[0, θ, 1]").inseparability().unwrap(), (1, k("0")));
        assert_eq!(tp("[0, 0, 1]").inseparability().unwrap(), (2, k("0")));
        assert_eq!(TwistedPoly::zero(3).inseparability(), Err(Error::ZeroMap));
    }

    #[test]
    fn text_roundtrip() {
        let f = tp("[t, (θ+1)/t, 1]");
        assert_eq!(TwistedPoly::parse(&f.to_text(), 3).unwrap(), f);
        assert_eq!(tp("[]"), TwistedPoly::zero(3));
    }
}
