//! Places of K trivial on F = F_p(t): the finite places (π) for π
//! irreducible in θ over F, and the infinite place with uniformizer 1/θ.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::base::RPoly;
use crate::field::factor::{factor_over_f, is_irreducible_over_f};
use crate::field::{parse_k, BiPoly, FPoly, KElem};
use crate::error::{Error, Result};
use crate::base::FElem;

/// Largest θ-degree factored by [`check_product_formula`].
pub const PRODUCT_FORMULA_MAX_THETA_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// π is primitive in F_p[t][θ], irreducible over F, and normalized.
    Finite(Arc<BiPoly>),
    Infinite,
}

impl Place {
    pub fn finite(pi: BiPoly) -> Result<Self> {
        if pi.dtheta() < 1 {
            return Err(Error::NotIrreducible(pi.to_text()));
        }
        let pi = pi.primitive_part().normalized();
        if !is_irreducible_over_f(&pi)? {
            return Err(Error::NotIrreducible(pi.to_text()));
        }
        Ok(Place::Finite(Arc::new(pi)))
    }

    /// The place θ − c for c in F_p[t]; always irreducible.
    pub fn linear(c: &RPoly) -> Self {
        let p = c.modulus();
        Place::Finite(Arc::new(BiPoly::from_coeffs(vec![-c, RPoly::one(p)], p)))
    }

    pub fn parse(s: &str, p: u32) -> Result<Self> {
        let s = s.trim();
        if s == "infinite" {
            return Ok(Place::Infinite);
        }
        let body = s.strip_prefix("finite:").ok_or_else(|| Error::Parse {
            column: 1,
            message: format!("expected `finite:<poly>` or `infinite`, got `{s}`"),
        })?;
        let x = parse_k(body, p).map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse { column: column + 7, message },
            e => e,
        })?;
        if !x.is_polynomial() {
            return Err(Error::Parse { column: 8, message: "place polynomial must lie in F_p[t][θ]".into() });
        }
        Self::finite(x.num().clone())
    }

    pub fn to_text(&self) -> String {
        match self {
            Place::Finite(pi) => format!("finite:{pi}"),
            Place::Infinite => "infinite".into(),
        }
    }

    pub fn pi(&self) -> Option<&BiPoly> {
        match self {
            Place::Finite(pi) => Some(pi),
            Place::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// N_v: the residue degree.
    pub fn weight(&self) -> u32 {
        match self {
            Place::Finite(pi) => pi.dtheta() as u32,
            Place::Infinite => 1,
        }
    }

    /// Order of π in a nonzero polynomial.
    pub fn ord_poly(&self, f: &BiPoly) -> i64 {
        match self {
            Place::Finite(pi) => {
                if pi.dtheta() == 1 && pi.lead().is_one() {
                    return ord_linear(f, &pi.coeff(0));
                }
                let mut k = 0;
                let mut cur = f.clone();
                while let Some(q) = cur.exact_div(pi) {
                    cur = q;
                    k += 1;
                }
                k
            }
            Place::Infinite => -f.dtheta(),
        }
    }

    /// v(x), with `None` standing for +∞ at x = 0.
    pub fn valuation(&self, x: &KElem) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(self.ord_poly(x.num()) - self.ord_poly(x.den()))
    }

    pub fn is_integral(&self, x: &KElem) -> bool {
        self.valuation(x).map_or(true, |v| v >= 0)
    }

    pub fn is_unit(&self, x: &KElem) -> bool {
        self.valuation(x) == Some(0)
    }

    /// π as a polynomial over F in the chart variable (θ, or 1/θ at ∞).
    pub fn modulus_poly(&self, p: u32) -> FPoly {
        match self {
            Place::Finite(pi) => FPoly::from_bipoly(pi),
            Place::Infinite => FPoly::x(p),
        }
    }

    pub fn residue_reduce(&self, x: &KElem) -> Result<FvElem> {
        let p = x.modulus();
        match self.valuation(x) {
            None => return Ok(FvElem::zero(self.clone(), p)),
            Some(v) if v < 0 => return Err(Error::NotIntegral(self.to_text())),
            Some(v) if v > 0 => return Ok(FvElem::zero(self.clone(), p)),
            _ => {}
        }
        match self {
            Place::Infinite => {
                let c = FElem::new(x.num().lead(), x.den().lead()).unwrap();
                Ok(FvElem { place: self.clone(), rep: FPoly::constant(c) })
            }
            Place::Finite(pi) => {
                let k = self.ord_poly(x.den()) as usize;
                let strip = |f: &BiPoly| {
                    let mut f = f.clone();
                    for _ in 0..k {
                        f = f.exact_div(pi).unwrap();
                    }
                    FPoly::from_bipoly(&f)
                };
                let m = FPoly::from_bipoly(pi);
                let n = strip(x.num()).rem(&m).unwrap();
                let d = strip(x.den()).inv_mod(&m).expect("unit denominator");
                Ok(FvElem { place: self.clone(), rep: n.mul_mod(&d, &m) })
            }
        }
    }
}

fn ord_linear(f: &BiPoly, c0: &RPoly) -> i64 {
    // Horner division by θ + c0 with exact remainder checks.
    let mut k = 0;
    let mut cur: Vec<RPoly> = f.coeffs().to_vec();
    while cur.len() > 1 {
        let n = cur.len() - 1;
        let mut q = vec![RPoly::zero(c0.modulus()); n];
        let mut acc = cur[n].clone();
        for j in (0..n).rev() {
            q[j] = acc.clone();
            acc = &cur[j] - &(c0 * &acc);
        }
        if !acc.is_zero() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Place::Infinite, Place::Infinite) => Ordering::Equal,
            (Place::Infinite, _) => Ordering::Greater,
            (_, Place::Infinite) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a.cmp_canonical(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

/// Element of the residue field F_v = F[θ]/(π) (F itself at ∞).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FvElem {
    pub place: Place,
    pub rep: FPoly,
}

impl FvElem {
    pub fn zero(place: Place, p: u32) -> Self {
        FvElem { place, rep: FPoly::zero(p) }
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn modulus(&self) -> FPoly {
        self.place.modulus_poly(self.rep.modulus())
    }

    pub fn add(&self, o: &Self) -> Self {
        FvElem { place: self.place.clone(), rep: self.rep.add_ref(&o.rep) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FvElem { place: self.place.clone(), rep: self.rep.sub_ref(&o.rep) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        FvElem { place: self.place.clone(), rep: self.rep.mul_mod(&o.rep, &self.modulus()) }
    }

    pub fn inv(&self) -> Result<Self> {
        let r = self.rep.inv_mod(&self.modulus()).ok_or(Error::DivisionByZero)?;
        Ok(FvElem { place: self.place.clone(), rep: r })
    }

    pub fn to_text(&self) -> String {
        self.rep.to_string()
    }
}

/// One term of the product formula: (place, v(x), N_v).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProductTerm {
    pub place: Place,
    pub valuation: i64,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProductFormula {
    pub terms: Vec<ProductTerm>,
    pub sum: i64,
}

/// All places where `x` is not a unit, with Σ N_v·v(x).
pub fn check_product_formula(x: &KElem) -> Result<ProductFormula> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    for f in [x.num(), x.den()] {
        if f.dtheta() as usize > PRODUCT_FORMULA_MAX_THETA_DEGREE {
            return Err(Error::BoundExceeded(format!(
                "θ-degree {} exceeds the factorization limit {PRODUCT_FORMULA_MAX_THETA_DEGREE}",
                f.dtheta()
            )));
        }
    }
    let mut terms = Vec::new();
    for (f, sign) in [(x.num(), 1i64), (x.den(), -1)] {
        if f.dtheta() >= 1 {
            for (pi, e) in factor_over_f(f)? {
                terms.push(ProductTerm { place: Place::Finite(Arc::new(pi.clone())), valuation: sign * e as i64, weight: pi.dtheta() as u32 });
            }
        }
    }
    let vinf = Place::Infinite.valuation(x).unwrap();
    if vinf != 0 {
        terms.push(ProductTerm { place: Place::Infinite, valuation: vinf, weight: 1 });
    }
    terms.sort_by(|a, b| a.place.cmp(&b.place));
    let sum = terms.iter().map(|t| t.weight as i64 * t.valuation).sum();
    Ok(ProductFormula { terms, sum })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct PlaceSets {
    pub omega0_excluded: Vec<Place>,
    pub omega1_excluded: Vec<Place>,
}

impl PlaceSets {
    pub fn in_omega0(&self, v: &Place) -> bool {
        !self.omega0_excluded.contains(v)
    }

    pub fn in_omega1(&self, v: &Place) -> bool {
        !self.omega1_excluded.contains(v)
    }
}

fn finite_support(f: &BiPoly, out: &mut Vec<Place>) -> Result<()> {
    if f.dtheta() >= 1 {
        for (pi, _) in factor_over_f(f)? {
            out.push(Place::Finite(Arc::new(pi)));
        }
    }
    Ok(())
}

/// Bad places for a Drinfeld module with Φ_t coefficients `coeffs` and for
/// the generators `gens` of a module.
pub fn classify_places(coeffs: &[KElem], gens: &[Vec<KElem>]) -> Result<PlaceSets> {
    let mut bad0 = Vec::new();
    let nonzero: Vec<&KElem> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    for c in &nonzero {
        finite_support(c.den(), &mut bad0)?;
    }
    if let (Some(first), Some(last)) = (nonzero.first(), nonzero.last()) {
        finite_support(first.num(), &mut bad0)?;
        finite_support(last.num(), &mut bad0)?;
    }
    let inf_bad = nonzero.iter().any(|c| !Place::Infinite.is_integral(c))
        || nonzero.first().is_some_and(|c| !Place::Infinite.is_unit(c))
        || nonzero.last().is_some_and(|c| !Place::Infinite.is_unit(c));
    if inf_bad {
        bad0.push(Place::Infinite);
    }
    bad0.sort();
    bad0.dedup();
    let mut bad1 = bad0.clone();
    for x in gens.iter().flatten() {
        finite_support(x.den(), &mut bad1)?;
        if !Place::Infinite.is_integral(x) {
            bad1.push(Place::Infinite);
        }
    }
    bad1.sort();
    bad1.dedup();
    Ok(PlaceSets { omega0_excluded: bad0, omega1_excluded: bad1 })
}

/// Degree-one places θ − c, c in F_p[t], by increasing deg c and then
/// lexicographically; the first `count` of them.
pub fn linear_places(p: u32, count: usize) -> Vec<Place> {
    let mut out = Vec::new();
    let mut d = 0;
    while out.len() < count {
        for c in RPoly::enumerate_below(d + 1, p) {
            if c.deg() == d as i64 || (d == 0 && c.is_zero()) {
                out.push(Place::linear(&c));
                if out.len() == count {
                    break;
                }
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    fn pl(s: &str) -> Place {
        Place::parse(s, 3).unwrap()
    }

    #[test]
    fn valuations() {
        let x = k("θ^2/(θ+t)");
        assert_eq!(pl("finite:θ").valuation(&x), Some(2));
        assert_eq!(Place::Infinite.valuation(&x), Some(-1));
        assert_eq!(pl("finite:θ+t").valuation(&k("t^5")), Some(0));
        assert_eq!(pl("finite:θ").valuation(&k("0")), None);
        assert_eq!(pl("finite:θ^2+t").valuation(&k("(θ^2+t)^3*θ/(t+1)")), Some(3));
    }

    #[test]
    fn product_formula_examples() {
        let r = check_product_formula(&k("θ^2/(θ+t)")).unwrap();
        assert_eq!(r.sum, 0);
        let got: Vec<(String, i64)> = r.terms.iter().map(|t| (t.place.to_text(), t.valuation)).collect();
        assert_eq!(got, vec![("finite:θ".into(), 2), ("finite:θ+t".into(), -1), ("infinite".into(), -1)]);
        let r = check_product_formula(&k("t")).unwrap();
        assert!(r.terms.is_empty());
        let r = check_product_formula(&k("θ^2+t")).unwrap();
        assert_eq!(r.terms[0].weight, 2);
        assert_eq!(r.terms[1].valuation, -2);
        assert_eq!(check_product_formula(&k("0")), Err(Error::ZeroInput));
    }

    #[test]
    fn reductions() {
        let v = pl("finite:θ+t");
        assert_eq!(v.residue_reduce(&k("θ")).unwrap().to_text(), "2*t");
        assert_eq!(v.residue_reduce(&k("t")).unwrap().to_text(), "t");
        assert!(matches!(pl("finite:θ").residue_reduce(&k("1/θ")), Err(Error::NotIntegral(_))));
        assert_eq!(Place::Infinite.residue_reduce(&k("(t*θ+1)/(θ+t)")).unwrap().to_text(), "t");
    }

    #[test]
    fn classification() {
        let psi = [k("0"), k("θ"), k("1")];
        let s = classify_places(&psi, &[]).unwrap();
        assert_eq!(s.omega0_excluded, vec![pl("finite:θ"), Place::Infinite]);
        let carlitz = [k("t"), k("1")];
        let s = classify_places(&carlitz, &[vec![k("1/θ")]]).unwrap();
        assert!(s.omega0_excluded.is_empty());
        assert_eq!(s.omega1_excluded, vec![pl("finite:θ")]);
    }

    #[test]
    fn parsing_places() {
        assert_eq!(pl("finite:θ^2+t").to_text(), "finite:θ^2+t");
        assert_eq!(pl("infinite"), Place::Infinite);
        assert!(matches!(Place::parse("finite:θ^2-t^2", 3), Err(Error::NotIrreducible(_))));
        assert_eq!(linear_places(3, 4).iter().map(|v| v.to_text()).collect::<Vec<_>>(),
            vec!["finite:θ", "finite:θ+2", "finite:θ+1", "finite:θ+2*t"]);
    }
}
