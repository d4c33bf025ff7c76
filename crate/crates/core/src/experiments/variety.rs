//! Affine varieties over K: finite point sets and hypersurfaces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{parse_k, parse_value, KElem, ParseValue};
use crate::module::point_text;

/// Polynomial in x_1..x_g with coefficients in K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    p: u32,
    terms: BTreeMap<Vec<u32>, KElem>,
}

impl MPoly {
    pub fn constant(c: KElem) -> Self {
        let p = c.modulus();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { p, terms }
    }

    pub fn var(i: usize, p: u32) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        MPoly { p, terms: BTreeMap::from([(e, KElem::constant(1, p))]) }
    }

    pub fn parse(s: &str, p: u32, g: usize) -> Result<Self> {
        let f: MPoly = parse_value(s, p, true)?;
        if f.nvars() > g {
            return Err(Error::Config(format!("`{s}` uses more than {g} variables")));
        }
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &KElem)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    fn insert(&mut self, mut e: Vec<u32>, c: KElem) {
        while e.last() == Some(&0) {
            e.pop();
        }
        let s = match self.terms.get(&e) {
            Some(old) => old + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, s);
        }
    }

    pub fn eval(&self, x: &[KElem]) -> KElem {
        let mut acc = KElem::zero(self.p);
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                m = &m * &x[i].pow(k as i64).unwrap();
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Degree in x_i.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.get(i).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Writes f = a·x_i + b with a, b free of x_i; None unless deg_{x_i} f = 1.
    pub fn linear_in(&self, i: usize) -> Option<(MPoly, MPoly)> {
        if self.degree_in(i) != 1 {
            return None;
        }
        let mut a = MPoly::constant(KElem::zero(self.p));
        let mut b = a.clone();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            if e.get(i).copied().unwrap_or(0) == 1 {
                e2[i] = 0;
                a.insert(e2, c.clone());
            } else {
                b.insert(e2, c.clone());
            }
        }
        Some((a, b))
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(format!("x{}", i + 1)),
                    _ => mono.push(format!("x{}^{k}", i + 1)),
                }
            }
            let one = KElem::constant(1, self.p);
            if mono.is_empty() {
                parts.push(format!("({})", c.to_text()));
            } else if *c == one {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("({})*{}", c.to_text(), mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl ParseValue for MPoly {
    fn lift(x: KElem) -> Self {
        MPoly::constant(x)
    }

    fn var(i: usize, p: u32) -> Option<Self> {
        Some(MPoly::var(i, p))
    }

    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut r = MPoly::constant(KElem::zero(self.p));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e = (0..n).map(|i| e1.get(i).unwrap_or(&0) + e2.get(i).unwrap_or(&0)).collect();
                r.insert(e, c1 * c2);
            }
        }
        r
    }

    fn neg(&self) -> Self {
        MPoly { p: self.p, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    fn div(&self, o: &Self) -> std::result::Result<Self, &'static str> {
        if o.nvars() > 0 {
            return Err("division by a non-constant polynomial");
        }
        let c = o.terms.get(&Vec::new()).ok_or("division by zero")?;
        let inv = KElem::constant(1, self.p).div(c).map_err(|_| "division by zero")?;
        Ok(MPoly { p: self.p, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * &inv)).collect() })
    }

    fn pow(&self, e: i64) -> std::result::Result<Self, &'static str> {
        if e < 0 {
            if self.nvars() > 0 {
                return Err("negative power of a non-constant polynomial");
            }
            let c = self.terms.get(&Vec::new()).ok_or("negative power of zero")?;
            return c.pow(e).map(MPoly::constant).map_err(|_| "negative power of zero");
        }
        let mut r = MPoly::constant(KElem::constant(1, self.p));
        for _ in 0..e {
            r = r.mul(self);
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    ZeroDim { g: usize, points: Vec<Vec<KElem>> },
    Hypersurface { g: usize, poly: MPoly },
}

impl VarietySpec {
    /// Points given as `;`-separated tuples of `,`-separated elements.
    pub fn zero_dim(points: Vec<Vec<KElem>>, g: usize) -> Result<Self> {
        for (i, x) in points.iter().enumerate() {
            if x.len() != g {
                return Err(Error::Config(format!("point {i} has {} coordinates, expected {g}", x.len())));
            }
            if points[..i].contains(x) {
                return Err(Error::Config(format!("point {} listed twice", point_text(x))));
            }
        }
        Ok(VarietySpec::ZeroDim { g, points })
    }

    pub fn hypersurface(poly: MPoly, g: usize) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::Config("hypersurface equation is zero".into()));
        }
        if poly.nvars() > g {
            return Err(Error::Config(format!("equation uses more than {g} variables")));
        }
        Ok(VarietySpec::Hypersurface { g, poly })
    }

    pub fn parse_points(s: &str, p: u32, g: usize) -> Result<Self> {
        let mut pts = Vec::new();
        for tuple in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            pts.push(tuple.split(',').map(|c| parse_k(c.trim(), p)).collect::<Result<Vec<_>>>()?);
        }
        Self::zero_dim(pts, g)
    }

    pub fn g(&self) -> usize {
        match self {
            VarietySpec::ZeroDim { g, .. } | VarietySpec::Hypersurface { g, .. } => *g,
        }
    }

    pub fn contains(&self, x: &[KElem]) -> bool {
        match self {
            VarietySpec::ZeroDim { points, .. } => points.iter().any(|y| y == x),
            VarietySpec::Hypersurface { poly, .. } => poly.eval(x).is_zero(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            VarietySpec::ZeroDim { points, .. } => {
                format!("{{{}}}", points.iter().map(|x| point_text(x)).collect::<Vec<_>>().join("; "))
            }
            VarietySpec::Hypersurface { poly, .. } => format!("V({})", poly.to_text()),
        }
    }
}

impl serde::Serialize for VarietySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}
