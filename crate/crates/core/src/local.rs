//! Truncated completions K_v on the grids u^(1/p^k).
//!
//! A value z on grid k is stored through w = z^(p^k) = u^shift · body with
//! body a unit of O_v known modulo u^(prec − shift); u is π at a finite
//! place (body a polynomial in θ reduced mod π^n) and 1/θ at ∞ (body a
//! polynomial in 1/θ). Sums and products of z's are sums and products of
//! the w's, so all arithmetic happens at the grid level.

use num_rational::Ratio;

use crate::base::{FElem, RPoly};
use crate::drinfeld::{solve_additive, DivisionOptions, DrinfeldModule};
use crate::error::{Error, Result};
use crate::field::{BiPoly, FPoly, KElem};
use crate::places::Place;
use crate::twisted::TwistedPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalElem {
    place: Place,
    p: u32,
    grid: u32,
    shift: i64,
    body: FPoly,
    prec: i64,
}

fn chart_modulus(place: &Place, p: u32) -> FPoly {
    place.modulus_poly(p)
}

fn pi_pow(place: &Place, p: u32, n: i64) -> FPoly {
    let pi = chart_modulus(place, p);
    if place.is_infinite() {
        return FPoly::one(p).shift(n.max(0) as usize);
    }
    let mut r = FPoly::one(p);
    for _ in 0..n.max(0) {
        r = r.mul_ref(&pi);
    }
    r
}

impl LocalElem {
    fn build(place: Place, p: u32, grid: u32, shift: i64, body: FPoly, prec: i64) -> Self {
        if body.is_zero() || shift >= prec {
            return LocalElem { place, p, grid, shift: prec, body: FPoly::zero(p), prec };
        }
        let pi = chart_modulus(&place, p);
        let (k, unit) = body.split_valuation(&pi).unwrap();
        let shift = shift + k as i64;
        if shift >= prec {
            return LocalElem { place, p, grid, shift: prec, body: FPoly::zero(p), prec };
        }
        let body = unit.rem(&pi_pow(&place, p, prec - shift)).unwrap();
        LocalElem { place, p, grid, shift, body, prec }
    }

    /// O(u^n) on grid 0.
    pub fn zero(place: Place, p: u32, n: i64) -> Self {
        LocalElem { place, p, grid: 0, shift: n, body: FPoly::zero(p), prec: n }
    }

    /// The u-adic expansion of x to absolute precision n.
    pub fn embed(x: &KElem, place: &Place, n: i64) -> Self {
        let p = x.modulus();
        if x.is_zero() {
            return Self::zero(place.clone(), p, n);
        }
        let (shift, num, den) = match place {
            Place::Infinite => {
                let s = x.den().dtheta() - x.num().dtheta();
                (s, FPoly::from_bipoly(&x.num().reverse()), FPoly::from_bipoly(&x.den().reverse()))
            }
            Place::Finite(pi) if pi.lead().is_one() => {
                let a = place.ord_poly(x.num());
                let b = place.ord_poly(x.den());
                let shift = a - b;
                if shift >= n {
                    return Self::zero(place.clone(), p, n);
                }
                let rel = (n - shift) as u64;
                let strip = |f: &BiPoly, k: i64| {
                    let r = f.rem_monic(&pi.pow(k as u64 + rel));
                    FPoly::from_bipoly(&r.exact_div(&pi.pow(k as u64)).expect("π-power divides"))
                };
                (shift, strip(x.num(), a), strip(x.den(), b))
            }
            Place::Finite(pi) => {
                let pi = FPoly::from_bipoly(pi);
                let (a, n0) = FPoly::from_bipoly(x.num()).split_valuation(&pi).unwrap();
                let (b, d0) = FPoly::from_bipoly(x.den()).split_valuation(&pi).unwrap();
                (a as i64 - b as i64, n0, d0)
            }
        };
        if shift >= n {
            return Self::zero(place.clone(), p, n);
        }
        let m = pi_pow(place, p, n - shift);
        let body = num.mul_mod(&den.inv_mod(&m).expect("unit denominator"), &m);
        Self::build(place.clone(), p, 0, shift, body, n)
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    fn weight(&self) -> u32 {
        self.place.weight()
    }

    pub fn grid(&self) -> u32 {
        self.grid
    }

    fn q(&self) -> i64 {
        (self.p as i64).pow(self.grid)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// v(z), or None when z is zero to precision.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        (!self.is_zero()).then(|| Ratio::new(self.shift, self.q()))
    }

    /// Absolute precision of z.
    pub fn precision(&self) -> Ratio<i64> {
        Ratio::new(self.prec, self.q())
    }

    /// v(z) if nonzero, else the precision.
    pub fn valuation_or_precision(&self) -> Ratio<i64> {
        self.valuation().unwrap_or_else(|| self.precision())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixing F_p moduli");
        assert_eq!(self.place, o.place, "mixing places");
    }

    /// The same value on a grid refined to `k`.
    pub fn to_grid(&self, k: u32) -> Self {
        assert!(k >= self.grid);
        let e = k - self.grid;
        if e == 0 {
            return self.clone();
        }
        let q = (self.p as i64).pow(e);
        let body = self.body.frobenius(e);
        Self::build(self.place.clone(), self.p, k, self.shift * q, body, self.prec * q)
    }

    /// Forgets digits at and beyond u^k on the current grid.
    fn with_prec(&self, k: i64) -> Self {
        if k >= self.prec {
            return self.clone();
        }
        Self::build(self.place.clone(), self.p, self.grid, self.shift.min(k), self.body.clone(), k)
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        self.check(o);
        let k = self.grid.max(o.grid);
        (self.to_grid(k), o.to_grid(k))
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let prec = a.prec.min(b.prec);
        let s = a.shift.min(b.shift);
        if s >= prec {
            return LocalElem { grid: a.grid, ..Self::zero(a.place.clone(), a.p, prec) };
        }
        let part = |x: &Self| {
            if x.is_zero() || x.shift >= prec {
                FPoly::zero(x.p)
            } else {
                x.body.mul_ref(&pi_pow(&x.place, x.p, x.shift - s))
            }
        };
        let body = part(&a).add_ref(&part(&b));
        Self::build(a.place.clone(), a.p, a.grid, s, body, prec)
    }

    pub fn neg(&self) -> Self {
        LocalElem { body: self.body.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.common(o);
        let zero = |prec| LocalElem { grid: a.grid, ..Self::zero(a.place.clone(), a.p, prec) };
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return zero(a.prec + b.prec),
            (true, false) => return zero(a.prec + b.shift),
            (false, true) => return zero(b.prec + a.shift),
            _ => {}
        }
        let rel = (a.prec - a.shift).min(b.prec - b.shift);
        let shift = a.shift + b.shift;
        let body = a.body.mul_mod(&b.body, &pi_pow(&a.place, a.p, rel));
        Self::build(a.place.clone(), a.p, a.grid, shift, body, shift + rel)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroToPrecision);
        }
        let rel = self.prec - self.shift;
        let body = self.body.inv_mod(&pi_pow(&self.place, self.p, rel)).expect("unit body");
        Ok(Self::build(self.place.clone(), self.p, self.grid, -self.shift, body, rel - self.shift))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// z^p.
    pub fn frobenius(&self) -> Self {
        if self.grid > 0 {
            return LocalElem { grid: self.grid - 1, ..self.clone() };
        }
        let mut r = self.to_grid(1);
        r.grid = 0;
        r
    }

    /// z^(p^e).
    pub fn frobenius_n(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// z^(1/p), refining the grid.
    pub fn pth_root(&self) -> Self {
        LocalElem { grid: self.grid + 1, ..self.clone() }
    }

    /// Moves to the coarsest grid on which the value is representable.
    pub fn coarsen(&self) -> Self {
        let mut cur = self.clone();
        while cur.grid > 0 {
            let Some(w) = cur.stored_pth_root() else { break };
            cur = LocalElem { grid: cur.grid - 1, ..w };
        }
        cur
    }

    fn stored_pth_root(&self) -> Option<Self> {
        let p = self.p as i64;
        if self.is_zero() {
            return Some(Self::zero(self.place.clone(), self.p, self.prec.div_euclid(p)));
        }
        if self.shift % p != 0 {
            return None;
        }
        if self.weight() != 1 {
            return None;
        }
        let digits = self.digits();
        let pi = chart_modulus(&self.place, self.p);
        let mut body = FPoly::zero(self.p);
        let mut upow = FPoly::one(self.p);
        let rel = (self.prec - self.shift).div_euclid(p);
        for (i, d) in digits.iter().enumerate() {
            let i = i as i64;
            if i % p != 0 {
                if !d.is_zero() {
                    return None;
                }
                continue;
            }
            if i / p >= rel {
                break;
            }
            // only constant digits (N_v = 1) are handled
            if d.degree().unwrap_or(0) > 0 {
                return None;
            }
            let r = FPoly::constant(d.coeff(0).pth_root()?);
            body = body.add_ref(&r.mul_ref(&upow));
            upow = upow.mul_ref(&pi);
        }
        Some(Self::build(self.place.clone(), self.p, self.grid, self.shift / p, body, self.shift / p + rel))
    }

    /// For an integral grid-0 value: its class in O_v/u^k as a polynomial
    /// in the chart variable, of degree < k·N_v.
    pub fn truncate(&self, k: i64) -> FPoly {
        assert!(self.grid == 0, "truncation needs grid 0");
        assert!(k <= self.prec, "truncation beyond the precision");
        if self.is_zero() || self.shift >= k {
            return FPoly::zero(self.p);
        }
        assert!(self.shift >= 0, "truncation of a non-integral value");
        let m = pi_pow(&self.place, self.p, k);
        self.body.mul_ref(&pi_pow(&self.place, self.p, self.shift)).rem(&m).unwrap()
    }

    /// u-adic digits of the stored body, lowest first.
    pub fn digits(&self) -> Vec<FPoly> {
        let pi = chart_modulus(&self.place, self.p);
        let mut out = Vec::new();
        let mut cur = self.body.clone();
        for _ in 0..(self.prec - self.shift) {
            let (q, r) = cur.divrem(&pi).unwrap();
            out.push(r);
            cur = q;
        }
        out
    }

    /// The residue of an integral grid-0 value, as an element of F_v.
    pub fn residue(&self) -> Result<FPoly> {
        if self.grid != 0 {
            return Err(Error::PrecisionUnderflow(format!("residue of a value on grid {}", self.grid)));
        }
        if !self.is_zero() && self.shift < 0 {
            return Err(Error::NotIntegral(self.place.to_text()));
        }
        if self.is_zero() || self.shift > 0 {
            return Ok(FPoly::zero(self.p));
        }
        Ok(self.body.rem(&chart_modulus(&self.place, self.p)).unwrap())
    }

    /// Equality to the smaller of the two precisions.
    pub fn congruent(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    pub fn to_text(&self) -> String {
        let q = self.q();
        let var = if self.place.is_infinite() { "u" } else { "θ" };
        let mut parts = Vec::new();
        for (i, d) in self.digits().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let e = Ratio::new(self.shift + i as i64, q);
            let coeff = if q == 1 { format!("[{}]", d.to_text_in(var)) } else { format!("[{}]^(1/{q})", d.to_text_in(var)) };
            parts.push(if *e.numer() == 0 { coeff } else { format!("{}*{coeff}", upow(e)) });
        }
        parts.push(format!("O({})", upow(self.precision())));
        parts.join(" + ")
    }
}

fn upow(e: Ratio<i64>) -> String {
    if e.is_integer() && *e.numer() >= 0 {
        if *e.numer() == 1 { "u".into() } else { format!("u^{}", e.numer()) }
    } else {
        format!("u^({e})")
    }
}

impl std::fmt::Display for LocalElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Σ c_i x^(p^i); zero coefficients are taken as exact.
pub fn eval_local(coeffs: &[LocalElem], x: &LocalElem) -> LocalElem {
    let mut acc: Option<LocalElem> = None;
    // a product c * x^(p^i) is known only to the relative precision of c
    let rel = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.prec - c.shift).max().unwrap_or(0);
    let q = x.p as i64;
    let mut xp = x.clone();
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            if xp.grid == 0 {
                let need = rel + xp.shift.max(0) * q;
                xp = xp.with_prec((need + q - 1).div_euclid(q));
            }
            xp = xp.frobenius();
        }
        if c.is_zero() {
            continue;
        }
        let term = c.mul(&xp);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| LocalElem::zero(x.place.clone(), x.p, x.prec))
}

fn embed_coeffs(f: &TwistedPoly, v: &Place, n: i64) -> Result<Vec<LocalElem>> {
    f.coeffs()
        .iter()
        .map(|c| {
            if !v.is_integral(c) {
                return Err(Error::BadReduction(format!("coefficient {} is not integral at {}", c.to_text(), v.to_text())));
            }
            Ok(LocalElem::embed(c, v, n))
        })
        .collect()
}

/// All s in F_v with Σ c̄_i s^(p^i) = ȳ, and whether the list is complete.
/// Handles places with N_v = 1, where F_v = F.
pub fn residue_solutions(h: &TwistedPoly, v: &Place, ybar: &FPoly) -> Result<(Vec<FElem>, bool)> {
    if v.weight() != 1 {
        return Err(Error::ResidueDegree(v.weight()));
    }
    let p = h.modulus();
    let coeffs: Vec<KElem> = h
        .coeffs()
        .iter()
        .map(|c| Ok(KElem::from_felem(&v.residue_reduce(c)?.rep.coeff(0))))
        .collect::<Result<_>>()?;
    let hbar = TwistedPoly::from_coeffs(coeffs, p);
    if hbar.is_zero() {
        return Err(Error::BadReduction(v.to_text()));
    }
    let r = solve_additive(&hbar, &KElem::from_felem(&ybar.coeff(0)), &DivisionOptions::default());
    let sols = r.solutions.iter().filter_map(|s| s.as_felem()).collect();
    Ok((sols, r.complete))
}

fn newton(coeffs: &[LocalElem], y: &LocalElem, x0: LocalElem, n: i64) -> Result<LocalElem> {
    let lin = coeffs[0].inv()?;
    let target = Ratio::from_integer(n);
    let mut x = x0;
    for _ in 0..64 {
        let r = eval_local(coeffs, &x).sub(y);
        if r.is_zero() && r.precision() >= target || r.valuation_or_precision() >= target {
            return Ok(x);
        }
        if r.precision() < target {
            return Err(Error::PrecisionUnderflow(format!("residual known only to u^{}", r.precision())));
        }
        x = x.sub(&r.mul(&lin));
    }
    Err(Error::PrecisionUnderflow("Newton iteration did not reach the target".into()))
}

/// Solves Φ_a(X) = y in O_v to precision n.
///
/// For t | a the τ-valuation e of Φ_a is positive; S = X^(p^e) solves a
/// separable equation and X = S^(1/p^e) lives on grid e.
pub fn hensel_solve(phi: &DrinfeldModule, a: &RPoly, y: &LocalElem, n: i64) -> Result<LocalElem> {
    hensel_from(phi, a, y, n, None)
}

fn hensel_from(phi: &DrinfeldModule, a: &RPoly, y: &LocalElem, n: i64, start: Option<&FElem>) -> Result<LocalElem> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let v = y.place().clone();
    if y.grid != 0 {
        return Err(Error::PrecisionUnderflow("right-hand side must be on grid 0".into()));
    }
    if y.precision() < Ratio::from_integer(n) {
        return Err(Error::PrecisionUnderflow(format!("input known to u^{} < u^{n}", y.precision())));
    }
    let p = phi.modulus();
    let f = phi.phi_action(a);
    let e = f.tau_valuation().unwrap();
    let h = TwistedPoly::from_coeffs(f.coeffs()[e..].to_vec(), p);
    let coeffs = embed_coeffs(&h, &v, n)?;
    if coeffs[0].valuation() != Some(Ratio::from_integer(0)) {
        return Err(Error::BadReduction(format!("linear coefficient is not a unit at {}", v.to_text())));
    }
    let ybar = y.residue()?;
    let s0 = match start {
        Some(s) => s.clone(),
        None => {
            let (sols, complete) = residue_solutions(&h, &v, &ybar)?;
            match sols.into_iter().next() {
                Some(s) => s,
                None if complete => return Err(Error::NoResidueRoot(v.to_text())),
                None => return Err(Error::BoundExceeded(format!("residue search at {} is incomplete", v.to_text()))),
            }
        }
    };
    let s = newton(&coeffs, y, LocalElem::embed(&KElem::from_felem(&s0), &v, n), n)?;
    let x = (0..e).fold(s, |acc, _| acc.pth_root());
    let full = embed_coeffs(&f, &v, n)?;
    let r = eval_local(&full, &x).sub(y);
    assert!(r.valuation_or_precision() >= Ratio::from_integer(n), "Hensel residual below precision");
    Ok(x)
}

/// The K_v-points of Φ[a] reachable from residue roots of the separable
/// part, lifted to precision n (on grid e when t | a).
pub fn local_torsion(phi: &DrinfeldModule, a: &RPoly, v: &Place, n: i64) -> Result<Vec<LocalElem>> {
    let p = phi.modulus();
    let f = phi.phi_action(a);
    let e = f.tau_valuation().unwrap();
    let h = TwistedPoly::from_coeffs(f.coeffs()[e..].to_vec(), p);
    let (roots, complete) = residue_solutions(&h, v, &FPoly::zero(p))?;
    if !complete || roots.len() > (p as usize).pow(6) {
        return Err(Error::BoundExceeded(format!("residue kernel at {} exceeds p^6 points", v.to_text())));
    }
    let zero = LocalElem::zero(v.clone(), p, n);
    roots.iter().map(|s| hensel_from(phi, a, &zero, n, Some(s))).collect()
}

#[derive(Clone, Debug)]
pub struct TorsionDistance {
    pub approximant: LocalElem,
    /// v(z − u*); equals the precision when z is torsion to precision.
    pub distance: Ratio<i64>,
    pub residual_valuation: Ratio<i64>,
}

/// The local Φ[a]-point nearest to z and v(z − u*).
pub fn nearest_torsion_distance(phi: &DrinfeldModule, a: &RPoly, z: &LocalElem) -> Result<TorsionDistance> {
    let n = (z.precision().to_integer()).max(1);
    let pts = local_torsion(phi, a, z.place(), n)?;
    let best = pts
        .into_iter()
        .map(|u| {
            let d = z.sub(&u).valuation_or_precision();
            (d, u)
        })
        .max_by(|x, y| x.0.cmp(&y.0))
        .expect("0 is always a local torsion point");
    let f = embed_coeffs(&phi.phi_action(a), z.place(), n)?;
    let residual_valuation = eval_local(&f, z).valuation_or_precision();
    Ok(TorsionDistance { approximant: best.1, distance: best.0, residual_valuation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_k, parse_r};

    fn k(s: &str) -> KElem {
        parse_k(s, 3).unwrap()
    }

    fn v(s: &str) -> Place {
        Place::parse(s, 3).unwrap()
    }

    fn module(s: &str) -> DrinfeldModule {
        DrinfeldModule::new(TwistedPoly::parse(s, 3).unwrap(), None).unwrap()
    }

    #[test]
    fn embeddings() {
        let x = LocalElem::embed(&k("θ"), &v("finite:θ+t"), 3);
        assert_eq!(x.to_text(), "[2*t] + u*[1] + O(u^3)");
        assert!(LocalElem::embed(&k("0"), &v("infinite"), 4).is_zero());
        let y = LocalElem::embed(&k("1/(θ+t)"), &v("finite:θ+t"), 2);
        assert_eq!(y.valuation(), Some(Ratio::from_integer(-1)));
        assert_eq!(y.to_text(), "u^(-1)*[1] + O(u^2)");
        let z = LocalElem::embed(&k("θ^2/(θ+1)"), &v("infinite"), 3);
        assert_eq!(z.valuation(), Some(Ratio::from_integer(-1)));
    }

    #[test]
    fn embedding_is_multiplicative() {
        for place in [v("finite:θ+t"), v("finite:θ^2+t"), v("infinite")] {
            let (a, b) = (k("(θ+1)/(t*θ+2)"), k("θ^3+t^2*θ"));
            let ea = LocalElem::embed(&a, &place, 8);
            let eb = LocalElem::embed(&b, &place, 8);
            assert!(ea.mul(&eb).congruent(&LocalElem::embed(&(&a * &b), &place, 8)));
            assert!(ea.add(&eb).congruent(&LocalElem::embed(&(&a + &b), &place, 8)));
            assert!(ea.inv().unwrap().congruent(&LocalElem::embed(&a.inv().unwrap(), &place, 8)));
        }
    }

    #[test]
    fn grids() {
        let place = v("finite:θ+t");
        let u = LocalElem::embed(&k("θ+t"), &place, 3);
        let u2 = LocalElem::embed(&k("(θ+t)^2"), &place, 3);
        let s = u.add(&u2).add(&u.neg());
        assert_eq!(s.to_text(), "u^2*[1] + O(u^3)");
        let u3 = LocalElem::embed(&k("(θ+t)^3"), &place, 6);
        let r = u3.pth_root().coarsen();
        assert_eq!((r.grid(), r.valuation()), (0, Some(Ratio::from_integer(1))));
        let r = u.pth_root();
        assert_eq!((r.grid(), r.valuation()), (1, Some(Ratio::new(1, 3))));
        assert!(r.frobenius().congruent(&u));
        assert_eq!(r.to_text(), "u^(1/3)*[1]^(1/3) + O(u)");
    }

    #[test]
    fn hensel_separable_round_trip() {
        let psi = module("[0, θ, 1]");
        let a = parse_r("t-1", 3).unwrap();
        let place = v("finite:θ+t");
        let y = LocalElem::embed(&psi.act(&a, &k("θ")), &place, 20);
        let x = hensel_solve(&psi, &a, &y, 20).unwrap();
        let diff = x.sub(&LocalElem::embed(&k("θ"), &place, 20));
        let f = embed_coeffs(&psi.phi_action(&a), &place, 20).unwrap();
        assert!(eval_local(&f, &diff).is_zero());
        let z = hensel_solve(&psi, &a, &LocalElem::zero(place.clone(), 3, 20), 20).unwrap();
        assert!(eval_local(&f, &z).is_zero());
    }

    #[test]
    fn hensel_inseparable() {
        let psi = module("[0, θ, 1]");
        let t = parse_r("t", 3).unwrap();
        let place = v("finite:θ+t");
        let y = LocalElem::embed(&psi.act(&t, &k("θ")), &place, 9);
        let x = hensel_solve(&psi, &t, &y, 9).unwrap();
        assert_eq!(x.grid(), 1);
        assert!(x.congruent(&LocalElem::embed(&k("θ"), &place, 9)));
        let f = embed_coeffs(&psi.phi_t().clone(), &place, 9).unwrap();
        assert!(eval_local(&f, &x).sub(&y).valuation_or_precision() >= Ratio::from_integer(9));
    }

    #[test]
    fn no_residue_root() {
        let c = DrinfeldModule::carlitz(3);
        let a = parse_r("t", 3).unwrap();
        // s^3 + t*s = 1 has no solution in F_3(t)
        let place = v("finite:θ");
        let y = LocalElem::embed(&k("1"), &place, 5);
        assert!(matches!(hensel_solve(&c, &a, &y, 5), Err(Error::NoResidueRoot(_))));
    }

    #[test]
    fn torsion_distance() {
        let phi = module("[t, 2*t/θ^2]");
        let t = parse_r("t", 3).unwrap();
        let place = v("finite:θ+1");
        let z = LocalElem::embed(&k("θ"), &place, 10);
        let d = nearest_torsion_distance(&phi, &t, &z).unwrap();
        assert_eq!(d.distance, Ratio::from_integer(10));
        let z = LocalElem::embed(&k("θ+(θ+1)^2"), &place, 10);
        let d = nearest_torsion_distance(&phi, &t, &z).unwrap();
        assert_eq!(d.distance, Ratio::from_integer(2));
        assert_eq!(d.distance, d.residual_valuation);
    }
}
