//! Drinfeld modules Φ: F_p[t] → K{τ}, determined by Φ_t.

mod solve;
mod torsion;

pub use solve::{division_points, division_points_vec, solve_additive, DivisionOptions, DivisionResult, SolveBounds};
pub use torsion::{estimate_torsion_level_m, k_rational_torsion, torsion_annihilator, TorsionCertificate, TorsionLevel};

use crate::base::RPoly;
use crate::error::{Error, Result};
use crate::field::KElem;
use crate::twisted::TwistedPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Characteristic {
    /// Φ_t has differential t.
    Generic,
    /// Φ_t is inseparable: c_0 = 0.
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DrinfeldModule {
    phi_t: TwistedPoly,
    characteristic: Characteristic,
}

impl DrinfeldModule {
    /// Validates Φ_t and infers the characteristic; `declared`, when given,
    /// must match.
    pub fn new(phi_t: TwistedPoly, declared: Option<Characteristic>) -> Result<Self> {
        let p = phi_t.modulus();
        match phi_t.tau_degree() {
            Some(d) if d >= 1 => {}
            _ => return Err(Error::InvalidModule("Φ_t must have τ-degree at least 1".into())),
        }
        let c0 = phi_t.coeff(0);
        let characteristic = if c0 == KElem::t(p) {
            Characteristic::Generic
        } else if c0.is_zero() {
            Characteristic::Special
        } else {
            return Err(Error::InvalidModule(format!("differential {c0} is neither t nor 0")));
        };
        if declared.is_some_and(|d| d != characteristic) {
            return Err(Error::InvalidModule(format!("declared {declared:?} but Φ_t is {characteristic:?}")));
        }
        Ok(DrinfeldModule { phi_t, characteristic })
    }

    /// The Carlitz module C_t = t x + x^p.
    pub fn carlitz(p: u32) -> Self {
        Self::new(TwistedPoly::from_coeffs(vec![KElem::t(p), KElem::one(p)], p), None).unwrap()
    }

    pub fn modulus(&self) -> u32 {
        self.phi_t.modulus()
    }

    pub fn phi_t(&self) -> &TwistedPoly {
        &self.phi_t
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    pub fn require_generic(&self) -> Result<()> {
        match self.characteristic {
            Characteristic::Generic => Ok(()),
            Characteristic::Special => Err(Error::NotGeneric),
        }
    }

    pub fn require_special(&self) -> Result<()> {
        match self.characteristic {
            Characteristic::Special => Ok(()),
            Characteristic::Generic => Err(Error::NotSpecial),
        }
    }

    /// Φ_a = Σ e_j Φ_t^j, by Horner's rule.
    pub fn phi_action(&self, a: &RPoly) -> TwistedPoly {
        let p = self.modulus();
        let mut acc = TwistedPoly::zero(p);
        for &e in a.coeffs().iter().rev() {
            acc = acc.compose(&self.phi_t);
            if e != 0 {
                acc = acc.add(&TwistedPoly::monomial(KElem::constant(e as i64, p), 0));
            }
        }
        acc
    }

    /// Φ_a(x) without materializing Φ_a: Horner on values.
    pub fn act(&self, a: &RPoly, x: &KElem) -> KElem {
        let p = self.modulus();
        let mut acc = KElem::zero(p);
        for &e in a.coeffs().iter().rev() {
            acc = self.phi_t.eval(&acc);
            if e != 0 {
                acc = &acc + &x.scale(e);
            }
        }
        acc
    }

    /// γ^{-1} Φ_t(γ x): coefficients γ^{p^i − 1} c_i.
    pub fn conjugate(&self, gamma: &KElem) -> Result<TwistedPoly> {
        if gamma.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.modulus();
        let c = self
            .phi_t
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = (p as i64).pow(i as u32) - 1;
                c * &gamma.pow(e).unwrap()
            })
            .collect();
        Ok(TwistedPoly::from_coeffs(c, p))
    }

    /// Scans γ = t^i θ^j with |i|, |j| ≤ range for a conjugate whose
    /// coefficients all lie in F_p.
    pub fn modular_transcendence_probe(&self, range: i64) -> ProbeReport {
        let p = self.modulus();
        let mut exps: Vec<(i64, i64)> =
            (-range..=range).flat_map(|i| (-range..=range).map(move |j| (i, j))).collect();
        exps.sort_by_key(|&(i, j)| (i.abs() + j.abs(), i, j));
        let mut tried = 0;
        for (i, j) in exps {
            tried += 1;
            let gamma = &KElem::t(p).pow(i).unwrap() * &KElem::theta(p).pow(j).unwrap();
            let psi = self.conjugate(&gamma).unwrap();
            if psi.coeffs().iter().all(|c| c.is_zero() || c.as_constant().is_some()) {
                return ProbeReport {
                    verdict: ProbeVerdict::ZeroDegreeWitness { gamma: gamma.to_text(), conjugate: psi.to_text() },
                    range,
                    candidates_tried: tried,
                };
            }
        }
        ProbeReport { verdict: ProbeVerdict::InconclusivePositive, range, candidates_tried: tried }
    }
}

impl std::fmt::Display for DrinfeldModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "phi_t = {}", self.phi_t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict")]
pub enum ProbeVerdict {
    /// A monomial conjugate is defined over F_p: modular transcendence degree 0.
    ZeroDegreeWitness { gamma: String, conjugate: String },
    /// No monomial γ in range works; consistent with positive degree, not a proof.
    InconclusivePositive,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProbeReport {
    #[serde(flatten)]
    pub verdict: ProbeVerdict,
    pub range: i64,
    pub candidates_tried: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_k, parse_r};

    fn module(s: &str) -> DrinfeldModule {
        DrinfeldModule::new(TwistedPoly::parse(s, 3).unwrap(), None).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(module("[t, 1]").characteristic(), Characteristic::Generic);
        assert_eq!(module("[0, θ, 1]").characteristic(), Characteristic::Special);
        assert!(DrinfeldModule::new(TwistedPoly::parse("[1, 1]", 3).unwrap(), None).is_err());
        assert!(DrinfeldModule::new(TwistedPoly::parse("[t]", 3).unwrap(), None).is_err());
        assert!(DrinfeldModule::new(TwistedPoly::parse("[t, 1]", 3).unwrap(), Some(Characteristic::Special)).is_err());
    }

    #[test]
    fn actions() {
        let c = module("[t, 1]");
        assert_eq!(c.phi_action(&parse_r("t^2", 3).unwrap()), TwistedPoly::parse("[t^2, t+t^3, 1]", 3).unwrap());
        assert_eq!(c.phi_action(&RPoly::one(3)), TwistedPoly::identity(3));
        let psi = module("[0, θ, 1]");
        assert_eq!(psi.phi_action(&parse_r("t-1", 3).unwrap()), TwistedPoly::parse("[2, θ, 1]", 3).unwrap());
        let a = parse_r("t^2+2*t+1", 3).unwrap();
        let x = parse_k("θ/(t+1)", 3).unwrap();
        assert_eq!(psi.act(&a, &x), psi.phi_action(&a).eval(&x));
    }

    #[test]
    fn conjugation() {
        let psi = module("[0, θ, 1]");
        assert_eq!(psi.conjugate(&KElem::one(3)).unwrap(), *psi.phi_t());
        assert_eq!(psi.conjugate(&KElem::theta(3)).unwrap(), TwistedPoly::parse("[0, θ^3, θ^8]", 3).unwrap());
        let c = module("[t, 1]");
        assert_eq!(c.conjugate(&KElem::t(3)).unwrap(), TwistedPoly::parse("[t, t^2]", 3).unwrap());
    }

    #[test]
    fn probe() {
        assert_eq!(module("[0, θ, 1]").modular_transcendence_probe(3).verdict, ProbeVerdict::InconclusivePositive);
        let r = module("[0, 1, 1]").modular_transcendence_probe(3);
        assert_eq!(r.verdict, ProbeVerdict::ZeroDegreeWitness { gamma: "1".into(), conjugate: "[0, 1, 1]".into() });
        let twisted = module("[0, 1, 1]").conjugate(&KElem::theta(3)).unwrap();
        let r = DrinfeldModule::new(twisted, None).unwrap().modular_transcendence_probe(3);
        assert!(matches!(r.verdict, ProbeVerdict::ZeroDegreeWitness { ref gamma, .. } if gamma == "1/θ"));
    }
}
