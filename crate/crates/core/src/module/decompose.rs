//! Γ = Γ_0 ⊕ Γ_1 with Γ_0 the points whose reductions at the witness places
//! are all torsion.
//!
//! In coefficient space R^r, Γ_0 comes from C = ⋂_v Sat(Syz_v), where Syz_v
//! are the relations of the reduced generators. C is saturated, so it has a
//! complement C' and Γ_1 is the image of C'.

use super::{point_text, PhiModule};
use crate::base::snf::{smith_normal_form, RMatrix};
use crate::base::RPoly;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::KElem;
use crate::places::Place;
use crate::twisted::TwistedPoly;

#[derive(Clone, Debug, serde::Serialize)]
pub struct Decomposition {
    #[serde(skip)]
    pub gamma0: PhiModule,
    #[serde(skip)]
    pub gamma1: PhiModule,
    pub gamma0_gens: Vec<String>,
    pub gamma1_gens: Vec<String>,
    /// Coefficient vectors (over the original generators) spanning C and C'.
    pub basis0: Vec<Vec<RPoly>>,
    pub basis1: Vec<Vec<RPoly>>,
    pub witness_places: Vec<Place>,
    pub reduced_relations: Vec<Vec<Vec<RPoly>>>,
    pub gamma1_free: bool,
    pub complete: bool,
}

/// The reduction of Γ at a place with N_v = 1, as a module over F ⊂ K.
pub fn reduce_module(gamma: &PhiModule, v: &Place) -> Result<PhiModule> {
    if v.weight() != 1 {
        return Err(Error::ResidueDegree(v.weight()));
    }
    let p = gamma.modulus();
    let red = |x: &KElem| -> Result<KElem> { Ok(KElem::from_felem(&v.residue_reduce(x)?.rep.coeff(0))) };
    let coeffs = gamma.phi().phi_t().coeffs().iter().map(red).collect::<Result<Vec<_>>>()?;
    let phi_bar = TwistedPoly::from_coeffs(coeffs, p);
    if phi_bar.tau_degree() != gamma.phi().phi_t().tau_degree() {
        return Err(Error::BadReduction(v.to_text()));
    }
    let phi_bar = DrinfeldModule::new(phi_bar, Some(gamma.phi().characteristic()))?;
    let gens = gamma.gens().iter().map(|x| x.iter().map(red).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(PhiModule::new(phi_bar, gamma.g(), gens))
}

/// Columns j ≥ rank of V in the Smith form of m: a basis of {x : m x = 0}.
fn right_kernel(m: &RMatrix) -> Vec<Vec<RPoly>> {
    let s = smith_normal_form(m);
    let k = s.rank();
    (k..m.cols()).map(|j| (0..m.cols()).map(|i| s.v.get(i, j).clone()).collect()).collect()
}

fn transpose(rows: &[Vec<RPoly>], cols: usize, p: u32) -> RMatrix {
    let mut m = RMatrix::zeros(cols, rows.len(), p);
    for (j, r) in rows.iter().enumerate() {
        for (i, x) in r.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn dot(a: &[RPoly], b: &[RPoly]) -> RPoly {
    a.iter().zip(b).fold(RPoly::zero(a[0].modulus()), |acc, (x, y)| &acc + &(x * y))
}

pub fn decompose(gamma: &PhiModule, witness_places: &[Place], deg_bound: usize) -> Result<Decomposition> {
    let p = gamma.modulus();
    let r = gamma.rank_bound();
    assert!(!witness_places.is_empty(), "decompose needs a witness place");
    let mut complete = gamma.presentation().complete;
    // constraints x · w = 0, one w per non-saturated direction at each place
    let mut constraints: Vec<Vec<RPoly>> = Vec::new();
    let mut reduced_relations = Vec::new();
    for v in witness_places {
        let red = reduce_module(gamma, v)?;
        let pres = red.syzygies(deg_bound);
        complete &= pres.complete;
        if r > 0 {
            let rows = if pres.relations.is_empty() { vec![vec![RPoly::zero(p); r]] } else { pres.relations.clone() };
            let s = smith_normal_form(&RMatrix::from_rows(rows, r, p));
            for j in s.rank()..r {
                constraints.push((0..r).map(|i| s.v.get(i, j).clone()).collect());
            }
        }
        reduced_relations.push(pres.relations);
    }
    let basis0: Vec<Vec<RPoly>> = if r == 0 {
        Vec::new()
    } else if constraints.is_empty() {
        (0..r).map(|i| (0..r).map(|j| if i == j { RPoly::one(p) } else { RPoly::zero(p) }).collect()).collect()
    } else {
        right_kernel(&transpose(&constraints, r, p))
    };
    // complement from the Smith form of the (saturated) basis
    let basis1: Vec<Vec<RPoly>> = if r == 0 {
        Vec::new()
    } else if basis0.is_empty() {
        (0..r).map(|i| (0..r).map(|j| if i == j { RPoly::one(p) } else { RPoly::zero(p) }).collect()).collect()
    } else {
        let s = smith_normal_form(&RMatrix::from_rows(basis0.clone(), r, p));
        assert!(s.invariant_factors().iter().all(|d| d.is_one()), "C must be saturated");
        (basis0.len()..r).map(|j| s.v_inv.row(j)).collect()
    };
    let basis0: Vec<Vec<RPoly>> = if basis0.is_empty() || r == 0 {
        basis0
    } else {
        let s = smith_normal_form(&RMatrix::from_rows(basis0.clone(), r, p));
        (0..basis0.len()).map(|j| s.v_inv.row(j)).collect()
    };
    for rel in &gamma.presentation().relations {
        assert!(constraints.iter().all(|w| dot(rel, w).is_zero()), "global relation outside C");
    }
    let pts0: Vec<Vec<KElem>> = basis0.iter().map(|c| gamma.combination(c)).collect();
    let pts1: Vec<Vec<KElem>> = basis1.iter().map(|c| gamma.combination(c)).collect();
    // each original generator is recovered from the new generators
    let all: Vec<Vec<RPoly>> = basis0.iter().chain(&basis1).cloned().collect();
    if r > 0 {
        let inv = smith_normal_form(&RMatrix::from_rows(all.clone(), r, p));
        assert!(inv.invariant_factors().iter().all(|d| d.is_one()), "C ⊕ C' must be R^r");
        let joint = PhiModule::new(gamma.phi().clone(), gamma.g(), pts0.iter().chain(&pts1).cloned().collect());
        let m = RMatrix::from_rows(all, r, p);
        let minv = matrix_inverse(&m);
        for (i, x) in gamma.gens().iter().enumerate() {
            assert_eq!(&joint.combination(&minv.row(i)), x, "generator not recovered by Γ_0 ⊕ Γ_1");
        }
    }
    let gamma0 = PhiModule::new(gamma.phi().clone(), gamma.g(), pts0);
    let gamma1 = PhiModule::new(gamma.phi().clone(), gamma.g(), pts1);
    let g1p = gamma1.syzygies(deg_bound);
    complete &= g1p.complete;
    let gamma1_free = gamma1.torsion_submodule().iter().all(|x| x.iter().all(KElem::is_zero));
    Ok(Decomposition {
        gamma0_gens: gamma0.gens().iter().map(|x| point_text(x)).collect(),
        gamma1_gens: gamma1.gens().iter().map(|x| point_text(x)).collect(),
        gamma0,
        gamma1,
        basis0,
        basis1,
        witness_places: witness_places.to_vec(),
        reduced_relations,
        gamma1_free,
        complete,
    })
}

/// Inverse of a unimodular matrix via its Smith form: M = U⁻¹ V⁻¹.
fn matrix_inverse(m: &RMatrix) -> RMatrix {
    let s = smith_normal_form(m);
    let mut dinv = RMatrix::identity(m.rows(), m.modulus());
    for i in 0..m.rows() {
        let d = s.d.get(i, i);
        assert!(d.degree() == Some(0), "matrix is not unimodular");
        dinv.set(i, i, RPoly::from_coeffs(vec![crate::base::fp::inv(d.lead(), m.modulus())], m.modulus()));
    }
    // M = U⁻¹ D V⁻¹, so M⁻¹ = V D⁻¹ U
    s.v.mul(&dinv).mul(&s.u)
}
