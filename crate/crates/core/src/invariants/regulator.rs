//! Transition matrices between A[G]-bases of M¹ and the reference lattice,
//! the volume class det(X)·c_G(M²) and R(ψ) = det(ψ)·det(X)^{-1}.

use serde::Serialize;

use super::ball::Ball;
use super::classmod::ClassModule;
use super::normal::{invert, monic_normal};
use super::units::UnitLattice;
use crate::base_algebra::linalg::{inverse, mat_vec};
use crate::base_algebra::{FqPoly, Mat, Ring};
use crate::error::{Error, Result};
use crate::function_field::kinf::{self, KInf};
use crate::function_field::FiniteAGModule;
use crate::group_algebra::freeness::ct_free_basis;
use crate::group_algebra::{det_commutative, FqG, AG};
use crate::lseries::AlgSeries;

/// N = M with an A[G]-basis of constant vectors b_k: possible exactly when
/// F_q^n with the constant G-action is F_q[G]-free.
#[derive(Clone, Debug, Serialize)]
pub struct Reference {
    pub basis: Vec<Vec<u32>>,
    /// inverse of the matrix with columns h·b_k, ordered (k, h)
    pub orbit_inv: Mat<u32>,
}

pub fn reference_basis(ball: &Ball, seed: u64) -> Result<Reference> {
    let f = &ball.view.fq;
    let n = ball.rank();
    let g = &ball.amb.g_action;
    let m = FiniteAGModule::new(f, ball.view.group.clone(), vec![vec![0; n]; n], g.clone(), None);
    let basis = ct_free_basis(&m, seed).map_err(|e| match e {
        Error::NotFree(c) => Error::NotFreeLattice(format!("M is not A[G]-free on a constant basis: {c}")),
        e => e,
    })?;
    let cols: Vec<Vec<u32>> = basis.iter().flat_map(|b| g.iter().map(move |h| mat_vec(f, h, b))).collect();
    let orbit: Mat<u32> = (0..n).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let orbit_inv = inverse(f, &orbit).ok_or_else(|| Error::NotFreeLattice("orbit of the reference basis is singular".into()))?;
    Ok(Reference { basis, orbit_inv })
}

/// X with w_i = Σ_k X_ik·b_k over F_∞[G].
pub fn transition_matrix(r: &FqG, refr: &Reference, ball: &Ball, ws: &[KInf]) -> Vec<Vec<AlgSeries>> {
    let f = &ball.view.fq;
    let g = r.n();
    let rr = refr.basis.len();
    ws.iter()
        .map(|w| {
            let floor = kinf::floor(w);
            let top = kinf::top(w).unwrap_or(floor - 1);
            let levels: Vec<Vec<u32>> = (floor..=top)
                .map(|e| {
                    let v: Vec<u32> = w.iter().map(|s| s.coeff(e)).collect();
                    mat_vec(f, &refr.orbit_inv, &v)
                })
                .collect();
            (0..rr)
                .map(|k| AlgSeries::new(r, floor, levels.iter().map(|c| c[k * g..(k + 1) * g].to_vec()).collect()))
                .collect()
        })
        .collect()
}

fn neg(r: &FqG, x: &AlgSeries) -> AlgSeries {
    x.map_coeffs(r, |a| r.neg(&a.to_vec()))
}

/// Determinant over the commutative ring F_∞[G] by cofactor expansion.
pub fn det_series(r: &FqG, x: &[Vec<AlgSeries>]) -> AlgSeries {
    let n = x.len();
    if n == 0 {
        return AlgSeries::one(r, i64::MIN / 4);
    }
    if n == 1 {
        return x[0][0].clone();
    }
    let mut acc: Option<AlgSeries> = None;
    for j in 0..n {
        let minor: Vec<Vec<AlgSeries>> =
            x[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, s)| s.clone()).collect()).collect();
        let mut term = x[0][j].mul(r, &det_series(r, &minor));
        if j % 2 == 1 {
            term = neg(r, &term);
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(r, &term),
        });
    }
    acc.unwrap()
}

/// An element of A[G] as an exact series.
pub fn ag_series(ag: &AG, r: &FqG, x: &[FqPoly], floor: i64) -> AlgSeries {
    AlgSeries::from_poly(r, &ag.to_poly_over_fqg(x), floor)
}

#[derive(Clone, Debug, Serialize)]
pub struct EnlargedLattice {
    /// A[G]-basis of M¹ in U-coordinates
    pub generators: Vec<Vec<FqPoly>>,
    pub vectors: Vec<KInf>,
    /// M¹ = U here, so M¹/U = 0 and M² ≅ H
    pub m1_equals_u: bool,
    pub m2_dim: usize,
    pub section: String,
}

/// M¹ = U (free), M² represented by H.
pub fn enlarge_lattice(ball: &Ball, units: &UnitLattice, h: &ClassModule) -> Result<EnlargedLattice> {
    let ell = ball.view.fq.ell as usize;
    let g = ball.view.group.order;
    let section = if h.is_zero() {
        "vacuous: H = 0"
    } else if g % ell != 0 {
        "averaging over G"
    } else {
        return Err(Error::NoSectionAvailable(format!("ℓ = {ell} divides |G| = {g} and H ≠ 0")));
    };
    let generators = units.free_generators.clone().ok_or_else(|| Error::UNotFree("no A[G]-basis of U found".into()))?;
    let vectors = units.generator_vectors(ball).unwrap_or_default();
    Ok(EnlargedLattice { generators, vectors, m1_equals_u: true, m2_dim: h.dim(), section: section.into() })
}

#[derive(Clone, Debug, Serialize)]
pub struct VolumeClass {
    pub det_x: AlgSeries,
    /// c_G(M²) ∈ A[G]
    pub char_m2: Vec<FqPoly>,
    /// monic normal form of det(X)·c_G(M²)
    pub value: AlgSeries,
    pub floor: i64,
}

pub fn regulator_class(ag: &AG, det_x: &AlgSeries, h: &ClassModule) -> Result<VolumeClass> {
    let r = ag.fqg();
    let char_m2 = h
        .char_value(ag)
        .ok_or_else(|| Error::HypothesisViolated("c_G(H) needs H to be F_q[G]-free with abelian G".into()))?;
    let prod = det_x.mul(&r, &ag_series(ag, &r, &char_m2, det_x.floor));
    let value = monic_normal(&r, &prod)?;
    Ok(VolumeClass { det_x: det_x.clone(), char_m2, floor: value.floor, value })
}

/// R(ψ) = det(Ψ)·det(X)^{-1} for ψ(w_i) = Σ_k Ψ_ik·b_k.
pub fn r_of_psi(ag: &AG, psi: &Mat<Vec<FqPoly>>, det_x: &AlgSeries, floor: i64) -> Result<AlgSeries> {
    let r = ag.fqg();
    let d = det_commutative(ag, psi);
    if ag.is_zero(&d) {
        return Ok(AlgSeries::zero(floor));
    }
    let inv = invert(&r, det_x, floor)?;
    Ok(ag_series(ag, &r, &d, inv.floor).mul(&r, &inv))
}
