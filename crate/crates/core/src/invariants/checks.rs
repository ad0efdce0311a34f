//! The full pipeline (ball, U, H, M¹, volume class) and the verifiers built
//! on it: the class number formula and the Stickelberger-type statements.

use serde::Serialize;

use super::ball::Ball;
use super::classmod::{class_module, ClassModule, STABILIZATION_BUDGET};
use super::normal::monic_normal;
use super::regulator::{
    det_series, enlarge_lattice, r_of_psi, reference_basis, regulator_class, transition_matrix, EnlargedLattice, Reference,
    VolumeClass,
};
use super::units::{unit_lattice, UnitLattice};
use crate::base_algebra::{FqPoly, Mat, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{AtStage, Error, Result};
use crate::function_field::{GaloisCover, Lattice, TamingModule};
use crate::group_algebra::freeness::DEFAULT_SEED;
use crate::group_algebra::{CentralIdeal, GroupRing, AG};
use crate::lseries::{theta_with_bound, prime_cutoff, AlgSeries, LValueTrunc};
use crate::nuclear::decomposition_for;

/// Verdicts established at a floor above this are flagged in reports.
pub const LOW_CONFIDENCE_FLOOR: i64 = -4;

fn low_confidence(n: usize) -> bool {
    -(n as i64) > LOW_CONFIDENCE_FLOOR
}

#[derive(Clone, Debug)]
pub struct Options {
    pub ball_index: Option<usize>,
    pub seed: u64,
    pub budget: i64,
    /// Euler product cutoff in place of the certified one
    pub prime_bound: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { ball_index: None, seed: DEFAULT_SEED, budget: STABILIZATION_BUDGET, prime_bound: None }
    }
}

#[derive(Clone, Debug)]
pub struct Stages {
    pub ag: AG,
    pub ball: Ball,
    pub units: UnitLattice,
    pub h: ClassModule,
    pub reference: Reference,
    pub m1: EnlargedLattice,
    pub x: Vec<Vec<AlgSeries>>,
    pub volume: VolumeClass,
}

/// Unit lattice, class module and volume class for M, with the volume class
/// known at least down to t^{-n}.
pub fn stages(cover: &GaloisCover, e: &DrinfeldModule, lat: &Lattice, n: usize, opts: &Options) -> Result<Stages> {
    let ag = GroupRing::new(cover.a.clone(), cover.group.clone());
    let target = -(n as i64);
    let mut margin = 6;
    for _ in 0..4 {
        let mut ball = Ball::new(cover, lat, e, opts.ball_index, target - margin).at("ball")?;
        ball.floor = target - margin - (ball.rank() * ball.m0) as i64;
        let h = class_module(&mut ball, &ag, opts.budget).at("class module")?;
        let units = unit_lattice(&mut ball, opts.seed).at("units")?;
        let reference = reference_basis(&ball, opts.seed).at("reference lattice")?;
        let m1 = enlarge_lattice(&ball, &units, &h).at("enlarged lattice")?;
        let x = transition_matrix(&ag.fqg(), &reference, &ball, &m1.vectors);
        let volume = regulator_class(&ag, &det_series(&ag.fqg(), &x), &h).at("volume class")?;
        if volume.floor <= target {
            return Ok(Stages { ag, ball, units, h, reference, m1, x, volume });
        }
        margin += volume.floor - target + 4;
    }
    Err(Error::PrecisionExhausted(format!("volume class not known down to t^{target}")).at("volume class"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CnfReport {
    pub holds: bool,
    pub precision: usize,
    pub prime_bound: usize,
    pub ball_index: usize,
    pub unit_floor: i64,
    pub units_certified_at: i64,
    pub h_stable_at: i64,
    pub h_dim: usize,
    pub h_factors: Vec<FqPoly>,
    /// Θ to t^{-N}
    pub lhs: AlgSeries,
    /// monic normal form of det(X)·c_G(H)
    pub rhs: AlgSeries,
    pub first_difference: Option<i64>,
    pub low_confidence: bool,
}

impl CnfReport {
    pub fn into_result(self) -> Result<Self> {
        if self.holds {
            return Ok(self);
        }
        Err(Error::MismatchWithDiff(format!(
            "Θ and the volume class first differ at t^{}",
            self.first_difference.unwrap_or(i64::MIN)
        )))
    }
}

fn first_difference(r: &crate::group_algebra::FqG, x: &AlgSeries, y: &AlgSeries, floor: i64) -> Option<i64> {
    let top = x.top().unwrap_or(floor).max(y.top().unwrap_or(floor));
    (floor..=top).rev().find(|&e| x.coeff(r, e) != y.coeff(r, e))
}

pub fn theta_value(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize, opts: &Options) -> Result<(LValueTrunc, AlgSeries)> {
    let bound = opts.prime_bound.unwrap_or_else(|| prime_cutoff(n, e.rank()));
    let th = theta_with_bound(cover, e, m, n, bound).at("L-value")?;
    let v = th
        .value
        .clone()
        .ok_or_else(|| Error::HypothesisViolated("the class number formula is verified for abelian G only".into()).at("L-value"))?;
    Ok((th, v))
}

/// Θ against det(X)·c_G(H), both monic normalized, to t^{-N}.
pub fn verify_cnf(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize, opts: &Options) -> Result<(CnfReport, Stages)> {
    let st = stages(cover, e, &m.lattice, n, opts)?;
    let (th, theta) = theta_value(cover, e, m, n, opts)?;
    let r = st.ag.fqg();
    let floor = -(n as i64);
    let lhs = monic_normal(&r, &theta)?.truncate(floor)?;
    let rhs = st.volume.value.truncate(floor)?;
    let diff = first_difference(&r, &lhs, &rhs, floor);
    let report = CnfReport {
        holds: diff.is_none(),
        precision: n,
        prime_bound: th.bound,
        ball_index: st.ball.m0,
        unit_floor: st.units.floor,
        units_certified_at: st.units.certified_at,
        h_stable_at: st.h.stable_at,
        h_dim: st.h.dim(),
        h_factors: st.h.invariant_factors.nontrivial(),
        lhs,
        rhs,
        first_difference: diff,
        low_confidence: low_confidence(n),
    };
    Ok((report, st))
}

/// Generators of Hom_{A[G]}(M¹, M) as an A[G]-module (the matrix units),
/// plus the identity and the zero map.
pub fn hom_generators(ag: &AG, rank: usize) -> Vec<(String, Mat<Vec<FqPoly>>)> {
    let zero = vec![vec![ag.zero(); rank]; rank];
    let mut out = vec![];
    let mut id = zero.clone();
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = ag.one();
    }
    out.push(("identity".to_string(), id));
    if rank > 1 {
        for i in 0..rank {
            for j in 0..rank {
                let mut m = zero.clone();
                m[i][j] = ag.one();
                out.push((format!("E_{}{}", i + 1, j + 1), m));
            }
        }
    }
    out.push(("zero".to_string(), zero));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiVerdict {
    pub label: String,
    /// θ·R(ψ) ∈ Z(A[G])
    pub value: Vec<FqPoly>,
    pub degree_bound: usize,
    /// lowest exponent at which the vanishing of the fractional part was checked
    pub checked_to: i64,
    pub in_fitting: bool,
}

/// θ·R(ψ) as an element of A[G]: its fractional part must vanish on the
/// known window and its degree stay within `bound`.
pub fn theta_r(ag: &AG, theta: &AlgSeries, rpsi: &AlgSeries, bound: usize) -> Result<(Vec<FqPoly>, i64)> {
    let r = ag.fqg();
    if rpsi.coeffs.is_empty() && rpsi.floor <= 0 {
        return Ok((ag.zero(), rpsi.floor));
    }
    let p = theta.mul(&r, rpsi);
    if p.floor > -1 {
        return Err(Error::NotPolynomialWithinPrecision(format!("θ·R(ψ) known only down to t^{}; raise N", p.floor)));
    }
    if let Some(e) = (p.floor..0).find(|&e| !r.is_zero(&p.coeff(&r, e))) {
        return Err(Error::NotPolynomialWithinPrecision(format!("θ·R(ψ) has a nonzero coefficient at t^{e}")));
    }
    let top = p.top().unwrap_or(-1);
    if top > bound as i64 {
        return Err(Error::NotPolynomialWithinPrecision(format!("θ·R(ψ) has degree {top} above the bound {bound}")));
    }
    let cs: Vec<Vec<u32>> = (0..=top).map(|e| p.coeff(&r, e)).collect();
    Ok((ag.from_t_coeffs(&cs), p.floor))
}

fn theta_r_all(st: &Stages, theta: &AlgSeries, fit: &CentralIdeal) -> Result<Vec<PsiVerdict>> {
    let ag = &st.ag;
    let g = ag.group.order;
    let h_rank = st.h.dim() / g;
    let mut out = vec![];
    for (label, psi) in hom_generators(ag, st.m1.generators.len()) {
        let rpsi = r_of_psi(ag, &psi, &st.volume.det_x, theta.floor)?;
        let dpsi = crate::group_algebra::det_commutative(ag, &psi);
        let bound = h_rank + ag.t_degree(&dpsi).unwrap_or(0);
        let (value, checked_to) = theta_r(ag, theta, &rpsi, bound)?;
        let in_fitting = fit.contains(ag, &value);
        out.push(PsiVerdict { label, value, degree_bound: bound, checked_to, in_fitting });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MtIIReport {
    pub holds: bool,
    pub precision: usize,
    pub samples: Vec<PsiVerdict>,
    pub fitting: CentralIdeal,
    /// Fit(H(E/M)) ⊆ Fit(H(E/O_K)); None when H(E/O_K) is not computable here
    pub fit_in_fit_ok: Option<bool>,
    /// Fit(H(E/O_K)) ⊆ Ann(H(E/O_K))
    pub fit_in_ann: Option<bool>,
    /// some R(ψ) is nonzero
    pub r_nontrivial: bool,
    pub low_confidence: bool,
    pub notes: Vec<String>,
}

/// θ·R(ψ) ∈ Fit(H(E/M)) for every sampled ψ, and the chain
/// Fit(H(E/M)) ⊆ Fit(H(E/O_K)) ⊆ Ann(H(E/O_K)).
pub fn mt2_check(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize, opts: &Options) -> Result<MtIIReport> {
    check_commutator(cover)?;
    let st = stages(cover, e, &m.lattice, n, opts)?;
    let dec = decomposition_for(&cover.fq, &cover.group)?;
    let (_, theta) = theta_value(cover, e, m, n, opts)?;
    let fit = st.h.fitting(&st.ag, &dec)?;
    let samples = theta_r_all(&st, &theta, &fit)?;
    let mut notes = vec![];
    let ok_h = if m.is_ring_of_integers {
        Some(st.h.clone())
    } else {
        match class_module_for(cover, e, &Lattice::ring_of_integers(cover), opts) {
            Ok(h) => Some(h),
            Err(err) => {
                notes.push(format!("H(E/O_K) not computed: {err}"));
                None
            }
        }
    };
    let (fit_in_fit_ok, fit_in_ann) = match &ok_h {
        Some(hk) => {
            let fk = hk.fitting(&st.ag, &dec)?;
            let ann = fk.hermite.iter().all(|x| hk.annihilated_by(&st.ag, x));
            (Some(fit.is_subset(&st.ag, &fk)), Some(ann))
        }
        None => (None, None),
    };
    let holds = samples.iter().all(|s| s.in_fitting) && fit_in_fit_ok != Some(false) && fit_in_ann != Some(false);
    let r_nontrivial = samples.iter().any(|s| !st.ag.is_zero(&s.value));
    Ok(MtIIReport {
        holds,
        precision: n,
        samples,
        fitting: fit,
        fit_in_fit_ok,
        fit_in_ann,
        r_nontrivial,
        low_confidence: low_confidence(n),
        notes,
    })
}

fn class_module_for(cover: &GaloisCover, e: &DrinfeldModule, lat: &Lattice, opts: &Options) -> Result<ClassModule> {
    let ag = GroupRing::new(cover.a.clone(), cover.group.clone());
    let mut b = Ball::new(cover, lat, e, opts.ball_index, -8)?;
    class_module(&mut b, &ag, opts.budget)
}

fn check_commutator(cover: &GaloisCover) -> Result<()> {
    let ell = cover.fq.ell as usize;
    if cover.group.commutator_order % ell == 0 {
        return Err(Error::HypothesisViolated(format!("ℓ = {ell} divides |G′| = {}", cover.group.commutator_order)));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct MtIIIReport {
    pub holds: bool,
    pub precision: usize,
    pub samples: Vec<PsiVerdict>,
    /// ideal generated by the θ·R(ψ)
    pub stickelberger_ideal: CentralIdeal,
    pub fitting: CentralIdeal,
    pub low_confidence: bool,
}

/// For M = O_K, ℓ ∤ |G| and U free: the θ·R(ψ) generate Fit(H).
pub fn mt3_check(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize, opts: &Options) -> Result<MtIIIReport> {
    let ell = cover.fq.ell as usize;
    if cover.group.order % ell == 0 {
        return Err(Error::HypothesisViolated(format!("ℓ = {ell} divides |G| = {}", cover.group.order)));
    }
    if !m.is_ring_of_integers {
        return Err(Error::HypothesisViolated("the equality statement is for M = O_K".into()));
    }
    let st = stages(cover, e, &m.lattice, n, opts)?;
    let dec = decomposition_for(&cover.fq, &cover.group)?;
    let (_, theta) = theta_value(cover, e, m, n, opts)?;
    let fit = st.h.fitting(&st.ag, &dec)?;
    let samples = theta_r_all(&st, &theta, &fit)?;
    let gens: Vec<Vec<FqPoly>> = samples.iter().map(|s| s.value.clone()).collect();
    let ideal = CentralIdeal::generated_by(&st.ag, &gens);
    Ok(MtIIIReport { holds: ideal == fit, precision: n, samples, stickelberger_ideal: ideal, fitting: fit, low_confidence: low_confidence(n) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_algebra::FqField;
    use crate::function_field::{build_cover, fixtures, taming_module};

    fn carlitz(spec: crate::function_field::CoverSpec) -> (GaloisCover, DrinfeldModule, TamingModule) {
        let c = build_cover(&spec).unwrap();
        let e = DrinfeldModule::carlitz(&c.fq);
        let m = taming_module(&c, None, 1).unwrap();
        (c, e, m)
    }

    #[test]
    fn carlitz_class_number_formula() {
        for (q, n) in [(2, 6), (3, 5)] {
            let (c, e, m) = carlitz(fixtures::trivial(q));
            let (rep, _) = verify_cnf(&c, &e, &m, n, &Options::default()).unwrap();
            assert!(rep.holds, "q = {q}: {:?}", rep.first_difference);
            assert_eq!(rep.h_dim, 0);
        }
    }

    #[test]
    fn quadratic_cover_formula_and_ideals() {
        let (c, e, m) = carlitz(fixtures::carlitz_torsion_f3());
        let (rep, _) = verify_cnf(&c, &e, &m, 4, &Options::default()).unwrap();
        assert!(rep.holds, "{:?}", rep.first_difference);
        let r2 = mt2_check(&c, &e, &m, 4, &Options::default()).unwrap();
        assert!(r2.holds && r2.r_nontrivial);
        assert_eq!(r2.fit_in_fit_ok, Some(true));
        let r3 = mt3_check(&c, &e, &m, 4, &Options::default()).unwrap();
        assert!(r3.holds);
    }

    #[test]
    fn nontrivial_class_module_formula() {
        // t + t³τ over F_2 has H ≅ A/(t)
        let c = build_cover(&fixtures::trivial(2)).unwrap();
        let f = FqField::prime(2).unwrap();
        let e = DrinfeldModule::new(&f, vec![vec![0, 0, 0, 1]]).unwrap();
        let m = taming_module(&c, None, 1).unwrap();
        let (rep, _) = verify_cnf(&c, &e, &m, 5, &Options::default()).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.h_factors, vec![vec![0, 1]]);
        let r3 = mt3_check(&c, &e, &m, 5, &Options::default()).unwrap();
        assert!(r3.holds);
    }
}
