//! Nuclear sequences 1 + Σ Z^j·φ_j, their classes on M/pM and on V/U, and
//! the exact truncated trace identity.

use rayon::prelude::*;
use serde::Serialize;

use super::quotient::{compact_quotient, quotient_module, Ambient, CompactQuotient};
use super::trunc::{class_of_terms, TruncGroupSeries};
use crate::base_algebra::ring::mat_mul;
use crate::base_algebra::{FqPoly, Mat, PolyA, Ring};
use crate::drinfeld::module::act_twisted;
use crate::drinfeld::twisted::twisted_add;
use crate::drinfeld::{twisted_mul, DrinfeldModule, TwistedPoly};
use crate::error::{Error, Result};
use crate::function_field::{FiniteAGModule, GaloisCover, TamingModule};
use crate::group_algebra::decomposition::DecompositionData;
use crate::group_algebra::freeness::endo_in_free_basis;
use crate::lseries::primes_up_to;

/// φ_1 … φ_{N−1} over A; precision N = terms.len() + 1.
#[derive(Clone, Debug)]
pub struct NuclearSeq {
    pub a: PolyA,
    pub terms: Vec<TwistedPoly<FqPoly>>,
    /// set when the sequence is Φ_E, enabling the factored cross-check
    pub source: Option<DrinfeldModule>,
}

impl NuclearSeq {
    pub fn new(a: &PolyA, terms: Vec<TwistedPoly<FqPoly>>) -> Result<Self> {
        for (j, p) in terms.iter().enumerate() {
            if p.coeffs.first().is_some_and(|c| !c.is_empty()) {
                return Err(Error::Config(format!("φ_{} has a nonzero constant τ-term", j + 1)));
            }
        }
        Ok(NuclearSeq { a: a.clone(), terms, source: None })
    }

    /// Φ = 0 at precision N.
    pub fn zero(a: &PolyA, n: usize) -> Self {
        NuclearSeq { a: a.clone(), terms: vec![TwistedPoly::new(a, vec![]); n.saturating_sub(1)], source: None }
    }

    pub fn precision(&self) -> usize {
        self.terms.len() + 1
    }

    pub fn max_tau_degree(&self) -> usize {
        self.terms.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// D = N·max deg_τ φ_j + 1; primes of degree < D enter the product.
    pub fn prime_bound(&self) -> usize {
        self.precision() * self.max_tau_degree() + 1
    }

    /// The sequence of (1 + Φ)(1 + Ψ) − 1 at the common precision.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        let a = &self.a;
        let n = self.precision().min(o.precision());
        let mut terms = vec![];
        for j in 1..n {
            let mut acc = twisted_add(a, &self.terms[j - 1], &o.terms[j - 1])?;
            for k in 1..j {
                acc = twisted_add(a, &acc, &twisted_mul(a, &self.terms[k - 1], &o.terms[j - k - 1])?)?;
            }
            terms.push(acc);
        }
        NuclearSeq::new(a, terms)
    }
}

/// Φ_E: φ_j = (t − φ_E(t))·t^{j−1} for 1 ≤ j < N.
pub fn phi_e_sequence(e: &DrinfeldModule, n: usize) -> Result<NuclearSeq> {
    if n == 0 {
        return Err(Error::Config("precision N must be at least 1".into()));
    }
    let a = &e.a;
    let mut d = e.phi_t();
    d.coeffs[0] = vec![];
    let minus = TwistedPoly::new(a, d.coeffs.iter().map(|c| a.neg(c)).collect());
    let mut terms = vec![];
    for j in 1..n {
        let tj = TwistedPoly::constant(a, a.monomial(1, j - 1));
        terms.push(twisted_mul(a, &minus, &tj)?);
    }
    let mut s = NuclearSeq::new(a, terms)?;
    s.source = Some(e.clone());
    Ok(s)
}

fn free_basis_of(m: &FiniteAGModule) -> Result<Vec<Vec<u32>>> {
    match &m.free_basis {
        Some(b) => Ok(b.clone()),
        None => crate::group_algebra::ct_free_basis(m, crate::group_algebra::DEFAULT_SEED),
    }
}

/// det(I + Σ Z^s·X_s) for F_q-endomorphisms X_s of a free module.
fn class_on(m: &FiniteAGModule, dec: &DecompositionData, endos: &[(usize, Mat<u32>)], n: usize) -> Result<TruncGroupSeries> {
    let basis = free_basis_of(m)?;
    let terms = endos
        .iter()
        .map(|(s, x)| Ok((*s, endo_in_free_basis(m, &basis, x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(class_of_terms(dec, basis.len(), &terms, n))
}

fn negate(m: &FiniteAGModule, x: &Mat<u32>) -> Mat<u32> {
    let f = m.fq();
    x.iter().map(|r| r.iter().map(|&c| f.neg_e(c)).collect()).collect()
}

/// [1 + Φ | V/U_i]_N.
pub fn class_truncated(seq: &NuclearSeq, q: &CompactQuotient, dec: &DecompositionData) -> Result<TruncGroupSeries> {
    let endos: Vec<(usize, Mat<u32>)> = seq.terms.iter().enumerate().map(|(j, p)| (j + 1, q.operator(p))).collect();
    class_on(&q.module, dec, &endos, seq.precision())
}

/// [1 + Φ | M/pM]_N. For Φ_E the factored form
/// det(1 − Z·φ_E(t))·det(1 − Z·t)^{-1} is checked against it.
pub fn euler_class_truncated(
    seq: &NuclearSeq,
    cover: &GaloisCover,
    m: &TamingModule,
    p: &[u32],
    dec: &DecompositionData,
) -> Result<TruncGroupSeries> {
    let pd = m.residue(cover, p);
    if let Some(c) = pd.certificate {
        return Err(Error::NotFree(Box::new(c)));
    }
    let res = &pd.residue;
    let n = seq.precision();
    let endos = seq
        .terms
        .iter()
        .enumerate()
        .map(|(j, phi)| Ok((j + 1, act_twisted(&cover.fq, phi, res)?)))
        .collect::<Result<Vec<_>>>()?;
    let direct = class_on(res, dec, &endos, n)?;
    if let Some(e) = &seq.source {
        let num = class_on(res, dec, &[(1, negate(res, &act_twisted(&cover.fq, &e.phi_t(), res)?))], n)?;
        let den = class_on(res, dec, &[(1, negate(res, &res.t_action))], n)?;
        if direct.mul(dec, &den) != num {
            return Err(Error::HypothesisViolated(format!(
                "Euler class at p = {p:?} disagrees with det(1 − Zφ(t))/det(1 − Zt)"
            )));
        }
    }
    Ok(direct)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub holds: bool,
    pub precision: usize,
    pub ball: usize,
    pub prime_bound: usize,
    pub primes: Vec<FqPoly>,
    /// product of the Euler classes over deg p < prime_bound
    pub lhs: TruncGroupSeries,
    /// class on V/U_i
    pub rhs: TruncGroupSeries,
    /// the class recomputed on V/U_{i+2}
    pub rhs_larger_ball: TruncGroupSeries,
    pub product: TruncGroupSeries,
}

/// Π_{deg p < D} [1 + Φ | M/pM]_N · [1 + Φ | V/U_i]_N = 1, exactly.
pub fn trace_formula_verify(
    seq: &NuclearSeq,
    cover: &GaloisCover,
    m: &TamingModule,
    i: usize,
    dec: &DecompositionData,
) -> Result<TraceReport> {
    trace_formula_with_bound(seq, cover, m, i, dec, seq.prime_bound())
}

/// As `trace_formula_verify` with the Euler product cut at deg p < `bound`.
pub fn trace_formula_with_bound(
    seq: &NuclearSeq,
    cover: &GaloisCover,
    m: &TamingModule,
    i: usize,
    dec: &DecompositionData,
    bound: usize,
) -> Result<TraceReport> {
    let n = seq.precision();
    let primes = if bound > 1 { primes_up_to(&cover.a, bound - 1) } else { vec![] };
    let classes = primes
        .par_iter()
        .map(|p| euler_class_truncated(seq, cover, m, p, dec))
        .collect::<Result<Vec<_>>>()?;
    let lhs = classes.iter().fold(TruncGroupSeries::one(dec, n), |acc, c| acc.mul(dec, c));
    let q = compact_quotient(cover, &m.lattice, i, &seq.terms)?;
    let rhs = class_truncated(seq, &q, dec)?;
    let q2 = compact_quotient(cover, &m.lattice, i + 2, &seq.terms)?;
    let rhs_larger_ball = class_truncated(seq, &q2, dec)?;
    let product = lhs.mul(dec, &rhs);
    let holds = product.is_one(dec) && rhs == rhs_larger_ball;
    Ok(TraceReport { holds, precision: n, ball: i, prime_bound: bound, primes, lhs, rhs, rhs_larger_ball, product })
}

/// [1 − Z^m·(φα)] on V/U_i against [1 − Z^m·(αφ)] on V/U_{i − deg α}, for
/// α ∈ A nonzero. Needs φ(U_{i − deg α}) ⊆ U_i.
#[allow(clippy::too_many_arguments)]
pub fn varphialpha_check(
    cover: &GaloisCover,
    m: &TamingModule,
    alpha: &[u32],
    phi: &TwistedPoly<FqPoly>,
    power: usize,
    n: usize,
    i: usize,
    dec: &DecompositionData,
) -> Result<bool> {
    let a = &cover.a;
    let Some(da) = alpha.len().checked_sub(1) else {
        return Err(Error::Config("α = 0 is not surjective on K_∞/M".into()));
    };
    if da >= i {
        return Err(Error::HypothesisUnverified(format!("ball index {i} too small for deg α = {da}")));
    }
    let j = i - da;
    let amb = Ambient::new(cover, &m.lattice)?;
    if !amb.maps_ball_into(phi, j, i) {
        return Err(Error::HypothesisUnverified(format!("φ does not map U_{j} into U_{i}")));
    }
    let al = TwistedPoly::constant(a, alpha.to_vec());
    let a_mat = amb.operator(&al, i, j);
    let p_mat = amb.operator(phi, j, i);
    let big = quotient_module(cover, amb.clone(), i)?;
    let small = quotient_module(cover, amb, j)?;
    let f = &cover.fq;
    let pa = mat_mul(f, &p_mat, &a_mat);
    let ap = mat_mul(f, &a_mat, &p_mat);
    let lhs = class_on(&big.module, dec, &[(power, negate(&big.module, &pa))], n)?;
    let rhs = class_on(&small.module, dec, &[(power, negate(&small.module, &ap))], n)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::{build_cover, fixtures, taming_module, Lattice};
    use crate::lseries::{euler_factor, AlgSeries};
    use crate::nuclear::decomposition_for;
    use crate::nuclear::quotient::min_ball;

    fn setup(fixture: crate::function_field::CoverSpec) -> (GaloisCover, DrinfeldModule, TamingModule, DecompositionData) {
        let c = build_cover(&fixture).unwrap();
        let e = DrinfeldModule::carlitz(&c.fq);
        let m = taming_module(&c, None, 1).unwrap();
        let dec = decomposition_for(&c.fq, &c.group).unwrap();
        (c, e, m, dec)
    }

    #[test]
    fn carlitz_sequence_terms() {
        let (c, e, _, _) = setup(fixtures::trivial(2));
        let s = phi_e_sequence(&e, 3).unwrap();
        // −τ, then −τ·t = −t²·τ
        assert_eq!(s.terms[0].coeffs, vec![vec![], vec![1]]);
        assert_eq!(s.terms[1].coeffs, vec![vec![], vec![0, 0, 1]]);
        assert!(s.terms.iter().all(|p| p.coeff(&c.a, 0).is_empty()));
        assert_eq!(s.prime_bound(), 4);
    }

    #[test]
    fn euler_class_at_t() {
        let (c, e, m, dec) = setup(fixtures::trivial(2));
        let s = phi_e_sequence(&e, 2).unwrap();
        let cl = euler_class_truncated(&s, &c, &m, &[0, 1], &dec).unwrap();
        assert_eq!(cl.blocks[0], vec![vec![1], vec![1]]);
        let z = NuclearSeq::zero(&c.a, 4);
        assert!(euler_class_truncated(&z, &c, &m, &[1, 1, 1], &dec).unwrap().is_one(&dec));
    }

    #[test]
    fn evaluation_inverts_euler_factor() {
        for (fx, n) in [(fixtures::trivial(3), 4), (fixtures::carlitz_torsion_f3(), 3)] {
            let (c, e, m, dec) = setup(fx);
            let ag = crate::group_algebra::GroupRing::new(c.a.clone(), c.group.clone());
            let fqg = ag.fqg();
            let s = phi_e_sequence(&e, n).unwrap();
            let floor = -(n as i64 - 1);
            for p in primes_up_to(&c.a, 2) {
                let ev = euler_class_truncated(&s, &c, &m, &p, &dec).unwrap().evaluate(&dec).remove(0);
                let ef = euler_factor(&e, &c, &m, &p).unwrap().series(&ag, floor).unwrap();
                assert!(ev.mul(&fqg, &ef).agrees_with(&fqg, &AlgSeries::one(&fqg, floor), floor).unwrap());
            }
        }
    }

    #[test]
    fn trace_formula_carlitz() {
        let (c, e, m, dec) = setup(fixtures::trivial(2));
        let s = phi_e_sequence(&e, 4).unwrap();
        let i = min_ball(&c, &m.lattice, &s.terms).unwrap();
        let r = trace_formula_verify(&s, &c, &m, i, &dec).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(!r.rhs.is_one(&dec));
        // degree-4 primes are invisible mod Z^4; dropping p = t is not
        let last = r.primes.last().unwrap();
        assert!(euler_class_truncated(&s, &c, &m, last, &dec).unwrap().is_one(&dec));
        let mut partial = TruncGroupSeries::one(&dec, 4);
        for p in &r.primes[1..] {
            partial = partial.mul(&dec, &euler_class_truncated(&s, &c, &m, p, &dec).unwrap());
        }
        assert!(!partial.mul(&dec, &r.rhs).is_one(&dec));
    }

    #[test]
    fn trace_formula_quadratic_cover() {
        let (c, e, m, dec) = setup(fixtures::carlitz_torsion_f3());
        let s = phi_e_sequence(&e, 3).unwrap();
        let i = min_ball(&c, &m.lattice, &s.terms).unwrap();
        let r = trace_formula_verify(&s, &c, &m, i, &dec).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn zero_sequence_is_trivial() {
        let (c, _, m, dec) = setup(fixtures::trivial(2));
        let r = trace_formula_verify(&NuclearSeq::zero(&c.a, 3), &c, &m, 2, &dec).unwrap();
        assert!(r.holds && r.primes.is_empty() && r.rhs.is_one(&dec));
    }

    #[test]
    fn contracting_term_is_invisible() {
        let (c, _, m, dec) = setup(fixtures::trivial(2));
        // τ sends every t^{-k}, k ≥ 1, into U_2
        let s = NuclearSeq::new(&c.a, vec![TwistedPoly::tau(&c.a)]).unwrap();
        let q = compact_quotient(&c, &m.lattice, 2, &s.terms).unwrap();
        assert!(class_truncated(&s, &q, &dec).unwrap().is_one(&dec));
    }

    #[test]
    fn swapping_alpha_and_phi() {
        let (c, _, m, dec) = setup(fixtures::trivial(2));
        let phi = TwistedPoly::new(&c.a, vec![vec![], vec![1, 1]]);
        assert!(varphialpha_check(&c, &m, &[0, 1], &phi, 1, 3, 4, &dec).unwrap());
        assert!(varphialpha_check(&c, &m, &[1], &phi, 1, 3, 4, &dec).unwrap());
        let big = TwistedPoly::new(&c.a, vec![vec![], vec![0, 0, 0, 0, 0, 1]]);
        assert!(matches!(
            varphialpha_check(&c, &m, &[0, 1], &big, 1, 3, 4, &dec),
            Err(Error::HypothesisUnverified(_))
        ));
    }

    #[test]
    fn ball_lattice_must_be_free_and_stable() {
        let c = build_cover(&fixtures::trivial(2)).unwrap();
        let l = Lattice::ring_of_integers(&c);
        assert!(compact_quotient(&c, &l, 1, &[]).unwrap().dim() == 0);
    }
}
