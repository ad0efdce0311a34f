//! Euler factors c_G(M/pM)·c_G(E(M/pM))^{-1}, their truncated product Θ, and
//! the Stickelberger element Nrd(Θ).

use rayon::prelude::*;
use serde::Serialize;

use super::algseries::AlgSeries;
use super::charclass::{char_class, CharClass};
use crate::base_algebra::{enumerate_monic_irreducibles, rational_to_series, FqField, FqPoly, LaurentSeries, PolyA, PolyRing, Ring};
use crate::drinfeld::{e_module, DrinfeldModule};
use crate::error::{Error, Result};
use crate::function_field::{GaloisCover, TamingModule};
use crate::group_algebra::decomposition::DecompositionData;
use crate::group_algebra::{GroupRing, AG};

#[derive(Clone, Debug, Serialize)]
pub struct EulerFactor {
    pub p: FqPoly,
    pub num: CharClass,
    pub den: CharClass,
}

impl EulerFactor {
    /// The factor expanded in F_∞[G] down to `floor`; needs G abelian.
    pub fn series(&self, ag: &AG, floor: i64) -> Result<AlgSeries> {
        let (Some(n), Some(d)) = (&self.num.value, &self.den.value) else {
            return Err(Error::HypothesisViolated("Euler factor series over F_∞[G] needs abelian G".into()));
        };
        AlgSeries::ratio(&ag.fqg(), &ag.to_poly_over_fqg(n), &ag.to_poly_over_fqg(d), floor)
    }

    /// Per-block reduced values num/den over R_i((t^{-1})).
    pub fn block_series(&self, ag: &AG, dec: &DecompositionData, floor: i64) -> Result<Vec<AlgSeries>> {
        let nb = self.num.block_values(ag, dec);
        let db = self.den.block_values(ag, dec);
        dec.blocks
            .iter()
            .zip(nb.iter().zip(&db))
            .map(|(b, (n, d))| AlgSeries::ratio(&b.ring, n, d, floor))
            .collect()
    }
}

/// Euler factor at p for the taming module M.
pub fn euler_factor(e: &DrinfeldModule, cover: &GaloisCover, m: &TamingModule, p: &[u32]) -> Result<EulerFactor> {
    let ag = GroupRing::new(cover.a.clone(), cover.group.clone());
    let pd = m.residue(cover, p);
    if let Some(c) = pd.certificate {
        return Err(Error::NotFree(Box::new(c)));
    }
    let num = char_class(&ag, &pd.residue)?;
    let mut em = e_module(e, &pd.residue)?;
    em.free_basis = pd.residue.free_basis.clone();
    let den = char_class(&ag, &em)?;
    Ok(EulerFactor { p: p.to_vec(), num, den })
}

/// Largest prime degree entering Θ at precision N.
pub fn prime_cutoff(n: usize, rank: usize) -> usize {
    n * rank + 1
}

#[derive(Clone, Debug, Serialize)]
pub struct LValueTrunc {
    pub n: usize,
    pub bound: usize,
    pub primes: Vec<FqPoly>,
    pub factors: Vec<EulerFactor>,
    /// product in F_∞[G] down to t^{-N}; None for non-abelian G
    pub value: Option<AlgSeries>,
    pub monic: bool,
}

pub fn primes_up_to(a: &PolyA, d: usize) -> Vec<FqPoly> {
    enumerate_monic_irreducibles(a, d)
}

/// Θ truncated at t^{-N}: product of the Euler factors for deg p ≤ N·r + 1.
pub fn theta_truncated(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize) -> Result<LValueTrunc> {
    theta_with_bound(cover, e, m, n, prime_cutoff(n, e.rank()))
}

/// Θ from the Euler factors with deg p ≤ `bound`; only certified to t^{-N}
/// when `bound` is at least the prime cutoff.
pub fn theta_with_bound(cover: &GaloisCover, e: &DrinfeldModule, m: &TamingModule, n: usize, bound: usize) -> Result<LValueTrunc> {
    if n == 0 {
        return Err(Error::Config("theta_truncated: precision N must be at least 1".into()));
    }
    let ag = GroupRing::new(cover.a.clone(), cover.group.clone());
    let primes = primes_up_to(&cover.a, bound);
    let factors: Vec<EulerFactor> =
        primes.par_iter().map(|p| euler_factor(e, cover, m, p)).collect::<Result<Vec<_>>>()?;
    let floor = -(n as i64);
    let value = if cover.group.abelian {
        let fqg = ag.fqg();
        let series: Vec<AlgSeries> = factors.par_iter().map(|f| f.series(&ag, floor)).collect::<Result<Vec<_>>>()?;
        let prod = series.iter().fold(AlgSeries::one(&fqg, floor), |acc, s| acc.mul(&fqg, s));
        Some(prod.truncate(floor)?)
    } else {
        None
    };
    let monic = value.as_ref().is_none_or(|v| v.top() == Some(0) && v.lead() == Some(&ag.fqg().one()));
    Ok(LValueTrunc { n, bound, primes, factors, value, monic })
}

/// Σ 1/a over monic a of degree ≤ N, each term expanded to t^{-(2N+1)}.
pub fn zeta_partial(fq: &FqField, n: usize) -> LaurentSeries {
    let a = PolyRing::new(fq.clone());
    let floor = -(2 * n as i64 + 1);
    let mut acc = LaurentSeries::zero(floor);
    for d in 0..=n {
        for m in a.monics_of_degree(d) {
            acc = acc.add(fq, &rational_to_series(fq, &[1], &m, floor).unwrap());
        }
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct StickelbergerElem {
    /// central element of F_∞[G]
    pub value: AlgSeries,
    pub floor: i64,
}

/// θ = Nrd(Θ); for abelian G this is Θ itself.
pub fn stickelberger(ag: &AG, theta: &LValueTrunc, dec: &DecompositionData) -> Result<StickelbergerElem> {
    let floor = -(theta.n as i64);
    if let Some(v) = &theta.value {
        return Ok(StickelbergerElem { value: v.clone(), floor });
    }
    nrd_of_factors(ag, &theta.factors, dec, floor)
}

/// Reduced norm of a product of Euler factors, block by block.
pub fn nrd_of_factors(ag: &AG, factors: &[EulerFactor], dec: &DecompositionData, floor: i64) -> Result<StickelbergerElem> {
    if !dec.is_verified() {
        return Err(Error::DecompositionInvalid(format!("decomposition {} has not been verified", dec.label)));
    }
    let ell = ag.fq().ell as usize;
    if ag.group.commutator_order % ell == 0 {
        return Err(Error::HypothesisViolated(format!(
            "ℓ = {ell} divides the commutator subgroup order {}",
            ag.group.commutator_order
        )));
    }
    let mut blocks: Vec<AlgSeries> = dec.blocks.iter().map(|b| AlgSeries::one(&b.ring, floor)).collect();
    for f in factors {
        for (acc, (s, b)) in blocks.iter_mut().zip(f.block_series(ag, dec, floor)?.iter().zip(&dec.blocks)) {
            *acc = acc.mul(&b.ring, s);
        }
    }
    let fqg = ag.fqg();
    let top = blocks.iter().filter_map(|s| s.top()).max().unwrap_or(floor - 1);
    let mut coeffs = vec![];
    for e in floor..=top.max(floor) {
        let r: Vec<Vec<u32>> = blocks
            .iter()
            .zip(&dec.blocks)
            .map(|(s, b)| if e <= s.top().unwrap_or(floor - 1) { s.coeff(&b.ring, e) } else { b.ring.zero() })
            .collect();
        coeffs.push(dec.pull_back_scalars(ag.fq(), &r)?);
    }
    Ok(StickelbergerElem { value: AlgSeries::new(&fqg, floor, coeffs), floor })
}

/// Sum of the F_q[G]-coefficients: the image under G → 1.
pub fn augmentation(s: &AlgSeries, fq: &FqField) -> LaurentSeries {
    LaurentSeries::new(s.floor, s.coeffs.iter().map(|c| c.iter().fold(0, |acc, &x| fq.add_e(acc, x))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::{build_cover, fixtures, taming_module};

    fn carlitz_setup(q: u32) -> (GaloisCover, DrinfeldModule, TamingModule) {
        let c = build_cover(&fixtures::trivial(q)).unwrap();
        let e = DrinfeldModule::carlitz(&c.fq);
        let m = taming_module(&c, None, 1).unwrap();
        (c, e, m)
    }

    #[test]
    fn carlitz_euler_factors() {
        let (c, e, m) = carlitz_setup(2);
        let ag = GroupRing::new(c.a.clone(), c.group.clone());
        // t/(t+1) = 1 + t^-1 + t^-2 + …
        let f = euler_factor(&e, &c, &m, &[0, 1]).unwrap().series(&ag, -4).unwrap();
        assert_eq!(f.coeffs, vec![vec![1]; 5]);
        // (t²+t+1)/(t²+t) = 1 + t^-2 + t^-3 + …
        let f = euler_factor(&e, &c, &m, &[1, 1, 1]).unwrap().series(&ag, -4).unwrap();
        assert_eq!(f.coeffs, vec![vec![1], vec![1], vec![1], vec![0], vec![1]]);
    }

    #[test]
    fn zeta_small_cases() {
        let f = FqField::prime(2).unwrap();
        assert_eq!(zeta_partial(&f, 0), LaurentSeries::one(-1));
        // 1 + 1/(t²+t) = 1 + t^-2 + t^-3 + …
        let z = zeta_partial(&f, 1);
        assert_eq!(z.floor, -3);
        assert_eq!(z.coeffs, vec![1, 1, 0, 1]);
    }

    #[test]
    fn theta_matches_zeta() {
        for q in [2, 3] {
            let (c, e, m) = carlitz_setup(q);
            let th = theta_truncated(&c, &e, &m, 3).unwrap();
            let v = augmentation(th.value.as_ref().unwrap(), &c.fq);
            assert!(v.agrees_with(&zeta_partial(&c.fq, 3), Some(-3)).unwrap());
            assert!(th.monic);
        }
    }

    #[test]
    fn zero_precision_rejected() {
        let (c, e, m) = carlitz_setup(2);
        assert!(matches!(theta_truncated(&c, &e, &m, 0), Err(Error::Config(_))));
    }
}
