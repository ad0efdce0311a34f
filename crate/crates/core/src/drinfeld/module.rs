use serde::{Deserialize, Serialize};

use super::twisted::{twisted_add, twisted_mul, TwistedPoly};
use crate::base_algebra::ring::{identity, mat_add, mat_mul, mat_scale, zero_mat};
use crate::base_algebra::{FqField, FqPoly, Mat, PolyA, PolyRing};
use crate::error::{Error, Result};
use crate::function_field::FiniteAGModule;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DrinfeldSpec {
    /// a_1 … a_r as integer coefficient lists
    pub coefficients: Vec<Vec<i64>>,
}

/// φ(t) = t + a_1 τ + … + a_r τ^r with a_i ∈ A.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    pub a: PolyA,
    pub coeffs: Vec<FqPoly>,
}

impl DrinfeldModule {
    pub fn new(fq: &FqField, coeffs: Vec<FqPoly>) -> Result<Self> {
        match coeffs.last() {
            None => return Err(Error::Config("drinfeld: rank must be at least 1".into())),
            Some(c) if c.is_empty() => return Err(Error::Config("drinfeld: leading coefficient is zero".into())),
            _ => {}
        }
        Ok(DrinfeldModule { a: PolyRing::new(fq.clone()), coeffs })
    }

    pub fn from_spec(fq: &FqField, spec: &DrinfeldSpec) -> Result<Self> {
        let a = PolyRing::new(fq.clone());
        Self::new(fq, spec.coefficients.iter().map(|c| a.from_ints(c)).collect())
    }

    pub fn carlitz(fq: &FqField) -> Self {
        Self::new(fq, vec![vec![1]]).unwrap()
    }

    pub fn fq(&self) -> &FqField {
        self.a.fq()
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest t-degree among a_1 … a_r.
    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.len().checked_sub(1)).max().unwrap_or(0)
    }

    pub fn phi_t(&self) -> TwistedPoly<FqPoly> {
        let mut c = vec![self.a.t()];
        c.extend(self.coeffs.iter().cloned());
        TwistedPoly::new(&self.a, c)
    }

    /// φ(a) by Horner's rule in the twisted ring.
    pub fn phi_of(&self, a: &[u32]) -> TwistedPoly<FqPoly> {
        let ring = &self.a;
        let pt = self.phi_t();
        let mut acc = TwistedPoly::new(ring, vec![]);
        for &c in a.iter().rev() {
            acc = twisted_mul(ring, &acc, &pt).unwrap();
            acc = twisted_add(ring, &acc, &TwistedPoly::constant(ring, ring.constant(c))).unwrap();
        }
        acc
    }
}

/// p(T) for a square F_q-matrix T.
pub fn poly_at_matrix(f: &FqField, p: &[u32], t: &Mat<u32>) -> Mat<u32> {
    let n = t.len();
    let mut acc = zero_mat(f, n, n);
    for &c in p.iter().rev() {
        acc = mat_add(f, &mat_mul(f, &acc, t), &mat_scale(f, &c, &identity(f, n)));
    }
    acc
}

/// Matrix of Σ c_i(T)·F^i on M, where φ(a) = Σ c_i τ^i, T is the t-action
/// and F the Frobenius.
pub fn act_on_module(e: &DrinfeldModule, a: &[u32], m: &FiniteAGModule) -> Result<Mat<u32>> {
    act_twisted(e.fq(), &e.phi_of(a), m)
}

pub fn act_twisted(f: &FqField, phi: &TwistedPoly<FqPoly>, m: &FiniteAGModule) -> Result<Mat<u32>> {
    let n = m.dim();
    let mut acc = zero_mat(f, n, n);
    let mut fi = identity(f, n);
    for (i, c) in phi.coeffs.iter().enumerate() {
        if i > 0 {
            let fr = m.frobenius.as_ref().ok_or(Error::NoFrobenius)?;
            fi = mat_mul(f, fr, &fi);
        }
        if !c.is_empty() {
            acc = mat_add(f, &acc, &mat_mul(f, &poly_at_matrix(f, c, &m.t_action), &fi));
        }
    }
    Ok(acc)
}

/// E(M): same space, G-action and Frobenius, t acting through φ(t).
pub fn e_module(e: &DrinfeldModule, m: &FiniteAGModule) -> Result<FiniteAGModule> {
    let t = act_twisted(e.fq(), &e.phi_t(), m)?;
    let mut out = FiniteAGModule::new(m.fq(), m.group().clone(), t, m.g_action.clone(), m.frobenius.clone());
    out.labels = m.labels.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group_algebra::FiniteGroup;

    fn residue_field(f: &FqField, p: &[u32]) -> FiniteAGModule {
        // A/(p) with Frobenius x ↦ x^q, computed on the basis 1, t, …
        let a = PolyRing::new(f.clone());
        let mut m = FiniteAGModule::cyclic_a_module(f, Arc::new(FiniteGroup::trivial()), p);
        let d = p.len() - 1;
        let mut fr = vec![vec![0u32; d]; d];
        for j in 0..d {
            let img = a.powmod(&a.monomial(1, j), f.q as u128, p);
            for (i, &c) in img.iter().enumerate() {
                fr[i][j] = c;
            }
        }
        m.frobenius = Some(fr);
        m
    }

    #[test]
    fn phi_of_basics() {
        let f = FqField::prime(2).unwrap();
        let e = DrinfeldModule::carlitz(&f);
        assert_eq!(e.phi_of(&[1]).coeffs, vec![vec![1]]);
        assert_eq!(e.phi_of(&[0, 1]), e.phi_t());
        assert_eq!(e.phi_of(&[0, 0, 1]).coeffs, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1]]);
        assert!(e.phi_of(&[]).coeffs.is_empty());
    }

    #[test]
    fn carlitz_on_residue_fields() {
        let f = FqField::prime(2).unwrap();
        let e = DrinfeldModule::carlitz(&f);
        assert_eq!(act_on_module(&e, &[0, 1], &residue_field(&f, &[0, 1])).unwrap(), vec![vec![1]]);
        let m = residue_field(&f, &[1, 1, 1]);
        assert_eq!(act_on_module(&e, &[0, 1], &m).unwrap(), vec![vec![1, 0], vec![1, 0]]);
        let f3 = FqField::prime(3).unwrap();
        let e3 = DrinfeldModule::carlitz(&f3);
        assert_eq!(act_on_module(&e3, &[2], &residue_field(&f3, &[1, 0, 1])).unwrap(), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn missing_frobenius() {
        let f = FqField::prime(2).unwrap();
        let e = DrinfeldModule::carlitz(&f);
        let m = FiniteAGModule::cyclic_a_module(&f, Arc::new(FiniteGroup::trivial()), &[0, 1]);
        assert!(matches!(act_on_module(&e, &[0, 1], &m), Err(Error::NoFrobenius)));
        assert!(act_on_module(&e, &[1], &m).is_ok());
    }
}
