//! F_q[G]-bases of finite modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group_ring::FqG;
use crate::base_algebra::linalg::{inverse, mat_vec, mat_vec_left, rank};
use crate::base_algebra::{Mat, Ring};
use crate::error::{Error, Result};
use crate::function_field::FiniteAGModule;

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotFreeCertificate {
    pub reason: String,
    /// elements of a cyclic subgroup with nonvanishing Tate cohomology
    pub subgroup: Option<Vec<usize>>,
    pub h0_dim: usize,
    pub h_minus1_dim: usize,
    pub trials: usize,
}

impl std::fmt::Display for NotFreeCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.reason)?;
        if let Some(h) = &self.subgroup {
            write!(f, " (subgroup {h:?}: dim Ĥ^0 = {}, dim Ĥ^-1 = {})", self.h0_dim, self.h_minus1_dim)?;
        }
        Ok(())
    }
}

fn not_free(c: NotFreeCertificate) -> Error {
    Error::NotFree(Box::new(c))
}

/// Matrix whose rows are g·m_j, ordered (j, g).
pub fn orbit_matrix(m: &FiniteAGModule, gens: &[Vec<u32>]) -> Mat<u32> {
    let n = m.group().order;
    gens.iter().flat_map(|v| (0..n).map(move |g| m.act_g(g, v))).collect()
}

pub fn is_free_basis(m: &FiniteAGModule, gens: &[Vec<u32>]) -> bool {
    let b = orbit_matrix(m, gens);
    b.len() == m.dim() && rank(m.fq(), &b) == m.dim()
}

/// Find m_1..m_r with {g·m_j} an F_q-basis: 64·|G| random trials, then a
/// Tate-cohomology certificate over cyclic subgroups if none is found.
pub fn ct_free_basis(m: &FiniteAGModule, seed: u64) -> Result<Vec<Vec<u32>>> {
    let n = m.group().order;
    let d = m.dim();
    if d % n != 0 {
        return Err(not_free(NotFreeCertificate {
            reason: format!("dimension {d} is not divisible by |G| = {n}"),
            subgroup: None,
            h0_dim: 0,
            h_minus1_dim: 0,
            trials: 0,
        }));
    }
    let r = d / n;
    if r == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok((0..d).map(|i| (0..d).map(|j| u32::from(i == j)).collect()).collect());
    }
    let q = m.fq().q;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 64 * n;
    // first try the given basis vectors in order, a cheap deterministic guess
    let guess: Vec<Vec<u32>> = (0..r)
        .map(|j| (0..d).map(|i| u32::from(i == j * n)).collect())
        .collect();
    if is_free_basis(m, &guess) {
        return Ok(guess);
    }
    for _ in 0..trials {
        let gens: Vec<Vec<u32>> = (0..r).map(|_| (0..d).map(|_| rng.gen_range(0..q)).collect()).collect();
        if is_free_basis(m, &gens) {
            return Ok(gens);
        }
    }
    for h in 1..n {
        let (h0, hm1) = m.tate_dims(h);
        if h0 > 0 || hm1 > 0 {
            return Err(not_free(NotFreeCertificate {
                reason: "Tate cohomology does not vanish".into(),
                subgroup: Some(m.group().cyclic_subgroup(h)),
                h0_dim: h0,
                h_minus1_dim: hm1,
                trials,
            }));
        }
    }
    Err(not_free(NotFreeCertificate {
        reason: format!("cohomologically trivial but no free basis found in {trials} trials"),
        subgroup: None,
        h0_dim: 0,
        h_minus1_dim: 0,
        trials,
    }))
}

/// Matrix over F_q[G] of an F_q[G]-linear endomorphism in a free basis:
/// T(m_j) = Σ_k X[j][k]·m_k. Rows, not columns: with scalars acting on the
/// left, (a_j) ↦ (a_j)·X is then a left-module map, and tI − X is the
/// relation matrix in the row convention used for Fitting ideals.
pub fn endo_in_free_basis(m: &FiniteAGModule, basis: &[Vec<u32>], endo: &Mat<u32>) -> Result<Mat<Vec<u32>>> {
    let f = m.fq();
    let n = m.group().order;
    let b = orbit_matrix(m, basis);
    let binv = inverse(f, &b).ok_or_else(|| Error::Config("supplied basis is not F_q[G]-free".into()))?;
    let r = basis.len();
    let mut out = vec![vec![vec![0u32; n]; r]; r];
    for (j, mj) in basis.iter().enumerate() {
        let img = mat_vec(f, endo, mj);
        let c = mat_vec_left(f, &img, &binv);
        for k in 0..r {
            for g in 0..n {
                out[j][k][g] = c[k * n + g];
            }
        }
    }
    Ok(out)
}

/// The free module F_q[G]^r with an endomorphism given by a matrix X over
/// F_q[G] in the convention above.
pub fn module_from_matrix(fqg: &FqG, x: &Mat<Vec<u32>>) -> FiniteAGModule {
    let f = &fqg.base;
    let n = fqg.n();
    let r = x.len();
    let d = n * r;
    // basis (k, g) ↦ g·e_k at index k*n + g; g·m_j ↦ Σ_k (g x_jk) m_k
    let mut t = vec![vec![0u32; d]; d];
    for j in 0..r {
        for g in 0..n {
            for k in 0..r {
                let y = fqg.mul(&fqg.basis(g), &x[j][k]);
                for h in 0..n {
                    t[k * n + h][j * n + g] = y[h];
                }
            }
        }
    }
    let gs = (0..n)
        .map(|h| {
            let mut m = vec![vec![0u32; d]; d];
            for k in 0..r {
                for g in 0..n {
                    m[k * n + fqg.group.mul(h, g)][k * n + g] = 1;
                }
            }
            m
        })
        .collect();
    let mut out = FiniteAGModule::new(f, fqg.group.clone(), t, gs, None);
    out.free_basis = Some((0..r).map(|k| (0..d).map(|i| u32::from(i == k * n)).collect()).collect());
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base_algebra::FqField;
    use crate::group_algebra::{FiniteGroup, GroupRing};

    #[test]
    fn regular_module_basis_one() {
        let f = FqField::prime(3).unwrap();
        let m = FiniteAGModule::regular_times(&f, Arc::new(FiniteGroup::cyclic(2)), &[0, 1]);
        let b = ct_free_basis(&m, DEFAULT_SEED).unwrap();
        assert_eq!(b, vec![vec![1, 0]]);
    }

    #[test]
    fn trivial_c2_module_is_not_free() {
        let f = FqField::prime(2).unwrap();
        let m = FiniteAGModule::cyclic_a_module(&f, Arc::new(FiniteGroup::cyclic(2)), &[0, 1]);
        assert!(matches!(ct_free_basis(&m, 1), Err(Error::NotFree(_))));
    }

    #[test]
    fn certificate_for_even_dimension() {
        // F_2 ⊕ F_2 with trivial C₂-action: Ĥ^0 ≠ 0
        let f = FqField::prime(2).unwrap();
        let m = FiniteAGModule::cyclic_a_module(&f, Arc::new(FiniteGroup::cyclic(2)), &[0, 0, 1]);
        let Err(Error::NotFree(c)) = ct_free_basis(&m, 1) else { panic!() };
        assert_eq!(c.subgroup, Some(vec![0, 1]));
        assert_eq!(c.h0_dim, 2);
    }

    #[test]
    fn endomorphism_round_trip() {
        let f = FqField::prime(2).unwrap();
        let fqg = GroupRing::new(f.clone(), Arc::new(FiniteGroup::cyclic(2)));
        let x = vec![vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![0, 0]]];
        let m = module_from_matrix(&fqg, &x);
        m.validate().unwrap();
        let basis = m.free_basis.clone().unwrap();
        assert_eq!(endo_in_free_basis(&m, &basis, &m.t_action).unwrap(), x);
    }
}
