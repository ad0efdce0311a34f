use std::sync::Arc;

use serde::Serialize;

use crate::base_algebra::linalg::rank;
use crate::base_algebra::ring::{identity, mat_mul, mat_sub, zero_mat};
use crate::base_algebra::{FqField, Mat, Ring};
use crate::error::{Error, Result};
use crate::group_algebra::FiniteGroup;

/// Finite A[G]-module on an F_q-basis. Matrices act on column vectors: the
/// image of basis vector j is column j, so g_action[g·h] = g_action[g]·g_action[h].
#[derive(Clone, Debug, Serialize)]
pub struct FiniteAGModule {
    pub labels: Vec<String>,
    #[serde(skip)]
    pub fq: Option<FqField>,
    #[serde(skip)]
    pub group: Option<Arc<FiniteGroup>>,
    pub t_action: Mat<u32>,
    pub g_action: Vec<Mat<u32>>,
    pub frobenius: Option<Mat<u32>>,
    pub free_basis: Option<Vec<Vec<u32>>>,
}

impl FiniteAGModule {
    pub fn new(
        fq: &FqField,
        group: Arc<FiniteGroup>,
        t_action: Mat<u32>,
        g_action: Vec<Mat<u32>>,
        frobenius: Option<Mat<u32>>,
    ) -> Self {
        let labels = (0..t_action.len()).map(|i| format!("m{i}")).collect();
        FiniteAGModule { labels, fq: Some(fq.clone()), group: Some(group), t_action, g_action, frobenius, free_basis: None }
    }

    pub fn fq(&self) -> &FqField {
        self.fq.as_ref().expect("module without field context")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.group.as_ref().expect("module without group context")
    }

    pub fn dim(&self) -> usize {
        self.t_action.len()
    }

    /// A/(f) with trivial G-action, basis 1, t, …, t^{d−1}; t acts by the
    /// companion matrix.
    pub fn cyclic_a_module(fq: &FqField, group: Arc<FiniteGroup>, f: &[u32]) -> Self {
        let d = f.len() - 1;
        let mut t = zero_mat(fq, d, d);
        for i in 0..d {
            if i + 1 < d {
                t[i + 1][i] = 1;
            } else {
                for k in 0..d {
                    t[k][i] = fq.neg_e(f[k]);
                }
            }
        }
        let g = vec![identity(fq, d); group.order];
        Self::new(fq, group, t, g, None)
    }

    /// F_q[G]^r ⊗ (A/(f)): the free module on which t acts through the
    /// companion matrix of f and G acts regularly.
    pub fn regular_times(fq: &FqField, group: Arc<FiniteGroup>, f: &[u32]) -> Self {
        let c = Self::cyclic_a_module(fq, Arc::new(FiniteGroup::trivial()), f);
        let n = group.order;
        let d = c.dim();
        // basis g ⊗ t^i at index g*d + i; h·(g ⊗ v) = hg ⊗ v
        let mut t = zero_mat(fq, n * d, n * d);
        for g in 0..n {
            for i in 0..d {
                for k in 0..d {
                    t[g * d + i][g * d + k] = c.t_action[i][k];
                }
            }
        }
        let gs = (0..n)
            .map(|h| {
                let mut m = zero_mat(fq, n * d, n * d);
                for g in 0..n {
                    for i in 0..d {
                        m[group.mul(h, g) * d + i][g * d + i] = 1;
                    }
                }
                m
            })
            .collect();
        Self::new(fq, group, t, gs, None)
    }

    pub fn act_g(&self, g: usize, v: &[u32]) -> Vec<u32> {
        crate::base_algebra::linalg::mat_vec(self.fq(), &self.g_action[g], v)
    }

    pub fn act_t(&self, v: &[u32]) -> Vec<u32> {
        crate::base_algebra::linalg::mat_vec(self.fq(), &self.t_action, v)
    }

    /// Structural checks: sizes, G-action law, t and Frobenius commute with G.
    pub fn validate(&self) -> Result<()> {
        let f = self.fq();
        let g = self.group();
        let d = self.dim();
        let bad = |m: String| Error::Config(format!("module: {m}"));
        if self.t_action.iter().any(|r| r.len() != d) {
            return Err(bad("t_action is not square".into()));
        }
        if self.g_action.len() != g.order {
            return Err(bad(format!("{} G-matrices for a group of order {}", self.g_action.len(), g.order)));
        }
        if self.g_action[0] != identity(f, d) {
            return Err(bad("identity acts nontrivially".into()));
        }
        for a in 0..g.order {
            for b in 0..g.order {
                if mat_mul(f, &self.g_action[a], &self.g_action[b]) != self.g_action[g.mul(a, b)] {
                    return Err(bad(format!("G-action law fails for ({a},{b})")));
                }
            }
            let ga = &self.g_action[a];
            if mat_mul(f, &self.t_action, ga) != mat_mul(f, ga, &self.t_action) {
                return Err(bad(format!("t does not commute with group element {a}")));
            }
            if let Some(fr) = &self.frobenius {
                if mat_mul(f, fr, ga) != mat_mul(f, ga, fr) {
                    return Err(bad(format!("Frobenius does not commute with group element {a}")));
                }
            }
        }
        Ok(())
    }

    /// Ĥ^0 and Ĥ^{-1} dimensions for the cyclic subgroup generated by h.
    pub fn tate_dims(&self, h: usize) -> (usize, usize) {
        let f = self.fq();
        let g = self.group();
        let d = self.dim();
        let one_minus = mat_sub(f, &identity(f, d), &self.g_action[h]);
        let mut norm = zero_mat(f, d, d);
        for x in g.cyclic_subgroup(h) {
            norm = crate::base_algebra::ring::mat_add(f, &norm, &self.g_action[x]);
        }
        let r1 = rank(f, &one_minus);
        let rn = rank(f, &norm);
        let h0 = (d - r1) - rn;
        let hm1 = (d - rn) - r1;
        (h0, hm1)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.fq();
        let t = crate::base_algebra::ring::block_diag(f, &[self.t_action.clone(), other.t_action.clone()]);
        let gs = self
            .g_action
            .iter()
            .zip(&other.g_action)
            .map(|(a, b)| crate::base_algebra::ring::block_diag(f, &[a.clone(), b.clone()]))
            .collect();
        let fr = match (&self.frobenius, &other.frobenius) {
            (Some(a), Some(b)) => Some(crate::base_algebra::ring::block_diag(f, &[a.clone(), b.clone()])),
            _ => None,
        };
        Self::new(f, self.group().clone(), t, gs, fr)
    }

    /// Same module on a new F_q-basis: rows of `p` are the new basis vectors
    /// in old coordinates.
    pub fn change_basis(&self, p: &Mat<u32>) -> Result<Self> {
        let f = self.fq();
        let cols = crate::base_algebra::ring::transpose(p);
        let inv = crate::base_algebra::linalg::inverse(f, &cols)
            .ok_or_else(|| Error::Config("change of basis is singular".into()))?;
        let conj = |m: &Mat<u32>| mat_mul(f, &mat_mul(f, &inv, m), &cols);
        let mut out = Self::new(
            f,
            self.group().clone(),
            conj(&self.t_action),
            self.g_action.iter().map(conj).collect(),
            self.frobenius.as_ref().map(conj),
        );
        out.labels = self.labels.clone();
        Ok(out)
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim() == 0
    }

    /// Scalar multiple of the identity on this module.
    pub fn scalar(&self, c: u32) -> Mat<u32> {
        let f = self.fq();
        crate::base_algebra::ring::mat_scale(f, &c, &identity(f, self.dim()))
    }

    pub fn zero_map(&self) -> Mat<u32> {
        zero_mat(self.fq(), self.dim(), self.dim())
    }

    /// Characteristic-free sanity: F(c·m) = c^q·F(m) holds automatically for
    /// a matrix over F_q since c^q = c; we still check it on F_q.
    pub fn frobenius_semilinear(&self) -> bool {
        let f = self.fq();
        f.elements().all(|c| f.pow_u(c, f.q as u64) == c)
    }

    pub fn one(&self) -> u32 {
        self.fq().one()
    }
}
