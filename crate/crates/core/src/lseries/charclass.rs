use serde::Serialize;

use crate::base_algebra::{FqPoly, Mat, Ring};
use crate::error::Result;
use crate::function_field::FiniteAGModule;
use crate::group_algebra::decomposition::DecompositionData;
use crate::group_algebra::freeness::{ct_free_basis, endo_in_free_basis, DEFAULT_SEED};
use crate::group_algebra::{det_commutative, AG};

/// c_G(M): the class of t·I − X, X the t-action over F_q[G] in a free basis
/// (rows: T(m_j) = Σ_k X[j][k] m_k).
#[derive(Clone, Debug, Serialize)]
pub struct CharClass {
    pub rank: usize,
    pub matrix: Mat<Vec<u32>>,
    /// det(t·I − X) ∈ A[G] when G is abelian
    pub value: Option<Vec<FqPoly>>,
}

impl CharClass {
    pub fn from_matrix(ag: &AG, x: Mat<Vec<u32>>) -> Self {
        let mut c = CharClass { rank: x.len(), matrix: x, value: None };
        if ag.group.abelian {
            c.value = Some(det_commutative(ag, &c.relation_matrix(ag)));
        }
        c
    }

    /// t·I − X over A[G]; its rows present M.
    pub fn relation_matrix(&self, ag: &AG) -> Mat<Vec<FqPoly>> {
        let r = self.rank;
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|k| {
                        let mut e = ag.neg(&ag.embed_fqg(&self.matrix[j][k]));
                        if j == k {
                            e = ag.add(&e, &ag.embed_a(&vec![0, 1]));
                        }
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// Per-block determinants over R_i[t].
    pub fn block_values(&self, ag: &AG, d: &DecompositionData) -> Vec<Vec<Vec<u32>>> {
        d.nrd_blocks(ag, &self.relation_matrix(ag))
    }

    /// Nrd(t·I − X) as a central element of A[G].
    pub fn reduced(&self, ag: &AG, d: &DecompositionData) -> Result<Vec<FqPoly>> {
        d.nrd(ag, &self.relation_matrix(ag))
    }
}

/// Characteristic class of a finite F_q[G]-free A[G]-module; finds a free
/// basis first if none is recorded.
pub fn char_class(ag: &AG, m: &FiniteAGModule) -> Result<CharClass> {
    let basis = match &m.free_basis {
        Some(b) => b.clone(),
        None => ct_free_basis(m, DEFAULT_SEED)?,
    };
    let x = endo_in_free_basis(m, &basis, &m.t_action)?;
    Ok(CharClass::from_matrix(ag, x))
}
