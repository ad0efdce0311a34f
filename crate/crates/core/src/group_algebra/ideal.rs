//! Ideals of Z(A[G]) handled as A-submodules of A[G] ≅ A^{|G|}, with a
//! Hermite basis as canonical form.

use serde::Serialize;

use super::decomposition::DecompositionData;
use super::det::det_commutative;
use super::group_ring::AG;
use crate::base_algebra::{hermite_reduce, hermite_rows, smith_invariants, FqPoly, Mat, PolyRing, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CentralIdeal {
    pub generators: Vec<Vec<FqPoly>>,
    pub hermite: Vec<Vec<FqPoly>>,
}

// equality is equality of canonical bases
impl PartialEq for CentralIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.hermite == other.hermite
    }
}

impl Eq for CentralIdeal {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Membership,
    Equality,
    Product,
    Compare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealAnswer {
    Bool(bool),
    Ideal(CentralIdeal),
}

impl CentralIdeal {
    /// Z(A[G])-ideal generated by central elements.
    pub fn generated_by(ag: &AG, gens: &[Vec<FqPoly>]) -> Self {
        let classes: Vec<Vec<FqPoly>> = ag.class_sums();
        let mut rows = vec![];
        for z in gens {
            for c in &classes {
                rows.push(ag.mul(z, c));
            }
        }
        CentralIdeal { generators: gens.to_vec(), hermite: hermite_rows(&ag.base, &rows) }
    }

    pub fn unit(ag: &AG) -> Self {
        Self::generated_by(ag, &[ag.one()])
    }

    pub fn zero() -> Self {
        CentralIdeal { generators: vec![], hermite: vec![] }
    }

    pub fn contains(&self, ag: &AG, x: &[FqPoly]) -> bool {
        hermite_reduce(&ag.base, &self.hermite, x).iter().all(|p| p.is_empty())
    }

    pub fn product(&self, ag: &AG, other: &Self) -> Self {
        let gens: Vec<Vec<FqPoly>> = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| (a, b)))
            .map(|(a, b)| ag.mul(a, b))
            .collect();
        Self::generated_by(ag, &gens)
    }

    /// self ⊆ other
    pub fn is_subset(&self, ag: &AG, other: &Self) -> bool {
        self.hermite.iter().all(|v| other.contains(ag, v))
    }

    /// A-rank of the ideal as a lattice.
    pub fn rank(&self) -> usize {
        self.hermite.len()
    }
}

pub fn ideal_ops(ag: &AG, op: IdealOp, i: &CentralIdeal, j: Option<&CentralIdeal>, x: Option<&[FqPoly]>) -> IdealAnswer {
    match op {
        IdealOp::Membership => IdealAnswer::Bool(i.contains(ag, x.expect("membership needs an element"))),
        IdealOp::Equality => IdealAnswer::Bool(i.hermite == j.expect("equality needs two ideals").hermite),
        IdealOp::Product => IdealAnswer::Ideal(i.product(ag, j.expect("product needs two ideals"))),
        IdealOp::Compare => IdealAnswer::Bool(i.is_subset(ag, j.expect("comparison needs two ideals"))),
    }
}

/// Expand an A[G]-matrix (rows = relations) to an A-matrix using the
/// regular representation: row (r, g) is g·(row r).
pub fn expand_to_a(ag: &AG, p: &Mat<Vec<FqPoly>>) -> Mat<FqPoly> {
    let n = ag.n();
    let cols = if p.is_empty() { 0 } else { p[0].len() };
    let mut out = vec![];
    for row in p {
        for g in 0..n {
            let gb = ag.basis(g);
            let mut r = vec![vec![]; cols * n];
            for (c, x) in row.iter().enumerate() {
                let y = ag.mul(&gb, x);
                for h in 0..n {
                    r[c * n + h] = y[h].clone();
                }
            }
            out.push(r);
        }
    }
    out
}

/// F_q-dimension of the module presented by P; None if infinite.
pub fn presented_dimension(ag: &AG, p: &Mat<Vec<FqPoly>>) -> Option<usize> {
    let big = expand_to_a(ag, p);
    if big.is_empty() {
        return None;
    }
    smith_invariants(&ag.base, &big).dimension()
}

fn maximal_minors<R: Ring>(r: &R, m: &Mat<R::Elem>) -> Vec<R::Elem> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = vec![];
    let mut pick: Vec<usize> = (0..cols).collect();
    if cols > rows {
        return out;
    }
    loop {
        let sub: Mat<R::Elem> = pick.iter().map(|&i| m[i].clone()).collect();
        out.push(det_commutative(r, &sub));
        // next combination
        let mut i = cols;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < rows - cols + i {
                pick[i] += 1;
                for k in i + 1..cols {
                    pick[k] = pick[k - 1] + 1;
                }
                break;
            }
        }
        if cols == 0 {
            return out;
        }
    }
}

/// Fitting ideal of the module with relation rows P over A[G]. For each
/// block the classical Fitting ideal of the Morita-reduced matrix over R_i[t]
/// is formed; the direct sum is pulled back to Z(A[G]).
pub fn fitting_ideal(ag: &AG, p: &Mat<Vec<FqPoly>>, d: &DecompositionData) -> Result<CentralIdeal> {
    let rows = p.len();
    let cols = if rows == 0 { 0 } else { p[0].len() };
    if cols == 0 {
        return Ok(CentralIdeal::unit(ag));
    }
    if rows < cols || presented_dimension(ag, p).is_none() {
        return Err(Error::NotFinitePresentation(format!(
            "{rows}×{cols} relation matrix does not present a finite module"
        )));
    }
    let mut gens = vec![];
    for (bi, b) in d.blocks.iter().enumerate() {
        let rt = PolyRing::new(b.ring.clone());
        let big = d.block_matrix(ag, bi, p);
        let minors = if rows == cols { vec![det_commutative(&rt, &big)] } else { maximal_minors(&rt, &big) };
        for m in minors {
            if rt.is_zero(&m) {
                continue;
            }
            for k in 0..b.ring.dim {
                let e = rt.scale(&b.ring.basis(k), &m);
                let vals: Vec<Vec<Vec<u32>>> =
                    (0..d.blocks.len()).map(|bj| if bj == bi { e.clone() } else { vec![] }).collect();
                gens.push(d.pull_back_poly(ag, &vals)?);
            }
        }
    }
    Ok(CentralIdeal::generated_by(ag, &gens))
}

/// Abelian shortcut that never leaves A[G]: the ideal of maximal minors.
pub fn fitting_ideal_minors(ag: &AG, p: &Mat<Vec<FqPoly>>) -> Result<CentralIdeal> {
    if !ag.group.abelian {
        return Err(Error::HypothesisViolated("minor ideal is only the Fitting ideal for abelian G".into()));
    }
    let rows = p.len();
    let cols = if rows == 0 { 0 } else { p[0].len() };
    if rows < cols || presented_dimension(ag, p).is_none() {
        return Err(Error::NotFinitePresentation(format!("{rows}×{cols} relation matrix")));
    }
    let gens: Vec<Vec<FqPoly>> = maximal_minors(ag, p).into_iter().filter(|m| !ag.is_zero(m)).collect();
    Ok(CentralIdeal::generated_by(ag, &gens))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::base_algebra::FqField;
    use crate::group_algebra::{FiniteGroup, GroupRing};

    fn ag(q: u32, g: FiniteGroup) -> AG {
        GroupRing::new(PolyRing::new(FqField::prime(q).unwrap()), Arc::new(g))
    }

    #[test]
    fn trivial_group_fit_is_principal() {
        let r = ag(2, FiniteGroup::trivial());
        let mut d = DecompositionData::abelian(r.fq(), &r.group);
        d.verify(&r.group, r.fq()).unwrap();
        let f = vec![1, 1, 1];
        let fit = fitting_ideal(&r, &vec![vec![vec![f.clone()]]], &d).unwrap();
        assert_eq!(fit.hermite, vec![vec![f]]);
    }

    #[test]
    fn identity_presents_zero_module() {
        let r = ag(2, FiniteGroup::cyclic(2));
        let mut d = DecompositionData::abelian(r.fq(), &r.group);
        d.verify(&r.group, r.fq()).unwrap();
        let one = r.one();
        let z = r.zero();
        let p = vec![vec![one.clone(), z.clone()], vec![z, one]];
        assert_eq!(fitting_ideal(&r, &p, &d).unwrap(), CentralIdeal::unit(&r));
    }

    #[test]
    fn unit_scaling_and_products() {
        let r = ag(3, FiniteGroup::trivial());
        let i = CentralIdeal::generated_by(&r, &[vec![vec![0, 1]]]);
        let j = CentralIdeal::generated_by(&r, &[vec![vec![0, 2]]]);
        assert_eq!(ideal_ops(&r, IdealOp::Equality, &i, Some(&j), None), IdealAnswer::Bool(true));
        let k = CentralIdeal::generated_by(&r, &[vec![vec![1, 1]]]);
        let IdealAnswer::Ideal(p) = ideal_ops(&r, IdealOp::Product, &i, Some(&k), None) else { panic!() };
        assert_eq!(p.hermite, vec![vec![vec![0, 1, 1]]]);
        assert!(i.contains(&r, &[vec![]]));
    }

    #[test]
    fn zero_relations_are_not_finite() {
        let r = ag(2, FiniteGroup::trivial());
        let d = DecompositionData::abelian(r.fq(), &r.group);
        assert!(matches!(fitting_ideal(&r, &vec![vec![vec![]]], &d), Err(Error::NotFinitePresentation(_))));
    }
}
