use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use crate::base_algebra::{FqField, FqPoly, LaurentRing, PolyA, PolyRing, Ring};

/// Which coefficient ring a group-ring element lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseTag {
    Fq,
    A,
    Laurent,
}

/// B[G]; an element is the total coefficient map g ↦ x_g stored densely.
#[derive(Clone, Debug)]
pub struct GroupRing<R: Ring> {
    pub base: R,
    pub group: Arc<FiniteGroup>,
}

pub type FqG = GroupRing<FqField>;
pub type AG = GroupRing<PolyA>;
pub type LaurentG = GroupRing<LaurentRing>;

impl<R: Ring> GroupRing<R> {
    pub fn new(base: R, group: Arc<FiniteGroup>) -> Self {
        GroupRing { base, group }
    }

    pub fn n(&self) -> usize {
        self.group.order
    }

    pub fn basis(&self, g: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n()];
        v[g] = self.base.one();
        v
    }

    pub fn scalar(&self, c: R::Elem) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n()];
        v[0] = c;
        v
    }

    pub fn scale(&self, c: &R::Elem, x: &[R::Elem]) -> Vec<R::Elem> {
        x.iter().map(|y| self.base.mul(c, y)).collect()
    }

    /// Σ x_g g ↦ Σ x_g g⁻¹, an anti-automorphism.
    pub fn involution(&self, x: &[R::Elem]) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n()];
        for (g, c) in x.iter().enumerate() {
            v[self.group.inverse[g]] = c.clone();
        }
        v
    }

    pub fn is_central(&self, x: &[R::Elem]) -> bool {
        (0..self.n()).all(|g| {
            let b = self.basis(g);
            let x = x.to_vec();
            self.mul(&b, &x) == self.mul(&x, &b)
        })
    }

    /// Σ_{h} h, the norm element of a subgroup given by its elements.
    pub fn subgroup_sum(&self, elems: &[usize]) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n()];
        for &h in elems {
            v[h] = self.base.add(&v[h], &self.base.one());
        }
        v
    }

    /// Class sums form a basis of the centre.
    pub fn class_sums(&self) -> Vec<Vec<R::Elem>> {
        self.group.conjugacy_classes().iter().map(|c| self.subgroup_sum(c)).collect()
    }
}

impl<R: Ring> Ring for GroupRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n()]
    }
    fn one(&self) -> Self::Elem {
        self.basis(0)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut v = self.zero();
        for (g, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (h, y) in b.iter().enumerate() {
                if self.base.is_zero(y) {
                    continue;
                }
                let k = self.group.table[g][h];
                v[k] = self.base.add(&v[k], &self.base.mul(x, y));
            }
        }
        v
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.scalar(self.base.from_i64(n))
    }
}

impl GroupRing<PolyA> {
    pub fn fq(&self) -> &FqField {
        &self.base.base
    }

    pub fn fqg(&self) -> FqG {
        GroupRing::new(self.fq().clone(), self.group.clone())
    }

    /// Largest t-degree among the coefficients.
    pub fn t_degree(&self, x: &[FqPoly]) -> Option<usize> {
        x.iter().filter_map(|p| self.base.degree(p)).max()
    }

    /// Coefficient of t^k as an element of F_q[G].
    pub fn t_coeff(&self, x: &[FqPoly], k: usize) -> Vec<u32> {
        x.iter().map(|p| p.get(k).copied().unwrap_or(0)).collect()
    }

    /// Rebuild from F_q[G]-coefficients of t^0, t^1, ...
    pub fn from_t_coeffs(&self, cs: &[Vec<u32>]) -> Vec<FqPoly> {
        (0..self.n())
            .map(|g| self.base.normalize(cs.iter().map(|c| c[g]).collect()))
            .collect()
    }

    pub fn embed_fqg(&self, x: &[u32]) -> Vec<FqPoly> {
        x.iter().map(|&c| self.base.constant(c)).collect()
    }

    pub fn embed_a(&self, p: &FqPoly) -> Vec<FqPoly> {
        self.scalar(p.clone())
    }

    /// View as a polynomial in t with F_q[G] coefficients.
    pub fn to_poly_over_fqg(&self, x: &[FqPoly]) -> Vec<Vec<u32>> {
        match self.t_degree(x) {
            None => vec![],
            Some(d) => (0..=d).map(|k| self.t_coeff(x, k)).collect(),
        }
    }

    pub fn poly_over_fqg(&self) -> PolyRing<FqG> {
        PolyRing::new(self.fqg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sums_are_central() {
        let r = GroupRing::new(FqField::prime(2).unwrap(), Arc::new(FiniteGroup::s3()));
        for z in r.class_sums() {
            assert!(r.is_central(&z));
        }
        assert!(!r.is_central(&r.basis(1)));
    }
}
