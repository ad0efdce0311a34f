//! Truncated power series R[Z]/Z^N and classes in (F_q[G][Z]/Z^N)^×, kept
//! block by block through a decomposition of F_q[G].

use serde::Serialize;

use crate::base_algebra::ring::identity;
use crate::base_algebra::{FqField, Mat, Ring};
use crate::error::{Error, Result};
use crate::group_algebra::decomposition::{catalog_lookup, DecompositionData};
use crate::group_algebra::{det_commutative, FiniteGroup};
use crate::lseries::AlgSeries;

/// R[Z]/Z^N; elements always have length N.
#[derive(Clone, Debug)]
pub struct TruncRing<R: Ring> {
    pub base: R,
    pub n: usize,
}

impl<R: Ring> TruncRing<R> {
    pub fn new(base: R, n: usize) -> Self {
        TruncRing { base, n }
    }

    /// c·Z^k
    pub fn monomial(&self, c: R::Elem, k: usize) -> Vec<R::Elem> {
        let mut v = self.zero();
        if k < self.n {
            v[k] = c;
        }
        v
    }
}

impl<R: Ring> Ring for TruncRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.monomial(self.base.one(), 0)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.n - i) {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
}

/// Element of F_q[G][Z]/Z^N given by its images in the blocks R_i[Z]/Z^N
/// (the determinant of each block of a matrix; for abelian G one block,
/// F_q[G] itself).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncGroupSeries {
    pub n: usize,
    /// blocks[b][k]: coefficient of Z^k in R_b
    pub blocks: Vec<Vec<Vec<u32>>>,
}

impl TruncGroupSeries {
    pub fn one(dec: &DecompositionData, n: usize) -> Self {
        TruncGroupSeries { n, blocks: dec.blocks.iter().map(|b| TruncRing::new(b.ring.clone(), n).one()).collect() }
    }

    pub fn mul(&self, dec: &DecompositionData, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "precision mismatch");
        let blocks = dec
            .blocks
            .iter()
            .zip(self.blocks.iter().zip(&o.blocks))
            .map(|(b, (x, y))| TruncRing::new(b.ring.clone(), self.n).mul(x, y))
            .collect();
        TruncGroupSeries { n: self.n, blocks }
    }

    pub fn is_one(&self, dec: &DecompositionData) -> bool {
        *self == Self::one(dec, self.n)
    }

    /// Z ↦ t^{-1}, block by block; known down to t^{-(N−1)}.
    pub fn evaluate(&self, dec: &DecompositionData) -> Vec<AlgSeries> {
        let floor = -(self.n as i64 - 1);
        dec.blocks
            .iter()
            .zip(&self.blocks)
            .map(|(b, v)| AlgSeries::new(&b.ring, floor, v.iter().rev().cloned().collect()))
            .collect()
    }

    /// The F_q[G]-coefficients of Z^0 … Z^{N−1}, pulled back from the blocks.
    pub fn group_coeffs(&self, fq: &FqField, dec: &DecompositionData) -> Result<Vec<Vec<u32>>> {
        (0..self.n)
            .map(|k| {
                let r: Vec<Vec<u32>> = self.blocks.iter().map(|v| v[k].clone()).collect();
                dec.pull_back_scalars(fq, &r)
            })
            .collect()
    }
}

/// Verified decomposition for G over F_q, from the bundled catalog.
pub fn decomposition_for(fq: &FqField, g: &FiniteGroup) -> Result<DecompositionData> {
    let mut dec = catalog_lookup(fq, g).ok_or_else(|| {
        Error::HypothesisViolated(format!("no decomposition of F_{}[{}] in the catalog", fq.q, g.name))
    })?;
    let rep = dec.verify(g, fq)?;
    if !rep.ok() {
        return Err(Error::DecompositionInvalid(rep.violations.join("; ")));
    }
    Ok(dec)
}

/// det(I + Σ Z^s·X_s) for square matrices X_s over F_q[G] of size r.
pub fn class_of_terms(dec: &DecompositionData, r: usize, terms: &[(usize, Mat<Vec<u32>>)], n: usize) -> TruncGroupSeries {
    let blocks = dec
        .blocks
        .iter()
        .map(|b| {
            let tr = TruncRing::new(b.ring.clone(), n);
            let mut m = identity(&tr, r * b.n);
            for (s, x) in terms {
                if *s >= n {
                    continue;
                }
                for (j, row) in x.iter().enumerate() {
                    for (k, e) in row.iter().enumerate() {
                        if e.iter().all(|&c| c == 0) {
                            continue;
                        }
                        let img = dec.block_image(b, e);
                        for (u, irow) in img.iter().enumerate() {
                            for (v, c) in irow.iter().enumerate() {
                                let cell = &mut m[j * b.n + u][k * b.n + v];
                                *cell = tr.add(cell, &tr.monomial(c.clone(), *s));
                            }
                        }
                    }
                }
            }
            det_commutative(&tr, &m)
        })
        .collect();
    TruncGroupSeries { n, blocks }
}
