//! Matrix-ring decompositions F_q[G] ≅ ⊕ M_{n_i}(R_i) and reduced
//! determinants. The decomposition is supplied (or taken from the bundled
//! catalog) and then checked; it is never searched for.

use serde::{Deserialize, Serialize};

use super::det::det_commutative;
use super::group::FiniteGroup;
use super::group_ring::AG;
use crate::base_algebra::linalg::{inverse, mat_vec_left, rank};
use crate::base_algebra::ring::{identity, mat_mul};
use crate::base_algebra::{FqField, FqPoly, Mat, PolyRing, Ring};
use crate::error::{Error, Result};

/// Commutative F_q-algebra on basis b_0..b_{d-1}: b_a·b_b = Σ_k consts[a][b][k] b_k.
#[derive(Clone, Debug)]
pub struct ScAlgebra {
    pub fq: FqField,
    pub dim: usize,
    pub consts: Vec<Vec<Vec<u32>>>,
    pub one: Vec<u32>,
}

impl ScAlgebra {
    pub fn field(fq: &FqField) -> Self {
        ScAlgebra { fq: fq.clone(), dim: 1, consts: vec![vec![vec![1]]], one: vec![1] }
    }

    /// F_q[H] for a finite abelian group H.
    pub fn group_algebra(fq: &FqField, h: &FiniteGroup) -> Self {
        let n = h.order;
        let consts = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![0; n];
                        v[h.mul(a, b)] = 1;
                        v
                    })
                    .collect()
            })
            .collect();
        let mut one = vec![0; n];
        one[0] = 1;
        ScAlgebra { fq: fq.clone(), dim: n, consts, one }
    }

    pub fn embed(&self, c: u32) -> Vec<u32> {
        self.one.iter().map(|&x| self.fq.mul_e(c, x)).collect()
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Unit, commutativity and associativity of the structure constants.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for a in 0..self.dim {
            let ba = self.basis(a);
            if self.mul(&self.one, &ba) != ba {
                return Err(format!("declared unit fails on basis element {a}"));
            }
            for b in 0..self.dim {
                let bb = self.basis(b);
                if self.mul(&ba, &bb) != self.mul(&bb, &ba) {
                    return Err(format!("not commutative at ({a},{b})"));
                }
                for c in 0..self.dim {
                    let bc = self.basis(c);
                    if self.mul(&self.mul(&ba, &bb), &bc) != self.mul(&ba, &self.mul(&bb, &bc)) {
                        return Err(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring for ScAlgebra {
    type Elem = Vec<u32>;
    fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }
    fn one(&self) -> Vec<u32> {
        self.one.clone()
    }
    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.fq.add_e(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.fq.neg_e(x)).collect()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let f = &self.fq;
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = f.mul_e(x, y);
                for (k, &s) in self.consts[i][j].iter().enumerate() {
                    if s != 0 {
                        out[k] = f.add_e(out[k], f.mul_e(c, s));
                    }
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn from_i64(&self, n: i64) -> Vec<u32> {
        self.embed(self.fq.from_int(n))
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub n: usize,
    pub ring: ScAlgebra,
    /// images[g] is an n×n matrix over the block ring (column convention:
    /// images[gh] = images[g]·images[h])
    pub images: Vec<Mat<Vec<u32>>>,
}

#[derive(Clone, Debug)]
pub struct DecompositionData {
    pub label: String,
    pub blocks: Vec<Block>,
    // inverse of the F_q-linear map F_q[G] → ⊕ M_{n_i}(R_i), filled by verify
    pullback: Option<Mat<u32>>,
}

/// Serialized form used by the catalog file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BlockSpec {
    pub n: usize,
    pub ring_dim: usize,
    pub structure_constants: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    pub images: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DecompositionSpec {
    pub label: String,
    pub group: String,
    pub ell: u32,
    pub blocks: Vec<BlockSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pairs_checked: usize,
    pub dimension: usize,
    pub block_dimensions: Vec<usize>,
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl DecompositionData {
    pub fn new(label: &str, blocks: Vec<Block>) -> Self {
        DecompositionData { label: label.into(), blocks, pullback: None }
    }

    /// One commutative block: F_q[G] itself.
    pub fn abelian(fq: &FqField, g: &FiniteGroup) -> Self {
        let ring = ScAlgebra::group_algebra(fq, g);
        let images = (0..g.order).map(|h| vec![vec![ring.basis(h)]]).collect();
        Self::new(&format!("{}/F{}", g.name, fq.q), vec![Block { n: 1, ring, images }])
    }

    /// F_2[S₃] ≅ F_2[C₂] ⊕ M₂(F₂): sign quotient and the 2-dimensional
    /// permutation representation on sum-zero vectors.
    pub fn s3_over_f2(fq: &FqField) -> Self {
        let perms = FiniteGroup::s3_perms();
        let c2 = FiniteGroup::cyclic(2);
        let r1 = ScAlgebra::group_algebra(fq, &c2);
        let sign = |p: &[usize; 3]| {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            inv % 2
        };
        let img1 = perms.iter().map(|p| vec![vec![r1.basis(sign(p))]]).collect();
        // basis b1 = e0 + e1, b2 = e1 + e2; a sum-zero v = (v0, v0+v2, v2) has coords (v0, v2)
        let r2 = ScAlgebra::field(fq);
        let img2 = perms
            .iter()
            .map(|p| {
                let act = |v: [u32; 3]| {
                    let mut w = [0u32; 3];
                    for i in 0..3 {
                        w[p[i]] = v[i];
                    }
                    w
                };
                let c1 = act([1, 1, 0]);
                let c2 = act([0, 1, 1]);
                vec![vec![vec![c1[0]], vec![c2[0]]], vec![vec![c1[2]], vec![c2[2]]]]
            })
            .collect();
        Self::new(
            "S3/F2",
            vec![Block { n: 1, ring: r1, images: img1 }, Block { n: 2, ring: r2, images: img2 }],
        )
    }

    pub fn to_spec(&self, group: &str) -> DecompositionSpec {
        DecompositionSpec {
            label: self.label.clone(),
            group: group.into(),
            ell: self.blocks[0].ring.fq.ell,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockSpec {
                    n: b.n,
                    ring_dim: b.ring.dim,
                    structure_constants: b.ring.consts.clone(),
                    unit: b.ring.one.clone(),
                    images: b.images.clone(),
                })
                .collect(),
        }
    }

    pub fn from_spec(fq: &FqField, s: &DecompositionSpec) -> Result<Self> {
        let blocks = s
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let bad = |m: &str| Error::Config(format!("decomposition.blocks[{i}].{m}"));
                if b.structure_constants.len() != b.ring_dim || b.unit.len() != b.ring_dim {
                    return Err(bad("structure_constants: dimension mismatch"));
                }
                if b.images.iter().any(|m| m.len() != b.n || m.iter().any(|r| r.len() != b.n)) {
                    return Err(bad("images: wrong matrix size"));
                }
                Ok(Block {
                    n: b.n,
                    ring: ScAlgebra { fq: fq.clone(), dim: b.ring_dim, consts: b.structure_constants.clone(), one: b.unit.clone() },
                    images: b.images.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&s.label, blocks))
    }

    /// F_q-coordinates of the image of an F_q[G]-element, blocks concatenated.
    pub fn flat_image(&self, x: &[u32]) -> Vec<u32> {
        let mut out = vec![];
        for b in &self.blocks {
            let img = self.block_image(b, x);
            for row in img {
                for e in row {
                    out.extend(e);
                }
            }
        }
        out
    }

    pub fn block_image(&self, b: &Block, x: &[u32]) -> Mat<Vec<u32>> {
        let r = &b.ring;
        let mut m = vec![vec![r.zero(); b.n]; b.n];
        for (g, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = r.embed(c);
            for i in 0..b.n {
                for j in 0..b.n {
                    m[i][j] = r.add(&m[i][j], &r.mul(&s, &b.images[g][i][j]));
                }
            }
        }
        m
    }

    pub fn total_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.n * b.n * b.ring.dim).sum()
    }

    /// Check hypothesis, unitality, multiplicativity on all pairs and
    /// bijectivity. On success the pullback map is cached.
    pub fn verify(&mut self, g: &FiniteGroup, fq: &FqField) -> Result<VerifyReport> {
        if g.commutator_order % fq.ell as usize == 0 {
            return Err(Error::HypothesisViolated(format!(
                "characteristic {} divides the commutator subgroup order {}",
                fq.ell, g.commutator_order
            )));
        }
        let mut violations = vec![];
        let mut pairs = 0;
        for (bi, b) in self.blocks.iter().enumerate() {
            if let Err(e) = b.ring.check_axioms() {
                violations.push(format!("block {bi}: {e}"));
                continue;
            }
            if b.images.len() != g.order {
                violations.push(format!("block {bi}: {} images for a group of order {}", b.images.len(), g.order));
                continue;
            }
            if b.images[0] != identity(&b.ring, b.n) {
                violations.push(format!("block {bi}: identity does not map to the unit matrix"));
            }
        }
        if !violations.is_empty() {
            return Err(Error::NotIsomorphism(violations.join("; ")));
        }
        for x in 0..g.order {
            for y in 0..g.order {
                pairs += 1;
                for (bi, b) in self.blocks.iter().enumerate() {
                    let prod = mat_mul(&b.ring, &b.images[x], &b.images[y]);
                    if prod != b.images[g.mul(x, y)] {
                        violations.push(format!("block {bi}: ρ({x})ρ({y}) ≠ ρ({x}·{y})"));
                    }
                }
            }
        }
        let dim = self.total_dimension();
        if dim != g.order {
            violations.push(format!("dimension count {dim} ≠ |G| = {}", g.order));
        }
        let phi: Mat<u32> = (0..g.order)
            .map(|h| {
                let mut e = vec![0; g.order];
                e[h] = 1;
                self.flat_image(&e)
            })
            .collect();
        if violations.is_empty() {
            let rk = rank(fq, &phi);
            if rk < g.order {
                violations.push(format!("kernel has dimension {}", g.order - rk));
            }
        }
        if let Some(w) = violations.first() {
            return Err(Error::NotIsomorphism(w.clone()));
        }
        self.pullback = inverse(fq, &phi);
        Ok(VerifyReport {
            pairs_checked: pairs,
            dimension: dim,
            block_dimensions: self.blocks.iter().map(|b| b.n * b.n * b.ring.dim).collect(),
            violations,
        })
    }

    pub fn is_verified(&self) -> bool {
        self.pullback.is_some()
    }

    fn pullback_mat(&self) -> Result<&Mat<u32>> {
        self.pullback
            .as_ref()
            .ok_or_else(|| Error::DecompositionInvalid(format!("decomposition {} has not been verified", self.label)))
    }

    /// The F_q[G]-element whose block images are the scalar matrices r_i·I.
    pub fn pull_back_scalars(&self, fq: &FqField, r: &[Vec<u32>]) -> Result<Vec<u32>> {
        let pb = self.pullback_mat()?;
        let mut flat = vec![];
        for (b, ri) in self.blocks.iter().zip(r) {
            for i in 0..b.n {
                for j in 0..b.n {
                    if i == j {
                        flat.extend(ri.iter().copied());
                    } else {
                        flat.extend(std::iter::repeat_n(0, b.ring.dim));
                    }
                }
            }
        }
        Ok(mat_vec_left(fq, &flat, pb))
    }

    /// Block i of an A[G]-matrix: an (n·n_i)-square matrix over R_i[t].
    pub fn block_matrix(&self, ag: &AG, bi: usize, t: &Mat<Vec<FqPoly>>) -> Mat<Vec<Vec<u32>>> {
        let b = &self.blocks[bi];
        let rt = PolyRing::new(b.ring.clone());
        let rows = t.len();
        let cols = if rows == 0 { 0 } else { t[0].len() };
        let mut out = vec![vec![rt.zero(); cols * b.n]; rows * b.n];
        for r in 0..rows {
            for c in 0..cols {
                let x = &t[r][c];
                let deg = ag.t_degree(x);
                let Some(d) = deg else { continue };
                for k in 0..=d {
                    let coeff = ag.t_coeff(x, k);
                    let img = self.block_image(b, &coeff);
                    for i in 0..b.n {
                        for j in 0..b.n {
                            let m = rt.monomial(img[i][j].clone(), k);
                            let cell = &mut out[r * b.n + i][c * b.n + j];
                            *cell = rt.add(cell, &m);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block values (det over R_i[t]) of the reduced determinant.
    pub fn nrd_blocks(&self, ag: &AG, t: &Mat<Vec<FqPoly>>) -> Vec<Vec<Vec<u32>>> {
        (0..self.blocks.len())
            .map(|bi| {
                let rt = PolyRing::new(self.blocks[bi].ring.clone());
                det_commutative(&rt, &self.block_matrix(ag, bi, t))
            })
            .collect()
    }

    /// Pull back per-block polynomials over R_i to a central element of A[G].
    pub fn pull_back_poly(&self, ag: &AG, vals: &[Vec<Vec<u32>>]) -> Result<Vec<FqPoly>> {
        let deg = vals.iter().map(|v| v.len()).max().unwrap_or(0);
        let mut cs = vec![];
        for k in 0..deg {
            let r: Vec<Vec<u32>> = vals
                .iter()
                .zip(&self.blocks)
                .map(|(v, b)| v.get(k).cloned().unwrap_or_else(|| vec![0; b.ring.dim]))
                .collect();
            cs.push(self.pull_back_scalars(ag.fq(), &r)?);
        }
        Ok(ag.from_t_coeffs(&cs))
    }

    /// Reduced determinant of a square matrix over A[G], as a central element.
    pub fn nrd(&self, ag: &AG, t: &Mat<Vec<FqPoly>>) -> Result<Vec<FqPoly>> {
        if t.iter().any(|r| r.len() != t.len()) {
            return Err(Error::DecompositionInvalid("reduced determinant of a non-square matrix".into()));
        }
        let vals = self.nrd_blocks(ag, t);
        self.pull_back_poly(ag, &vals)
    }
}

/// Catalog entry for (group, field), if one is bundled.
pub fn catalog_lookup(fq: &FqField, g: &FiniteGroup) -> Option<DecompositionData> {
    if g.abelian {
        return Some(DecompositionData::abelian(fq, g));
    }
    if g.name == "S3" && fq.q == 2 {
        return Some(DecompositionData::s3_over_f2(fq));
    }
    None
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group_algebra::GroupRing;

    #[test]
    fn s3_decomposition_verifies() {
        let f = FqField::prime(2).unwrap();
        let g = FiniteGroup::s3();
        let mut d = DecompositionData::s3_over_f2(&f);
        let rep = d.verify(&g, &f).unwrap();
        assert_eq!(rep.pairs_checked, 36);
        assert_eq!(rep.block_dimensions, vec![2, 4]);
    }

    #[test]
    fn s3_rejected_in_characteristic_three() {
        let f = FqField::prime(3).unwrap();
        let g = FiniteGroup::s3();
        let mut d = DecompositionData::abelian(&f, &FiniteGroup::cyclic(6));
        assert!(matches!(d.verify(&g, &f), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn wrong_images_give_witness() {
        let f = FqField::prime(2).unwrap();
        let g = FiniteGroup::s3();
        let mut d = DecompositionData::s3_over_f2(&f);
        d.blocks[1].images[4] = d.blocks[1].images[1].clone();
        assert!(matches!(d.verify(&g, &f), Err(Error::NotIsomorphism(_))));
    }

    #[test]
    fn nrd_of_three_cycle() {
        let f = FqField::prime(2).unwrap();
        let g = Arc::new(FiniteGroup::s3());
        let mut d = DecompositionData::s3_over_f2(&f);
        d.verify(&g, &f).unwrap();
        let ag = GroupRing::new(PolyRing::new(f.clone()), g.clone());
        let t = vec![vec![ag.embed_fqg(&GroupRing::new(f.clone(), g.clone()).basis(4))]];
        let blocks = d.nrd_blocks(&ag, &t);
        // the 3-cycle lies in the commutator subgroup and has determinant 1 in GL₂(F₂)
        assert_eq!(blocks, vec![vec![vec![1, 0]], vec![vec![1]]]);
        assert_eq!(d.nrd(&ag, &t).unwrap(), ag.one());
    }
}
