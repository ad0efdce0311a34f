//! K = Frac(A[x]/(g)) with O_K given by an A-basis. All A-lattice matrices
//! use the column convention: column j holds the coordinates of the image of
//! basis vector j.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base_algebra::ring::{identity, mat_mul};
use crate::base_algebra::{enumerate_monic_irreducibles, FieldSpec, FqField, FqPoly, Mat, PolyA, PolyRing, Ring};
use crate::error::{Error, Result};
use crate::group_algebra::{det_commutative, FiniteGroup};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// "trivial", "cyclic" or "s3"; ignored when a Cayley table is given
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub cayley: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub field: FieldSpec,
    /// g[i] = coefficient of x^i, a polynomial in t as integers mod ℓ
    pub g: Vec<Vec<i64>>,
    /// basis[j][i] = coefficient of x^i in the j-th O_K basis vector (before
    /// dividing by `denominator`); defaults to 1, x, …, x^{n−1}
    #[serde(default)]
    pub basis: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub denominator: Option<Vec<i64>>,
    pub group: GroupSpec,
    /// action[h][j] = coordinates (in the O_K basis) of h(b_j)
    pub action: Vec<Vec<Vec<Vec<i64>>>>,
    #[serde(default = "yes")]
    pub maximal: bool,
    /// taming[j] = O_K-coordinates of the j-th taming-module basis vector
    #[serde(default)]
    pub taming_basis: Option<Vec<Vec<Vec<i64>>>>,
}

fn yes() -> bool {
    true
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        if let Some(t) = &self.cayley {
            return FiniteGroup::from_table("G", t.clone());
        }
        match (self.kind.as_deref(), self.order) {
            (Some("trivial"), _) | (None, Some(1)) => Ok(FiniteGroup::trivial()),
            (Some("cyclic"), Some(n)) if n >= 1 => Ok(FiniteGroup::cyclic(n)),
            (Some("s3"), _) => Ok(FiniteGroup::s3()),
            _ => Err(Error::Config("group: need a Cayley table or kind ∈ {trivial, cyclic+order, s3}".into())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GaloisCover {
    pub fq: FqField,
    pub a: PolyA,
    pub group: Arc<FiniteGroup>,
    pub g: Vec<FqPoly>,
    pub basis_num: Mat<FqPoly>,
    pub basis_den: FqPoly,
    /// mult[i][j] = coordinates of b_i·b_j
    pub mult: Vec<Vec<Vec<FqPoly>>>,
    pub one: Vec<FqPoly>,
    pub action: Vec<Mat<FqPoly>>,
    /// column j = coordinates of b_j^q
    pub frob: Mat<FqPoly>,
    pub maximal: bool,
    pub disc: FqPoly,
    pub taming_basis: Option<Mat<FqPoly>>,
}

/// Polynomials in x over A reduced modulo a monic g.
fn xmulmod(a: &PolyA, p: &[FqPoly], r: &[FqPoly], g: &[FqPoly]) -> Vec<FqPoly> {
    let ax = PolyRing::new(a.clone());
    let mut prod = ax.mul(&p.to_vec(), &r.to_vec());
    let n = g.len() - 1;
    while prod.len() > n {
        let d = prod.len() - 1;
        let c = prod[d].clone();
        for k in 0..=n {
            let s = a.mul(&c, &g[k]);
            prod[d - n + k] = a.sub(&prod[d - n + k], &s);
        }
        prod = ax.normalize(prod);
    }
    prod.resize(n, vec![]);
    prod
}

pub(crate) fn adjugate(a: &PolyA, m: &Mat<FqPoly>) -> Mat<FqPoly> {
    let n = m.len();
    if n == 1 {
        return vec![vec![a.one()]];
    }
    let mut adj = vec![vec![vec![]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Mat<FqPoly> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = det_commutative(a, &minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { a.neg(&d) };
        }
    }
    adj
}

impl GaloisCover {
    pub fn n(&self) -> usize {
        self.g.len() - 1
    }

    pub fn zero(&self) -> Vec<FqPoly> {
        vec![vec![]; self.n()]
    }

    pub fn basis_vec(&self, j: usize) -> Vec<FqPoly> {
        let mut v = self.zero();
        v[j] = self.a.one();
        v
    }

    pub fn add(&self, x: &[FqPoly], y: &[FqPoly]) -> Vec<FqPoly> {
        x.iter().zip(y).map(|(u, v)| self.a.add(u, v)).collect()
    }

    pub fn scale(&self, c: &FqPoly, x: &[FqPoly]) -> Vec<FqPoly> {
        x.iter().map(|u| self.a.mul(c, u)).collect()
    }

    /// Product in O_K.
    pub fn mul(&self, x: &[FqPoly], y: &[FqPoly]) -> Vec<FqPoly> {
        let mut out = self.zero();
        for (i, u) in x.iter().enumerate() {
            if u.is_empty() {
                continue;
            }
            for (j, v) in y.iter().enumerate() {
                if v.is_empty() {
                    continue;
                }
                let c = self.a.mul(u, v);
                for (k, s) in self.mult[i][j].iter().enumerate() {
                    if !s.is_empty() {
                        out[k] = self.a.add(&out[k], &self.a.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, m: &Mat<FqPoly>, x: &[FqPoly]) -> Vec<FqPoly> {
        m.iter()
            .map(|row| row.iter().zip(x).fold(vec![], |acc, (c, v)| self.a.add(&acc, &self.a.mul(c, v))))
            .collect()
    }

    pub fn act(&self, h: usize, x: &[FqPoly]) -> Vec<FqPoly> {
        self.apply(&self.action[h], x)
    }

    /// x ↦ x^q on O_K.
    pub fn tau(&self, x: &[FqPoly]) -> Vec<FqPoly> {
        let xq: Vec<FqPoly> = x.iter().map(|p| poly_frobenius(&self.a, p)).collect();
        self.apply(&self.frob, &xq)
    }

    /// Multiplication-by-x matrix over A.
    pub fn mult_matrix(&self, x: &[FqPoly]) -> Mat<FqPoly> {
        let n = self.n();
        let cols: Vec<Vec<FqPoly>> = (0..n).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace(&self, x: &[FqPoly]) -> FqPoly {
        let m = self.mult_matrix(x);
        (0..self.n()).fold(vec![], |acc, i| self.a.add(&acc, &m[i][i]))
    }

    /// Monic irreducible divisors of the discriminant of O_K.
    pub fn ramified_primes(&self) -> Vec<FqPoly> {
        prime_divisors(&self.a, &self.disc)
    }
}

/// p(t) ↦ p(t)^q = p(t^q) for coefficients in F_q.
pub fn poly_frobenius(a: &PolyA, p: &[u32]) -> FqPoly {
    if p.is_empty() {
        return vec![];
    }
    let q = a.fq().q as usize;
    let mut out = vec![0u32; (p.len() - 1) * q + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i * q] = a.fq().pow_u(c, a.fq().q as u64);
    }
    a.normalize(out)
}

pub fn prime_divisors(a: &PolyA, f: &[u32]) -> Vec<FqPoly> {
    let Some(d) = a.degree(f) else { return vec![] };
    if d == 0 {
        return vec![];
    }
    let mut rest = a.monic(f);
    let mut out = vec![];
    for p in enumerate_monic_irreducibles(a, d) {
        if a.degree(&rest) == Some(0) {
            break;
        }
        if a.divides(&p, &rest) {
            while a.divides(&p, &rest) {
                rest = a.div_exact(&rest, &p).unwrap();
            }
            out.push(p);
        }
    }
    out
}

/// Build and verify a cover from its configuration.
pub fn build_cover(spec: &CoverSpec) -> Result<GaloisCover> {
    let fq = FqField::from_spec(&spec.field)?;
    let a = PolyRing::new(fq.clone());
    let group = Arc::new(spec.group.build()?);
    let g: Vec<FqPoly> = spec.g.iter().map(|c| a.from_ints(c)).collect();
    let n = g.len().saturating_sub(1);
    if n == 0 || g[n] != a.one() {
        return Err(Error::Config("g: must be monic of positive degree in x".into()));
    }
    if n != group.order {
        return Err(Error::Config(format!("g has degree {n} but |G| = {}", group.order)));
    }
    let basis_num: Mat<FqPoly> = match &spec.basis {
        None => identity(&a, n),
        Some(b) => {
            if b.len() != n || b.iter().any(|r| r.len() > n) {
                return Err(Error::Config("basis: need n vectors of at most n coordinates".into()));
            }
            b.iter()
                .map(|r| {
                    let mut v: Vec<FqPoly> = r.iter().map(|c| a.from_ints(c)).collect();
                    v.resize(n, vec![]);
                    v
                })
                .collect()
        }
    };
    let basis_den = spec.denominator.as_ref().map(|d| a.from_ints(d)).unwrap_or_else(|| a.one());
    if basis_den.is_empty() {
        return Err(Error::Config("denominator: must be nonzero".into()));
    }
    // structure constants: b_i b_j = (B_i B_j mod g)/d², coordinates c with c·B = d·(that)
    let det_b = det_commutative(&a, &basis_num);
    if det_b.is_empty() {
        return Err(Error::Config("basis: vectors are linearly dependent".into()));
    }
    let adj = adjugate(&a, &basis_num);
    let denom = a.mul(&basis_den, &det_b);
    let coords_of = |v: &[FqPoly]| -> Option<Vec<FqPoly>> {
        // row vector v (x-coordinates, already scaled by d²/d = d) times adj / (d det B)
        (0..n)
            .map(|k| {
                let s = (0..n).fold(vec![], |acc, i| a.add(&acc, &a.mul(&v[i], &adj[i][k])));
                a.div_exact(&s, &denom)
            })
            .collect()
    };
    let mut mult = vec![vec![vec![]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = xmulmod(&a, &basis_num[i], &basis_num[j], &g);
            mult[i][j] = coords_of(&p).ok_or_else(|| {
                Error::Config(format!("basis: b_{i}·b_{j} is not in the A-span of the basis (not an order)"))
            })?;
        }
    }
    let mut one_x = vec![basis_den.clone()];
    one_x.resize(n, vec![]);
    // 1 = (1/d)·(d, 0, …): coordinates c with c·B = d
    let one = (0..n)
        .map(|k| {
            let s = (0..n).fold(vec![], |acc, i| a.add(&acc, &a.mul(&one_x[i], &adj[i][k])));
            a.div_exact(&a.mul(&s, &basis_den), &denom)
        })
        .collect::<Option<Vec<FqPoly>>>()
        .ok_or_else(|| Error::Config("basis: 1 is not in the order".into()))?;
    if spec.action.len() != group.order {
        return Err(Error::CayleyMismatch(format!("{} action matrices for |G| = {}", spec.action.len(), group.order)));
    }
    let action: Vec<Mat<FqPoly>> = spec
        .action
        .iter()
        .map(|imgs| {
            let mut m = vec![vec![vec![]; n]; n];
            for (j, img) in imgs.iter().enumerate().take(n) {
                for (k, c) in img.iter().enumerate().take(n) {
                    m[k][j] = a.from_ints(c);
                }
            }
            m
        })
        .collect();
    let mut cover = GaloisCover {
        fq: fq.clone(),
        a: a.clone(),
        group: group.clone(),
        g,
        basis_num,
        basis_den,
        mult,
        one,
        action,
        frob: vec![],
        maximal: spec.maximal,
        disc: vec![],
        taming_basis: None,
    };
    // automorphism checks
    for (h, m) in cover.action.iter().enumerate() {
        if cover.apply(m, &cover.one) != cover.one {
            return Err(Error::NotAutomorphism(format!("group element {h} does not fix 1")));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = cover.act(h, &cover.mul(&cover.basis_vec(i), &cover.basis_vec(j)));
                let rhs = cover.mul(&cover.act(h, &cover.basis_vec(i)), &cover.act(h, &cover.basis_vec(j)));
                if lhs != rhs {
                    return Err(Error::NotAutomorphism(format!("element {h} on pair (b_{i}, b_{j})")));
                }
            }
        }
    }
    if cover.action[0] != identity(&a, n) {
        return Err(Error::CayleyMismatch("identity element acts nontrivially".into()));
    }
    for x in 0..group.order {
        for y in 0..group.order {
            if mat_mul(&a, &cover.action[x], &cover.action[y]) != cover.action[group.mul(x, y)] {
                return Err(Error::CayleyMismatch(format!("action({x})·action({y}) ≠ action({x}·{y})")));
            }
        }
    }
    // Frobenius b_j ↦ b_j^q
    let q = fq.q as u64;
    let frob_cols: Vec<Vec<FqPoly>> = (0..n)
        .map(|j| {
            let b = cover.basis_vec(j);
            let mut acc = cover.one.clone();
            for _ in 0..q {
                acc = cover.mul(&acc, &b);
            }
            acc
        })
        .collect();
    cover.frob = (0..n).map(|i| (0..n).map(|j| frob_cols[j][i].clone()).collect()).collect();
    let trace_form: Mat<FqPoly> = (0..n)
        .map(|i| (0..n).map(|j| cover.trace(&cover.mul(&cover.basis_vec(i), &cover.basis_vec(j)))).collect())
        .collect();
    let disc = det_commutative(&a, &trace_form);
    if disc.is_empty() {
        return Err(Error::NotSeparable("trace form is degenerate: g is inseparable".into()));
    }
    cover.disc = a.monic(&disc);
    if let Some(tb) = &spec.taming_basis {
        let m: Mat<FqPoly> = (0..n)
            .map(|k| tb.iter().map(|col| col.get(k).map(|c| a.from_ints(c)).unwrap_or_default()).collect())
            .collect();
        if tb.len() != n {
            return Err(Error::Config(format!("taming_basis: need {n} vectors")));
        }
        cover.taming_basis = Some(m);
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(q: u32, c0: i64) -> CoverSpec {
        // g = x² + c0·t, G = C₂ acting by x ↦ −x
        CoverSpec {
            field: FieldSpec { ell: q, e: 1, modulus: None },
            g: vec![vec![0, c0], vec![], vec![1]],
            basis: None,
            denominator: None,
            group: GroupSpec { kind: Some("cyclic".into()), order: Some(2), cayley: None },
            action: vec![vec![vec![vec![1]], vec![vec![], vec![1]]], vec![vec![vec![1]], vec![vec![], vec![-1]]]],
            maximal: true,
            taming_basis: None,
        }
    }

    #[test]
    fn kummer_quadratic_over_f3() {
        let c = build_cover(&quad(3, -1)).unwrap();
        // x² = t
        let x = c.basis_vec(1);
        assert_eq!(c.mul(&x, &x), vec![vec![0, 1], vec![]]);
        // disc = 4t = t over F_3
        assert_eq!(c.disc, vec![0, 1]);
        assert_eq!(c.ramified_primes(), vec![vec![0, 1]]);
    }

    #[test]
    fn frobenius_of_x() {
        // x² = −t so x³ = −t·x
        let c = build_cover(&quad(3, 1)).unwrap();
        assert_eq!(c.tau(&c.basis_vec(1)), vec![vec![], vec![0, 2]]);
    }

    #[test]
    fn non_automorphism_rejected() {
        let mut s = quad(3, 1);
        s.action[1] = vec![vec![vec![1]], vec![vec![1], vec![1]]];
        assert!(matches!(build_cover(&s), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn inseparable_rejected() {
        // x² + t over F_2 is inseparable
        let mut s = quad(2, 1);
        s.action[1] = s.action[0].clone();
        assert!(matches!(build_cover(&s), Err(Error::NotSeparable(_))));
    }
}
