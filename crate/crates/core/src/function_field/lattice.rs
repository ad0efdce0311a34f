//! A-lattices M ⊆ O_K, their reductions M/pM, tameness and taming modules.

use serde::Serialize;

use super::cover::{adjugate, poly_frobenius, prime_divisors, GaloisCover};
use super::module::FiniteAGModule;
use crate::base_algebra::ring::identity;
use crate::base_algebra::{enumerate_monic_irreducibles, FqPoly, Mat, Ring};
use crate::error::{Error, Result};
use crate::group_algebra::freeness::{ct_free_basis, NotFreeCertificate, DEFAULT_SEED};
use crate::group_algebra::det_commutative;

/// G-stable A-lattice of full rank inside O_K. Column j of `basis` is m_j in
/// O_K coordinates; `action[h]` and `frob` are in M coordinates.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub basis: Mat<FqPoly>,
    pub index: FqPoly,
    pub action: Vec<Mat<FqPoly>>,
    /// column j = m_j^q, when M is closed under q-th powers
    pub frob: Option<Mat<FqPoly>>,
    adj: Mat<FqPoly>,
    det: FqPoly,
}

impl Lattice {
    pub fn ring_of_integers(cover: &GaloisCover) -> Self {
        let n = cover.n();
        let one = identity(&cover.a, n);
        Lattice {
            basis: one.clone(),
            index: cover.a.one(),
            action: cover.action.clone(),
            frob: Some(cover.frob.clone()),
            adj: one,
            det: cover.a.one(),
        }
    }

    /// Lattice spanned by the columns of `basis`; fails unless it has full
    /// rank and is G-stable.
    pub fn new(cover: &GaloisCover, basis: Mat<FqPoly>) -> Result<Self> {
        let a = &cover.a;
        let det = det_commutative(a, &basis);
        if det.is_empty() {
            return Err(Error::InvalidTamingBasis("vectors are linearly dependent: O_K/M is infinite".into()));
        }
        let adj = adjugate(a, &basis);
        let mut lat = Lattice { index: a.monic(&det), basis, action: vec![], frob: None, adj, det };
        let n = cover.n();
        for h in 0..cover.group.order {
            let mut m = vec![vec![vec![]; n]; n];
            for j in 0..n {
                let img = cover.act(h, &lat.column(j));
                let c = lat
                    .coords(cover, &img)
                    .ok_or_else(|| Error::InvalidTamingBasis(format!("not stable under group element {h}")))?;
                for k in 0..n {
                    m[k][j] = c[k].clone();
                }
            }
            lat.action.push(m);
        }
        let cols: Option<Vec<Vec<FqPoly>>> = (0..n).map(|j| lat.coords(cover, &cover.tau(&lat.column(j)))).collect();
        lat.frob = cols.map(|c| (0..n).map(|k| (0..n).map(|j| c[j][k].clone()).collect()).collect());
        Ok(lat)
    }

    pub fn column(&self, j: usize) -> Vec<FqPoly> {
        self.basis.iter().map(|r| r[j].clone()).collect()
    }

    /// M-coordinates of an O_K vector, None if it is not in M.
    pub fn coords(&self, cover: &GaloisCover, v: &[FqPoly]) -> Option<Vec<FqPoly>> {
        let a = &cover.a;
        let num = cover.apply(&self.adj, v);
        num.iter().map(|x| a.div_exact(x, &self.det)).collect()
    }

    pub fn is_frobenius_stable(&self) -> bool {
        self.frob.is_some()
    }
}

/// Reduction of a lattice at a prime. `tame` records whether the reduction is
/// F_q[G]-free; for M = O_K this is tameness of p.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeData {
    pub p: FqPoly,
    pub residue: FiniteAGModule,
    pub tame: bool,
    pub certificate: Option<NotFreeCertificate>,
}

fn residue_coords(cover: &GaloisCover, p: &[u32], c: &[FqPoly]) -> Vec<u32> {
    let d = p.len() - 1;
    let mut out = vec![0u32; c.len() * d];
    for (j, x) in c.iter().enumerate() {
        let r = cover.a.rem(x, p);
        for (i, &v) in r.iter().enumerate() {
            out[j * d + i] = v;
        }
    }
    out
}

/// M/pM on the F_q-basis t^i·m_j (index j·deg p + i), with t, G and, when M
/// is closed under q-th powers, the Frobenius.
pub fn residue_module(cover: &GaloisCover, p: &[u32], lattice: &Lattice) -> PrimeData {
    let a = &cover.a;
    let fq = &cover.fq;
    let n = cover.n();
    let d = p.len() - 1;
    let dim = n * d;
    let mono = |i: usize, j: usize| -> Vec<FqPoly> {
        let mut v = vec![vec![]; n];
        v[j] = a.monomial(1, i);
        v
    };
    let build = |f: &dyn Fn(usize, usize) -> Vec<FqPoly>| -> Mat<u32> {
        let mut m = vec![vec![0u32; dim]; dim];
        for j in 0..n {
            for i in 0..d {
                let col = residue_coords(cover, p, &f(i, j));
                for (k, &v) in col.iter().enumerate() {
                    m[k][j * d + i] = v;
                }
            }
        }
        m
    };
    let t_action = build(&|i, j| mono(i + 1, j));
    let g_action: Vec<Mat<u32>> = lattice
        .action
        .iter()
        .map(|s| build(&|i, j| {
            let col: Vec<FqPoly> = s.iter().map(|r| r[j].clone()).collect();
            cover.scale(&a.monomial(1, i), &col)
        }))
        .collect();
    let frobenius = lattice.frob.as_ref().map(|fr| {
        build(&|i, j| {
            let col: Vec<FqPoly> = fr.iter().map(|r| r[j].clone()).collect();
            cover.scale(&poly_frobenius(a, &a.monomial(1, i)), &col)
        })
    });
    let mut residue = FiniteAGModule::new(fq, cover.group.clone(), t_action, g_action, frobenius);
    residue.labels = (0..n).flat_map(|j| (0..d).map(move |i| format!("t^{i}·m{j}"))).collect();
    let (tame, certificate) = match ct_free_basis(&residue, DEFAULT_SEED) {
        Ok(b) => {
            residue.free_basis = Some(b);
            (true, None)
        }
        Err(Error::NotFree(c)) => (false, Some(*c)),
        Err(e) => unreachable!("freeness search: {e}"),
    };
    PrimeData { p: p.to_vec(), residue, tame, certificate }
}

#[derive(Clone, Debug, Serialize)]
pub struct TameVerdict {
    pub tame: bool,
    pub witness: Option<NotFreeCertificate>,
}

/// p is tame iff O_K/pO_K is F_q[G]-free.
pub fn tame_test(cover: &GaloisCover, p: &[u32]) -> TameVerdict {
    let pd = residue_module(cover, p, &Lattice::ring_of_integers(cover));
    TameVerdict { tame: pd.tame, witness: pd.certificate }
}

#[derive(Clone, Debug)]
pub struct TamingModule {
    pub lattice: Lattice,
    pub wild_primes: Vec<FqPoly>,
    /// primes at which M/pM was checked free, with the basis found
    pub witnesses: Vec<(FqPoly, Vec<Vec<u32>>)>,
    pub is_ring_of_integers: bool,
}

impl TamingModule {
    pub fn residue(&self, cover: &GaloisCover, p: &[u32]) -> PrimeData {
        residue_module(cover, p, &self.lattice)
    }
}

/// Default bound on deg p for the freeness sweep in `taming_module`.
pub const DEFAULT_DEGREE_BOUND: usize = 2;

/// O_K when every ramified prime is tame; otherwise validates the supplied
/// basis (columns in O_K coordinates).
pub fn taming_module(cover: &GaloisCover, user_basis: Option<&Mat<FqPoly>>, degree_bound: usize) -> Result<TamingModule> {
    let a = &cover.a;
    let wild: Vec<FqPoly> = cover.ramified_primes().into_iter().filter(|p| !tame_test(cover, p).tame).collect();
    let basis = user_basis.or(cover.taming_basis.as_ref());
    if wild.is_empty() {
        if let Some(b) = basis {
            let det = det_commutative(a, b);
            if a.degree(&det) != Some(0) {
                return Err(Error::InvalidTamingBasis("cover is tame, so the only taming module is O_K".into()));
            }
        }
        return Ok(TamingModule {
            lattice: Lattice::ring_of_integers(cover),
            wild_primes: vec![],
            witnesses: vec![],
            is_ring_of_integers: true,
        });
    }
    let Some(basis) = basis else {
        let names: Vec<String> = wild.iter().map(|p| a.display(p)).collect();
        return Err(Error::WildWithoutBasis(format!("wild primes {}", names.join(", "))));
    };
    let lattice = Lattice::new(cover, basis.clone())?;
    for p in prime_divisors(a, &lattice.index) {
        if !wild.contains(&p) {
            return Err(Error::InvalidTamingBasis(format!("O_K/M is supported at the tame prime {}", a.display(&p))));
        }
    }
    let mut primes = wild.clone();
    for d in 1..=degree_bound {
        for p in enumerate_monic_irreducibles(a, d).into_iter().filter(|p| p.len() == d + 1) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    let mut witnesses = vec![];
    for p in primes {
        let pd = residue_module(cover, &p, &lattice);
        match pd.residue.free_basis {
            Some(b) if pd.tame => witnesses.push((p, b)),
            _ => {
                return Err(Error::InvalidTamingBasis(format!(
                    "M/pM is not F_q[G]-free at p = {}: {}",
                    a.display(&p),
                    pd.certificate.map(|c| c.to_string()).unwrap_or_default()
                )))
            }
        }
    }
    Ok(TamingModule { lattice, wild_primes: wild, witnesses, is_ring_of_integers: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_algebra::linalg::rank;
    use crate::base_algebra::ring::mat_sub;
    use crate::function_field::build_cover;
    use crate::function_field::fixtures;

    #[test]
    fn trivial_cover_residue_fields() {
        let c = build_cover(&fixtures::trivial(2)).unwrap();
        let ok = Lattice::ring_of_integers(&c);
        assert_eq!(residue_module(&c, &[0, 1], &ok).residue.t_action, vec![vec![0]]);
        // t² + t + 1: companion matrix
        let pd = residue_module(&c, &[1, 1, 1], &ok);
        assert_eq!(pd.residue.t_action, vec![vec![0, 1], vec![1, 1]]);
        assert!(pd.tame);
    }

    #[test]
    fn quadratic_unramified_prime_is_free() {
        let c = build_cover(&fixtures::kummer_quadratic_f3()).unwrap();
        let pd = residue_module(&c, &[1, 0, 1], &Lattice::ring_of_integers(&c));
        assert_eq!(pd.residue.dim(), 4);
        assert_eq!(pd.residue.free_basis.as_ref().unwrap().len(), 2);
        pd.residue.validate().unwrap();
    }

    #[test]
    fn tame_ramified_prime() {
        let c = build_cover(&fixtures::kummer_quadratic_f3()).unwrap();
        assert!(tame_test(&c, &[0, 1]).tame);
        let m = taming_module(&c, None, 2).unwrap();
        assert!(m.is_ring_of_integers);
    }

    #[test]
    fn wild_prime_certificate() {
        let c = build_cover(&fixtures::wild_f2()).unwrap();
        assert_eq!(c.disc, vec![0, 0, 1]);
        let v = tame_test(&c, &[0, 1]);
        assert!(!v.tame);
        let w = v.witness.unwrap();
        assert_eq!(w.subgroup, Some(vec![0, 1]));
        // trivial action on F_2[y]/(y²): Ĥ^0 = Ĥ^{-1} = F_2²
        assert_eq!((w.h0_dim, w.h_minus1_dim), (2, 2));
    }

    #[test]
    fn wild_taming_basis_validates() {
        let c = build_cover(&fixtures::wild_f2()).unwrap();
        let m = taming_module(&c, None, 2).unwrap();
        assert_eq!(m.wild_primes, vec![vec![0, 1]]);
        assert_eq!(m.lattice.index, vec![0, 1]);
        assert!(m.lattice.is_frobenius_stable());
        for (p, _) in &m.witnesses {
            let pd = m.residue(&c, p);
            pd.residue.validate().unwrap();
            assert_eq!(pd.residue.dim(), 2 * (p.len() - 1));
        }
        let mut w = c.clone();
        w.taming_basis = None;
        assert!(matches!(taming_module(&w, None, 2), Err(Error::WildWithoutBasis(_))));
    }

    #[test]
    fn bad_taming_bases_rejected() {
        let c = build_cover(&fixtures::wild_f2()).unwrap();
        // {1, t·y}: G-stable with index t, but G acts trivially on M/tM
        let b1 = vec![vec![vec![1], vec![]], vec![vec![], vec![0, 1]]];
        assert!(matches!(taming_module(&c, Some(&b1), 2), Err(Error::InvalidTamingBasis(_))));
        // {t+1, y}: supported at the unramified prime t+1
        let b2 = vec![vec![vec![1, 1], vec![]], vec![vec![], vec![1]]];
        assert!(matches!(taming_module(&c, Some(&b2), 2), Err(Error::InvalidTamingBasis(_))));
    }

    #[test]
    fn frobenius_fixed_points_count_factors() {
        // unramified deg-1 primes: dim ker(τ − 1) = number of roots of g mod p
        let c = build_cover(&fixtures::carlitz_torsion_f3()).unwrap();
        let f = &c.fq;
        for p0 in 1..3u32 {
            let p = vec![f.neg_e(p0), 1];
            let pd = residue_module(&c, &p, &Lattice::ring_of_integers(&c));
            let fr = pd.residue.frobenius.unwrap();
            let fixed = 2 - rank(f, &mat_sub(f, &fr, &identity(f, 2)));
            // g(x) = x² + t at t = p0
            let roots = (0..3u32).filter(|&x| f.add_e(f.mul_e(x, x), p0) == 0).count();
            assert_eq!(fixed, roots.max(1));
        }
    }
}
