//! V/U_i with V = K_∞/M and U_i = t^{-i}·W, W the unit ball in M
//! coordinates. Basis t^{-k}·m_l for 1 ≤ k < i, index (k−1)·n + l.

use serde::Serialize;

use crate::base_algebra::ring::identity;
use crate::base_algebra::{FqPoly, Mat, PolyA, Ring};
use crate::error::{Error, Result};
use crate::function_field::cover::poly_frobenius;
use crate::function_field::{FiniteAGModule, GaloisCover, Lattice};
use crate::group_algebra::freeness::{ct_free_basis, DEFAULT_SEED};
use crate::drinfeld::TwistedPoly;

/// M-coordinates of τ^s(m_j), s = 0 … smax (column j).
pub fn tau_powers(a: &PolyA, frob: &Mat<FqPoly>, smax: usize) -> Vec<Mat<FqPoly>> {
    let n = frob.len();
    let mut out = vec![identity(a, n)];
    for s in 1..=smax {
        let prev = &out[s - 1];
        let mut next = vec![vec![vec![]; n]; n];
        for j in 0..n {
            for l in 0..n {
                let c = poly_frobenius(a, &prev[l][j]);
                if c.is_empty() {
                    continue;
                }
                for k in 0..n {
                    next[k][j] = a.add(&next[k][j], &a.mul(&c, &frob[k][l]));
                }
            }
        }
        out.push(next);
    }
    out
}

fn max_degree(m: &Mat<FqPoly>) -> Option<i64> {
    m.iter().flatten().filter_map(|p| p.len().checked_sub(1)).map(|d| d as i64).max()
}

/// Frobenius of M and the data needed to act on K_∞/M by A{τ}.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub a: PolyA,
    pub rank: usize,
    pub frob: Mat<FqPoly>,
    /// constant G-action matrices in M coordinates
    pub g_action: Vec<Mat<u32>>,
}

impl Ambient {
    pub fn new(cover: &GaloisCover, lat: &Lattice) -> Result<Self> {
        let frob = lat
            .frob
            .clone()
            .ok_or_else(|| Error::HypothesisViolated("M is not stable under τ".into()))?;
        let mut g_action = vec![];
        for (h, m) in lat.action.iter().enumerate() {
            if max_degree(m).unwrap_or(0) > 0 {
                return Err(Error::HypothesisViolated(format!(
                    "group element {h} does not preserve the unit ball in M coordinates"
                )));
            }
            g_action.push(m.iter().map(|r| r.iter().map(|p| p.first().copied().unwrap_or(0)).collect()).collect());
        }
        Ok(Ambient { a: cover.a.clone(), rank: cover.n(), frob, g_action })
    }

    fn q(&self) -> i64 {
        self.a.fq().q as i64
    }

    /// Does φ map U_src into U_dst? Checked on the degree bound
    /// deg c_s + deg τ^s(m) − q^s·k, which is largest at k = src.
    pub fn maps_ball_into(&self, phi: &TwistedPoly<FqPoly>, src: usize, dst: usize) -> bool {
        let pows = tau_powers(&self.a, &self.frob, phi.coeffs.len().saturating_sub(1));
        phi.coeffs.iter().enumerate().all(|(s, c)| {
            let (Some(dc), Some(kap)) = (c.len().checked_sub(1), max_degree(&pows[s])) else {
                return true;
            };
            let qs = self.q().checked_pow(s as u32).unwrap_or(i64::MAX);
            dc as i64 + kap - qs.saturating_mul(src as i64) <= -(dst as i64)
        })
    }

    /// Matrix (columns = images) of φ: V/U_src → V/U_dst. Only meaningful
    /// when φ(U_src) ⊆ U_dst.
    pub fn operator(&self, phi: &TwistedPoly<FqPoly>, src: usize, dst: usize) -> Mat<u32> {
        let a = &self.a;
        let f = a.fq();
        let n = self.rank;
        let rows = n * dst.saturating_sub(1);
        let cols = n * src.saturating_sub(1);
        let mut out = vec![vec![0u32; cols]; rows];
        let pows = tau_powers(a, &self.frob, phi.coeffs.len().saturating_sub(1));
        let low = -(dst as i64 - 1);
        for k in 1..src {
            for j in 0..n {
                let col = (k - 1) * n + j;
                for (s, c) in phi.coeffs.iter().enumerate() {
                    if c.is_empty() {
                        continue;
                    }
                    let Some(shift) = self.q().checked_pow(s as u32).and_then(|qs| qs.checked_mul(-(k as i64))) else {
                        continue;
                    };
                    for l in 0..n {
                        let prod = a.mul(c, &pows[s][l][j]);
                        if prod.len() as i64 - 1 + shift < low {
                            continue;
                        }
                        for (d, &x) in prod.iter().enumerate() {
                            let e = d as i64 + shift;
                            if x != 0 && (low..=-1).contains(&e) {
                                let row = (-e - 1) as usize * n + l;
                                out[row][col] = f.add_e(out[row][col], x);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactQuotient {
    pub i: usize,
    pub rank: usize,
    /// t_action is the t^{-1}-scaling; G and Frobenius as on K_∞
    pub module: FiniteAGModule,
    pub free_basis: Vec<Vec<u32>>,
    #[serde(skip)]
    pub ambient: Option<Ambient>,
}

impl CompactQuotient {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn ambient(&self) -> &Ambient {
        self.ambient.as_ref().expect("quotient without ambient data")
    }

    pub fn operator(&self, phi: &TwistedPoly<FqPoly>) -> Mat<u32> {
        self.ambient().operator(phi, self.i, self.i)
    }
}

/// V/U_i for the ball index i; every φ_j must map U_i into U_{i+1}.
pub fn compact_quotient(
    cover: &GaloisCover,
    lat: &Lattice,
    i: usize,
    phis: &[TwistedPoly<FqPoly>],
) -> Result<CompactQuotient> {
    let amb = Ambient::new(cover, lat)?;
    if i == 0 {
        return Err(Error::Config("ball index must be at least 1".into()));
    }
    for (j, phi) in phis.iter().enumerate() {
        if phi.coeffs.first().is_some_and(|c| !c.is_empty()) {
            return Err(Error::Config(format!("φ_{} has a nonzero constant τ-term", j + 1)));
        }
        if !amb.maps_ball_into(phi, i, i + 1) {
            return Err(Error::NucleusTooSmall(format!("φ_{} does not map U_{i} into U_{}", j + 1, i + 1)));
        }
    }
    quotient_module(cover, amb, i)
}

/// V/U_i without a nucleus check.
pub fn quotient_module(cover: &GaloisCover, amb: Ambient, i: usize) -> Result<CompactQuotient> {
    let fq = &cover.fq;
    let n = amb.rank;
    let d = n * i.saturating_sub(1);
    let mut shift = vec![vec![0u32; d]; d];
    for k in 1..i.saturating_sub(1) {
        for l in 0..n {
            shift[k * n + l][(k - 1) * n + l] = 1;
        }
    }
    let g_action = amb
        .g_action
        .iter()
        .map(|g| {
            let mut m = vec![vec![0u32; d]; d];
            for k in 0..i.saturating_sub(1) {
                for r in 0..n {
                    for c in 0..n {
                        m[k * n + r][k * n + c] = g[r][c];
                    }
                }
            }
            m
        })
        .collect();
    let frob = amb.operator(&TwistedPoly::tau(&amb.a), i, i);
    let mut module = FiniteAGModule::new(fq, cover.group.clone(), shift, g_action, Some(frob));
    module.labels = (0..d).map(|x| format!("t^-{}·m{}", x / n + 1, x % n)).collect();
    let free_basis = ct_free_basis(&module, DEFAULT_SEED)?;
    module.free_basis = Some(free_basis.clone());
    Ok(CompactQuotient { i, rank: n, module, free_basis, ambient: Some(amb) })
}

/// Smallest i ≥ 2 at which every φ_j maps U_i into U_{i+1}.
pub fn min_ball(cover: &GaloisCover, lat: &Lattice, phis: &[TwistedPoly<FqPoly>]) -> Result<usize> {
    let amb = Ambient::new(cover, lat)?;
    (2..4096)
        .find(|&i| phis.iter().all(|p| amb.maps_ball_into(p, i, i + 1)))
        .ok_or_else(|| Error::NucleusTooSmall("no admissible ball index below 4096".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::{build_cover, fixtures};

    #[test]
    fn trivial_cover_dimensions() {
        let c = build_cover(&fixtures::trivial(2)).unwrap();
        let lat = Lattice::ring_of_integers(&c);
        let q = compact_quotient(&c, &lat, 2, &[]).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.module.labels, vec!["t^-1·m0"]);
        // τ(t^-1) = t^-2 lies in U_2
        assert_eq!(q.module.frobenius, Some(vec![vec![0]]));
        let q5 = compact_quotient(&c, &lat, 5, &[]).unwrap();
        assert_eq!(q5.dim() - compact_quotient(&c, &lat, 4, &[]).unwrap().dim(), 1);
    }

    #[test]
    fn quadratic_cover_dimension() {
        let c = build_cover(&fixtures::carlitz_torsion_f3()).unwrap();
        let lat = Lattice::ring_of_integers(&c);
        let q = compact_quotient(&c, &lat, 3, &[]).unwrap();
        assert_eq!(q.dim(), 2 * 2);
        assert_eq!(q.free_basis.len(), 2);
    }

    #[test]
    fn nucleus_too_small() {
        let c = build_cover(&fixtures::trivial(2)).unwrap();
        let lat = Lattice::ring_of_integers(&c);
        // t²·τ: −2i + 2 ≤ −(i + 1) needs i ≥ 3
        let phi = TwistedPoly::new(&c.a, vec![vec![], vec![0, 0, 1]]);
        assert!(matches!(compact_quotient(&c, &lat, 2, &[phi.clone()]), Err(Error::NucleusTooSmall(_))));
        assert!(compact_quotient(&c, &lat, 3, &[phi.clone()]).is_ok());
        assert_eq!(min_ball(&c, &lat, &[phi]).unwrap(), 3);
    }
}
