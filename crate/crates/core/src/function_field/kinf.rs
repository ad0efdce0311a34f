//! K_∞ = O_K ⊗_A F_∞ in the coordinates of the O_K basis. Valuations and
//! precision are coordinatewise.

use super::cover::GaloisCover;
use crate::base_algebra::{FqPoly, LaurentSeries, Mat};
use crate::error::Result;

pub type KInf = Vec<LaurentSeries>;

pub fn from_poly_vec(v: &[FqPoly], floor: i64) -> KInf {
    v.iter().map(|p| LaurentSeries::from_poly(p, floor)).collect()
}

pub fn zero(n: usize, floor: i64) -> KInf {
    vec![LaurentSeries::zero(floor); n]
}

pub fn add(cover: &GaloisCover, x: &[LaurentSeries], y: &[LaurentSeries]) -> KInf {
    x.iter().zip(y).map(|(a, b)| a.add(&cover.fq, b)).collect()
}

pub fn sub(cover: &GaloisCover, x: &[LaurentSeries], y: &[LaurentSeries]) -> KInf {
    x.iter().zip(y).map(|(a, b)| a.sub(&cover.fq, b)).collect()
}

pub fn scale_poly(cover: &GaloisCover, p: &[u32], x: &[LaurentSeries]) -> KInf {
    x.iter().map(|a| a.mul_poly(&cover.fq, p)).collect()
}

pub fn scale_series(cover: &GaloisCover, c: &LaurentSeries, x: &[LaurentSeries]) -> KInf {
    x.iter().map(|a| a.mul(&cover.fq, c)).collect()
}

/// m·x for an A-matrix m in the column convention.
pub fn apply(cover: &GaloisCover, m: &Mat<FqPoly>, x: &[LaurentSeries]) -> KInf {
    m.iter()
        .map(|row| {
            let mut terms = row.iter().zip(x).map(|(c, v)| v.mul_poly(&cover.fq, c));
            let first = terms.next().expect("empty row");
            terms.fold(first, |acc, s| acc.add(&cover.fq, &s))
        })
        .collect()
}

pub fn act(cover: &GaloisCover, h: usize, x: &[LaurentSeries]) -> KInf {
    apply(cover, &cover.action[h], x)
}

/// x ↦ x^q.
pub fn tau(cover: &GaloisCover, x: &[LaurentSeries]) -> KInf {
    let xq: KInf = x.iter().map(|a| a.frobenius(&cover.fq)).collect();
    apply(cover, &cover.frob, &xq)
}

/// Product in K_∞ through the structure constants of O_K.
pub fn mul(cover: &GaloisCover, x: &[LaurentSeries], y: &[LaurentSeries]) -> KInf {
    let n = cover.n();
    let f = &cover.fq;
    let mut out: Vec<Option<LaurentSeries>> = vec![None; n];
    for i in 0..n {
        for j in 0..n {
            let c = x[i].mul(f, &y[j]);
            for (k, s) in cover.mult[i][j].iter().enumerate() {
                let term = c.mul_poly(f, s);
                out[k] = Some(match out[k].take() {
                    None => term,
                    Some(acc) => acc.add(f, &term),
                });
            }
        }
    }
    out.into_iter().map(|s| s.unwrap()).collect()
}

/// Largest exponent present in any coordinate.
pub fn top(x: &[LaurentSeries]) -> Option<i64> {
    x.iter().filter_map(|s| s.top()).max()
}

/// Exponent from which every coordinate is known.
pub fn floor(x: &[LaurentSeries]) -> i64 {
    x.iter().map(|s| s.floor).max().unwrap_or(i64::MIN)
}

pub fn truncate(x: &[LaurentSeries], fl: i64) -> Result<KInf> {
    x.iter().map(|s| s.truncate(fl)).collect()
}

pub fn agrees(x: &[LaurentSeries], y: &[LaurentSeries], fl: i64) -> Result<bool> {
    for (a, b) in x.iter().zip(y) {
        if !a.agrees_with(b, Some(fl))? {
            return Ok(false);
        }
    }
    Ok(true)
}
