//! The ball D = {x : top(x) ≤ −m₀} in M coordinates on which exp is an
//! isometry onto itself, and exp on the finite pieces of K_∞ it cuts out.
//! V_fin = K_∞/(M + D) has basis t^{-k}·m_l, 1 ≤ k < m₀, index (k−1)·n + l.

use std::collections::HashMap;

use crate::base_algebra::{LaurentSeries, Mat};
use crate::drinfeld::{exp_eval, DrinfeldModule};
use crate::error::{Error, Result};
use crate::function_field::kinf::{self, KInf};
use crate::function_field::{GaloisCover, Lattice};
use crate::nuclear::Ambient;

pub const ISOMETRY_CAP: usize = 64;
/// exp terms e_i·τ^i are bounded for q^i up to this size
const TERM_BOUND: i128 = 1 << 40;

/// The cover re-expressed in M coordinates: Frobenius and G act on the
/// basis of M. Multiplication constants are left in O_K coordinates and
/// must not be used.
pub fn view_cover(cover: &GaloisCover, lat: &Lattice) -> Result<(GaloisCover, Ambient)> {
    let amb = Ambient::new(cover, lat)?;
    let mut v = cover.clone();
    v.frob = amb.frob.clone();
    v.action = lat.action.clone();
    Ok((v, amb))
}

/// Upper bounds on top(e_i) from e_i·(t^{q^i} − t) = Σ a_j·e_{i−j}^{q^j};
/// None where e_i is forced to vanish.
fn exp_top_bounds(e: &DrinfeldModule, q: i128, imax: usize) -> Vec<Option<i128>> {
    let mut b: Vec<Option<i128>> = vec![Some(0)];
    let mut qi = 1i128;
    for i in 1..=imax {
        qi *= q;
        let mut best: Option<i128> = None;
        let mut qj = 1i128;
        for j in 1..=i.min(e.rank()) {
            qj *= q;
            let Some(dj) = e.coeffs[j - 1].len().checked_sub(1) else { continue };
            if let Some(prev) = b[i - j] {
                let v = dj as i128 + qj * prev;
                best = Some(best.map_or(v, |x| x.max(v)));
            }
        }
        b.push(best.map(|x| x - qi));
    }
    b
}

/// Smallest m₀ with top(e_i) + κ_i < (q^i − 1)·m₀ for every checked i, κ_i a
/// bound on the degrees of τ^i(m_j) in M coordinates.
pub fn isometry_index(e: &DrinfeldModule, amb: &Ambient) -> Result<usize> {
    let q = e.fq().q as i128;
    let mut imax = 0;
    let mut qi = 1i128;
    while qi * q <= TERM_BOUND {
        qi *= q;
        imax += 1;
    }
    let b = exp_top_bounds(e, q, imax);
    let k1 = amb.frob.iter().flatten().filter_map(|p| p.len().checked_sub(1)).max().unwrap_or(0) as i128;
    let mut kappa = vec![0i128];
    for i in 1..=imax {
        kappa.push(q * kappa[i - 1] + k1);
    }
    'm: for m in 1..=ISOMETRY_CAP {
        let mut qi = 1i128;
        for i in 1..=imax {
            qi *= q;
            if let Some(bi) = b[i] {
                if bi + kappa[i] >= (qi - 1) * m as i128 {
                    continue 'm;
                }
            }
        }
        return Ok(m);
    }
    Err(Error::IsometryBallNotFound(format!("no ball index up to {ISOMETRY_CAP} makes exp an isometry")))
}

/// exp on K_∞ in M coordinates, with values of exp(t^k·m_j) cached to the
/// working floor.
#[derive(Clone, Debug)]
pub struct Ball {
    pub view: GaloisCover,
    pub amb: Ambient,
    pub e: DrinfeldModule,
    pub m0: usize,
    /// every exp value is known down to this exponent
    pub floor: i64,
    cache: HashMap<(i64, usize), KInf>,
}

impl Ball {
    /// Ball at the smallest certified index, or at `index` if given (which
    /// must not be smaller).
    pub fn new(cover: &GaloisCover, lat: &Lattice, e: &DrinfeldModule, index: Option<usize>, floor: i64) -> Result<Self> {
        let (view, amb) = view_cover(cover, lat)?;
        let min = isometry_index(e, &amb)?;
        let m0 = match index {
            Some(i) if i < min => {
                return Err(Error::IsometryBallNotFound(format!(
                    "exp is not certified isometric on the ball of index {i}; smallest certified index is {min}"
                )))
            }
            Some(i) => i,
            None => min,
        };
        let floor = floor.min(-(m0 as i64));
        Ok(Ball { view, amb, e: e.clone(), m0, floor, cache: HashMap::new() })
    }

    pub fn rank(&self) -> usize {
        self.amb.rank
    }

    pub fn fin_dim(&self) -> usize {
        self.rank() * (self.m0 - 1)
    }

    /// Input floor deep enough that exp values come out known to `self.floor`.
    fn input_floor(&self) -> i64 {
        2 * self.floor - 8
    }

    pub fn monomial(&self, k: i64, j: usize) -> KInf {
        let fl = self.input_floor();
        (0..self.rank()).map(|l| if l == j { LaurentSeries::monomial(1, k, fl) } else { LaurentSeries::zero(fl) }).collect()
    }

    /// exp(x) down to the working floor.
    pub fn exp(&self, x: &[LaurentSeries]) -> Result<KInf> {
        exp_eval(&self.e, &self.view, x, self.floor)
    }

    pub fn exp_monomial(&mut self, k: i64, j: usize) -> Result<KInf> {
        if let Some(v) = self.cache.get(&(k, j)) {
            return Ok(v.clone());
        }
        let v = self.exp(&self.monomial(k, j))?;
        self.cache.insert((k, j), v.clone());
        Ok(v)
    }

    /// Image in V_fin.
    pub fn fin_coords(&self, x: &[LaurentSeries]) -> Vec<u32> {
        let n = self.rank();
        let mut out = vec![0u32; self.fin_dim()];
        for k in 1..self.m0 {
            for (l, s) in x.iter().enumerate() {
                out[(k - 1) * n + l] = s.coeff(-(k as i64));
            }
        }
        out
    }

    /// Basis t^k·m_j of B_m/D, B_m = {top < m}, ordered by exponent
    /// descending then coordinate.
    pub fn ball_basis(&self, m: i64) -> Vec<(i64, usize)> {
        let low = -(self.m0 as i64 - 1);
        (low..m).rev().flat_map(|k| (0..self.rank()).map(move |j| (k, j))).collect()
    }

    /// Matrix of exp: B_m/D → V_fin (columns follow `ball_basis`).
    pub fn exp_matrix(&mut self, m: i64) -> Result<(Vec<(i64, usize)>, Mat<u32>)> {
        let cols = self.ball_basis(m);
        let mut mat = vec![vec![0u32; cols.len()]; self.fin_dim()];
        for (c, &(k, j)) in cols.iter().enumerate() {
            let v = self.exp_monomial(k, j)?;
            for (r, x) in self.fin_coords(&v).into_iter().enumerate() {
                mat[r][c] = x;
            }
        }
        Ok((cols, mat))
    }

    /// Σ c_i·t^{k_i}·m_{j_i} as an exact vector.
    pub fn combination(&self, cols: &[(i64, usize)], c: &[u32]) -> KInf {
        let f = &self.view.fq;
        let mut x = kinf::zero(self.rank(), self.input_floor());
        for (&(k, j), &a) in cols.iter().zip(c) {
            if a != 0 {
                x[j] = x[j].add(f, &LaurentSeries::monomial(a, k, self.input_floor()));
            }
        }
        x
    }

    /// exp of a combination, from the cached monomial values.
    pub fn exp_combination(&mut self, cols: &[(i64, usize)], c: &[u32]) -> Result<KInf> {
        let f = self.view.fq.clone();
        let mut acc = kinf::zero(self.rank(), self.floor);
        for (&(k, j), &a) in cols.iter().zip(c) {
            if a != 0 {
                let v = self.exp_monomial(k, j)?;
                acc = acc.iter().zip(&v).map(|(s, t)| s.add(&f, &t.scale(&f, a))).collect();
            }
        }
        Ok(acc)
    }

    /// The part of x with exponents ≤ −m₀.
    pub fn small_part(&self, x: &[LaurentSeries]) -> KInf {
        let cut = -(self.m0 as i64);
        x.iter()
            .map(|s| {
                let top = s.top().unwrap_or(s.floor - 1).min(cut);
                let coeffs = (s.floor..=top).map(|e| s.coeff(e)).collect();
                LaurentSeries::new(s.floor, coeffs)
            })
            .collect()
    }

    /// The unique d ∈ D with exp(d) = δ, for δ ∈ D. Each step of
    /// d ← δ − (exp(d) − d) gains at least one digit.
    pub fn log_small(&self, delta: &[LaurentSeries]) -> Result<KInf> {
        if kinf::top(delta).is_some_and(|t| t > -(self.m0 as i64)) {
            return Err(Error::HypothesisViolated("log requested outside the isometry ball".into()));
        }
        let c = &self.view;
        let delta = kinf::truncate(delta, self.floor)?;
        let mut d = delta.clone();
        for _ in 0..(self.m0 as i64 - self.floor + 4) {
            let ex = self.exp(&d)?;
            let next = kinf::sub(c, &delta, &kinf::sub(c, &ex, &d));
            if kinf::agrees(&next, &d, self.floor)? {
                return Ok(next);
            }
            d = next;
        }
        Err(Error::PrecisionExhausted("logarithm iteration did not settle".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_algebra::FqField;
    use crate::function_field::{build_cover, fixtures};

    fn trivial(q: u32) -> (GaloisCover, Lattice) {
        let c = build_cover(&fixtures::trivial(q)).unwrap();
        let l = Lattice::ring_of_integers(&c);
        (c, l)
    }

    #[test]
    fn carlitz_ball_is_the_unit_ball() {
        for q in [2, 3] {
            let (c, l) = trivial(q);
            let e = DrinfeldModule::carlitz(&c.fq);
            let b = Ball::new(&c, &l, &e, None, -8).unwrap();
            assert_eq!(b.m0, 1);
            assert_eq!(b.fin_dim(), 0);
        }
        let c = build_cover(&fixtures::carlitz_torsion_f3()).unwrap();
        let e = DrinfeldModule::carlitz(&c.fq);
        assert_eq!(Ball::new(&c, &Lattice::ring_of_integers(&c), &e, None, -8).unwrap().m0, 1);
    }

    #[test]
    fn large_coefficient_needs_larger_ball() {
        // t + t³τ: e_1 = t³/(t² − t) has top 1, so m₀ = 2
        let (c, l) = trivial(2);
        let f = FqField::prime(2).unwrap();
        let e = DrinfeldModule::new(&f, vec![vec![0, 0, 0, 1]]).unwrap();
        let b = Ball::new(&c, &l, &e, None, -8).unwrap();
        assert_eq!(b.m0, 2);
        assert!(matches!(Ball::new(&c, &l, &e, Some(1), -8), Err(Error::IsometryBallNotFound(_))));
        assert_eq!(Ball::new(&c, &l, &e, Some(3), -8).unwrap().m0, 3);
    }

    #[test]
    fn log_inverts_exp_on_the_ball() {
        let c = build_cover(&fixtures::carlitz_torsion_f3()).unwrap();
        let e = DrinfeldModule::carlitz(&c.fq);
        let b = Ball::new(&c, &Lattice::ring_of_integers(&c), &e, None, -12).unwrap();
        let d = vec![LaurentSeries::new(-12, vec![1, 0, 2, 0, 0, 0, 1, 0, 0, 0, 2]), LaurentSeries::new(-12, vec![2, 2, 0, 1])];
        let ed = b.exp(&d).unwrap();
        let back = b.log_small(&ed).unwrap();
        assert!(kinf::agrees(&back, &d, -12).unwrap());
    }
}
