//! U = exp⁻¹(E(M)) as an A-lattice in K_∞ (M coordinates).
//!
//! Modulo D every x with exp(x) ∈ M + D is u + d with u ∈ U, and U ∩ D = 0,
//! so the kernel K_m of exp: B_m/D → V_fin is U ∩ B_m. Its echelon basis
//! (exponent descending) exposes a reduced basis of U; once n directions
//! are found below m the count dim K_m = Σ(m − d_i) proves they span U.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ball::Ball;
use crate::base_algebra::linalg::{rank, right_kernel, rref, solve_left};
use crate::base_algebra::{FqPoly, LaurentSeries, Mat, Ring};
use crate::drinfeld::exp::apply_twisted_kinf;
use crate::drinfeld::exp_eval;
use crate::error::{Error, Result};
use crate::function_field::kinf::{self, KInf};
use crate::group_algebra::det_commutative;

/// Largest ball B_m tried before giving up on the rank.
pub const UNIT_BALL_BUDGET: i64 = 24;

#[derive(Clone, Debug, Serialize)]
pub struct UnitLattice {
    pub rank: usize,
    pub ball_index: usize,
    /// m with U ∩ B_m certified equal to the span of `basis`
    pub certified_at: i64,
    pub floor: i64,
    /// reduced A-basis: leading vectors independent
    pub basis: Vec<KInf>,
    pub tops: Vec<i64>,
    pub leads: Vec<Vec<u32>>,
    /// dim K_m for m = 1, 2, …
    pub kernel_dims: Vec<usize>,
    /// column j: U-coordinates of h·u_j
    pub g_action: Vec<Mat<FqPoly>>,
    /// A[G]-generators in U-coordinates
    pub free_generators: Option<Vec<Vec<FqPoly>>>,
}

fn lead_vector(x: &[LaurentSeries], e: i64) -> Vec<u32> {
    x.iter().map(|s| if s.floor <= e { s.coeff(e) } else { 0 }).collect()
}

impl UnitLattice {
    /// A-coordinates of v in the reduced basis; None if v ∉ U within
    /// precision.
    pub fn decompose(&self, ball: &Ball, v: &[LaurentSeries]) -> Option<Vec<FqPoly>> {
        let c = &ball.view;
        let f = &c.fq;
        let a = &c.a;
        let low = -(self.ball_index as i64);
        let mut v = v.to_vec();
        let mut coords = vec![a.zero(); self.rank];
        while let Some(e) = kinf::top(&v).filter(|&e| e > low) {
            let usable: Vec<usize> = (0..self.rank).filter(|&i| self.tops[i] <= e).collect();
            let rows: Mat<u32> = usable.iter().map(|&i| self.leads[i].clone()).collect();
            let sol = solve_left(f, &rows, &lead_vector(&v, e))?;
            for (&i, &s) in usable.iter().zip(&sol) {
                if s == 0 {
                    continue;
                }
                let sh = (e - self.tops[i]) as usize;
                coords[i] = a.add(&coords[i], &a.monomial(s, sh));
                let term: KInf = self.basis[i].iter().map(|x| x.shift(sh as i64).scale(f, s)).collect();
                v = kinf::sub(c, &v, &term);
            }
        }
        // what is left lies in U ∩ D = 0
        kinf::top(&v).is_none().then_some(coords)
    }

    /// Σ_j a_j·u_j.
    pub fn vector(&self, ball: &Ball, a: &[FqPoly]) -> KInf {
        let c = &ball.view;
        let mut acc = kinf::zero(self.rank, self.floor);
        for (p, u) in a.iter().zip(&self.basis) {
            if !p.is_empty() {
                acc = kinf::add(c, &acc, &kinf::scale_poly(c, p, u));
            }
        }
        acc
    }

    pub fn generator_vectors(&self, ball: &Ball) -> Option<Vec<KInf>> {
        self.free_generators.as_ref().map(|g| g.iter().map(|a| self.vector(ball, a)).collect())
    }

    /// Re-verifies each basis vector: exp(u) ∈ M down to the floor, and
    /// exp(t·u) = φ(t)(exp u) two digits above it.
    pub fn recheck(&self, ball: &Ball) -> Result<UnitCheck> {
        let c = &ball.view;
        let floor = ball.floor + 2;
        let mut integral = vec![];
        let mut t_stable = vec![];
        for u in &self.basis {
            let ex = ball.exp(u)?;
            integral.push(ex.iter().all(|s| (s.floor..0).all(|e| s.coeff(e) == 0)));
            let tu = kinf::scale_poly(c, &[0, 1], u);
            let lhs = exp_eval(&ball.e, c, &tu, floor)?;
            let rhs = apply_twisted_kinf(c, &ball.e.phi_t(), &ex);
            t_stable.push(kinf::agrees(&lhs, &rhs, floor)?);
        }
        Ok(UnitCheck { rank_ok: self.basis.len() == c.g.len() - 1, integral, t_stable, floor })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCheck {
    /// A-rank equals [K : k]
    pub rank_ok: bool,
    pub integral: Vec<bool>,
    pub t_stable: Vec<bool>,
    pub floor: i64,
}

impl UnitCheck {
    pub fn ok(&self) -> bool {
        self.rank_ok && self.integral.iter().chain(&self.t_stable).all(|&b| b)
    }
}

/// Reduced A-basis of U; exact units u = x − log(δ) with x the ball
/// representative and δ the part of exp(x) inside D.
pub fn unit_lattice(ball: &mut Ball, seed: u64) -> Result<UnitLattice> {
    let n = ball.rank();
    let f = ball.view.fq.clone();
    let mut kernel_dims = vec![];
    for m in 1..=UNIT_BALL_BUDGET {
        let (cols, eps) = ball.exp_matrix(m)?;
        let ker = right_kernel(&f, &eps, cols.len());
        kernel_dims.push(ker.len());
        let (red, piv) = rref(&f, &ker);
        let mut rows: Vec<(i64, Vec<u32>, Vec<u32>)> = red
            .into_iter()
            .zip(&piv)
            .map(|(row, &p)| {
                let top = cols[p].0;
                let mut lead = vec![0u32; n];
                for (c, &(k, j)) in cols.iter().enumerate() {
                    if k == top {
                        lead[j] = row[c];
                    }
                }
                (top, lead, row)
            })
            .collect();
        rows.sort_by_key(|r| r.0);
        let mut chosen: Vec<(i64, Vec<u32>, Vec<u32>)> = vec![];
        for r in rows {
            let mut leads: Mat<u32> = chosen.iter().map(|c| c.1.clone()).collect();
            leads.push(r.1.clone());
            if rank(&f, &leads) == leads.len() {
                chosen.push(r);
            }
        }
        if chosen.len() < n || chosen.iter().any(|c| c.0 >= m) {
            continue;
        }
        let expected: i64 = chosen.iter().map(|c| m - c.0).sum();
        if expected != ker.len() as i64 {
            return Err(Error::RankNotReached(format!(
                "kernel of dimension {} at ball {m} but the chosen units span {expected}",
                ker.len()
            )));
        }
        let mut basis = vec![];
        for (_, _, row) in &chosen {
            let x = ball.combination(&cols, row);
            let ex = ball.exp_combination(&cols, row)?;
            if ball.fin_coords(&ex).iter().any(|&c| c != 0) {
                return Err(Error::HypothesisViolated("kernel vector leaves V_fin nonzero".into()));
            }
            let d = ball.log_small(&ball.small_part(&ex))?;
            basis.push(kinf::truncate(&kinf::sub(&ball.view, &x, &d), ball.floor)?);
        }
        let mut u = UnitLattice {
            rank: n,
            ball_index: ball.m0,
            certified_at: m,
            floor: ball.floor,
            tops: chosen.iter().map(|c| c.0).collect(),
            leads: chosen.iter().map(|c| c.1.clone()).collect(),
            basis,
            kernel_dims,
            g_action: vec![],
            free_generators: None,
        };
        u.g_action = group_action(&u, ball)?;
        u.free_generators = free_generators(&u, ball, seed);
        return Ok(u);
    }
    Err(Error::RankNotReached(format!("fewer than {n} independent units in balls up to index {UNIT_BALL_BUDGET}")))
}

fn group_action(u: &UnitLattice, ball: &Ball) -> Result<Vec<Mat<FqPoly>>> {
    let n = u.rank;
    let mut out = vec![];
    for h in 0..ball.view.group.order {
        let mut m = vec![vec![vec![]; n]; n];
        for j in 0..n {
            let img = kinf::act(&ball.view, h, &u.basis[j]);
            let c = u
                .decompose(ball, &img)
                .ok_or_else(|| Error::HypothesisViolated(format!("group element {h} does not preserve U within precision")))?;
            for (k, x) in c.into_iter().enumerate() {
                m[k][j] = x;
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Orbit {h·w_i} in U-coordinates, columns ordered (i, h).
pub fn orbit_matrix(u: &UnitLattice, ball: &Ball, gens: &[Vec<FqPoly>]) -> Mat<FqPoly> {
    let a = &ball.view.a;
    let n = u.rank;
    let mut cols = vec![];
    for w in gens {
        for g in &u.g_action {
            cols.push((0..n).map(|k| (0..n).fold(a.zero(), |acc, j| a.add(&acc, &a.mul(&g[k][j], &w[j])))).collect::<Vec<_>>());
        }
    }
    (0..n).map(|k| cols.iter().map(|c| c[k].clone()).collect()).collect()
}

fn is_generating(u: &UnitLattice, ball: &Ball, gens: &[Vec<FqPoly>]) -> bool {
    let a = &ball.view.a;
    let d = det_commutative(a, &orbit_matrix(u, ball, gens));
    a.degree(&d) == Some(0)
}

/// A[G]-generators of U: exhaustive over coordinates of degree ≤ 1 for one
/// generator, seeded random trials otherwise.
fn free_generators(u: &UnitLattice, ball: &Ball, seed: u64) -> Option<Vec<Vec<FqPoly>>> {
    let a = &ball.view.a;
    let g = ball.view.group.order;
    let n = u.rank;
    if g == 1 {
        return Some((0..n).map(|i| (0..n).map(|j| if i == j { a.one() } else { a.zero() }).collect()).collect());
    }
    if n % g != 0 {
        return None;
    }
    let r = n / g;
    let q = ball.view.fq.q as usize;
    let poly = |x: usize| -> FqPoly { a.normalize(vec![(x % q) as u32, (x / q) as u32]) };
    if r == 1 && (q * q).checked_pow(n as u32).is_some_and(|c| c <= 1 << 16) {
        for code in 1..(q * q).pow(n as u32) {
            let mut c = code;
            let w: Vec<FqPoly> = (0..n)
                .map(|_| {
                    let p = poly(c % (q * q));
                    c /= q * q;
                    p
                })
                .collect();
            if is_generating(u, ball, &[w.clone()]) {
                return Some(vec![w]);
            }
        }
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 * g {
        let gens: Vec<Vec<FqPoly>> = (0..r).map(|_| (0..n).map(|_| poly(rng.gen_range(0..q * q))).collect()).collect();
        if is_generating(u, ball, &gens) {
            return Some(gens);
        }
    }
    None
}
