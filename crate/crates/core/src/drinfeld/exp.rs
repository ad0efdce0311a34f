//! The exponential exp_E = Σ e_i τ^i with rational coefficients, and its
//! evaluation on K_∞ with a certified floor.

use serde::Serialize;

use super::module::DrinfeldModule;
use super::twisted::TwistedPoly;
use crate::base_algebra::{rational_to_series, FqPoly, LaurentSeries, PolyA, Ring};
use crate::error::{Error, Result};
use crate::function_field::cover::poly_frobenius;
use crate::function_field::kinf::{self, KInf};
use crate::function_field::GaloisCover;

pub const EXP_DEPTH_CAP: usize = 64;
/// Largest q^i for which e_i is computed.
pub const EXP_DEGREE_BUDGET: i64 = 1 << 12;

/// num/den in lowest terms with den monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatFn {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl RatFn {
    pub fn new(a: &PolyA, num: FqPoly, den: FqPoly) -> Self {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFn { num, den: vec![1] };
        }
        let g = a.gcd(&num, &den);
        let (num, den) = (a.div_exact(&num, &g).unwrap(), a.div_exact(&den, &g).unwrap());
        let l = a.fq().inv_e(a.lead(&den)).unwrap();
        RatFn { num: a.scale(&l, &num), den: a.scale(&l, &den) }
    }

    pub fn poly(p: FqPoly) -> Self {
        RatFn { num: p, den: vec![1] }
    }

    pub fn add(&self, a: &PolyA, o: &Self) -> Self {
        let num = a.add(&a.mul(&self.num, &o.den), &a.mul(&o.num, &self.den));
        Self::new(a, num, a.mul(&self.den, &o.den))
    }

    pub fn mul_poly(&self, a: &PolyA, p: &[u32]) -> Self {
        Self::new(a, a.mul(&self.num, &p.to_vec()), self.den.clone())
    }

    pub fn div_poly(&self, a: &PolyA, p: &[u32]) -> Self {
        Self::new(a, self.num.clone(), a.mul(&self.den, &p.to_vec()))
    }

    pub fn frobenius(&self, a: &PolyA) -> Self {
        RatFn { num: poly_frobenius(a, &self.num), den: poly_frobenius(a, &self.den) }
    }

    /// Degree at ∞: deg num − deg den.
    pub fn top(&self) -> Option<i64> {
        (!self.num.is_empty()).then(|| self.num.len() as i64 - self.den.len() as i64)
    }

    pub fn to_series(&self, a: &PolyA, floor: i64) -> Result<LaurentSeries> {
        rational_to_series(a.fq(), &self.num, &self.den, floor)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpSeries {
    pub coeffs: Vec<RatFn>,
}

impl ExpSeries {
    pub fn new() -> Self {
        ExpSeries { coeffs: vec![RatFn::poly(vec![1])] }
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Extend through e_n by e_i·(t^{q^i} − t) = Σ_{j ≤ min(i,r)} a_j·e_{i−j}^{q^j}.
    pub fn extend(&mut self, e: &DrinfeldModule, n: usize) {
        let a = &e.a;
        let q = e.fq().q as usize;
        while self.coeffs.len() <= n {
            let i = self.coeffs.len();
            let mut s = RatFn::poly(vec![]);
            for j in 1..=i.min(e.rank()) {
                let mut x = self.coeffs[i - j].clone();
                for _ in 0..j {
                    x = x.frobenius(a);
                }
                s = s.add(a, &x.mul_poly(a, &e.coeffs[j - 1]));
            }
            let qi = q.pow(i as u32);
            let d = a.sub(&a.monomial(1, qi), &a.t());
            self.coeffs.push(s.div_poly(a, &d));
        }
    }

    /// Recheck the defining recursion on every stored coefficient.
    pub fn check_recursion(&self, e: &DrinfeldModule) -> bool {
        let a = &e.a;
        let q = e.fq().q as usize;
        self.coeffs[0] == RatFn::poly(vec![1])
            && (1..self.coeffs.len()).all(|i| {
                let d = a.sub(&a.monomial(1, q.pow(i as u32)), &a.t());
                let lhs = self.coeffs[i].mul_poly(a, &d);
                let mut rhs = RatFn::poly(vec![]);
                for j in 1..=i.min(e.rank()) {
                    let mut x = self.coeffs[i - j].clone();
                    for _ in 0..j {
                        x = x.frobenius(a);
                    }
                    rhs = rhs.add(a, &x.mul_poly(a, &e.coeffs[j - 1]));
                }
                lhs == rhs
            })
    }
}

impl Default for ExpSeries {
    fn default() -> Self {
        Self::new()
    }
}

pub fn exp_coefficients(e: &DrinfeldModule, n: usize) -> ExpSeries {
    let mut s = ExpSeries::new();
    s.extend(e, n);
    s
}

/// Σ c_i τ^i(x) on K_∞ for c_i ∈ A.
pub fn apply_twisted_kinf(cover: &GaloisCover, phi: &TwistedPoly<FqPoly>, x: &[LaurentSeries]) -> KInf {
    let mut y = x.to_vec();
    let mut acc: Option<KInf> = None;
    for (i, c) in phi.coeffs.iter().enumerate() {
        if i > 0 {
            y = kinf::tau(cover, &y);
        }
        let term = kinf::scale_poly(cover, c, &y);
        acc = Some(match acc {
            None => term,
            Some(s) => kinf::add(cover, &s, &term),
        });
    }
    acc.unwrap_or_else(|| kinf::zero(x.len(), kinf::floor(x)))
}

/// exp_E(x) known down to `target_floor`.
pub fn exp_eval(e: &DrinfeldModule, cover: &GaloisCover, x: &[LaurentSeries], target_floor: i64) -> Result<KInf> {
    let mut s = ExpSeries::new();
    exp_eval_with(&mut s, e, cover, x, target_floor)
}

/// As `exp_eval`, reusing and extending a coefficient cache.
pub fn exp_eval_with(
    series: &mut ExpSeries,
    e: &DrinfeldModule,
    cover: &GaloisCover,
    x: &[LaurentSeries],
    target_floor: i64,
) -> Result<KInf> {
    let a = &e.a;
    let q = e.fq().q as i64;
    let Some(top0) = kinf::top(x) else {
        return kinf::truncate(x, target_floor);
    };
    let kappa = cover.frob.iter().flatten().filter_map(|p| p.len().checked_sub(1)).max().unwrap_or(0) as i64;
    let mut acc = x.to_vec();
    let mut y = x.to_vec();
    let mut ybound = top0;
    let mut prev: Option<i64> = None;
    for i in 1..=EXP_DEPTH_CAP {
        ybound = ybound.saturating_mul(q).saturating_add(kappa);
        // coefficient degrees grow like q^i; stop before they become unmanageable
        if q.checked_pow(i as u32).is_none_or(|qi| qi > EXP_DEGREE_BUDGET) || ybound - kinf::floor(&y) > EXP_DEGREE_BUDGET * 16 {
            return Err(Error::DivergenceSuspected(format!("no certified floor after {} terms", i - 1)));
        }
        series.extend(e, i);
        y = kinf::tau(cover, &y);
        let ei = &series.coeffs[i];
        let bound = match ei.top() {
            None => None,
            Some(te) => Some(te.saturating_add(ybound)),
        };
        if let (Some(b), Some(p)) = (bound, prev) {
            if b < target_floor && p < target_floor && b < p {
                return kinf::truncate(&acc, target_floor);
            }
        }
        if bound.is_none() && prev.is_some_and(|p| p < target_floor) {
            continue;
        }
        if let (Some(b), Some(ty)) = (bound, kinf::top(&y)) {
            if b >= target_floor {
                let es = ei.to_series(a, target_floor - ty)?;
                let term = kinf::scale_series(cover, &es, &y);
                acc = kinf::add(cover, &acc, &term);
            }
        }
        if bound.is_some() {
            prev = bound;
        }
    }
    Err(Error::DivergenceSuspected(format!("depth cap {EXP_DEPTH_CAP} reached")))
}
