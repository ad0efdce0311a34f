//! Laurent series in t^{-1} with coefficients in a finite commutative
//! F_q-algebra R (F_q[G] for abelian G, or a block ring R_i). Same precision
//! rules as `LaurentSeries`.

use serde::Serialize;

use crate::base_algebra::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgSeries {
    pub floor: i64,
    /// coeffs[k] is the coefficient of t^{floor + k}
    pub coeffs: Vec<Vec<u32>>,
}

impl AlgSeries {
    pub fn new<R: Ring<Elem = Vec<u32>>>(r: &R, floor: i64, mut coeffs: Vec<Vec<u32>>) -> Self {
        while coeffs.last().is_some_and(|c| r.is_zero(c)) {
            coeffs.pop();
        }
        AlgSeries { floor, coeffs }
    }

    pub fn zero(floor: i64) -> Self {
        AlgSeries { floor, coeffs: vec![] }
    }

    pub fn one<R: Ring<Elem = Vec<u32>>>(r: &R, floor: i64) -> Self {
        Self::from_poly(r, &[r.one()], floor)
    }

    /// Exact polynomial Σ p[k] t^k, known down to `floor`.
    pub fn from_poly<R: Ring<Elem = Vec<u32>>>(r: &R, p: &[Vec<u32>], floor: i64) -> Self {
        let top = p.len() as i64 - 1;
        if top < floor {
            return Self::zero(floor);
        }
        let coeffs = (floor..=top).map(|e| if e >= 0 { p[e as usize].clone() } else { r.zero() }).collect();
        Self::new(r, floor, coeffs)
    }

    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.floor + self.coeffs.len() as i64 - 1)
    }

    fn eff_top(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1)
    }

    pub fn coeff<R: Ring<Elem = Vec<u32>>>(&self, r: &R, e: i64) -> Vec<u32> {
        assert!(e >= self.floor, "coefficient below the floor");
        self.coeffs.get((e - self.floor) as usize).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn lead(&self) -> Option<&Vec<u32>> {
        self.coeffs.last()
    }

    pub fn truncate(&self, floor: i64) -> Result<Self> {
        if floor < self.floor {
            return Err(Error::PrecisionExhausted(format!("known only to t^{}, requested t^{floor}", self.floor)));
        }
        let skip = (floor - self.floor) as usize;
        Ok(AlgSeries { floor, coeffs: self.coeffs.iter().skip(skip).cloned().collect() })
    }

    pub fn add<R: Ring<Elem = Vec<u32>>>(&self, r: &R, b: &Self) -> Self {
        let floor = self.floor.max(b.floor);
        let top = self.eff_top().max(b.eff_top());
        if top < floor {
            return Self::zero(floor);
        }
        let get = |s: &Self, e: i64| if e <= s.eff_top() { s.coeff(r, e) } else { r.zero() };
        Self::new(r, floor, (floor..=top).map(|e| r.add(&get(self, e), &get(b, e))).collect())
    }

    pub fn mul<R: Ring<Elem = Vec<u32>>>(&self, r: &R, b: &Self) -> Self {
        let floor = (self.eff_top() + b.floor).max(b.eff_top() + self.floor);
        if self.coeffs.is_empty() || b.coeffs.is_empty() {
            return Self::zero(floor);
        }
        let top = self.eff_top() + b.eff_top();
        if top < floor {
            return Self::zero(floor);
        }
        let mut out = vec![r.zero(); (top - floor + 1) as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            let ei = self.floor + i as i64;
            let jmin = (floor - ei - b.floor).max(0) as usize;
            for (j, y) in b.coeffs.iter().enumerate().skip(jmin) {
                let k = (ei + b.floor + j as i64 - floor) as usize;
                out[k] = r.add(&out[k], &r.mul(x, y));
            }
        }
        Self::new(r, floor, out)
    }

    /// 1/self down to `floor` when the leading coefficient is 1.
    pub fn invert_monic<R: Ring<Elem = Vec<u32>>>(&self, r: &R, floor: i64) -> Result<Self> {
        let ta = self.top().ok_or(Error::InvertZero)?;
        if !r.is_one(self.lead().unwrap()) {
            return Err(Error::HypothesisViolated("series inversion needs leading coefficient 1".into()));
        }
        let reach = self.floor - 2 * ta;
        if floor < reach {
            return Err(Error::PrecisionExhausted(format!("inverse known only to t^{reach}, requested t^{floor}")));
        }
        let top = -ta;
        if top < floor {
            return Ok(Self::zero(floor));
        }
        let n = (top - floor + 1) as usize;
        let u = |k: usize| -> Vec<u32> {
            let e = ta - k as i64;
            if e < self.floor {
                r.zero()
            } else {
                self.coeff(r, e)
            }
        };
        let mut w = vec![r.zero(); n];
        w[0] = r.one();
        for k in 1..n {
            let mut s = r.zero();
            for j in 1..=k {
                s = r.add(&s, &r.mul(&u(j), &w[k - j]));
            }
            w[k] = r.neg(&s);
        }
        Ok(Self::new(r, floor, w.into_iter().rev().collect()))
    }

    /// num/den for exact polynomials with den monic, down to `floor`.
    pub fn ratio<R: Ring<Elem = Vec<u32>>>(r: &R, num: &[Vec<u32>], den: &[Vec<u32>], floor: i64) -> Result<Self> {
        let dn = den.len() as i64 - 1;
        if num.is_empty() {
            return Ok(Self::zero(floor));
        }
        let top_num = num.len() as i64 - 1;
        let inv_floor = floor - top_num;
        let d = Self::from_poly(r, den, inv_floor + 2 * dn);
        let inv = d.invert_monic(r, inv_floor)?;
        let n = Self::from_poly(r, num, floor + dn);
        n.mul(r, &inv).truncate(floor)
    }

    pub fn agrees_with<R: Ring<Elem = Vec<u32>>>(&self, r: &R, b: &Self, floor: i64) -> Result<bool> {
        if floor < self.floor.max(b.floor) {
            return Err(Error::PrecisionExhausted(format!("comparison to t^{floor} beyond known window")));
        }
        let top = self.eff_top().max(b.eff_top());
        let get = |s: &Self, e: i64| if e <= s.eff_top() { s.coeff(r, e) } else { r.zero() };
        Ok((floor..=top).all(|e| get(self, e) == get(b, e)))
    }

    /// Apply an F_q-linear map to every coefficient.
    pub fn map_coeffs<R: Ring<Elem = Vec<u32>>>(&self, r: &R, f: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        Self::new(r, self.floor, self.coeffs.iter().map(|c| f(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_algebra::FqField;
    use crate::group_algebra::decomposition::ScAlgebra;

    #[test]
    fn ratio_over_a_field_matches_scalar_series() {
        let f = FqField::prime(2).unwrap();
        let r = ScAlgebra::field(&f);
        // t/(t+1) = 1 + t^-1 + t^-2 + t^-3
        let s = AlgSeries::ratio(&r, &[vec![0], vec![1]], &[vec![1], vec![1]], -3).unwrap();
        assert_eq!(s.coeffs, vec![vec![1]; 4]);
        let inv = s.invert_monic(&r, -3).unwrap();
        assert!(s.mul(&r, &inv).agrees_with(&r, &AlgSeries::one(&r, -3), -3).unwrap());
    }
}
