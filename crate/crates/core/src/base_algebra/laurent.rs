//! Truncated Laurent series in t^{-1}. A value is known at every exponent
//! ≥ `floor`; below that nothing is known. Coefficients are stored upward
//! from the floor with high zeros stripped, so the zero-within-precision
//! series has an empty coefficient vector and no top.

use serde::{Deserialize, Serialize};

use super::fq::FqField;
use super::poly::FqPoly;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentSeries {
    pub floor: i64,
    /// coeffs[k] is the coefficient of t^{floor + k}
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
    Invert,
    Truncate,
}

impl LaurentSeries {
    pub fn zero(floor: i64) -> Self {
        LaurentSeries { floor, coeffs: vec![] }
    }

    pub fn new(floor: i64, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        LaurentSeries { floor, coeffs }
    }

    /// Exact polynomial in t, known down to `floor`.
    pub fn from_poly(p: &[u32], floor: i64) -> Self {
        let mut coeffs = vec![];
        let top = p.len() as i64 - 1;
        if top >= floor {
            for e in floor..=top {
                coeffs.push(if e >= 0 { p[e as usize] } else { 0 });
            }
        }
        Self::new(floor, coeffs)
    }

    /// c · t^e known to `floor`.
    pub fn monomial(c: u32, e: i64, floor: i64) -> Self {
        if e < floor || c == 0 {
            return Self::zero(floor);
        }
        let mut coeffs = vec![0; (e - floor + 1) as usize];
        coeffs[(e - floor) as usize] = c;
        Self::new(floor, coeffs)
    }

    pub fn one(floor: i64) -> Self {
        Self::monomial(1, 0, floor)
    }

    pub fn top(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.floor + self.coeffs.len() as i64 - 1)
        }
    }

    /// Valuation at ∞ in the convention v(t) = −1.
    pub fn valuation(&self) -> Option<i64> {
        self.top().map(|t| -t)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> u32 {
        if e < self.floor {
            panic!("coefficient t^{e} below known floor {}", self.floor);
        }
        self.coeffs.get((e - self.floor) as usize).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    /// Top used for precision propagation: a zero series is only known to be
    /// below its floor.
    fn eff_top(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1)
    }

    /// Raise the floor, discarding known coefficients.
    pub fn truncate(&self, floor: i64) -> Result<Self> {
        if floor < self.floor {
            return Err(Error::PrecisionExhausted(format!(
                "cannot extend precision from t^{} down to t^{}",
                self.floor, floor
            )));
        }
        Ok(self.truncate_lossy(floor))
    }

    /// Floor becomes max(self.floor, floor).
    pub fn truncate_lossy(&self, floor: i64) -> Self {
        if floor <= self.floor {
            return self.clone();
        }
        let skip = (floor - self.floor) as usize;
        Self::new(floor, self.coeffs.iter().skip(skip).copied().collect())
    }

    pub fn add(&self, f: &FqField, b: &Self) -> Self {
        let floor = self.floor.max(b.floor);
        let top = self.eff_top().max(b.eff_top());
        if top < floor {
            return Self::zero(floor);
        }
        let coeffs = (floor..=top)
            .map(|e| {
                let x = if e <= self.eff_top() { self.coeff(e) } else { 0 };
                let y = if e <= b.eff_top() { b.coeff(e) } else { 0 };
                f.add_e(x, y)
            })
            .collect();
        Self::new(floor, coeffs)
    }

    pub fn neg(&self, f: &FqField) -> Self {
        LaurentSeries { floor: self.floor, coeffs: self.coeffs.iter().map(|&c| f.neg_e(c)).collect() }
    }

    pub fn sub(&self, f: &FqField, b: &Self) -> Self {
        self.add(f, &b.neg(f))
    }

    pub fn scale(&self, f: &FqField, c: u32) -> Self {
        Self::new(self.floor, self.coeffs.iter().map(|&x| f.mul_e(c, x)).collect())
    }

    /// Multiply by t^k (exact, shifts the floor).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { floor: self.floor + k, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, f: &FqField, b: &Self) -> Self {
        let floor = (self.eff_top() + b.floor).max(b.eff_top() + self.floor);
        if self.is_zero() || b.is_zero() {
            return Self::zero(floor);
        }
        let top = self.eff_top() + b.eff_top();
        if top < floor {
            return Self::zero(floor);
        }
        let mut out = vec![0u32; (top - floor + 1) as usize];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ei = self.floor + i as i64;
            // need ei + ej >= floor
            let jmin = (floor - ei - b.floor).max(0) as usize;
            for (j, &y) in b.coeffs.iter().enumerate().skip(jmin) {
                if y == 0 {
                    continue;
                }
                let k = (ei + b.floor + j as i64 - floor) as usize;
                out[k] = f.add_e(out[k], f.mul_e(x, y));
            }
        }
        Self::new(floor, out)
    }

    /// Exact polynomial times self; the floor rises by deg p.
    pub fn mul_poly(&self, f: &FqField, p: &[u32]) -> Self {
        let Some(dp) = p.len().checked_sub(1) else { return Self::zero(self.floor) };
        let mut out = vec![0u32; self.coeffs.len() + dp];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in p.iter().enumerate() {
                out[i + j] = f.add_e(out[i + j], f.mul_e(x, y));
            }
        }
        Self::new(self.floor, out).truncate_lossy(self.floor + dp as i64)
    }

    /// x ↦ x^q.
    pub fn frobenius(&self, f: &FqField) -> Self {
        let q = f.q as i64;
        let floor = q * self.floor;
        if self.coeffs.is_empty() {
            return Self::zero(floor);
        }
        let mut out = vec![0u32; (self.coeffs.len() - 1) * q as usize + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k * q as usize] = f.pow_u(c, f.q as u64);
        }
        Self::new(floor, out)
    }

    /// Floor that an inverse can reach: relative precision is preserved.
    pub fn invert_floor(&self) -> Option<i64> {
        self.top().map(|t| self.floor - 2 * t)
    }

    /// 1/self known down to exactly `floor`.
    pub fn invert(&self, f: &FqField, floor: i64) -> Result<Self> {
        let ta = self.top().ok_or(Error::InvertZero)?;
        let reach = self.floor - 2 * ta;
        if floor < reach {
            return Err(Error::PrecisionExhausted(format!(
                "inverse known only to t^{reach}, requested t^{floor}"
            )));
        }
        let top = -ta;
        if top < floor {
            return Ok(Self::zero(floor));
        }
        let n = (top - floor + 1) as usize;
        // u = self / (lead t^ta) = 1 + u_1 t^{-1} + ... ; invert by recursion
        let lead_inv = f.inv_e(self.lead().unwrap()).unwrap();
        let u = |k: usize| -> u32 {
            let e = ta - k as i64;
            if e < self.floor {
                0
            } else {
                f.mul_e(self.coeff(e), lead_inv)
            }
        };
        let mut w = vec![0u32; n];
        w[0] = 1;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k {
                s = f.add_e(s, f.mul_e(u(j), w[k - j]));
            }
            w[k] = f.neg_e(s);
        }
        // w[k] is the coefficient of t^{-ta-k}
        let coeffs = (0..n).rev().map(|k| f.mul_e(w[k], lead_inv)).collect();
        Ok(Self::new(floor, coeffs))
    }

    /// Equality on the common known window; `floor` (if given) demands that
    /// the comparison reach that exponent.
    pub fn agrees_with(&self, b: &Self, floor: Option<i64>) -> Result<bool> {
        let common = self.floor.max(b.floor);
        if let Some(fl) = floor {
            if fl < common {
                return Err(Error::PrecisionExhausted(format!(
                    "comparison requested to t^{fl} but operands known only to t^{common}"
                )));
            }
        }
        let from = floor.unwrap_or(common);
        let top = self.eff_top().max(b.eff_top());
        Ok((from..=top).all(|e| {
            let x = if e <= self.eff_top() { self.coeff(e) } else { 0 };
            let y = if e <= b.eff_top() { b.coeff(e) } else { 0 };
            x == y
        }))
    }

    /// Polynomial part (exponents ≥ 0); None if the floor is above 0 so the
    /// constant term is unknown.
    pub fn polynomial_part(&self) -> Option<FqPoly> {
        if self.floor > 0 {
            return None;
        }
        let top = self.eff_top();
        let mut p: FqPoly = (0..=top.max(-1)).map(|e| self.coeff(e)).collect();
        while p.last() == Some(&0) {
            p.pop();
        }
        Some(p)
    }

    /// Coefficients at exponents < 0 down to the floor, as a polynomial in
    /// t^{-1} without constant term: entry k is the coefficient of t^{-k}.
    pub fn fractional_part(&self) -> Vec<u32> {
        let mut v = vec![0u32];
        let mut e = -1;
        while e >= self.floor {
            v.push(if e <= self.eff_top() { self.coeff(e) } else { 0 });
            e -= 1;
        }
        v
    }

    pub fn display(&self) -> String {
        let mut parts = vec![];
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.floor + k as i64;
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            parts.push(match (c, e) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O(t^{})", parts.join(" + "), self.floor - 1)
    }
}

/// Long division num/den expanded in t^{-1} down to `floor`.
pub fn rational_to_series(f: &FqField, num: &[u32], den: &[u32], floor: i64) -> Result<LaurentSeries> {
    if den.is_empty() {
        return Err(Error::InvertZero);
    }
    if num.is_empty() {
        return Ok(LaurentSeries::zero(floor));
    }
    let dn = den.len() as i64 - 1;
    let top_num = num.len() as i64 - 1;
    if top_num - dn < floor {
        return Ok(LaurentSeries::zero(floor));
    }
    let inv_floor = floor - top_num;
    let d = LaurentSeries::from_poly(den, inv_floor + 2 * dn);
    let inv = d.invert(f, inv_floor)?;
    let n = LaurentSeries::from_poly(num, floor + dn);
    Ok(n.mul(f, &inv).truncate_lossy(floor))
}

/// Dispatcher over the four supported operations; truncate and invert read
/// their target floor from `floor`.
pub fn laurent_arith(f: &FqField, op: LaurentOp, operands: &[&LaurentSeries], floor: i64) -> Result<LaurentSeries> {
    let r = match op {
        LaurentOp::Add => operands.iter().skip(1).fold(operands[0].clone(), |acc, x| acc.add(f, x)),
        LaurentOp::Mul => operands.iter().skip(1).fold(operands[0].clone(), |acc, x| acc.mul(f, x)),
        LaurentOp::Invert => operands[0].invert(f, floor)?,
        LaurentOp::Truncate => operands[0].truncate(floor)?,
    };
    if matches!(op, LaurentOp::Add | LaurentOp::Mul) && r.is_zero() && operands.iter().all(|x| !x.is_zero()) && r.floor > floor {
        return Err(Error::PrecisionExhausted(format!("result known only above t^{}", r.floor)));
    }
    Ok(r)
}

/// Ring of series with a fixed working floor: every result is cut at the
/// working floor, while values still carry their own floor if it is higher.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    pub fq: FqField,
    pub floor: i64,
}

impl LaurentRing {
    pub fn new(fq: FqField, floor: i64) -> Self {
        LaurentRing { fq, floor }
    }

    pub fn from_poly(&self, p: &[u32]) -> LaurentSeries {
        LaurentSeries::from_poly(p, self.floor)
    }

    pub fn t_inv(&self) -> LaurentSeries {
        LaurentSeries::monomial(1, -1, self.floor)
    }

    pub fn invert(&self, a: &LaurentSeries) -> Result<LaurentSeries> {
        let reach = a.invert_floor().ok_or(Error::InvertZero)?;
        a.invert(&self.fq, reach.max(self.floor))
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentSeries;
    fn zero(&self) -> LaurentSeries {
        LaurentSeries::zero(self.floor)
    }
    fn one(&self) -> LaurentSeries {
        LaurentSeries::one(self.floor)
    }
    fn add(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.add(&self.fq, b).truncate_lossy(self.floor)
    }
    fn neg(&self, a: &LaurentSeries) -> LaurentSeries {
        a.neg(&self.fq)
    }
    fn mul(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.mul(&self.fq, b).truncate_lossy(self.floor)
    }
    fn is_zero(&self, a: &LaurentSeries) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> LaurentSeries {
        LaurentSeries::monomial(self.fq.from_int(n), 0, self.floor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    #[test]
    fn poly_times_series_and_frobenius() {
        let f = FqField::prime(2).unwrap();
        // (t + 1)(t^-1 + O(t^-3)) = 1 + t^-1 + O(t^-2)
        let s = LaurentSeries::monomial(1, -1, -3);
        let p = s.mul_poly(&f, &[1, 1]);
        assert_eq!((p.floor, p.coeffs.clone()), (-2, vec![0, 1, 1]));
        // (t^-1 + O(t^-3))^2 = t^-2 + O(t^-6)
        let fr = s.frobenius(&f);
        assert_eq!((fr.floor, fr.top()), (-6, Some(-2)));
    }

    #[test]
    fn geometric_inverse() {
        let f = f2();
        let a = LaurentSeries::new(-3, vec![0, 0, 1, 1]);
        let inv = a.invert(&f, -3).unwrap();
        assert_eq!(inv, LaurentSeries::new(-3, vec![1, 1, 1, 1]));
    }

    #[test]
    fn t_times_t_inverse() {
        let f = FqField::prime(3).unwrap();
        let t = LaurentSeries::from_poly(&[0, 1], -10);
        let ti = t.invert(&f, -10).unwrap();
        let one = t.mul(&f, &ti);
        assert!(one.agrees_with(&LaurentSeries::one(-9), Some(-9)).unwrap());
    }

    #[test]
    fn t_over_t_plus_one() {
        let f = f2();
        let r = rational_to_series(&f, &[0, 1], &[1, 1], -3).unwrap();
        assert_eq!(r, LaurentSeries::new(-3, vec![1, 1, 1, 1]));
        // 1/(t³ + 1) is zero above t^{-3}
        assert!(rational_to_series(&f, &[1], &[1, 0, 0, 1], -2).unwrap().is_zero());
    }

    #[test]
    fn mul_floor_uses_both_tops() {
        let f = f2();
        // (1 + O(t^-3)) (t + O(t^-1)) is known to t^0 only
        let a = LaurentSeries::new(-2, vec![0, 0, 1]);
        let b = LaurentSeries::new(0, vec![0, 1]);
        let p = a.mul(&f, &b);
        assert_eq!(p.floor, 0);
        assert_eq!(p.top(), Some(1));
    }

    #[test]
    fn overdrawn_truncate_fails() {
        let a = LaurentSeries::one(-2);
        assert!(matches!(a.truncate(-5), Err(Error::PrecisionExhausted(_))));
        assert!(matches!(LaurentSeries::zero(-4).invert(&f2(), -4), Err(Error::InvertZero)));
    }
}
