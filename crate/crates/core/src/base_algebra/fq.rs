use serde::{Deserialize, Serialize};

use super::ring::Ring;
use crate::error::{Error, Result};

/// F_q = F_ℓ[x]/(modulus). Elements are u32 in 0..q whose base-ℓ digits are
/// the coefficients (lowest digit = constant term).
#[derive(Clone, Debug)]
pub struct FqField {
    pub ell: u32,
    pub e: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob_digits: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub ell: u32,
    pub e: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.e == other.e && self.modulus == other.modulus
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// schoolbook F_ℓ[x] helpers used only while building the table
fn small_mulmod(a: &[u32], b: &[u32], m: &[u32], ell: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % ell as u64;
        }
    }
    let mut prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    // m is monic
    for d in (e..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for k in 0..=e {
            let sub = (c as u64 * m[k] as u64 % ell as u64) as u32;
            prod[d - e + k] = (prod[d - e + k] + ell - sub) % ell;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

fn digits(mut v: u32, ell: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = v % ell;
            v /= ell;
            d
        })
        .collect()
}

fn undigits(d: &[u32], ell: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * ell + x)
}

impl FqField {
    /// Prime field F_ℓ.
    pub fn prime(ell: u32) -> Result<Self> {
        Self::new(ell, 1, None)
    }

    pub fn from_spec(s: &FieldSpec) -> Result<Self> {
        Self::new(s.ell, s.e, s.modulus.clone())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { ell: self.ell, e: self.e, modulus: Some(self.modulus.clone()) }
    }

    /// Build F_{ℓ^e}. Without a modulus the first monic irreducible of degree e
    /// (in counting order of its lower coefficients) is used.
    pub fn new(ell: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::Config(format!("field.ell = {ell} is not prime")));
        }
        if e == 0 {
            return Err(Error::Config("field.e must be positive".into()));
        }
        let q64 = (ell as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q64 > 1 << 16 {
            return Err(Error::Config(format!("field size {ell}^{e} exceeds 2^16")));
        }
        let q = q64 as u32;
        let candidates: Vec<Vec<u32>> = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= ell) {
                    return Err(Error::Config("field.modulus must be monic of degree e with entries < ell".into()));
                }
                vec![m]
            }
            None => (0..q)
                .map(|v| {
                    let mut m = digits(v, ell, e);
                    m.push(1);
                    m
                })
                .collect(),
        };
        for m in candidates {
            if let Some(f) = Self::try_build(ell, e, q, &m) {
                return Ok(f);
            }
        }
        Err(Error::Config("field.modulus is not irreducible".into()))
    }

    // Returns None if m is reducible. Irreducibility is detected by the
    // multiplicative group check: some element must have order q-1 and
    // no nonzero zero divisor may show up.
    fn try_build(ell: u32, e: u32, q: u32, m: &[u32]) -> Option<Self> {
        let ord = q - 1;
        if e == 1 {
            // search a primitive root mod ell
            for g in 1..q.max(2) {
                let mut exp = Vec::with_capacity(ord as usize);
                let mut x = 1u32;
                for _ in 0..ord {
                    exp.push(x);
                    x = (x as u64 * g as u64 % q as u64) as u32;
                }
                let mut seen = vec![false; q as usize];
                if exp.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true)) {
                    return Some(Self::finish(ell, e, q, vec![0, 1], exp));
                }
            }
            return None;
        }
        // field iff some element generates a cyclic group of order q-1
        for g in 1..q {
            let gd = digits(g, ell, e);
            let mut exp = Vec::with_capacity(ord as usize);
            let mut x = digits(1, ell, e);
            let mut seen = vec![false; q as usize];
            let mut ok = true;
            for _ in 0..ord {
                let v = undigits(&x, ell);
                if v == 0 || seen[v as usize] {
                    ok = false;
                    break;
                }
                seen[v as usize] = true;
                exp.push(v);
                x = small_mulmod(&x, &gd, m, ell);
            }
            if ok {
                return Some(Self::finish(ell, e, q, m.to_vec(), exp));
            }
        }
        None
    }

    fn finish(ell: u32, e: u32, q: u32, modulus: Vec<u32>, exp: Vec<u32>) -> Self {
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut f = FqField { ell, e, q, modulus, exp, log, frob_digits: vec![] };
        f.frob_digits = (0..q).map(|a| f.pow_u(a, ell as u64)).collect();
        f
    }

    #[inline]
    pub fn add_e(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.q { s - self.q } else { s }
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.e {
                out += ((a % self.ell + b % self.ell) % self.ell) * place;
                a /= self.ell;
                b /= self.ell;
                place *= self.ell;
            }
            out
        }
    }

    #[inline]
    pub fn neg_e(&self, a: u32) -> u32 {
        if self.e == 1 {
            if a == 0 { 0 } else { self.q - a }
        } else {
            let mut a = a;
            let mut out = 0;
            let mut place = 1;
            for _ in 0..self.e {
                out += ((self.ell - a % self.ell) % self.ell) * place;
                a /= self.ell;
                place *= self.ell;
            }
            out
        }
    }

    #[inline]
    pub fn sub_e(&self, a: u32, b: u32) -> u32 {
        self.add_e(a, self.neg_e(b))
    }

    #[inline]
    pub fn mul_e(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.e == 1 {
            return (a as u64 * b as u64 % self.q as u64) as u32;
        }
        let ord = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= ord { s - ord } else { s }) as usize]
    }

    pub fn inv_e(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let ord = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((ord - l) % ord) as usize])
    }

    pub fn pow_u(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let ord = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % ord)) % ord) as usize]
    }

    /// x ↦ x^ℓ
    pub fn frob(&self, a: u32) -> u32 {
        self.frob_digits[a as usize]
    }

    /// Embedding of an integer via the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.ell as i64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn primitive(&self) -> u32 {
        self.exp[if self.q > 2 { 1 } else { 0 }]
    }
}

impl Ring for FqField {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_e(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_e(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_e(*a, *b)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_is_a_field() {
        let f = FqField::new(2, 2, None).unwrap();
        assert_eq!(f.q, 4);
        assert_eq!(f.modulus, vec![1, 1, 1]);
        for a in 1..4 {
            assert_eq!(f.mul_e(a, f.inv_e(a).unwrap()), 1);
            assert_eq!(f.pow_u(a, 3), 1);
        }
        // x * x = x + 1
        assert_eq!(f.mul_e(2, 2), 3);
    }

    #[test]
    fn f9_frobenius_is_additive() {
        let f = FqField::new(3, 2, None).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.frob(f.add_e(a, b)), f.add_e(f.frob(a), f.frob(b)));
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FqField::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FqField::new(4, 1, None).is_err());
    }
}
