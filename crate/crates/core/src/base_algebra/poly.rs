//! Dense polynomials, low to high degree, never with a trailing zero.
//! `PolyRing<R>` works over any commutative ring; the Euclidean toolkit
//! (division, gcd, irreducibility) is specialised to coefficients in F_q.

use super::fq::FqField;
use super::ring::Ring;

/// Element of A = F_q[t].
pub type FqPoly = Vec<u32>;

#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
}

/// A = F_q[t].
pub type PolyA = PolyRing<FqField>;

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn normalize(&self, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
        while p.last().is_some_and(|c| self.base.is_zero(c)) {
            p.pop();
        }
        p
    }

    /// None for the zero polynomial.
    pub fn degree(&self, p: &[R::Elem]) -> Option<usize> {
        if p.is_empty() {
            None
        } else {
            Some(p.len() - 1)
        }
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.normalize(vec![c])
    }

    pub fn monomial(&self, c: R::Elem, d: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); d + 1];
        v[d] = c;
        self.normalize(v)
    }

    pub fn x(&self) -> Vec<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn coeff(&self, p: &[R::Elem], i: usize) -> R::Elem {
        p.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, c: &R::Elem, p: &[R::Elem]) -> Vec<R::Elem> {
        self.normalize(p.iter().map(|x| self.base.mul(c, x)).collect())
    }

    pub fn shift(&self, p: &[R::Elem], k: usize) -> Vec<R::Elem> {
        if p.is_empty() {
            return vec![];
        }
        let mut v = vec![self.base.zero(); k];
        v.extend_from_slice(p);
        v
    }

    pub fn eval(&self, p: &[R::Elem], x: &R::Elem) -> R::Elem {
        p.iter().rev().fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// Apply a coefficientwise ring map.
    pub fn map<S: Ring, F: Fn(&R::Elem) -> S::Elem>(&self, target: &PolyRing<S>, p: &[R::Elem], f: F) -> Vec<S::Elem> {
        target.normalize(p.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![]
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| self.base.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.normalize(v)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut v = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.normalize(v)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }
}

impl PolyRing<FqField> {
    pub fn fq(&self) -> &FqField {
        &self.base
    }

    pub fn t(&self) -> FqPoly {
        vec![0, 1]
    }

    pub fn lead(&self, p: &[u32]) -> u32 {
        p.last().copied().unwrap_or(0)
    }

    pub fn monic(&self, p: &[u32]) -> FqPoly {
        match p.last() {
            None => vec![],
            Some(&l) => self.scale(&self.base.inv_e(l).unwrap(), p),
        }
    }

    pub fn is_monic(&self, p: &[u32]) -> bool {
        p.last() == Some(&1)
    }

    /// Division with remainder; panics on division by zero.
    pub fn divrem(&self, a: &[u32], b: &[u32]) -> (FqPoly, FqPoly) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let f = &self.base;
        let db = b.len() - 1;
        let inv = f.inv_e(b[db]).unwrap();
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (vec![], self.normalize(r));
        }
        let mut qv = vec![0u32; r.len() - db];
        for d in (db..r.len()).rev() {
            let c = r[d];
            if c == 0 {
                continue;
            }
            let m = f.mul_e(c, inv);
            qv[d - db] = m;
            for k in 0..=db {
                r[d - db + k] = f.sub_e(r[d - db + k], f.mul_e(m, b[k]));
            }
        }
        r.truncate(db);
        (self.normalize(qv), self.normalize(r))
    }

    pub fn rem(&self, a: &[u32], b: &[u32]) -> FqPoly {
        self.divrem(a, b).1
    }

    pub fn divides(&self, d: &[u32], a: &[u32]) -> bool {
        if d.is_empty() {
            return a.is_empty();
        }
        self.rem(a, d).is_empty()
    }

    /// Exact quotient; None if b does not divide a.
    pub fn div_exact(&self, a: &[u32], b: &[u32]) -> Option<FqPoly> {
        let (q, r) = self.divrem(a, b);
        if r.is_empty() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, a: &[u32], b: &[u32]) -> FqPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// (g, s, u) with s·a + u·b = g monic.
    pub fn xgcd(&self, a: &[u32], b: &[u32]) -> (FqPoly, FqPoly, FqPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (self.one(), vec![]);
        let (mut u0, mut u1) = (vec![], self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let u2 = self.sub(&u0, &self.mul(&q, &u1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            u0 = u1;
            u1 = u2;
        }
        if r0.is_empty() {
            return (vec![], vec![], vec![]);
        }
        let inv = self.base.inv_e(self.lead(&r0)).unwrap();
        (self.scale(&inv, &r0), self.scale(&inv, &s0), self.scale(&inv, &u0))
    }

    pub fn lcm(&self, a: &[u32], b: &[u32]) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let g = self.gcd(a, b);
        self.monic(&self.mul(&self.div_exact(a, &g).unwrap(), &b.to_vec()))
    }

    pub fn mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> FqPoly {
        self.rem(&self.mul(&a.to_vec(), &b.to_vec()), m)
    }

    pub fn powmod(&self, a: &[u32], mut e: u128, m: &[u32]) -> FqPoly {
        let mut acc = self.rem(&self.one(), m);
        let mut b = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mulmod(&b, &b, m);
            }
        }
        acc
    }

    pub fn derivative(&self, p: &[u32]) -> FqPoly {
        let f = &self.base;
        self.normalize(p.iter().enumerate().skip(1).map(|(i, &c)| f.mul_e(f.from_int(i as i64), c)).collect())
    }

    /// Rabin's test: t^{q^m} ≡ t mod f and gcd(t^{q^{m/r}} − t, f) = 1 for
    /// every prime r | m.
    pub fn is_irreducible(&self, f: &[u32]) -> bool {
        let m = match self.degree(f) {
            None | Some(0) => return false,
            Some(m) => m,
        };
        let f = self.monic(f);
        let q = self.base.q as u128;
        let t = self.t();
        // repeated q-th powering avoids q^m overflow
        let frob_iter = |k: usize| {
            let mut x = self.rem(&t, &f);
            for _ in 0..k {
                x = self.powmod(&x, q, &f);
            }
            x
        };
        if self.sub(&frob_iter(m), &self.rem(&t, &f)).iter().any(|&c| c != 0) {
            return false;
        }
        let mut n = m;
        let mut primes = vec![];
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        primes.into_iter().all(|r| {
            let h = self.sub(&frob_iter(m / r), &t);
            self.gcd(&h, &f) == self.one()
        })
    }

    /// All monic polynomials of exact degree d, in counting order of the
    /// coefficient vector read from the top (t^{d-1} most significant).
    pub fn monics_of_degree(&self, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
        let q = self.base.q as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut v| {
            let mut p = vec![0u32; d + 1];
            p[d] = 1;
            for slot in p.iter_mut().take(d) {
                *slot = (v % q) as u32;
                v /= q;
            }
            p
        })
    }

    /// Parse integer coefficients (low to high), reducing mod ℓ.
    pub fn from_ints(&self, c: &[i64]) -> FqPoly {
        self.normalize(c.iter().map(|&x| self.base.from_int(x)).collect())
    }

    pub fn display(&self, p: &[u32]) -> String {
        fmt_poly(p, "t")
    }
}

/// Human readable rendering, highest degree first.
pub fn fmt_poly(p: &[u32], var: &str) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut parts = vec![];
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    parts.join(" + ")
}

/// Monic irreducibles of degree ≤ d sorted by (degree, coefficients read
/// from the top).
pub fn enumerate_monic_irreducibles(a: &PolyA, d: usize) -> Vec<FqPoly> {
    assert!(d >= 1, "degree bound must be positive");
    (1..=d).flat_map(|m| monic_irreducibles_of_degree(a, m)).collect()
}

pub fn monic_irreducibles_of_degree(a: &PolyA, m: usize) -> Vec<FqPoly> {
    a.monics_of_degree(m).filter(|p| a.is_irreducible(p)).collect()
}

/// Möbius count of monic irreducibles of degree m.
pub fn irreducible_count(q: u64, m: u64) -> u64 {
    let mu = |mut n: u64| -> i64 {
        let mut res = 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                res = -res;
            }
            d += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    };
    let s: i64 = (1..=m).filter(|d| m % d == 0).map(|d| mu(d) * q.pow((m / d) as u32) as i64).sum();
    (s / m as i64) as u64
}
