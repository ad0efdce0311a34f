//! Twisted polynomials Σ c_i τ^i with τ·a = a^q·τ.

use serde::Serialize;

use crate::base_algebra::{FqPoly, LaurentRing, LaurentSeries, PolyA, Ring};
use crate::error::{Error, Result};
use crate::function_field::cover::poly_frobenius;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Carrier {
    A,
    /// A/(p)
    Residue(FqPoly),
    FInf,
}

/// Commutative F_q-algebra with its q-power Frobenius.
pub trait FrobeniusRing: Ring {
    fn frob(&self, x: &Self::Elem) -> Self::Elem;
    fn carrier(&self) -> Carrier;
}

impl FrobeniusRing for PolyA {
    fn frob(&self, x: &FqPoly) -> FqPoly {
        poly_frobenius(self, x)
    }
    fn carrier(&self) -> Carrier {
        Carrier::A
    }
}

impl FrobeniusRing for LaurentRing {
    fn frob(&self, x: &LaurentSeries) -> LaurentSeries {
        x.frobenius(&self.fq).truncate_lossy(self.floor)
    }
    fn carrier(&self) -> Carrier {
        Carrier::FInf
    }
}

/// A/(p) with reduced representatives.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    pub a: PolyA,
    pub p: FqPoly,
}

impl ResidueRing {
    pub fn new(a: &PolyA, p: &[u32]) -> Self {
        ResidueRing { a: a.clone(), p: p.to_vec() }
    }

    pub fn reduce(&self, x: &[u32]) -> FqPoly {
        self.a.rem(x, &self.p)
    }
}

impl Ring for ResidueRing {
    type Elem = FqPoly;
    fn zero(&self) -> FqPoly {
        vec![]
    }
    fn one(&self) -> FqPoly {
        self.reduce(&[1])
    }
    fn add(&self, x: &FqPoly, y: &FqPoly) -> FqPoly {
        self.a.add(x, y)
    }
    fn neg(&self, x: &FqPoly) -> FqPoly {
        self.a.neg(x)
    }
    fn mul(&self, x: &FqPoly, y: &FqPoly) -> FqPoly {
        self.a.mulmod(x, y, &self.p)
    }
    fn is_zero(&self, x: &FqPoly) -> bool {
        x.is_empty()
    }
    fn from_i64(&self, n: i64) -> FqPoly {
        self.a.from_i64(n)
    }
}

impl FrobeniusRing for ResidueRing {
    fn frob(&self, x: &FqPoly) -> FqPoly {
        self.reduce(&poly_frobenius(&self.a, x))
    }
    fn carrier(&self) -> Carrier {
        Carrier::Residue(self.p.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedPoly<E> {
    pub carrier: Carrier,
    /// coeffs[i] multiplies τ^i; no trailing zeros
    pub coeffs: Vec<E>,
}

impl<E: Clone> TwistedPoly<E> {
    pub fn new<R: FrobeniusRing<Elem = E>>(r: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| r.is_zero(c)) {
            coeffs.pop();
        }
        TwistedPoly { carrier: r.carrier(), coeffs }
    }

    pub fn constant<R: FrobeniusRing<Elem = E>>(r: &R, c: E) -> Self {
        Self::new(r, vec![c])
    }

    pub fn tau<R: FrobeniusRing<Elem = E>>(r: &R) -> Self {
        Self::new(r, vec![r.zero(), r.one()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff<R: FrobeniusRing<Elem = E>>(&self, r: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    /// Evaluate Σ c_i x^{q^i} inside the carrier.
    pub fn eval<R: FrobeniusRing<Elem = E>>(&self, r: &R, x: &E) -> E {
        let mut acc = r.zero();
        let mut xi = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = r.frob(&xi);
            }
            acc = r.add(&acc, &r.mul(c, &xi));
        }
        acc
    }
}

fn check<R: FrobeniusRing>(r: &R, c: &Carrier) -> Result<()> {
    if *c != r.carrier() {
        log::debug!("carrier {:?} vs {:?}", c, r.carrier());
        return Err(Error::CarrierMismatch);
    }
    Ok(())
}

pub fn twisted_add<R: FrobeniusRing>(r: &R, f: &TwistedPoly<R::Elem>, g: &TwistedPoly<R::Elem>) -> Result<TwistedPoly<R::Elem>> {
    check(r, &f.carrier)?;
    check(r, &g.carrier)?;
    let n = f.coeffs.len().max(g.coeffs.len());
    Ok(TwistedPoly::new(r, (0..n).map(|i| r.add(&f.coeff(r, i), &g.coeff(r, i))).collect()))
}

/// (Σ a_i τ^i)(Σ b_j τ^j) = Σ a_i b_j^{q^i} τ^{i+j}.
pub fn twisted_mul<R: FrobeniusRing>(r: &R, f: &TwistedPoly<R::Elem>, g: &TwistedPoly<R::Elem>) -> Result<TwistedPoly<R::Elem>> {
    check(r, &f.carrier)?;
    check(r, &g.carrier)?;
    if f.coeffs.is_empty() || g.coeffs.is_empty() {
        return Ok(TwistedPoly::new(r, vec![]));
    }
    let mut out = vec![r.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    let mut gi: Vec<R::Elem> = g.coeffs.clone();
    for (i, a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            gi = gi.iter().map(|b| r.frob(b)).collect();
        }
        if r.is_zero(a) {
            continue;
        }
        for (j, b) in gi.iter().enumerate() {
            out[i + j] = r.add(&out[i + j], &r.mul(a, b));
        }
    }
    Ok(TwistedPoly::new(r, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_algebra::{FqField, PolyRing};

    #[test]
    fn twist_rule() {
        let a = PolyRing::new(FqField::prime(3).unwrap());
        let tau = TwistedPoly::tau(&a);
        let t = TwistedPoly::constant(&a, a.t());
        let l = twisted_mul(&a, &tau, &t).unwrap();
        assert_eq!(l.coeffs, vec![vec![], vec![0, 0, 0, 1]]);
        assert_eq!(twisted_mul(&a, &l, &TwistedPoly::constant(&a, a.one())).unwrap(), l);
    }

    #[test]
    fn carlitz_square() {
        let a = PolyRing::new(FqField::prime(2).unwrap());
        let phi = TwistedPoly::new(&a, vec![a.t(), a.one()]);
        let sq = twisted_mul(&a, &phi, &phi).unwrap();
        // t² + (t + t²)τ + τ²
        assert_eq!(sq.coeffs, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1]]);
    }

    #[test]
    fn carrier_mismatch() {
        let a = PolyRing::new(FqField::prime(2).unwrap());
        let r = ResidueRing::new(&a, &[1, 1, 1]);
        let f = TwistedPoly::tau(&r);
        let g = TwistedPoly::tau(&a);
        assert!(matches!(twisted_mul(&a, &f, &g), Err(Error::CarrierMismatch)));
    }
}
