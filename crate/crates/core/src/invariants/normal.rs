//! Monic normal form and inversion in F_q[G]((t^{-1})) for abelian G with
//! F_q[G] semisimple. An element splits along idempotents e into parts
//! e·x whose leading coefficient is a unit of e·F_q[G]; dividing each part
//! by that coefficient gives the representative modulo A[G]^×.

use crate::base_algebra::linalg::solve_left;
use crate::base_algebra::Ring;
use crate::error::{Error, Result};
use crate::group_algebra::FqG;
use crate::lseries::AlgSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub idempotent: Vec<u32>,
    /// pinv·lead = idempotent
    pub pinv: Vec<u32>,
    pub top: i64,
}

/// r with r·c² = c; exists for every c when F_q[G] is semisimple.
fn quasi_inverse(r: &FqG, c: &[u32]) -> Result<Vec<u32>> {
    let c2 = r.mul(&c.to_vec(), &c.to_vec());
    let rows: Vec<Vec<u32>> = (0..r.n()).map(|g| r.mul(&c2, &r.basis(g))).collect();
    solve_left(&r.base, &rows, c)
        .ok_or_else(|| Error::HypothesisViolated("leading coefficient has no quasi-inverse: F_q[G] is not semisimple".into()))
}

pub fn components(r: &FqG, x: &AlgSeries) -> Result<Vec<Component>> {
    let mut taken = r.zero();
    let mut out = vec![];
    while !r.is_one(&taken) {
        let rest = r.sub(&r.one(), &taken);
        let Some((k, c)) = x
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(k, a)| (k, r.mul(&rest, a)))
            .find(|(_, c)| !r.is_zero(c))
        else {
            return Err(Error::PrecisionExhausted("a component of the element vanishes within precision".into()));
        };
        let q = quasi_inverse(r, &c)?;
        let e = r.mul(&q, &c);
        let pinv = r.mul(&e, &q);
        taken = r.add(&taken, &e);
        out.push(Component { idempotent: e, pinv, top: x.floor + k as i64 });
    }
    Ok(out)
}

fn scale(r: &FqG, c: &[u32], x: &AlgSeries) -> AlgSeries {
    x.map_coeffs(r, |a| r.mul(&c.to_vec(), &a.to_vec()))
}

/// Representative of x·A[G]^× with every component monic.
pub fn monic_normal(r: &FqG, x: &AlgSeries) -> Result<AlgSeries> {
    let comps = components(r, x)?;
    let mut acc = AlgSeries::zero(x.floor);
    for c in &comps {
        acc = acc.add(r, &scale(r, &c.pinv, x));
    }
    Ok(acc)
}

/// Per-component t-degrees, in the order of `components`.
pub fn degrees(r: &FqG, x: &AlgSeries) -> Result<Vec<i64>> {
    Ok(components(r, x)?.iter().map(|c| c.top).collect())
}

/// 1/x down to `floor`, or as deep as the precision of x allows.
pub fn invert(r: &FqG, x: &AlgSeries, floor: i64) -> Result<AlgSeries> {
    let mut acc = AlgSeries::zero(floor);
    for c in components(r, x)? {
        // y = pinv·x·t^{-top} + (1 − e) has leading coefficient 1
        let y = scale(r, &c.pinv, x);
        let y = AlgSeries::new(r, y.floor - c.top, y.coeffs.clone());
        let y = y.add(r, &AlgSeries::from_poly(r, &[r.sub(&r.one(), &c.idempotent)], y.floor));
        let inv = y.invert_monic(r, (floor + c.top).max(y.floor))?;
        let part = scale(r, &r.mul(&c.pinv, &c.idempotent), &inv);
        acc = acc.add(r, &AlgSeries::new(r, part.floor - c.top, part.coeffs.clone()));
    }
    acc.truncate(floor.max(acc.floor))
}
