//! Bundled covers.

use super::cover::{CoverSpec, GroupSpec};
use crate::base_algebra::FieldSpec;

fn c2() -> GroupSpec {
    GroupSpec { kind: Some("cyclic".into()), order: Some(2), cayley: None }
}

/// K = k, G = 1.
pub fn trivial(q: u32) -> CoverSpec {
    CoverSpec {
        field: FieldSpec { ell: q, e: 1, modulus: None },
        g: vec![vec![], vec![1]],
        basis: None,
        denominator: None,
        group: GroupSpec { kind: Some("trivial".into()), order: None, cayley: None },
        action: vec![vec![vec![vec![1]]]],
        maximal: true,
        taming_basis: None,
    }
}

/// x² = c·t with x ↦ −x.
fn quadratic(q: u32, c: i64) -> CoverSpec {
    CoverSpec {
        field: FieldSpec { ell: q, e: 1, modulus: None },
        g: vec![vec![0, -c], vec![], vec![1]],
        basis: None,
        denominator: None,
        group: c2(),
        action: vec![vec![vec![vec![1]], vec![vec![], vec![1]]], vec![vec![vec![1]], vec![vec![], vec![-1]]]],
        maximal: true,
        taming_basis: None,
    }
}

/// q = 3, x² = t.
pub fn kummer_quadratic_f3() -> CoverSpec {
    quadratic(3, 1)
}

/// q = 3, x² = −t: x is a nonzero t-torsion point of the Carlitz module.
pub fn carlitz_torsion_f3() -> CoverSpec {
    quadratic(3, -1)
}

/// q = 2, y² + t·y + t = 0 (y = t·x with x² + x = 1/t), σ(y) = y + t.
/// Eisenstein at t, so A[y] is maximal; wild at t. Taming basis {t, y}.
pub fn wild_f2() -> CoverSpec {
    CoverSpec {
        field: FieldSpec { ell: 2, e: 1, modulus: None },
        g: vec![vec![0, 1], vec![0, 1], vec![1]],
        basis: None,
        denominator: None,
        group: c2(),
        action: vec![vec![vec![vec![1]], vec![vec![], vec![1]]], vec![vec![vec![1]], vec![vec![0, 1], vec![1]]]],
        maximal: true,
        taming_basis: Some(vec![vec![vec![0, 1]], vec![vec![], vec![1]]]),
    }
}
