//! Normal forms of matrices over A = F_q[t].

use serde::{Deserialize, Serialize};

use super::poly::{FqPoly, PolyA};
use super::ring::{Mat, Ring};

/// Invariant factors, each monic; the zero polynomial (empty vector) stands
/// for a free summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub factors: Vec<FqPoly>,
}

impl InvariantFactors {
    /// F_q-dimension of the presented module; None if it is infinite.
    pub fn dimension(&self) -> Option<usize> {
        self.factors.iter().try_fold(0, |acc, f| if f.is_empty() { None } else { Some(acc + f.len() - 1) })
    }

    pub fn nontrivial(&self) -> Vec<FqPoly> {
        self.factors.iter().filter(|f| f.len() != 1).cloned().collect()
    }
}

/// Invariant factors of the cokernel of T, read with rows as relations on
/// the column generators. The output has one entry per column.
pub fn smith_invariants(a: &PolyA, t: &Mat<FqPoly>) -> InvariantFactors {
    let rows = t.len();
    let cols = if rows == 0 { 0 } else { t[0].len() };
    let mut m = t.clone();
    let mut diag = vec![];
    let mut k = 0;
    while k < rows.min(cols) {
        // pivot: nonzero entry of least degree in the remaining block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if !x.is_empty() && best.is_none_or(|(_, _, d)| x.len() < d) {
                    best = Some((i, j, x.len()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let mut clean = true;
        for i in k + 1..rows {
            if m[i][k].is_empty() {
                continue;
            }
            let (qt, _) = a.divrem(&m[i][k], &m[k][k]);
            for j in k..cols {
                let s = a.mul(&qt, &m[k][j]);
                m[i][j] = a.sub(&m[i][j], &s);
            }
            if !m[i][k].is_empty() {
                clean = false;
            }
        }
        for j in k + 1..cols {
            if m[k][j].is_empty() {
                continue;
            }
            let (qt, _) = a.divrem(&m[k][j], &m[k][k]);
            for i in k..rows {
                let s = a.mul(&qt, &m[i][k]);
                m[i][j] = a.sub(&m[i][j], &s);
            }
            if !m[k][j].is_empty() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the rest by the pivot
        let mut bad = None;
        'find: for i in k + 1..rows {
            for j in k + 1..cols {
                if !a.divides(&m[k][k], &m[i][j]) {
                    bad = Some(i);
                    break 'find;
                }
            }
        }
        if let Some(i) = bad {
            for j in k..cols {
                let s = m[i][j].clone();
                m[k][j] = a.add(&m[k][j], &s);
            }
            continue;
        }
        diag.push(a.monic(&m[k][k]));
        k += 1;
    }
    while diag.len() < cols {
        diag.push(vec![]);
    }
    InvariantFactors { factors: diag }
}

/// Row Hermite normal form of the A-span of `rows` (vectors in A^n).
/// Nonzero rows only, pivots monic, entries above a pivot reduced modulo it.
pub fn hermite_rows(a: &PolyA, rows: &[Vec<FqPoly>]) -> Vec<Vec<FqPoly>> {
    let mut m: Vec<Vec<FqPoly>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_empty())).cloned().collect();
    if m.is_empty() {
        return m;
    }
    let n = m[0].len();
    let mut out: Vec<Vec<FqPoly>> = vec![];
    for col in 0..n {
        // gcd-combine every row with a nonzero entry in this column
        let mut pivot: Option<Vec<FqPoly>> = None;
        let mut rest = vec![];
        for r in m.drain(..) {
            if r[col].is_empty() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let (g, s, u) = a.xgcd(&p[col], &r[col]);
                    let pa = a.div_exact(&p[col], &g).unwrap();
                    let ra = a.div_exact(&r[col], &g).unwrap();
                    let newp: Vec<FqPoly> = (0..n).map(|j| a.add(&a.mul(&s, &p[j]), &a.mul(&u, &r[j]))).collect();
                    let other: Vec<FqPoly> = (0..n).map(|j| a.sub(&a.mul(&pa, &r[j]), &a.mul(&ra, &p[j]))).collect();
                    if other.iter().any(|x| !x.is_empty()) {
                        rest.push(other);
                    }
                    pivot = Some(newp);
                }
            }
        }
        m = rest;
        if let Some(p) = pivot {
            let inv = a.fq().inv_e(a.lead(&p[col])).unwrap();
            let p: Vec<FqPoly> = p.iter().map(|x| a.scale(&inv, x)).collect();
            out.push(p);
        }
    }
    // reduce above pivots
    for i in 0..out.len() {
        let pc = out[i].iter().position(|x| !x.is_empty()).unwrap();
        for k in 0..i {
            let (qt, _) = a.divrem(&out[k][pc], &out[i][pc]);
            if qt.is_empty() {
                continue;
            }
            for j in 0..n {
                let s = a.mul(&qt, &out[i][j]);
                out[k][j] = a.sub(&out[k][j], &s);
            }
        }
    }
    out
}

/// Reduce v against a Hermite basis; returns the remainder.
pub fn hermite_reduce(a: &PolyA, basis: &[Vec<FqPoly>], v: &[FqPoly]) -> Vec<FqPoly> {
    let mut v = v.to_vec();
    for b in basis {
        let pc = b.iter().position(|x| !x.is_empty()).unwrap();
        let (qt, _) = a.divrem(&v[pc], &b[pc]);
        if qt.is_empty() {
            continue;
        }
        for j in 0..v.len() {
            let s = a.mul(&qt, &b[j]);
            v[j] = a.sub(&v[j], &s);
        }
    }
    v
}
