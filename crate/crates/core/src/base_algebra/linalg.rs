//! Gaussian elimination over F_q. `solve_left` and `mat_vec_left` treat
//! vectors as rows (x·m); `mat_vec` and `right_kernel` as columns.

use super::fq::FqField;
use super::ring::Mat;

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn rref(f: &FqField, m: &Mat<u32>) -> (Mat<u32>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv_e(a[r][c]).unwrap();
        for x in a[r].iter_mut() {
            *x = f.mul_e(*x, inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..cols {
                    let s = f.mul_e(k, a[r][j]);
                    a[i][j] = f.sub_e(a[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(f: &FqField, m: &Mat<u32>) -> usize {
    rref(f, m).1.len()
}

/// Inverse of a square matrix, None if singular.
pub fn inverse(f: &FqField, m: &Mat<u32>) -> Option<Mat<u32>> {
    let n = m.len();
    if n == 0 {
        return Some(vec![]);
    }
    let aug: Mat<u32> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let (red, piv) = rref(f, &aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of {x : x·m = 0}.
pub fn left_kernel(f: &FqField, m: &Mat<u32>) -> Mat<u32> {
    let t = super::ring::transpose(m);
    right_kernel(f, &t, m.len())
}

/// Basis of {x : m·x = 0} for m with `cols` columns.
pub fn right_kernel(f: &FqField, m: &Mat<u32>, cols: usize) -> Mat<u32> {
    if m.is_empty() {
        return (0..cols).map(|i| (0..cols).map(|j| u32::from(i == j)).collect()).collect();
    }
    let (red, piv) = rref(f, m);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg_e(red[r][fc]);
            }
            v
        })
        .collect()
}

/// x with x·m = v, if any.
pub fn solve_left(f: &FqField, m: &Mat<u32>, v: &[u32]) -> Option<Vec<u32>> {
    // transpose: mᵀ x = v
    let rows = m.len();
    let cols = v.len();
    let aug: Mat<u32> = (0..cols)
        .map(|j| {
            let mut r: Vec<u32> = (0..rows).map(|i| m[i][j]).collect();
            r.push(v[j]);
            r
        })
        .collect();
    let (red, piv) = rref(f, &aug);
    if piv.contains(&rows) {
        return None;
    }
    let mut x = vec![0u32; rows];
    for (r, &pc) in piv.iter().enumerate() {
        x[pc] = red[r][rows];
    }
    Some(x)
}

pub fn mat_vec_left(f: &FqField, v: &[u32], m: &Mat<u32>) -> Vec<u32> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut out = vec![0u32; cols];
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for j in 0..cols {
            out[j] = f.add_e(out[j], f.mul_e(x, m[i][j]));
        }
    }
    out
}

/// m·v for a column vector v.
pub fn mat_vec(f: &FqField, m: &Mat<u32>, v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add_e(acc, f.mul_e(a, b))))
        .collect()
}
