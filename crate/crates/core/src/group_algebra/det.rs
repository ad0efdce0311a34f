//! Division-free determinants over commutative rings with zero divisors.

use crate::base_algebra::{Mat, Ring};

/// Characteristic polynomial det(xI − T) by Berkowitz's algorithm,
/// coefficients from x^n down to x^0.
pub fn charpoly_berkowitz<R: Ring>(r: &R, t: &Mat<R::Elem>) -> Vec<R::Elem> {
    let n = t.len();
    let mut v = vec![r.one()];
    for k in 0..n {
        // leading (k+1)×(k+1) block = [[M, C], [Rw, a]]
        let a = &t[k][k];
        // column: 1, −a, −Rw·C, −Rw·M·C, …, −Rw·M^{k−1}·C
        let mut col = Vec::with_capacity(k + 2);
        col.push(r.one());
        col.push(r.neg(a));
        let mut mc: Vec<R::Elem> = (0..k).map(|i| t[i][k].clone()).collect();
        for _ in 0..k {
            let rc = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&t[k][j], &mc[j])));
            col.push(r.neg(&rc));
            mc = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&t[i][j], &mc[j]))))
                .collect();
        }
        // Toeplitz (k+2)×(k+1) times v
        let nv: Vec<R::Elem> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k)).fold(r.zero(), |acc, j| {
                    if i - j < col.len() {
                        r.add(&acc, &r.mul(&col[i - j], &v[j]))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        v = nv;
    }
    v
}

pub fn det_commutative<R: Ring>(r: &R, t: &Mat<R::Elem>) -> R::Elem {
    let n = t.len();
    if n == 0 {
        return r.one();
    }
    let cp = charpoly_berkowitz(r, t);
    if n % 2 == 0 {
        cp[n].clone()
    } else {
        r.neg(&cp[n])
    }
}

/// Cofactor expansion along the first row; exponential, kept as an oracle.
pub fn det_cofactor<R: Ring>(r: &R, t: &Mat<R::Elem>) -> R::Elem {
    let n = t.len();
    if n == 0 {
        return r.one();
    }
    let mut acc = r.zero();
    for j in 0..n {
        if r.is_zero(&t[0][j]) {
            continue;
        }
        let minor: Mat<R::Elem> = t[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = r.mul(&t[0][j], &det_cofactor(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}
