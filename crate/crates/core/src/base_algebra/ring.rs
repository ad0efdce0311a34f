//! Ring contexts. Elements are plain data; all arithmetic goes through a
//! context value so that the same generic code (determinants, matrix
//! products, truncated power series) runs over F_q, A, group rings and
//! the block rings of a decomposition.

use std::fmt::Debug;

pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        // binary ladder; only used for small constants
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Dense matrix, row major.
pub type Mat<E> = Vec<Vec<E>>;

pub fn identity<R: Ring>(r: &R, n: usize) -> Mat<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect())
        .collect()
}

pub fn zero_mat<R: Ring>(r: &R, rows: usize, cols: usize) -> Mat<R::Elem> {
    vec![vec![r.zero(); cols]; rows]
}

pub fn mat_mul<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zero_mat(r, n, m);
    for i in 0..n {
        assert_eq!(a[i].len(), k, "inner dimension mismatch");
        for l in 0..k {
            if r.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                let p = r.mul(&a[i][l], &b[l][j]);
                out[i][j] = r.add(&out[i][j], &p);
            }
        }
    }
    out
}

pub fn mat_add<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.add(u, v)).collect())
        .collect()
}

pub fn mat_sub<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> Mat<R::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.sub(u, v)).collect())
        .collect()
}

pub fn mat_scale<R: Ring>(r: &R, c: &R::Elem, a: &Mat<R::Elem>) -> Mat<R::Elem> {
    a.iter().map(|row| row.iter().map(|x| r.mul(c, x)).collect()).collect()
}

pub fn mat_map<R: Ring, S: Ring, F>(a: &Mat<R::Elem>, f: F) -> Mat<S::Elem>
where
    F: Fn(&R::Elem) -> S::Elem,
{
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

pub fn transpose<E: Clone>(a: &Mat<E>) -> Mat<E> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_is_zero<R: Ring>(r: &R, a: &Mat<R::Elem>) -> bool {
    a.iter().all(|row| row.iter().all(|x| r.is_zero(x)))
}

pub fn mat_eq<R: Ring>(r: &R, a: &Mat<R::Elem>, b: &Mat<R::Elem>) -> bool {
    a.len() == b.len() && mat_is_zero(r, &mat_sub(r, a, b))
}

/// Row vector times matrix.
pub fn vec_mat<R: Ring>(r: &R, v: &[R::Elem], a: &Mat<R::Elem>) -> Vec<R::Elem> {
    let m = if a.is_empty() { 0 } else { a[0].len() };
    let mut out = vec![r.zero(); m];
    for (l, x) in v.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for j in 0..m {
            out[j] = r.add(&out[j], &r.mul(x, &a[l][j]));
        }
    }
    out
}

/// Block-diagonal assembly of square blocks.
pub fn block_diag<R: Ring>(r: &R, blocks: &[Mat<R::Elem>]) -> Mat<R::Elem> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = zero_mat(r, n, n);
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    out
}
