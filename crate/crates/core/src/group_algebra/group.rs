use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite group on ids 0..n with 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub name: String,
    pub order: usize,
    /// table[a][b] = a·b
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub abelian: bool,
    pub commutator_order: usize,
}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Error::Config(format!("group.cayley: {m}"));
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(bad("table must be square and nonempty".into()));
        }
        for (a, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(bad(format!("row {a} is not a permutation")));
                }
            }
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity".into()));
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(bad(format!("associativity fails at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).unwrap()).collect();
        let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        let mut g = FiniteGroup { name: name.into(), order: n, table, inverse, abelian, commutator_order: 1 };
        let comms: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(g.inverse[a], g.inverse[b]), g.mul(a, b)))
            .collect();
        g.commutator_order = g.generated_subgroup(&comms).len();
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::from_table("1", vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("C{n}"), table).unwrap()
    }

    /// Permutations of {0,1,2}; ids in the order id, (01), (02), (12),
    /// (012), (021). Composition (σ·τ)(i) = σ(τ(i)).
    pub fn s3() -> Self {
        let perms = Self::s3_perms();
        let idx = |p: [usize; 3]| perms.iter().position(|&x| x == p).unwrap();
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| idx([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        Self::from_table("S3", table).unwrap()
    }

    pub fn s3_perms() -> [[usize; 3]; 6] {
        [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }

    /// Elements of the cyclic subgroup generated by a, as powers a^0, a^1, ...
    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        (0..self.element_order(a)).map(|k| self.pow(a, k)).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = vec![];
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.order).map(|g| self.mul(self.mul(g, a), self.inverse[g])).collect();
            cls.sort();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }
}
