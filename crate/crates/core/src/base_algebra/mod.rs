//! Exact arithmetic in F_q, A = F_q[t] and F_∞ = F_q((1/t)), plus normal
//! forms of A-matrices.

pub mod fq;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod smith;

pub use fq::{FieldSpec, FqField};
pub use laurent::{laurent_arith, rational_to_series, LaurentOp, LaurentRing, LaurentSeries};
pub use poly::{enumerate_monic_irreducibles, fmt_poly, irreducible_count, FqPoly, PolyA, PolyRing};
pub use ring::{Mat, Ring};
pub use smith::{hermite_reduce, hermite_rows, smith_invariants, InvariantFactors};
