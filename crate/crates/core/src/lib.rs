//! Exact arithmetic for equivariant L-values of Drinfeld modules over
//! F_q[t]: group-ring determinants, Fitting ideals, truncated Euler
//! products, nuclear trace identities and class-module invariants.

pub mod base_algebra;
pub mod config;
pub mod drinfeld;
pub mod error;
pub mod function_field;
pub mod group_algebra;
pub mod invariants;
pub mod lseries;
pub mod nuclear;

pub use base_algebra::{FqField, FqPoly, LaurentSeries, Mat, PolyA, PolyRing, Ring};
pub use error::{Error, Result};
pub use function_field::FiniteAGModule;
pub use group_algebra::{CentralIdeal, DecompositionData, FiniteGroup, GroupRing};
