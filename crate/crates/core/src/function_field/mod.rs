//! The cover K/k, O_K as an A-lattice with G-action, residue modules and
//! taming modules.

pub mod cover;
pub mod kinf;
pub mod fixtures;
pub mod lattice;
pub mod module;

pub use cover::{build_cover, CoverSpec, GaloisCover, GroupSpec};
pub use lattice::{residue_module, tame_test, taming_module, Lattice, PrimeData, TameVerdict, TamingModule};
pub use module::FiniteAGModule;
