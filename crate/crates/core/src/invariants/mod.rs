//! Unit lattice, class module, regulator and the class-number-formula
//! verifiers.

pub mod normal;
pub mod ball;
pub mod units;
pub mod classmod;
pub mod regulator;
pub mod checks;

pub use ball::Ball;
pub use checks::{mt2_check, mt3_check, stages, verify_cnf, CnfReport, MtIIIReport, MtIIReport, Options, PsiVerdict, Stages};
pub use classmod::{class_module, ClassModule};
pub use regulator::{VolumeClass, EnlargedLattice};
pub use units::{unit_lattice, UnitCheck, UnitLattice};
