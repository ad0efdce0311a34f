//! Group rings B[G], division-free determinants, matrix-ring decompositions,
//! reduced determinants, Fitting ideals and freeness over F_q[G].

pub mod decomposition;
pub mod det;
pub mod freeness;
pub mod group;
pub mod group_ring;
pub mod ideal;

pub use decomposition::{catalog_lookup, Block, DecompositionData, DecompositionSpec, ScAlgebra, VerifyReport};
pub use det::{charpoly_berkowitz, det_cofactor, det_commutative};
pub use freeness::{ct_free_basis, endo_in_free_basis, module_from_matrix, NotFreeCertificate, DEFAULT_SEED};
pub use group::FiniteGroup;
pub use group_ring::{BaseTag, FqG, GroupRing, LaurentG, AG};
pub use ideal::{fitting_ideal, fitting_ideal_minors, ideal_ops, CentralIdeal, IdealAnswer, IdealOp};
