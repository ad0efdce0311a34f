//! Nuclear automorphisms at finite Z-precision and the truncated trace
//! identity over F_q[G][Z]/Z^N.

pub mod quotient;
pub mod trace;
pub mod trunc;

pub use quotient::{compact_quotient, min_ball, Ambient, CompactQuotient};
pub use trace::{
    class_truncated, euler_class_truncated, phi_e_sequence, trace_formula_verify, trace_formula_with_bound, varphialpha_check, NuclearSeq,
    TraceReport,
};
pub use trunc::{class_of_terms, decomposition_for, TruncGroupSeries, TruncRing};
