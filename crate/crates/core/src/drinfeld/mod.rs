//! Twisted polynomials, Drinfeld modules over A and their exponentials.

pub mod exp;
pub mod module;
pub mod twisted;

pub use exp::{exp_coefficients, exp_eval, ExpSeries, RatFn};
pub use module::{act_on_module, e_module, DrinfeldModule, DrinfeldSpec};
pub use twisted::{twisted_mul, Carrier, FrobeniusRing, ResidueRing, TwistedPoly};
