//! Characteristic classes, Euler factors, truncated equivariant L-values and
//! Stickelberger elements.

pub mod algseries;
pub mod charclass;
pub mod euler;

pub use algseries::AlgSeries;
pub use charclass::{char_class, CharClass};
pub use euler::{
    augmentation, euler_factor, nrd_of_factors, prime_cutoff, primes_up_to, stickelberger, theta_truncated, theta_with_bound, zeta_partial, EulerFactor,
    LValueTrunc, StickelbergerElem,
};
