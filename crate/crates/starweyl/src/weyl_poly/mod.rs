//! Exact star-product algebra on polynomials for an arbitrary ordering key.

pub mod coeff;
pub mod json;
pub mod ordering;
pub mod poly;
pub mod star;

pub use coeff::{Coefficient, Exact128, ExactCoeff, GaussRational};
pub use ordering::OrderingKey;
pub use poly::{MultiIndex, Polynomial, MAX_VARS};
pub use star::{bumping_apply, commutator, intertwine, star_mul, star_pow, star_substitute};
