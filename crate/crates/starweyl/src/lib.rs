//! Star products on the Weyl algebra and the transcendental calculus built on them.
//!
//! The crate has four layers:
//!
//! - [`weyl_poly`] — exact star-product algebra on multivariate polynomials for an
//!   arbitrary ordering key Λ = K + J, with the intertwiners that translate between
//!   ordering expressions. Coefficients are either Gaussian rationals with ħ as a
//!   formal indeterminate (zero-tolerance identities) or complex doubles.
//! - [`closed_forms`] — closed-form W₂ elements: star exponentials of linear and
//!   quadratic generators in the (κ,τ)-ordering family, vacuums, star sine/cosine,
//!   theta partial sums, and the one-parameter group law.
//! - [`quadrature`] — numerical evaluation of integral-defined star elements:
//!   the two inverses of z + uv/iħ, the star delta, star gamma and beta functions,
//!   infinite products, Hankel loops and contour residues.
//! - [`fock`] — a truncated matrix representation used purely as an independent
//!   cross-check of the star-product identities.

pub mod closed_forms;
pub mod error;
pub mod fock;
pub mod grid;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod special;
pub mod weyl_poly;

pub use error::{Error, Result};
pub use num_complex::Complex64;
