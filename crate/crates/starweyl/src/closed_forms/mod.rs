//! Closed-form W₂ elements and their algebra.

pub mod expelem;
pub mod ops;

pub use expelem::{poly_star_exp, ExpCombination, ExpElement, KappaTau, Side};
pub use ops::{
    antivacuum, evolution_series, exp_group_mul, gaussian_star_gaussian, intertwine_exp,
    linear_exp_mul, singular_locus, star_cos, star_exp_linear, star_exp_quadratic, star_exp_uv,
    star_sin, theta_partial_sum, vacuum, SingularLocus, ThetaSum, UvFamily,
};
