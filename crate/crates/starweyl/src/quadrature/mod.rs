//! Numerical evaluation of integral-defined star elements.

pub mod evaluator;
pub mod gammabeta;
pub mod inverses;
pub mod kernel;
pub mod quad;
pub mod residue;

pub use evaluator::{
    star_product, star_sin_product, vacuum_sandwich, IntegralTerm, KernelKind, Path,
    StarFunctionEvaluator, VacuumTerm, Weight,
};
pub use inverses::{
    continue_inverse, defect_projection, inverse_minus, inverse_minus_x, inverse_plus,
    inverse_plus_unchecked, left_right_inverses, linear_inverse,
    linear_inverse_difference_closed, resolvent_combination, star_delta, DefectProjection,
    LinearInverses,
};
pub use gammabeta::{
    product_gamma, product_gamma_auto, product_sin, product_sin_accelerated, reciprocal_gamma,
    reciprocal_gamma_product, sin_factor_product, sin_inverse_comparison, star_beta, star_gamma,
    ProductInfo, SinInverseComparison,
};
pub use quad::{
    gauss_legendre, integrate, pairwise_sum, tanh_sinh, QuadResult, QuadratureSpec, Scheme,
};
pub use residue::{
    hankel_axis_integrands, hankel_loop, laguerre_psi, laguerre_psi_dual, laguerre_series,
    residue_at, solveq_residual,
};
