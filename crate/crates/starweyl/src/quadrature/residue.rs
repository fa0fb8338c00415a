//! Contour residues of the quadratic star exponential, the Hankel loop, and
//! the Laguerre-series solutions of the residue ODE.

use std::sync::Arc;

use num_complex::Complex64;

use crate::closed_forms::KappaTau;
use crate::error::{Error, Result};
use crate::special::rising;

use super::evaluator::{IntegralTerm, KernelKind, Path, StarFunctionEvaluator, Weight};
use super::quad::QuadratureSpec;

type C64 = Complex64;

/// Φ_k(z, ·) = (1/2πi)∮_{C_k} :e_*^{ζ(z+2uv/iħ)}:₀ dζ over the circle of
/// radius π/4 centered at ζ = iπ(k+1/2), in the Weyl ordering expression.
///
/// Reparametrized by w = 2ζ the kernel becomes the standard one with poles at
/// odd multiples of iπ; the circle doubles to radius π/2 around iπ(2k+1).
pub fn residue_at(
    k: i64,
    z: C64,
    kt: KappaTau,
    spec: QuadratureSpec,
) -> Result<StarFunctionEvaluator> {
    if kt.kappa.norm() > 1e-12 || kt.tau.norm() > 1e-12 {
        return Err(Error::Invalid(
            "the residue contours are taken in the Weyl ordering expression".into(),
        ));
    }
    let center = C64::new(0.0, std::f64::consts::PI * (2 * k + 1) as f64);
    let radius = std::f64::consts::FRAC_PI_2;
    // neighbour poles sit 2π away; the doubled circle keeps 3π/2 clearance
    let clearance = 2.0 * std::f64::consts::PI - radius;
    if clearance < 0.1 {
        return Err(Error::ContourTooClose {
            min_dist: clearance,
        });
    }
    // (1/2πi)∮ e^{ζz}·E_{2ζ} dζ = (1/2πi)·(1/2)∮ e^{wz/2}·E_w dw
    let scale = C64::new(0.0, -1.0) / (4.0 * std::f64::consts::PI);
    let weight = Weight::Fn(Arc::new(move |w: C64| scale * (w * z * 0.5).exp()));
    Ok(StarFunctionEvaluator {
        kt,
        spec,
        terms: vec![IntegralTerm {
            path: Path::Circle { center, radius },
            weight,
            kernel: KernelKind::UvStar,
            wrap_left: None,
            wrap_right: None,
        }],
        vacuum_terms: Vec::new(),
        label: format!("residue Φ_{k} at z={z}"),
    })
}

/// A_* at loop size e^τ: (1/2π)∫₀^{2π} e^{e^{τ+iθ} + (τ+iθ)}
/// :e_*^{(τ+iθ)·2uv/iħ}:₀ dθ, the circle part of the Hankel contour, in the
/// parametrization whose Weyl amplitude is 1/cosh(τ+iθ) (the one for which
/// the two axis pieces of the contour cancel). Tends to 0 as τ → -∞.
pub fn hankel_loop(tau: f64, kt: KappaTau, spec: QuadratureSpec) -> Result<StarFunctionEvaluator> {
    kt.require_off_excluded_ray()?;
    // vertical segment ζ = τ + iθ; in the standard kernel variable w = 2ζ the
    // path runs 2τ → 2τ + 4πi and dζ = dw/2, so (1/2π)∫dθ = (1/2πi)∫dζ
    let scale = C64::new(0.0, -0.5) / (2.0 * std::f64::consts::PI);
    let weight = Weight::Fn(Arc::new(move |w: C64| {
        let zeta = w * 0.5;
        scale * (zeta.exp() + zeta).exp()
    }));
    Ok(StarFunctionEvaluator {
        kt,
        spec,
        terms: vec![IntegralTerm {
            path: Path::Segment {
                a: C64::new(2.0 * tau, 0.0),
                b: C64::new(2.0 * tau, 4.0 * std::f64::consts::PI),
            },
            weight,
            kernel: KernelKind::UvStar,
            wrap_left: None,
            wrap_right: None,
        }],
        vacuum_terms: Vec::new(),
        label: format!("Hankel loop at τ={tau}"),
    })
}

/// The two pulled-back integrands on the axis part of the Hankel contour,
/// which cancel pointwise: both the scalar factor e^{ζ} and the kernel
/// amplitude 1/cosh ζ flip sign together between ζ = τ+iπ and ζ = τ-iπ.
pub fn hankel_axis_integrands(tau: f64, kt: KappaTau, u: C64, v: C64) -> (C64, C64) {
    let eval = |zeta: C64| {
        let (amp, beta) = super::kernel::uv_kernel(2.0 * zeta, kt.kappa);
        (zeta.exp().exp()) * zeta.exp() * amp * (beta * 2.0 * u * v / kt.i_hbar()).exp()
    };
    let up = eval(C64::new(tau, std::f64::consts::PI));
    let down = eval(C64::new(tau, -std::f64::consts::PI));
    (up, down)
}

const LAGUERRE_CAP: usize = 600;

/// L⁰_ν(x) = Σₙ (-ν)ₙ xⁿ/(n!)², an entire function of both arguments.
pub fn laguerre_series(nu: C64, x: C64) -> Result<C64> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..LAGUERRE_CAP {
        let nf = (n + 1) as f64;
        term *= (-nu + n as f64) * x / (nf * nf);
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesCap)
}

/// Ψ_z(w) = e^{-iw}·L⁰_{(z-1)/2}(2iw): the entire solution of the residue ODE
/// (iz+w)f + f' + wf'' = 0 with f(0) = 1.
pub fn laguerre_psi(z: C64, w: C64) -> Result<C64> {
    let i = C64::new(0.0, 1.0);
    Ok((-i * w).exp() * laguerre_series((z - 1.0) * 0.5, 2.0 * i * w)?)
}

/// The other expression of the same solution: e^{iw}·L⁰_{-(z+1)/2}(-2iw).
pub fn laguerre_psi_dual(z: C64, w: C64) -> Result<C64> {
    let i = C64::new(0.0, 1.0);
    Ok((i * w).exp() * laguerre_series(-(z + 1.0) * 0.5, -2.0 * i * w)?)
}

/// Residual of (iz+w)f + f' + wf'' by five-point central differences.
pub fn solveq_residual(f: &dyn Fn(f64) -> C64, z: C64, w: f64, h: f64) -> C64 {
    let fm2 = f(w - 2.0 * h);
    let fm1 = f(w - h);
    let f0 = f(w);
    let fp1 = f(w + h);
    let fp2 = f(w + 2.0 * h);
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (C64::new(0.0, 1.0) * z + w) * f0 + d1 + w * d2
}

/// (a)ₙ-based check value used by the Laguerre tests.
pub fn pochhammer(a: C64, n: usize) -> C64 {
    rising(a, n)
}
