//! The integral kernels: κ-ordering expressions of e_*^{w·uv/iħ} along
//! contours, and the cos s = tanh(t/2) substitution that maps the real line
//! onto a finite s-interval with the kernel amplitude absorbed exactly.

use num_complex::Complex64;

use crate::closed_forms::{ExpElement, KappaTau};

type C64 = Complex64;

/// Amplitude and exponent coefficient of :e_*^{w·uv/iħ}:_κ
/// = amp·exp(β·2uv/iħ), amp = 2/((1-κ)e^{w/2} + (1+κ)e^{-w/2}),
/// β = (e^{w/2} - e^{-w/2})/((1-κ)e^{w/2} + (1+κ)e^{-w/2}).
/// Evaluated in the numerically dominant branch so |Re w| up to ~1400 is safe.
pub fn uv_kernel(w: C64, kappa: C64) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    if w.re >= 0.0 {
        let em = (-w).exp(); // e^{-w}
        let den = (one - kappa) + (one + kappa) * em;
        let amp = 2.0 * (-w * 0.5).exp() / den;
        let beta = (one - em) / den;
        (amp, beta)
    } else {
        let ep = w.exp(); // e^{w}
        let den = (one - kappa) * ep + (one + kappa);
        let amp = 2.0 * (w * 0.5).exp() / den;
        let beta = (ep - one) / den;
        (amp, beta)
    }
}

/// The kernel as an exponential element with unit amplitude (the caller folds
/// amp into its scalar weight so wraps can reuse the prefactor machinery).
pub fn kernel_element(beta: C64, kt: KappaTau) -> ExpElement {
    ExpElement::gaussian(
        C64::new(1.0, 0.0),
        kt.tau * beta * beta,
        beta,
        C64::new(0.0, 0.0),
        kt,
    )
}

/// t(s) = log((1+cos s)/(1-cos s)) = -2·log tan(-s/2) for s ∈ (-π, 0); maps
/// (-π, 0) ↗ onto ℝ with cos s = tanh(t/2).
pub fn t_of_s(s: f64) -> f64 {
    -2.0 * (-0.5 * s).tan().ln()
}

/// Substituted kernel data at s: (amp·dt/ds, β) where the product of the
/// kernel amplitude and the Jacobian collapses to 2/(1-κ·cos s).
pub fn substituted_kernel(s: f64, kappa: C64) -> (C64, C64) {
    let c = s.cos();
    let den = C64::new(1.0, 0.0) - kappa * c;
    (2.0 / den, C64::new(c, 0.0) / den)
}

/// s-interval for a real-axis piece of the t-line:
/// (-∞, 0] ↦ [-π, -π/2], [0, ∞) ↦ [-π/2, 0], ℝ ↦ [-π, 0].
pub fn s_interval_halfline_neg() -> (f64, f64) {
    (-std::f64::consts::PI, -std::f64::consts::FRAC_PI_2)
}

pub fn s_interval_halfline_pos() -> (f64, f64) {
    (-std::f64::consts::FRAC_PI_2, 0.0)
}

pub fn s_interval_fullline() -> (f64, f64) {
    (-std::f64::consts::PI, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::star_exp_uv;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kernel_matches_closed_form() {
        let kt = KappaTau::kappa_only(c(0.3, 0.4), c(1.0, 0.0));
        for w in [c(0.7, 0.2), c(-3.0, 1.0), c(25.0, -0.5), c(-30.0, 2.0)] {
            let (amp, beta) = uv_kernel(w, kt.kappa);
            let e = star_exp_uv(w, kt).unwrap();
            assert!((amp - e.amp).norm() < 1e-12 * (1.0 + e.amp.norm()));
            assert!((beta - e.beta).norm() < 1e-12);
        }
    }

    #[test]
    fn substitution_consistency() {
        // at s, the pair (2/(1-κc), c/(1-κc)) equals amp(t(s))·dt/ds and β(t(s))
        let kappa = c(0.2, -0.3);
        for s in [-2.8, -1.9, -1.2, -0.4] {
            let t = t_of_s(s);
            let (amp, beta) = uv_kernel(c(t, 0.0), kappa);
            let (aj, bj) = substituted_kernel(s, kappa);
            let dt_ds = -2.0 / s.sin();
            assert!((amp * dt_ds - aj).norm() < 1e-10 * (1.0 + aj.norm()));
            assert!((beta - bj).norm() < 1e-11);
            // and cos s = tanh(t/2)
            assert!((s.cos() - (t / 2.0).tanh()).abs() < 1e-12);
        }
    }
}
