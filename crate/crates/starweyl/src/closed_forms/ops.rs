//! Star exponentials of linear and quadratic generators, vacuums, the
//! one-parameter group law, star sine/cosine and theta partial sums.

use num_complex::Complex64;

use super::expelem::{ExpCombination, ExpElement, KappaTau};
use crate::error::{Error, Result};
use crate::weyl_poly::{star_mul, MultiIndex, Polynomial};

type C64 = Complex64;

const POLE_EPS: f64 = 1e-10;

/// Points t where the (κ,τ)-ordering expression of e_*^{t·2uv/iħ} blows up:
/// t₀ + iπℤ with 2t₀ = log((κ+1)/(κ-1)); empty for κ = ±1 (entire case).
#[derive(Clone, Copy, Debug)]
pub struct SingularLocus {
    pub base: Option<C64>,
    pub period: f64,
}

pub fn singular_locus(kappa: C64) -> SingularLocus {
    let one = C64::new(1.0, 0.0);
    if (kappa - one).norm() < 1e-14 || (kappa + one).norm() < 1e-14 {
        return SingularLocus {
            base: None,
            period: std::f64::consts::PI,
        };
    }
    let ratio = (kappa + one) / (kappa - one);
    SingularLocus {
        base: Some(ratio.ln() * 0.5),
        period: std::f64::consts::PI,
    }
}

impl SingularLocus {
    /// Distance from t to the nearest singular point (∞ if the locus is empty).
    pub fn distance(&self, t: C64) -> f64 {
        match self.base {
            None => f64::INFINITY,
            Some(t0) => {
                let k = ((t - t0).im / self.period).round();
                let mut d = f64::INFINITY;
                for dk in [-1.0, 0.0, 1.0] {
                    let p = t0 + C64::new(0.0, (k + dk) * self.period);
                    d = d.min((t - p).norm());
                }
                d
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_none()
    }
}

/// :e_*^{t·2uv/iħ}:_{(κ,τ)} = (2/Δ)·exp(((eᵗ-e⁻ᵗ)/Δ)²·τu²/iħ + ((eᵗ-e⁻ᵗ)/Δ)·2uv/iħ)
/// with Δ = (eᵗ+e⁻ᵗ) - κ(eᵗ-e⁻ᵗ).
pub fn star_exp_quadratic(t: C64, kt: KappaTau) -> Result<ExpElement> {
    let ep = t.exp();
    let em = (-t).exp();
    let delta = (ep + em) - kt.kappa * (ep - em);
    if delta.norm() < POLE_EPS * (1.0 + ep.norm() + em.norm()) {
        return Err(Error::SingularPoint(format!(
            "t = {t} is a singular point of the (κ,τ) expression (Δ ≈ 0)"
        )));
    }
    let beta = (ep - em) / delta;
    let alpha = kt.tau * beta * beta;
    Ok(ExpElement::gaussian(
        2.0 / delta,
        alpha,
        beta,
        C64::new(0.0, 0.0),
        kt,
    ))
}

/// :e_*^{t·uv/iħ}: — the same family at half the parameter.
pub fn star_exp_uv(t: C64, kt: KappaTau) -> Result<ExpElement> {
    star_exp_quadratic(t * 0.5, kt)
}

/// :e_*^{s·u_k/iħ}: = e^{s²K^{kk}/(4iħ)}·e^{s·u_k/iħ}; `var` 0 is u, 1 is v.
pub fn star_exp_linear(s: C64, var: usize, kt: KappaTau) -> ExpElement {
    let kkk = if var == 0 { C64::new(0.0, 0.0) } else { kt.tau };
    let amp = (s * s * kkk / (4.0 * kt.i_hbar())).exp();
    let mut e = ExpElement::constant(amp, kt);
    if var == 0 {
        e.lambda = s;
    } else {
        e.mu = s;
    }
    e
}

/// Product of two purely linear exponential elements:
/// e^{L₁} ⋆ e^{L₂} = e^{(iħ/2)·∇L₁ Λ ∇L₂}·e^{L₁+L₂}.
pub fn linear_exp_mul(a: &ExpElement, b: &ExpElement) -> Result<ExpElement> {
    if a.alpha.norm() + a.beta.norm() + a.gamma.norm() != 0.0
        || b.alpha.norm() + b.beta.norm() + b.gamma.norm() != 0.0
    {
        return Err(Error::Invalid(
            "linear_exp_mul needs purely linear exponents".into(),
        ));
    }
    let kt = a.ordering;
    let ord = kt.ordering_key();
    let ih = kt.i_hbar();
    let ga = [a.lambda / ih, a.mu / ih];
    let gb = [b.lambda / ih, b.mu / ih];
    let mut cross = C64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            cross += ord.lambda(i, j) * ga[i] * gb[j];
        }
    }
    let mut e = ExpElement::constant(a.amp * b.amp * (cross * ih * 0.5).exp(), kt);
    e.lambda = a.lambda + b.lambda;
    e.mu = a.mu + b.mu;
    e.prefactor = a.prefactor.mul(&b.prefactor);
    Ok(e)
}

/// The vacuum ϖ₀₀ = lim_{t→-∞} e_*^{t·2u⋆v/iħ}:
/// (2/(1+κ))·exp(-(1/iħ)(1/(1+κ))(2uv - τu²/(1+κ))); needs κ ≠ -1.
pub fn vacuum(kt: KappaTau) -> Result<ExpElement> {
    let onep = C64::new(1.0, 0.0) + kt.kappa;
    if onep.norm() < 1e-12 {
        return Err(Error::Domain("vacuum degenerates at κ = -1".into()));
    }
    Ok(ExpElement::gaussian(
        2.0 / onep,
        kt.tau / (onep * onep),
        -1.0 / onep,
        C64::new(0.0, 0.0),
        kt,
    ))
}

/// The antivacuum ϖ̄₀₀ = lim_{t→+∞} e_*^{t·2v⋆u/iħ}:
/// (2/(1-κ))·exp((1/iħ)(1/(1-κ))(2uv + τu²/(1-κ))); needs κ ≠ 1.
pub fn antivacuum(kt: KappaTau) -> Result<ExpElement> {
    let onem = C64::new(1.0, 0.0) - kt.kappa;
    if onem.norm() < 1e-12 {
        return Err(Error::Domain("antivacuum degenerates at κ = 1".into()));
    }
    Ok(ExpElement::gaussian(
        2.0 / onem,
        kt.tau / (onem * onem),
        1.0 / onem,
        C64::new(0.0, 0.0),
        kt,
    ))
}

/// A member of the one-parameter family e_*^{t·2uv/iħ}, including the two
/// idempotent limit points, with a scalar multiple carried along.
#[derive(Clone, Copy, Debug)]
pub enum UvFamily {
    Finite { scale: C64, t: C64 },
    Vacuum { scale: C64 },
    Antivacuum { scale: C64 },
}

impl UvFamily {
    pub fn finite(t: C64) -> Self {
        UvFamily::Finite {
            scale: C64::new(1.0, 0.0),
            t,
        }
    }

    pub fn vacuum() -> Self {
        UvFamily::Vacuum {
            scale: C64::new(1.0, 0.0),
        }
    }

    pub fn antivacuum() -> Self {
        UvFamily::Antivacuum {
            scale: C64::new(1.0, 0.0),
        }
    }

    pub fn to_exp_element(&self, kt: KappaTau) -> Result<ExpElement> {
        match *self {
            UvFamily::Finite { scale, t } => Ok(star_exp_quadratic(t, kt)?.scale(scale)),
            UvFamily::Vacuum { scale } => Ok(vacuum(kt)?.scale(scale)),
            UvFamily::Antivacuum { scale } => Ok(antivacuum(kt)?.scale(scale)),
        }
    }
}

/// Group law of the family: finite parameters add; a finite factor scales the
/// vacuum by e^{t} (the antivacuum by e^{-t}); vacuum ⋆ antivacuum diverges in
/// every ordering expression.
pub fn exp_group_mul(a: &UvFamily, b: &UvFamily) -> Result<UvFamily> {
    use UvFamily::*;
    Ok(match (*a, *b) {
        (Finite { scale: s1, t: t1 }, Finite { scale: s2, t: t2 }) => Finite {
            scale: s1 * s2,
            t: t1 + t2,
        },
        (Finite { scale: s, t }, Vacuum { scale: c }) | (Vacuum { scale: c }, Finite { scale: s, t }) => {
            Vacuum {
                scale: s * c * t.exp(),
            }
        }
        (Finite { scale: s, t }, Antivacuum { scale: c })
        | (Antivacuum { scale: c }, Finite { scale: s, t }) => Antivacuum {
            scale: s * c * (-t).exp(),
        },
        (Vacuum { scale: c1 }, Vacuum { scale: c2 }) => Vacuum { scale: c1 * c2 },
        (Antivacuum { scale: c1 }, Antivacuum { scale: c2 }) => Antivacuum { scale: c1 * c2 },
        (Vacuum { .. }, Antivacuum { .. }) | (Antivacuum { .. }, Vacuum { .. }) => {
            return Err(Error::Diverges(
                "ϖ₀₀ ⋆ ϖ̄₀₀ diverges in any ordering expression".into(),
            ))
        }
    })
}

/// Star product of two pure-uv Gaussians a·e^{β·2uv/iħ} by intertwining to the
/// Weyl expression, composing there and intertwining back. Diverges when the
/// Weyl-side denominator 1 + β₁β₂ vanishes (the ϖ₀₀ ⋆ ϖ̄₀₀ direction).
pub fn gaussian_star_gaussian(a: &ExpElement, b: &ExpElement) -> Result<ExpElement> {
    if !a.is_pure_uv() || !b.is_pure_uv() {
        return Err(Error::Invalid(
            "gaussian_star_gaussian needs pure e^{β·2uv/iħ} elements".into(),
        ));
    }
    let kt = a.ordering;
    let to_weyl = |amp: C64, beta: C64| -> Result<(C64, C64)> {
        let den = C64::new(1.0, 0.0) + beta * kt.kappa;
        if den.norm() < POLE_EPS * (1.0 + (beta * kt.kappa).norm()) {
            return Err(Error::Pole);
        }
        Ok((amp / den, beta / den))
    };
    let (a1, b1) = to_weyl(a.amp, a.beta)?;
    let (a2, b2) = to_weyl(b.amp, b.beta)?;
    let den = C64::new(1.0, 0.0) + b1 * b2;
    if den.norm() < POLE_EPS * (1.0 + (b1 * b2).norm()) {
        return Err(Error::Diverges(
            "Gaussian star product hits the divergent pairing".into(),
        ));
    }
    let amp_w = a1 * a2 / den;
    let beta_w = (b1 + b2) / den;
    // back to κ
    let den_back = C64::new(1.0, 0.0) - beta_w * kt.kappa;
    if den_back.norm() < POLE_EPS * (1.0 + (beta_w * kt.kappa).norm()) {
        return Err(Error::Pole);
    }
    Ok(ExpElement::gaussian(
        amp_w / den_back,
        C64::new(0.0, 0.0),
        beta_w / den_back,
        C64::new(0.0, 0.0),
        kt,
    ))
}

/// I_κ^{κ'} on g·e^{β·2uv/iħ}: g/(1-β(κ'-κ)) · e^{(β/(1-β(κ'-κ)))·2uv/iħ}.
pub fn intertwine_exp(e: &ExpElement, kappa_to: C64) -> Result<ExpElement> {
    if !e.is_pure_uv() {
        return Err(Error::Invalid(
            "the closed-form intertwiner applies to the g·e^{β·2uv/iħ} family".into(),
        ));
    }
    let dk = kappa_to - e.ordering.kappa;
    let den = C64::new(1.0, 0.0) - e.beta * dk;
    if den.norm() < POLE_EPS * (1.0 + (e.beta * dk).norm()) {
        return Err(Error::Pole);
    }
    let kt = KappaTau::new(kappa_to, e.ordering.tau, e.ordering.hbar);
    Ok(ExpElement::gaussian(
        e.amp / den,
        C64::new(0.0, 0.0),
        e.beta / den,
        C64::new(0.0, 0.0),
        kt,
    ))
}

/// sin_*π(z + uv/iħ) = (e^{iπz}·E₊ - e^{-iπz}·E₋)/(2i), E± the quadratic star
/// exponential at t = ±iπ/2. Diverges in the Weyl expression (κ = 0).
pub fn star_sin(z: C64, kt: KappaTau) -> Result<ExpCombination> {
    let (e_plus, e_minus) = half_pi_pair(kt)?;
    let i = C64::new(0.0, 1.0);
    let two_i = C64::new(0.0, 2.0);
    let mut c = ExpCombination::new();
    c.push((i * std::f64::consts::PI * z).exp() / two_i, e_plus);
    c.push(-(-i * std::f64::consts::PI * z).exp() / two_i, e_minus);
    Ok(c)
}

/// cos_*π(z + uv/iħ) = (e^{iπz}·E₊ + e^{-iπz}·E₋)/2; identically zero at z = 0.
pub fn star_cos(z: C64, kt: KappaTau) -> Result<ExpCombination> {
    let (e_plus, e_minus) = half_pi_pair(kt)?;
    let i = C64::new(0.0, 1.0);
    let mut c = ExpCombination::new();
    c.push((i * std::f64::consts::PI * z).exp() * 0.5, e_plus);
    c.push((-i * std::f64::consts::PI * z).exp() * 0.5, e_minus);
    Ok(c)
}

fn half_pi_pair(kt: KappaTau) -> Result<(ExpElement, ExpElement)> {
    let half_pi = C64::new(0.0, std::f64::consts::FRAC_PI_2);
    let mk = |t: C64| {
        star_exp_quadratic(t, kt).map_err(|_| {
            Error::Diverges(
                "e_*^{±iπ·uv/iħ} diverges in this ordering expression (κ = 0)".into(),
            )
        })
    };
    Ok((mk(half_pi)?, mk(-half_pi)?))
}

/// Partial theta sum Σ_{|n| ≤ N} e_*^{2n·u_k/iħ}; converges to the Jacobi
/// theta series as N → ∞ when Im K^{kk} < 0.
pub struct ThetaSum {
    pub combo: ExpCombination,
    /// Raised when Im K^{kk} ≥ 0, where the convergence claim fails.
    pub convergence_warning: bool,
}

pub fn theta_partial_sum(n_max: i64, var: usize, kt: KappaTau) -> ThetaSum {
    let kkk = if var == 0 { C64::new(0.0, 0.0) } else { kt.tau };
    let mut combo = ExpCombination::new();
    for n in -n_max..=n_max {
        combo.push(
            C64::new(1.0, 0.0),
            star_exp_linear(C64::new(2.0 * n as f64, 0.0), var, kt),
        );
    }
    ThetaSum {
        combo,
        convergence_warning: kkk.im >= 0.0,
    }
}

/// Order-`order` Picard iteration of the evolution equation d/dt f = H ⋆ f,
/// f₀ = 1, H the (κ,τ)-expression of 2uv/iħ. Independent series oracle for the
/// closed form.
pub fn evolution_series(t: C64, kt: KappaTau, order: usize) -> Result<Polynomial<C64>> {
    let ord = kt.ordering_key();
    let mut h = Polynomial::zero(2);
    h.add_term(MultiIndex::from_slice(&[1, 1]), 2.0 / kt.i_hbar());
    h.add_term(MultiIndex::zero(2), kt.kappa);
    let mut acc = Polynomial::one(2);
    let mut f = Polynomial::one(2);
    let mut tp = C64::new(1.0, 0.0);
    for m in 1..=order {
        f = star_mul(&h, &f, &ord, &kt.hbar)?.scale(&(C64::new(1.0, 0.0) / m as f64));
        tp *= t;
        acc = acc.add(&f.scale(&tp));
    }
    Ok(acc)
}
