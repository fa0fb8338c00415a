//! Quadrature-backed star elements: weighted contour integrals of the
//! exponential kernels, with polynomial wraps and vacuum correction terms.
//!
//! Values are deterministic for a fixed spec; every term self-validates by
//! node doubling, and truncated contours additionally by truncation doubling.

use std::sync::Arc;

use num_complex::Complex64;

use crate::closed_forms::{poly_star_exp, singular_locus, vacuum, ExpElement, KappaTau, Side};
use crate::error::{Error, Result};
use crate::weyl_poly::{star_mul, Polynomial};

use super::kernel::{
    kernel_element, s_interval_fullline, substituted_kernel, t_of_s, uv_kernel,
};
use super::quad::{integrate, tanh_sinh, QuadResult, QuadratureSpec, Scheme};

type C64 = Complex64;

/// Scalar weight w(t) along a contour.
#[derive(Clone)]
pub enum Weight {
    /// Σ c·e^{r·t} — closed under the sliding-identity calculus.
    ExpSum(Vec<(C64, C64)>),
    Fn(Arc<dyn Fn(C64) -> C64 + Send + Sync>),
}

impl Weight {
    pub fn one() -> Self {
        Weight::ExpSum(vec![(C64::new(1.0, 0.0), C64::new(0.0, 0.0))])
    }

    pub fn exp(coeff: C64, rate: C64) -> Self {
        Weight::ExpSum(vec![(coeff, rate)])
    }

    pub fn eval(&self, t: C64) -> C64 {
        match self {
            Weight::ExpSum(parts) => {
                let mut acc = C64::new(0.0, 0.0);
                for (c, r) in parts {
                    acc += c * (r * t).exp();
                }
                acc
            }
            Weight::Fn(f) => f(t),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        match self {
            Weight::ExpSum(parts) => {
                Weight::ExpSum(parts.iter().map(|(c, r)| (c * s, *r)).collect())
            }
            Weight::Fn(f) => {
                let f = f.clone();
                Weight::Fn(Arc::new(move |t| s * f(t)))
            }
        }
    }
}

impl std::fmt::Debug for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Weight::ExpSum(p) => write!(f, "ExpSum({} parts)", p.len()),
            Weight::Fn(_) => write!(f, "Fn"),
        }
    }
}

/// Contour in the kernel parameter plane. Line paths are real intervals with
/// optional infinite ends (handled by the cos s = tanh(t/2) substitution).
#[derive(Clone, Debug)]
pub enum Path {
    Line { lo: f64, hi: f64 },
    ShiftedLine { shift: C64, lo: f64, hi: f64 },
    /// Straight segment in the complex parameter plane, traversed a → b.
    Segment { a: C64, b: C64 },
    Circle { center: C64, radius: f64 },
}

impl Path {
    pub fn half_line_neg() -> Self {
        Path::Line {
            lo: f64::NEG_INFINITY,
            hi: 0.0,
        }
    }

    pub fn half_line_pos() -> Self {
        Path::Line {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    pub fn full_line() -> Self {
        Path::Line {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// t ↦ :e_*^{t·uv/iħ}:_κ
    UvStar,
    /// t ↦ :e_*^{t·v/iħ}:_{(κ,τ)} = e^{t²τ/4iħ}·e^{t·v/iħ}
    LinearV,
}

#[derive(Clone, Debug)]
pub struct IntegralTerm {
    pub path: Path,
    pub weight: Weight,
    pub kernel: KernelKind,
    pub wrap_left: Option<Polynomial<C64>>,
    pub wrap_right: Option<Polynomial<C64>>,
}

/// coeff · (u/iħ)^order ⋆ ϖ₀₀ ⋆ v^order, kept in closed form. `order` is None
/// once a generic polynomial has been star-applied (still evaluable, but the
/// sliding rules no longer apply).
#[derive(Clone, Debug)]
pub struct VacuumTerm {
    pub coeff: C64,
    pub order: Option<usize>,
    pub element: ExpElement,
}

/// Builds coeff·(u/iħ)^j ⋆ ϖ₀₀ ⋆ v^j as an exponential element.
pub fn vacuum_sandwich(j: usize, kt: KappaTau) -> Result<ExpElement> {
    let mut e = vacuum(kt)?;
    let u = Polynomial::<C64>::var(2, 0);
    let v = Polynomial::<C64>::var(2, 1);
    for _ in 0..j {
        e = poly_star_exp(&u, &e, Side::Left)?;
        e = poly_star_exp(&v, &e, Side::Right)?;
    }
    let ih = kt.i_hbar();
    Ok(e.scale(ih.powi(-(j as i32))))
}

/// A star element defined by weighted kernel integrals plus vacuum terms.
#[derive(Clone, Debug)]
pub struct StarFunctionEvaluator {
    pub kt: KappaTau,
    pub spec: QuadratureSpec,
    pub terms: Vec<IntegralTerm>,
    pub vacuum_terms: Vec<VacuumTerm>,
    pub label: String,
}

const LINE_CLEARANCE: f64 = 1e-9; // 10 × the pole threshold of the closed forms

fn shifted_line_clearance(kt: KappaTau, shift: C64, lo: f64, hi: f64) -> f64 {
    // kernel poles in the uv-parametrization sit at w = 2t₀ + 2πiℤ
    let locus = singular_locus(kt.kappa);
    let base = match locus.base {
        None => return f64::INFINITY,
        Some(t0) => 2.0 * t0,
    };
    let period = 2.0 * std::f64::consts::PI;
    let mut min_d = f64::INFINITY;
    let steps = 200;
    for i in 0..=steps {
        let t = lo + (hi - lo) * i as f64 / steps as f64;
        let w = C64::new(t, 0.0) + shift;
        let k = ((w - base).im / period).round();
        for dk in [-1.0, 0.0, 1.0] {
            let p = base + C64::new(0.0, (k + dk) * period);
            min_d = min_d.min((w - p).norm());
        }
    }
    min_d
}

impl StarFunctionEvaluator {
    pub fn single(
        kt: KappaTau,
        spec: QuadratureSpec,
        path: Path,
        weight: Weight,
        label: &str,
    ) -> Result<Self> {
        if let Path::ShiftedLine { shift, lo, hi } = path {
            let d = shifted_line_clearance(kt, shift, lo, hi);
            if d < LINE_CLEARANCE {
                return Err(Error::ContourTooClose { min_dist: d });
            }
        }
        Ok(StarFunctionEvaluator {
            kt,
            spec,
            terms: vec![IntegralTerm {
                path,
                weight,
                kernel: KernelKind::UvStar,
                wrap_left: None,
                wrap_right: None,
            }],
            vacuum_terms: Vec::new(),
            label: label.to_string(),
        })
    }

    fn wrapped_kernel_value(&self, term: &IntegralTerm, beta: C64, u: C64, v: C64) -> C64 {
        if term.wrap_left.is_none() && term.wrap_right.is_none() {
            let e = kernel_element(beta, self.kt);
            return e.eval(u, v);
        }
        let mut e = kernel_element(beta, self.kt);
        if let Some(r) = &term.wrap_right {
            e = poly_star_exp(r, &e, Side::Right).expect("dimension fixed at 2");
        }
        if let Some(l) = &term.wrap_left {
            e = poly_star_exp(l, &e, Side::Left).expect("dimension fixed at 2");
        }
        e.eval(u, v)
    }

    fn linear_kernel_value(&self, term: &IntegralTerm, t: C64, u: C64, v: C64) -> C64 {
        let kt = self.kt;
        let amp = (t * t * kt.tau / (4.0 * kt.i_hbar())).exp();
        let mut e = ExpElement::constant(amp, kt);
        e.mu = t;
        if let Some(r) = &term.wrap_right {
            e = poly_star_exp(r, &e, Side::Right).expect("dimension fixed at 2");
        }
        if let Some(l) = &term.wrap_left {
            e = poly_star_exp(l, &e, Side::Left).expect("dimension fixed at 2");
        }
        e.eval(u, v)
    }

    fn eval_term(&self, term: &IntegralTerm, u: C64, v: C64, spec: &QuadratureSpec) -> QuadResult {
        match (&term.path, term.kernel) {
            (Path::Line { lo, hi }, KernelKind::UvStar) => {
                if spec.scheme == Scheme::TanhSinh {
                    // substituted: s ∈ [-π, 0], cos s = tanh(t/2). Near the
                    // interval ends t is computed from the node's exact
                    // endpoint distance; 2·ln tan(δ/2) keeps full precision
                    // where s itself would cancel.
                    let (smin, smax) = s_interval_fullline();
                    let a = if lo.is_finite() { s_of_t(*lo) } else { smin };
                    let b = if hi.is_finite() { s_of_t(*hi) } else { smax };
                    let lo_at_pi = !lo.is_finite();
                    let hi_at_zero = !hi.is_finite();
                    let f = |n: super::quad::Node| {
                        let s = n.pos;
                        let t = if lo_at_pi && n.from_lo < 0.2 {
                            2.0 * (0.5 * n.from_lo).tan().ln()
                        } else if hi_at_zero && n.from_hi < 0.2 {
                            -2.0 * (0.5 * n.from_hi).tan().ln()
                        } else {
                            t_of_s(s)
                        };
                        if !t.is_finite() {
                            return C64::new(0.0, 0.0);
                        }
                        let (aj, beta) = substituted_kernel(s, self.kt.kappa);
                        let w = term.weight.eval(C64::new(t, 0.0));
                        w * aj * self.wrapped_kernel_value(term, beta, u, v)
                    };
                    super::quad::tanh_sinh_ex(&f, a, b, spec)
                } else {
                    let a = lo.max(-spec.trunc);
                    let b = hi.min(spec.trunc);
                    let f = |t: f64| {
                        let (amp, beta) = uv_kernel(C64::new(t, 0.0), self.kt.kappa);
                        term.weight.eval(C64::new(t, 0.0))
                            * amp
                            * self.wrapped_kernel_value(term, beta, u, v)
                    };
                    integrate(&f, a, b, spec)
                }
            }
            (Path::Line { lo, hi }, KernelKind::LinearV) => {
                let a = lo.max(-spec.trunc);
                let b = hi.min(spec.trunc);
                let f = |t: f64| {
                    term.weight.eval(C64::new(t, 0.0))
                        * self.linear_kernel_value(term, C64::new(t, 0.0), u, v)
                };
                integrate(&f, a, b, spec)
            }
            (Path::ShiftedLine { shift, lo, hi }, kernel) => {
                // the weight keeps its real argument; only the kernel parameter
                // moves onto the shifted line
                let a = lo.max(-spec.trunc);
                let b = hi.min(spec.trunc);
                let f = |t: f64| {
                    let w = C64::new(t, 0.0) + shift;
                    let wt = term.weight.eval(C64::new(t, 0.0));
                    match kernel {
                        KernelKind::UvStar => {
                            let (amp, beta) = uv_kernel(w, self.kt.kappa);
                            wt * amp * self.wrapped_kernel_value(term, beta, u, v)
                        }
                        KernelKind::LinearV => wt * self.linear_kernel_value(term, w, u, v),
                    }
                };
                integrate(&f, a, b, spec)
            }
            (Path::Segment { a, b }, kernel) => {
                // the weight sees the complex contour point here
                let (pa, pb) = (*a, *b);
                let f = |x: f64| {
                    let w = pa + (pb - pa) * x;
                    let val = match kernel {
                        KernelKind::UvStar => {
                            let (amp, beta) = uv_kernel(w, self.kt.kappa);
                            term.weight.eval(w) * amp * self.wrapped_kernel_value(term, beta, u, v)
                        }
                        KernelKind::LinearV => {
                            term.weight.eval(w) * self.linear_kernel_value(term, w, u, v)
                        }
                    };
                    val * (pb - pa)
                };
                integrate(&f, 0.0, 1.0, spec)
            }
            (Path::Circle { center, radius }, kernel) => {
                let f = |theta: f64| {
                    let e = C64::new(0.0, theta).exp();
                    let w = center + radius * e;
                    let dw = C64::new(0.0, 1.0) * radius * e;
                    let val = match kernel {
                        KernelKind::UvStar => {
                            let (amp, beta) = uv_kernel(w, self.kt.kappa);
                            term.weight.eval(w) * amp * self.wrapped_kernel_value(term, beta, u, v)
                        }
                        KernelKind::LinearV => {
                            term.weight.eval(w) * self.linear_kernel_value(term, w, u, v)
                        }
                    };
                    val * dw
                };
                // periodic and smooth: composite panels converge spectrally
                let mut gl_spec = *spec;
                gl_spec.scheme = Scheme::GaussLegendre;
                integrate(&f, 0.0, 2.0 * std::f64::consts::PI, &gl_spec)
            }
        }
    }

    pub fn eval_with_err(&self, u: C64, v: C64) -> Result<(C64, f64)> {
        let mut acc = C64::new(0.0, 0.0);
        let mut err = 0.0f64;
        for term in &self.terms {
            let r = self.eval_term(term, u, v, &self.spec);
            if !r.value.is_finite() {
                return Err(Error::Convergence(format!(
                    "{}: integral produced a non-finite value",
                    self.label
                )));
            }
            acc += r.value;
            err += r.err_est;
        }
        for vt in &self.vacuum_terms {
            acc += vt.coeff * vt.element.eval(u, v);
        }
        Ok((acc, err))
    }

    pub fn eval(&self, u: C64, v: C64) -> Result<C64> {
        Ok(self.eval_with_err(u, v)?.0)
    }

    /// Self-validation: node-doubling delta (direct) and the change under
    /// doubling the truncation length.
    pub fn validate(&self, u: C64, v: C64) -> Result<(f64, f64)> {
        let (base, node_delta) = self.eval_with_err(u, v)?;
        let mut wide = self.clone();
        wide.spec.trunc *= 2.0;
        let (wide_val, _) = wide.eval_with_err(u, v)?;
        Ok((node_delta, (wide_val - base).norm()))
    }

    /// p ⋆ self: star-composes p into the left wrap of every integral term and
    /// applies it to the vacuum terms in closed form.
    pub fn apply_poly_left(&self, p: &Polynomial<C64>) -> Result<Self> {
        let ord = self.kt.ordering_key();
        let hbar = self.kt.hbar;
        let mut out = self.clone();
        for term in &mut out.terms {
            term.wrap_left = Some(match &term.wrap_left {
                None => p.clone(),
                Some(w) => star_mul(p, w, &ord, &hbar)?,
            });
        }
        for vt in &mut out.vacuum_terms {
            vt.element = poly_star_exp(p, &vt.element, Side::Left)?;
            vt.order = None;
        }
        out.label = format!("poly⋆{}", self.label);
        Ok(out)
    }

    /// self ⋆ p.
    pub fn apply_poly_right(&self, p: &Polynomial<C64>) -> Result<Self> {
        let ord = self.kt.ordering_key();
        let hbar = self.kt.hbar;
        let mut out = self.clone();
        for term in &mut out.terms {
            term.wrap_right = Some(match &term.wrap_right {
                None => p.clone(),
                Some(w) => star_mul(w, p, &ord, &hbar)?,
            });
        }
        for vt in &mut out.vacuum_terms {
            vt.element = poly_star_exp(p, &vt.element, Side::Right)?;
            vt.order = None;
        }
        out.label = format!("{}⋆poly", self.label);
        Ok(out)
    }

    /// self ⋆ ϖ₀₀ in closed form, using e_*^{t·uv/iħ} ⋆ ϖ₀₀ = e^{t/2}·ϖ₀₀ and
    /// v ⋆ ϖ₀₀ = 0. Right wraps must be powers of v (or absent).
    pub fn star_vacuum(&self) -> Result<crate::closed_forms::ExpCombination> {
        let w00 = vacuum(self.kt)?;
        let mut combo = crate::closed_forms::ExpCombination::new();
        for term in &self.terms {
            if term.kernel != KernelKind::UvStar {
                return Err(Error::Invalid(
                    "vacuum pairing needs the uv kernel".into(),
                ));
            }
            if let Some(r) = &term.wrap_right {
                if v_power(r).map(|a| a > 0) == Some(true) {
                    continue; // v^a ⋆ ϖ₀₀ = 0
                }
                if v_power(r) != Some(0) {
                    return Err(Error::Invalid(
                        "vacuum pairing needs v-power right wraps".into(),
                    ));
                }
            }
            let scalar = self.weight_halfshift_integral(term)?;
            let e = match &term.wrap_left {
                None => w00.clone(),
                Some(l) => poly_star_exp(l, &w00, Side::Left)?,
            };
            combo.push(scalar, e);
        }
        for vt in &self.vacuum_terms {
            match vt.order {
                Some(0) => combo.push(vt.coeff, w00.clone()), // ϖ₀₀ ⋆ ϖ₀₀ = ϖ₀₀
                Some(_) => {} // (u/iħ)^j ⋆ ϖ₀₀ ⋆ v^j ⋆ ϖ₀₀ = 0 for j > 0
                None => {
                    return Err(Error::Invalid(
                        "vacuum pairing lost the sandwich structure".into(),
                    ))
                }
            }
        }
        Ok(combo)
    }

    /// ∫ w(t)·e^{t/2} dt over the term's path: the scalar by which the term
    /// acts on the vacuum.
    fn weight_halfshift_integral(&self, term: &IntegralTerm) -> Result<C64> {
        let (lo, hi) = match term.path {
            Path::Line { lo, hi } => (lo, hi),
            _ => {
                return Err(Error::Invalid(
                    "vacuum pairing needs real-line contours".into(),
                ))
            }
        };
        let a = lo.max(-self.spec.trunc);
        let b = hi.min(self.spec.trunc);
        let f = |t: f64| term.weight.eval(C64::new(t, 0.0)) * C64::new(t * 0.5, 0.0).exp();
        let r = tanh_sinh(&f, a, b, &self.spec);
        super::quad::require_converged(&r, &self.spec, "vacuum pairing scalar")
    }
}

fn s_of_t(t: f64) -> f64 {
    // inverse of t_of_s: s = -2·atan(e^{-t/2})
    -2.0 * (-t * 0.5).exp().atan()
}

fn v_power(p: &Polynomial<C64>) -> Option<usize> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.terms().next()?;
    if m.get(0) == 0 && (c - C64::new(1.0, 0.0)).norm() < 1e-15 {
        Some(m.get(1) as usize)
    } else {
        None
    }
}

fn u_power(p: &Polynomial<C64>) -> Option<usize> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.terms().next()?;
    if m.get(1) == 0 && (c - C64::new(1.0, 0.0)).norm() < 1e-15 {
        Some(m.get(0) as usize)
    } else {
        None
    }
}

/// Is the polynomial a function of the product uv alone (every term balanced)?
fn is_uv_function(p: &Polynomial<C64>) -> bool {
    p.terms().all(|(m, _)| m.get(0) == m.get(1))
}

fn span_of(path: &Path) -> Result<(f64, f64)> {
    match path {
        Path::Line { lo, hi } => Ok((*lo, *hi)),
        _ => Err(Error::Invalid(
            "star products merge real-line contours only".into(),
        )),
    }
}

/// lhs ⋆ rhs for integral evaluators over the same kernel family.
///
/// The kernels merge by the exponential law E_t ⋆ E_s = E_{t+s}; right v-power
/// wraps slide through with the factor e^{a·s}, uv-function wraps commute, and
/// vacuum terms absorb the right factor as the scalar ∫w_R(s)e^{(j+1/2)s}ds.
/// The rhs must be a plain single-term evaluator.
pub fn star_product(
    lhs: &StarFunctionEvaluator,
    rhs: &StarFunctionEvaluator,
    label: &str,
) -> Result<StarFunctionEvaluator> {
    if rhs.terms.len() != 1 || !rhs.vacuum_terms.is_empty() {
        return Err(Error::Invalid("rhs of star_product must be plain".into()));
    }
    let rterm = &rhs.terms[0];
    if rterm.wrap_left.is_some() || rterm.wrap_right.is_some() {
        return Err(Error::Invalid("rhs of star_product must be unwrapped".into()));
    }
    if rterm.kernel != KernelKind::UvStar {
        return Err(Error::Invalid("star_product needs the uv kernel".into()));
    }
    let (rlo, rhi) = span_of(&rterm.path)?;
    let spec = lhs.spec;
    let mut out_terms = Vec::new();
    for lterm in &lhs.terms {
        if lterm.kernel != KernelKind::UvStar {
            return Err(Error::Invalid("star_product needs the uv kernel".into()));
        }
        let (llo, lhi) = span_of(&lterm.path)?;
        // sliding rate of the right wrap
        let slide = match &lterm.wrap_right {
            None => 0.0,
            Some(w) => {
                if let Some(a) = v_power(w) {
                    a as f64
                } else if is_uv_function(w) {
                    0.0
                } else {
                    return Err(Error::Invalid(
                        "right wrap must be a v-power or a function of uv".into(),
                    ));
                }
            }
        };
        let lw = lterm.weight.clone();
        let rw = rterm.weight.clone();
        let lw_probe = lw.clone();
        let rw_probe = rw.clone();
        let mut inner_spec = spec;
        inner_spec.max_level = spec.max_level.saturating_sub(2).max(7);
        let trunc = spec.trunc;
        let merged = move |sigma: C64| -> C64 {
            let s0 = sigma.re;
            // s ranges over the decomposition t = σ - s ∈ [llo, lhi], s ∈ [rlo, rhi]
            let lo = rlo.max(s0 - lhi).max(-(trunc + s0.abs()));
            let hi = rhi.min(s0 - llo).min(trunc + s0.abs());
            if lo >= hi {
                return C64::new(0.0, 0.0);
            }
            let f = |s: f64| {
                lw.eval(C64::new(s0 - s, 0.0))
                    * rw.eval(C64::new(s, 0.0))
                    * C64::new(slide * s, 0.0).exp()
            };
            tanh_sinh(&f, lo, hi, &inner_spec).value
        };
        // divergence probe: the merged weight must be stable under doubling
        // the inner truncation when the decomposition ray is infinite
        if (rhi - rlo).is_infinite() && (lhi - llo).is_infinite() {
            let probe = |t: f64| -> C64 {
                let lo = rlo.max(-t);
                let hi = rhi.min(t);
                let f = |s: f64| {
                    lw_probe.eval(C64::new(-s, 0.0))
                        * rw_probe.eval(C64::new(s, 0.0))
                        * C64::new(slide * s, 0.0).exp()
                };
                tanh_sinh(&f, lo, hi.min(t), &inner_spec).value
            };
            // genuine divergence grows linearly in the truncation length;
            // quadrature noise between the two windows stays far below 2%
            let a = probe(trunc);
            let b = probe(2.0 * trunc);
            if !a.is_finite() || !b.is_finite() || (a - b).norm() > 0.02 * (1.0 + a.norm()) {
                return Err(Error::Diverges(format!(
                    "{label}: the merged weight grows with the truncation length"
                )));
            }
        }
        out_terms.push(IntegralTerm {
            path: Path::Line {
                lo: llo + rlo,
                hi: lhi + rhi,
            },
            weight: Weight::Fn(Arc::new(merged)),
            kernel: KernelKind::UvStar,
            wrap_left: lterm.wrap_left.clone(),
            wrap_right: lterm.wrap_right.clone(),
        });
    }
    // vacuum terms: D_j ⋆ ∫w_R(s)E_s ds = (∫w_R(s)e^{(j+1/2)s}ds)·D_j
    let mut out_vac = Vec::new();
    for vt in &lhs.vacuum_terms {
        let j = vt.order.ok_or_else(|| {
            Error::Invalid("star_product lost the vacuum sandwich structure".into())
        })?;
        let f = |s: f64| {
            rhs.terms[0].weight.eval(C64::new(s, 0.0)) * C64::new((j as f64 + 0.5) * s, 0.0).exp()
        };
        let a = rlo.max(-spec.trunc);
        let b = rhi.min(spec.trunc);
        let r = tanh_sinh(&f, a, b, &spec);
        let scalar = super::quad::require_converged(&r, &spec, "vacuum slide scalar")?;
        out_vac.push(VacuumTerm {
            coeff: vt.coeff * scalar,
            order: vt.order,
            element: vt.element.clone(),
        });
    }
    Ok(StarFunctionEvaluator {
        kt: lhs.kt,
        spec,
        terms: out_terms,
        vacuum_terms: out_vac,
        label: label.to_string(),
    })
}

/// sin_*π(z + uv/iħ) ⋆ rhs: the two point masses e_*^{±iπ(z+X)} shift every
/// kernel parameter by ±iπ, slide through u/v-power wraps with (-1)^a, and act
/// on vacuum terms by the scalar cos(π(z+j)).
pub fn star_sin_product(
    z: C64,
    rhs: &StarFunctionEvaluator,
    label: &str,
) -> Result<StarFunctionEvaluator> {
    let pi = std::f64::consts::PI;
    let i = C64::new(0.0, 1.0);
    let mut out_terms = Vec::new();
    for term in &rhs.terms {
        if term.kernel != KernelKind::UvStar {
            return Err(Error::Invalid("sin product needs the uv kernel".into()));
        }
        let (lo, hi) = span_of(&term.path)?;
        // slide through a left u-power: E_w ⋆ u^a = e^{a·w} u^a ⋆ E_w, w = ±iπ
        let slide_sign = match &term.wrap_left {
            None => 1.0,
            Some(w) => {
                if let Some(a) = u_power(w) {
                    if a % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                } else if is_uv_function(w) {
                    1.0
                } else {
                    return Err(Error::Invalid(
                        "left wrap must be a u-power or a function of uv".into(),
                    ));
                }
            }
        };
        for sign in [1.0f64, -1.0] {
            // (1/2i)·(±e^{±iπz}), 1/(2i) = -i/2
            let coeff = (i * pi * z * sign).exp() * C64::new(0.0, -0.5) * sign * slide_sign;
            let slo = lo.max(-rhs.spec.trunc);
            let shi = hi.min(rhs.spec.trunc);
            let shift = C64::new(0.0, sign * pi);
            let d = shifted_line_clearance(rhs.kt, shift, slo, shi);
            if d < 1e-3 {
                return Err(Error::ContourTooClose { min_dist: d });
            }
            out_terms.push(IntegralTerm {
                path: Path::ShiftedLine {
                    shift,
                    lo: slo,
                    hi: shi,
                },
                weight: term.weight.scale(coeff),
                kernel: KernelKind::UvStar,
                wrap_left: term.wrap_left.clone(),
                wrap_right: term.wrap_right.clone(),
            });
        }
    }
    let mut out_vac = Vec::new();
    for vt in &rhs.vacuum_terms {
        let j = vt.order.ok_or_else(|| {
            Error::Invalid("sin product lost the vacuum sandwich structure".into())
        })? as f64;
        // sin_*π(z+X) ⋆ D_j = cos(π(z+j))·D_j
        let scalar = (pi * (z + j)).cos();
        out_vac.push(VacuumTerm {
            coeff: vt.coeff * scalar,
            order: vt.order,
            element: vt.element.clone(),
        });
    }
    Ok(StarFunctionEvaluator {
        kt: rhs.kt,
        spec: rhs.spec,
        terms: out_terms,
        vacuum_terms: out_vac,
        label: label.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::quad::pairwise_sum;

    #[test]
    fn pairwise_is_deterministic() {
        let v: Vec<C64> = (0..37).map(|k| C64::new((k as f64).sin(), 0.0)).collect();
        assert_eq!(pairwise_sum(&v), pairwise_sum(&v));
    }

    #[test]
    fn s_of_t_inverts_t_of_s() {
        for t in [-8.0, -1.0, 0.0, 2.5, 10.0] {
            assert!((t_of_s(s_of_t(t)) - t).abs() < 1e-9);
        }
    }

    #[test]
    fn wrap_shape_detection() {
        let u2 = Polynomial::<C64>::monomial(2, &[2, 0], C64::new(1.0, 0.0));
        let v3 = Polynomial::<C64>::monomial(2, &[0, 3], C64::new(1.0, 0.0));
        assert_eq!(u_power(&u2), Some(2));
        assert_eq!(v_power(&v3), Some(3));
        assert_eq!(v_power(&u2), None);
        let mut f = Polynomial::<C64>::one(2);
        f.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[1, 1]),
            C64::new(2.0, 0.0),
        );
        assert!(is_uv_function(&f));
    }
}
