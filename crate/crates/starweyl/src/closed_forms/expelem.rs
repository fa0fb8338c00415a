//! Closed-form W₂ elements: polynomial prefactor times a Gaussian of (u, v).

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weyl_poly::json::{float_poly_from_json, float_poly_to_json};
use crate::weyl_poly::{OrderingKey, Polynomial};

type C64 = Complex64;

/// An ordering expression tag on the (κ, τ) family, with the numeric ħ bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaTau {
    pub kappa: C64,
    pub tau: C64,
    pub hbar: C64,
}

impl KappaTau {
    pub fn new(kappa: C64, tau: C64, hbar: C64) -> Self {
        KappaTau { kappa, tau, hbar }
    }

    pub fn weyl(hbar: C64) -> Self {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), hbar)
    }

    pub fn kappa_only(kappa: C64, hbar: C64) -> Self {
        Self::new(kappa, C64::new(0.0, 0.0), hbar)
    }

    pub fn ordering_key(&self) -> OrderingKey<C64> {
        OrderingKey::w2(self.kappa, self.tau)
    }

    pub fn i_hbar(&self) -> C64 {
        C64::new(0.0, 1.0) * self.hbar
    }

    /// κ on the excluded rays {κ ≥ 1} ∪ {κ ≤ -1} where the quadratic star
    /// exponential stops decaying along the real line.
    pub fn on_excluded_ray(&self) -> bool {
        self.kappa.im.abs() < 1e-14 && self.kappa.re.abs() >= 1.0
    }

    pub fn require_off_excluded_ray(&self) -> Result<()> {
        if self.on_excluded_ray() {
            Err(Error::Domain(format!(
                "κ = {} lies on the excluded rays {{κ ≥ 1}} ∪ {{κ ≤ -1}}",
                self.kappa
            )))
        } else {
            Ok(())
        }
    }

    /// The (κ,τ)-ordering expression of the element z ± uv/iħ, a polynomial in
    /// the coordinates: (z ± κ/2) ± uv/iħ.
    pub fn x_poly(&self, z: C64, sign: f64) -> Polynomial<C64> {
        let mut p = Polynomial::zero(2);
        p.add_term(
            crate::weyl_poly::MultiIndex::zero(2),
            z + self.kappa * 0.5 * sign,
        );
        p.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[1, 1]),
            C64::new(sign, 0.0) / self.i_hbar(),
        );
        p
    }

    pub fn u_poly(&self) -> Polynomial<C64> {
        Polynomial::var(2, 0)
    }

    pub fn v_poly(&self) -> Polynomial<C64> {
        Polynomial::var(2, 1)
    }
}

/// Which side a polynomial multiplies an exponential element on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// prefactor(u,v) · amp · exp((α u² + β·2uv + γ v² + λ u + μ v)/iħ).
///
/// The closed-form classes of this module all live here: the quadratic star
/// exponentials have a constant prefactor, polynomial star multiples populate
/// the prefactor, and the linear star exponentials use the λ, μ slots.
#[derive(Clone, Debug)]
pub struct ExpElement {
    pub prefactor: Polynomial<C64>,
    pub amp: C64,
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub lambda: C64,
    pub mu: C64,
    pub ordering: KappaTau,
}

impl ExpElement {
    pub fn gaussian(amp: C64, alpha: C64, beta: C64, gamma: C64, ordering: KappaTau) -> Self {
        ExpElement {
            prefactor: Polynomial::one(2),
            amp,
            alpha,
            beta,
            gamma,
            lambda: C64::new(0.0, 0.0),
            mu: C64::new(0.0, 0.0),
            ordering,
        }
    }

    pub fn constant(c: C64, ordering: KappaTau) -> Self {
        Self::gaussian(
            c,
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            ordering,
        )
    }

    pub fn one(ordering: KappaTau) -> Self {
        Self::constant(C64::new(1.0, 0.0), ordering)
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut e = self.clone();
        e.amp *= c;
        e
    }

    pub fn is_pure_uv(&self) -> bool {
        self.alpha.norm() == 0.0
            && self.gamma.norm() == 0.0
            && self.lambda.norm() == 0.0
            && self.mu.norm() == 0.0
            && self.prefactor == Polynomial::one(2)
    }

    /// Entire in (u, v): finite at every point.
    pub fn eval(&self, u: C64, v: C64) -> C64 {
        let ih = self.ordering.i_hbar();
        let q = (self.alpha * u * u
            + self.beta * 2.0 * u * v
            + self.gamma * v * v
            + self.lambda * u
            + self.mu * v)
            / ih;
        self.prefactor.eval(&[u, v]) * self.amp * q.exp()
    }

    /// ∂/∂u applied to amp·prefactor·e^Q, returned as the new prefactor
    /// (the Gaussian part is unchanged).
    fn d_u(&self, pref: &Polynomial<C64>) -> Polynomial<C64> {
        let ih = self.ordering.i_hbar();
        let mut q = Polynomial::zero(2);
        q.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[1, 0]),
            2.0 * self.alpha / ih,
        );
        q.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[0, 1]),
            2.0 * self.beta / ih,
        );
        q.add_term(crate::weyl_poly::MultiIndex::zero(2), self.lambda / ih);
        pref.derivative(0).add(&pref.mul(&q))
    }

    fn d_v(&self, pref: &Polynomial<C64>) -> Polynomial<C64> {
        let ih = self.ordering.i_hbar();
        let mut q = Polynomial::zero(2);
        q.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[1, 0]),
            2.0 * self.beta / ih,
        );
        q.add_term(
            crate::weyl_poly::MultiIndex::from_slice(&[0, 1]),
            2.0 * self.gamma / ih,
        );
        q.add_term(crate::weyl_poly::MultiIndex::zero(2), self.mu / ih);
        pref.derivative(1).add(&pref.mul(&q))
    }

    fn d_var(&self, pref: &Polynomial<C64>, var: usize) -> Polynomial<C64> {
        if var == 0 {
            self.d_u(pref)
        } else {
            self.d_v(pref)
        }
    }
}

/// p ⋆ E (or E ⋆ p): the terminating bidifferential series with the polynomial
/// on one side. The polynomial must be given in the same ordering expression
/// as `e.ordering`. The result stays in the class with an updated prefactor.
pub fn poly_star_exp(p: &Polynomial<C64>, e: &ExpElement, side: Side) -> Result<ExpElement> {
    if p.nvars() != 2 {
        return Err(Error::DimensionMismatch(
            "exponential elements live in W₂".into(),
        ));
    }
    let ord = e.ordering.ordering_key();
    let ih = e.ordering.i_hbar();
    let cells: Vec<(usize, usize, C64)> = ord
        .lambda_cells()
        .into_iter()
        .map(|(i, j, l)| (i, j, l * ih * 0.5))
        .collect();
    let mut out_pref = Polynomial::zero(2);
    for (m, c) in p.terms() {
        // state: remaining polynomial exponents, current derivative of the
        // exponential's prefactor, accumulated scalar factor
        descend(
            e,
            side,
            &cells,
            0,
            *m,
            e.prefactor.clone(),
            *c,
            &mut out_pref,
        );
    }
    let mut out = e.clone();
    out.prefactor = out_pref;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    e: &ExpElement,
    side: Side,
    cells: &[(usize, usize, C64)],
    idx: usize,
    p_rem: crate::weyl_poly::MultiIndex,
    exp_pref: Polynomial<C64>,
    factor: C64,
    out: &mut Polynomial<C64>,
) {
    if idx == cells.len() {
        let mono = Polynomial::monomial(2, p_rem.exponents(), factor);
        *out = out.add(&mono.mul(&exp_pref));
        return;
    }
    let (i, j, step) = cells[idx];
    // order 0 in this cell
    descend(e, side, cells, idx + 1, p_rem, exp_pref.clone(), factor, out);
    // the polynomial side carries index i for Left (∂_i f), index j for Right
    let (p_var, e_var) = match side {
        Side::Left => (i, j),
        Side::Right => (j, i),
    };
    let mut rem = p_rem;
    let mut pref = exp_pref;
    let mut fac = factor;
    let mut d: i64 = 0;
    while rem.get(p_var) > 0 {
        d += 1;
        fac = fac * step / d as f64 * rem.get(p_var) as f64;
        rem.set(p_var, rem.get(p_var) - 1);
        pref = e.d_var(&pref, e_var);
        if fac.norm() == 0.0 {
            break;
        }
        descend(e, side, cells, idx + 1, rem, pref.clone(), fac, out);
    }
}

/// A finite linear combination of exponential elements (plus constants, which
/// are exponential elements with vanishing exponent).
#[derive(Clone, Debug, Default)]
pub struct ExpCombination {
    pub terms: Vec<(C64, ExpElement)>,
}

impl ExpCombination {
    pub fn new() -> Self {
        ExpCombination { terms: Vec::new() }
    }

    pub fn single(c: C64, e: ExpElement) -> Self {
        ExpCombination {
            terms: vec![(c, e)],
        }
    }

    pub fn push(&mut self, c: C64, e: ExpElement) {
        self.terms.push((c, e));
    }

    pub fn eval(&self, u: C64, v: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            acc += c * e.eval(u, v);
        }
        acc
    }
}

fn c64_json(c: C64) -> Value {
    json!([c.re, c.im])
}

fn c64_from(v: &Value) -> Result<C64> {
    let a = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid("complex scalars serialize as [re, im]".into()))?;
    Ok(C64::new(
        a[0].as_f64().unwrap_or(0.0),
        a[1].as_f64().unwrap_or(0.0),
    ))
}

impl ExpElement {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "prefactor": float_poly_to_json(&self.prefactor),
            "amp": c64_json(self.amp),
            "alpha": c64_json(self.alpha),
            "beta": c64_json(self.beta),
            "gamma": c64_json(self.gamma),
            "ordering": crate::weyl_poly::json::ordering_key_to_json(&self.ordering.ordering_key()),
        });
        let obj = v.as_object_mut().unwrap();
        if self.lambda.norm() != 0.0 || self.mu.norm() != 0.0 {
            obj.insert("lambda".into(), c64_json(self.lambda));
            obj.insert("mu".into(), c64_json(self.mu));
        }
        obj.insert("hbar".into(), c64_json(self.ordering.hbar));
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pref = float_poly_from_json(
            v.get("prefactor")
                .ok_or_else(|| Error::Invalid("exp element needs `prefactor`".into()))?,
        )?;
        let get = |name: &str| -> Result<C64> {
            v.get(name)
                .map(c64_from)
                .unwrap_or(Ok(C64::new(0.0, 0.0)))
        };
        let ord_key = crate::weyl_poly::json::ordering_key_from_json(
            v.get("ordering")
                .ok_or_else(|| Error::Invalid("exp element needs `ordering`".into()))?,
        )?;
        if ord_key.nvars() != 2 {
            return Err(Error::DimensionMismatch("exp elements live in W₂".into()));
        }
        let hbar = v
            .get("hbar")
            .map(c64_from)
            .unwrap_or(Ok(C64::new(1.0, 0.0)))?;
        let ordering = KappaTau::new(*ord_key.k_entry(0, 1), *ord_key.k_entry(1, 1), hbar);
        Ok(ExpElement {
            prefactor: pref,
            amp: get("amp")?,
            alpha: get("alpha")?,
            beta: get("beta")?,
            gamma: get("gamma")?,
            lambda: get("lambda")?,
            mu: get("mu")?,
            ordering,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl() -> KappaTau {
        KappaTau::weyl(C64::new(1.0, 0.0))
    }

    #[test]
    fn one_times_e_is_e() {
        let e = ExpElement::gaussian(
            C64::new(2.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(0.0, 0.0),
            weyl(),
        );
        let p = Polynomial::one(2);
        let r = poly_star_exp(&p, &e, Side::Left).unwrap();
        let (u, v) = (C64::new(0.3, 0.1), C64::new(-0.7, 0.2));
        assert!((r.eval(u, v) - e.eval(u, v)).norm() < 1e-14);
    }

    #[test]
    fn json_roundtrip() {
        let mut e = ExpElement::gaussian(
            C64::new(0.5, 0.5),
            C64::new(0.1, 0.0),
            C64::new(-0.2, 0.3),
            C64::new(0.0, 0.0),
            KappaTau::new(C64::new(0.0, 0.5), C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        );
        e.lambda = C64::new(1.5, 0.0);
        let back = ExpElement::from_json(&e.to_json()).unwrap();
        let (u, v) = (C64::new(0.4, -0.2), C64::new(0.9, 0.1));
        assert!((back.eval(u, v) - e.eval(u, v)).norm() < 1e-14);
    }
}
