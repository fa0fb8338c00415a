//! The star product, commutators, intertwiners and the bumping identity.
//!
//! The product of two polynomials is the terminating bidifferential series
//!
//! f ⋆_Λ g = Σ_k (iħ)ᵏ/(k!2ᵏ) Λ^{i₁j₁}…Λ^{iₖjₖ} ∂_{i₁}…∂_{iₖ}f · ∂_{j₁}…∂_{jₖ}g,
//!
//! expanded here as a sum over matrices of per-cell derivative orders, which is
//! the same series with the multinomial factor absorbed cell by cell.

use super::coeff::Coefficient;
use super::ordering::OrderingKey;
use super::poly::{MultiIndex, Polynomial};
use crate::error::{Error, Result};

/// f ⋆_Λ g. `hbar` is the deformation parameter as a ring element: the formal ħ
/// in exact mode, the bound value in float mode.
pub fn star_mul<C: Coefficient>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    ord: &OrderingKey<C>,
    hbar: &C,
) -> Result<Polynomial<C>> {
    f.check_same_dim(g)?;
    if f.nvars() != ord.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial has {} variables, ordering key {}",
            f.nvars(),
            ord.nvars()
        )));
    }
    let cells = ord.lambda_cells();
    // (iħ/2)·Λ^{ij} per cell
    let steps: Vec<(usize, usize, C)> = cells
        .into_iter()
        .map(|(i, j, l)| (i, j, l.mul_ref(&hbar.mul_i()).div_int(2)))
        .collect();
    let mut out = Polynomial::zero(f.nvars());
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            descend_pair(&steps, 0, *mf, *mg, cf.mul_ref(cg), &mut out);
        }
    }
    Ok(out)
}

fn descend_pair<C: Coefficient>(
    steps: &[(usize, usize, C)],
    idx: usize,
    f_rem: MultiIndex,
    g_rem: MultiIndex,
    factor: C,
    out: &mut Polynomial<C>,
) {
    if idx == steps.len() {
        out.add_term(f_rem.add(&g_rem), factor);
        return;
    }
    let (i, j, ref step) = steps[idx];
    descend_pair(steps, idx + 1, f_rem, g_rem, factor.clone(), out);
    let mut fr = f_rem;
    let mut gr = g_rem;
    let mut fac = factor;
    let mut d: i64 = 0;
    while fr.get(i) > 0 && gr.get(j) > 0 {
        d += 1;
        fac = fac
            .mul_ref(step)
            .div_int(d)
            .mul_int(fr.get(i) as i64)
            .mul_int(gr.get(j) as i64);
        fr.set(i, fr.get(i) - 1);
        gr.set(j, gr.get(j) - 1);
        if fac.is_zero() {
            break;
        }
        descend_pair(steps, idx + 1, fr, gr, fac.clone(), out);
    }
}

/// [f, g] = f ⋆ g - g ⋆ f. Depends only on the skew part of Λ.
pub fn commutator<C: Coefficient>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    ord: &OrderingKey<C>,
    hbar: &C,
) -> Result<Polynomial<C>> {
    Ok(star_mul(f, g, ord, hbar)?.sub(&star_mul(g, f, ord, hbar)?))
}

/// The intertwiner I_K^{K'}(f) = exp((iħ/4) Σ (K'^{ij} - K^{ij}) ∂_i ∂_j) f,
/// a finite sum on polynomials. Both keys must share the skew part.
pub fn intertwine<C: Coefficient>(
    f: &Polynomial<C>,
    from: &OrderingKey<C>,
    to: &OrderingKey<C>,
    hbar: &C,
) -> Result<Polynomial<C>> {
    if !from.same_skew(to) {
        return Err(Error::MismatchedSkew);
    }
    if f.nvars() != from.nvars() {
        return Err(Error::DimensionMismatch(
            "polynomial and ordering key dimensions differ".into(),
        ));
    }
    let cells = from.k_diff_cells(to);
    let steps: Vec<(usize, usize, C)> = cells
        .into_iter()
        .map(|(i, j, s)| (i, j, s.mul_ref(&hbar.mul_i()).div_int(4)))
        .collect();
    let mut out = Polynomial::zero(f.nvars());
    for (m, c) in f.terms() {
        descend_single(&steps, 0, *m, c.clone(), &mut out);
    }
    Ok(out)
}

fn descend_single<C: Coefficient>(
    steps: &[(usize, usize, C)],
    idx: usize,
    rem: MultiIndex,
    factor: C,
    out: &mut Polynomial<C>,
) {
    if idx == steps.len() {
        out.add_term(rem, factor);
        return;
    }
    let (i, j, ref step) = steps[idx];
    descend_single(steps, idx + 1, rem, factor.clone(), out);
    let mut r = rem;
    let mut fac = factor;
    let mut d: i64 = 0;
    loop {
        if r.get(i) == 0 {
            break;
        }
        let ei = r.get(i);
        r.set(i, ei - 1);
        if r.get(j) == 0 {
            break;
        }
        let ej = r.get(j);
        r.set(j, ej - 1);
        d += 1;
        fac = fac
            .mul_ref(step)
            .div_int(d)
            .mul_int(ei as i64)
            .mul_int(ej as i64);
        if fac.is_zero() {
            break;
        }
        descend_single(steps, idx + 1, r, fac.clone(), out);
    }
}

/// Left-associated star power f^{⋆k}.
pub fn star_pow<C: Coefficient>(
    f: &Polynomial<C>,
    k: usize,
    ord: &OrderingKey<C>,
    hbar: &C,
) -> Result<Polynomial<C>> {
    let mut acc = Polynomial::one(f.nvars());
    for _ in 0..k {
        acc = star_mul(&acc, f, ord, hbar)?;
    }
    Ok(acc)
}

/// Star-substitute a univariate polynomial: Σ cₖ A^{⋆k}.
pub fn star_substitute<C: Coefficient>(
    coeffs: &[C],
    arg: &Polynomial<C>,
    ord: &OrderingKey<C>,
    hbar: &C,
) -> Result<Polynomial<C>> {
    let mut out = Polynomial::zero(arg.nvars());
    let mut power = Polynomial::one(arg.nvars());
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = star_mul(&power, arg, ord, hbar)?;
        }
        out = out.add(&power.scale(c));
    }
    Ok(out)
}

/// Both sides of the bumping identity v ⋆ f(u⋆v) = f(v⋆u) ⋆ v for a univariate
/// polynomial f given by its coefficient list. W₂ orderings only.
pub fn bumping_apply<C: Coefficient>(
    coeffs: &[C],
    ord: &OrderingKey<C>,
    hbar: &C,
) -> Result<(Polynomial<C>, Polynomial<C>)> {
    if ord.nvars() != 2 {
        return Err(Error::DimensionMismatch(
            "the bumping identity lives in W₂".into(),
        ));
    }
    let u = Polynomial::var(2, 0);
    let v = Polynomial::var(2, 1);
    let uv = star_mul(&u, &v, ord, hbar)?;
    let vu = star_mul(&v, &u, ord, hbar)?;
    let f_uv = star_substitute(coeffs, &uv, ord, hbar)?;
    let f_vu = star_substitute(coeffs, &vu, ord, hbar)?;
    let lhs = star_mul(&v, &f_uv, ord, hbar)?;
    let rhs = star_mul(&f_vu, &v, ord, hbar)?;
    Ok((lhs, rhs))
}
