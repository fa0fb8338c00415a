//! Sparse multivariate polynomials with canonical graded-lex term order.

use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;

use num_complex::Complex64;

use super::coeff::{Coefficient, ExactCoeff};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// Exponent tuple of a monomial; ordered by total degree, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex {
    n: u8,
    e: [u16; MAX_VARS],
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_VARS, "supported dimensions are 1..=8");
        MultiIndex {
            n: n as u8,
            e: [0; MAX_VARS],
        }
    }

    pub fn unit(n: usize, var: usize) -> Self {
        let mut m = Self::zero(n);
        m.e[var] = 1;
        m
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        let mut m = Self::zero(exps.len());
        m.e[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize) -> u16 {
        self.e[i]
    }

    pub fn set(&mut self, i: usize, v: u16) {
        self.e[i] = v;
    }

    pub fn total_degree(&self) -> u32 {
        self.e[..self.n as usize].iter().map(|&x| x as u32).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut m = *self;
        for i in 0..self.n as usize {
            m.e[i] += other.e[i];
        }
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.e[..self.n as usize]
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exponents().cmp(other.exponents()))
    }
}

/// Sparse polynomial: a map from multi-indices to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<C: Coefficient> {
    n: usize,
    terms: BTreeMap<MultiIndex, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_VARS);
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::zero(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::unit(n, i), C::one());
        p
    }

    pub fn monomial(n: usize, exps: &[u16], c: C) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = Self::zero(n);
        p.add_term(MultiIndex::from_slice(exps), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of variable `i` over all terms.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.get(i)).max().unwrap_or(0)
    }

    /// Accumulate a term, dropping the entry if the sum is structurally zero.
    pub fn add_term(&mut self, m: MultiIndex, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.terms.insert(*m, c.neg_ref());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, a) in self.terms.iter() {
            let p = a.mul_ref(c);
            if !p.is_zero() {
                out.terms.insert(*m, p);
            }
        }
        out
    }

    /// Ordinary commutative product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.add(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms.iter() {
            let e = m.get(var);
            if e == 0 {
                continue;
            }
            let mut md = *m;
            md.set(var, e - 1);
            out.add_term(md, c.mul_int(e as i64));
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in self.terms.iter() {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(*m, d);
            }
        }
        out
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "polynomials have {} and {} variables",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

impl Polynomial<Complex64> {
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms.iter() {
            let mut t = *c;
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.get(i) {
                    t *= p;
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest coefficient magnitude; 0 for the zero polynomial.
    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Float-mode zero test: coefficient-wise |·| < tol·(1 + max coefficient).
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        let scale = 1.0 + self.max_coeff_norm();
        self.terms.values().all(|c| c.norm() < tol * scale)
    }

    /// Max coefficient-wise distance to another polynomial.
    pub fn dist(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for (m, c) in self.terms.iter() {
            d = d.max((c - other.coeff(m)).norm());
        }
        for (m, c) in other.terms.iter() {
            d = d.max((self.coeff(m) - c).norm());
        }
        d
    }
}

impl Polynomial<ExactCoeff> {
    /// Bind ħ to a numeric value, producing the float-mode counterpart.
    pub fn to_float(&self, hbar: Complex64) -> Polynomial<Complex64> {
        self.map_coeffs(|c| c.substitute(hbar))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::from_slice(&[2, 0]);
        let b = MultiIndex::from_slice(&[0, 3]);
        let c = MultiIndex::from_slice(&[1, 1]);
        assert!(a < b); // degree 2 < 3
        assert!(c < a); // same degree, lex: [1,1] < [2,0]
    }

    #[test]
    fn no_stored_zeros() {
        let mut p: Polynomial<Complex64> = Polynomial::zero(2);
        p.add_term(MultiIndex::from_slice(&[1, 0]), Complex64::new(1.0, 0.0));
        p.add_term(MultiIndex::from_slice(&[1, 0]), Complex64::new(-1.0, 0.0));
        assert!(p.is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        // d/du (u^2 v) = 2uv at (2, 3) -> 12
        let p = Polynomial::<Complex64>::monomial(2, &[2, 1], Complex64::new(1.0, 0.0));
        let d = p.derivative(0);
        let v = d.eval(&[Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]);
        assert!((v - Complex64::new(12.0, 0.0)).norm() < 1e-14);
    }
}
