//! Ordering keys Λ = K + J identifying an ordering expression.

use super::coeff::Coefficient;
use crate::error::{Error, Result};

/// The matrix Λ = K + J: a complex symmetric part K (the ordering choice) plus a
/// fixed skew part J (the commutation structure).
#[derive(Clone, PartialEq, Debug)]
pub struct OrderingKey<C: Coefficient> {
    n: usize,
    k: Vec<C>,
    j: Vec<C>,
}

impl<C: Coefficient> OrderingKey<C> {
    /// Build from row-major K and J; enforces K = Kᵀ and J = -Jᵀ exactly.
    pub fn new(n: usize, k: Vec<C>, j: Vec<C>) -> Result<Self> {
        if k.len() != n * n || j.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "ordering key for n={n} needs {0}x{0} matrices",
                n
            )));
        }
        for i in 0..n {
            for l in 0..n {
                if k[i * n + l] != k[l * n + i] {
                    return Err(Error::Invalid("K must be symmetric".into()));
                }
                if j[i * n + l] != j[l * n + i].neg_ref() {
                    return Err(Error::Invalid("J must be skew-symmetric".into()));
                }
            }
        }
        Ok(OrderingKey { n, k, j })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn k_entry(&self, i: usize, j: usize) -> &C {
        &self.k[i * self.n + j]
    }

    pub fn j_entry(&self, i: usize, j: usize) -> &C {
        &self.j[i * self.n + j]
    }

    pub fn lambda(&self, i: usize, j: usize) -> C {
        self.k[i * self.n + j].add_ref(&self.j[i * self.n + j])
    }

    pub fn same_skew(&self, other: &Self) -> bool {
        self.n == other.n && self.j == other.j
    }

    /// Nonzero Λ entries as (i, j, Λ^{ij}); the star kernels iterate over these.
    pub fn lambda_cells(&self) -> Vec<(usize, usize, C)> {
        let mut cells = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let l = self.lambda(i, j);
                if !l.is_zero() {
                    cells.push((i, j, l));
                }
            }
        }
        cells
    }

    /// Nonzero entries of K' - K for the intertwiner from `self` to `to`.
    pub fn k_diff_cells(&self, to: &Self) -> Vec<(usize, usize, C)> {
        let mut cells = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let d = to.k[i * self.n + j].sub_ref(&self.k[i * self.n + j]);
                if !d.is_zero() {
                    cells.push((i, j, d));
                }
            }
        }
        cells
    }

    /// The standard W₂ skew part J = [[0,-1],[1,0]] with symmetric part
    /// K = [[0,κ],[κ,τ]]; κ-orderings are the τ = 0 line, Weyl is κ = 0,
    /// normal κ = 1, anti-normal κ = -1.
    pub fn w2(kappa: C, tau: C) -> Self {
        let zero = C::zero();
        let one = C::one();
        let k = vec![zero.clone(), kappa.clone(), kappa, tau];
        let j = vec![zero.clone(), one.neg_ref(), one, zero];
        OrderingKey { n: 2, k, j }
    }

    pub fn weyl(n: usize) -> Self {
        assert!(n % 2 == 0, "Weyl ordering needs even dimension");
        let m = n / 2;
        let mut k = vec![C::zero(); n * n];
        let mut j = vec![C::zero(); n * n];
        for a in 0..m {
            j[a * n + (m + a)] = C::one().neg_ref();
            j[(m + a) * n + a] = C::one();
        }
        let _ = &mut k;
        OrderingKey { n, k, j }
    }

    /// Replace the symmetric part, keeping J.
    pub fn with_k(&self, k: Vec<C>) -> Result<Self> {
        Self::new(self.n, k, self.j.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_poly::coeff::ExactCoeff;

    #[test]
    fn w2_key_shape() {
        let ord = OrderingKey::<ExactCoeff>::w2(ExactCoeff::from_ratio(1, 2), ExactCoeff::zero());
        assert_eq!(ord.nvars(), 2);
        // Λ^{12} = κ - 1, Λ^{21} = κ + 1
        assert_eq!(ord.lambda(0, 1), ExactCoeff::from_ratio(-1, 2));
        assert_eq!(ord.lambda(1, 0), ExactCoeff::from_ratio(3, 2));
    }

    #[test]
    fn rejects_asymmetric_k() {
        let z = ExactCoeff::zero;
        let one = ExactCoeff::one;
        let r = OrderingKey::new(2, vec![z(), one(), z(), z()], vec![z(), z(), z(), z()]);
        assert!(r.is_err());
    }
}
