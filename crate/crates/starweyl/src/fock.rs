//! Truncated Fock-space representation of W₂, used purely as an independent
//! cross-check of star-product identities.
//!
//! Dictionary: π(u) = a†, π(v) = iħ·a with [a, a†] = 1, so [π(u), π(v)] = -iħ.
//! A polynomial is represented through its normal-ordering expression, whose
//! coefficients are exactly the coefficients in the basis u^{⋆a} ⋆ v^{⋆b}.

use num_complex::Complex64;

use crate::closed_forms::KappaTau;
use crate::error::{Error, Result};
use crate::quadrature::StarFunctionEvaluator;
use crate::weyl_poly::{intertwine, OrderingKey, Polynomial};

type C64 = Complex64;

/// Dense complex matrix on the truncated Fock space {|0⟩, …, |N⟩}.
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl FockMatrix {
    pub fn zeros(dim: usize) -> Self {
        FockMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.norm() == 0.0 {
                    continue;
                }
                for j in 0..self.dim {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Largest entry magnitude over rows and columns < band (the part
    /// untouched by truncation artifacts).
    pub fn max_norm_on_band(&self, band: usize) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..band.min(self.dim) {
            for j in 0..band.min(self.dim) {
                m = m.max(self.get(i, j).norm());
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let c = self.get(i, j);
                        [c.re, c.im]
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "dim": self.dim, "entries": rows })
    }
}

/// The operator dictionary at truncation level N (matrices of size N+1).
#[derive(Clone, Copy, Debug)]
pub struct OperatorDict {
    pub level: usize,
    pub hbar: C64,
}

impl OperatorDict {
    pub fn new(level: usize, hbar: C64) -> Self {
        OperatorDict { level, hbar }
    }

    fn dim(&self) -> usize {
        self.level + 1
    }

    /// π(u) = a†.
    pub fn pi_u(&self) -> FockMatrix {
        let mut m = FockMatrix::zeros(self.dim());
        for n in 0..self.level {
            m.set(n + 1, n, C64::new(((n + 1) as f64).sqrt(), 0.0));
        }
        m
    }

    /// π(v) = iħ·a; annihilates the vacuum.
    pub fn pi_v(&self) -> FockMatrix {
        let ih = C64::new(0.0, 1.0) * self.hbar;
        let mut m = FockMatrix::zeros(self.dim());
        for n in 1..=self.level {
            m.set(n - 1, n, ih * (n as f64).sqrt());
        }
        m
    }

    pub fn vacuum_projector(&self) -> FockMatrix {
        let mut m = FockMatrix::zeros(self.dim());
        m.set(0, 0, C64::new(1.0, 0.0));
        m
    }

    pub fn level_projector(&self, n: usize) -> FockMatrix {
        let mut m = FockMatrix::zeros(self.dim());
        m.set(n, n, C64::new(1.0, 0.0));
        m
    }
}

/// Represent a polynomial given in the (κ,τ)-ordering expression: intertwine
/// to the normal ordering, read off PBW coefficients, and assemble
/// Σ c_{ab}·π(u)^a·π(v)^b.
pub fn represent(p: &Polynomial<C64>, kt: KappaTau, dict: &OperatorDict) -> Result<FockMatrix> {
    if p.nvars() != 2 {
        return Err(Error::DimensionMismatch("the oracle represents W₂".into()));
    }
    let deg = p.total_degree() as usize;
    if deg > dict.level {
        return Err(Error::TruncationOverflow {
            level: dict.level,
            degree: deg,
        });
    }
    let from = kt.ordering_key();
    let normal = OrderingKey::w2(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let p_normal = intertwine(p, &from, &normal, &kt.hbar)?;
    let u = dict.pi_u();
    let v = dict.pi_v();
    let mut out = FockMatrix::zeros(dict.dim());
    for (m, c) in p_normal.terms() {
        let term = u.pow(m.get(0) as usize).mul(&v.pow(m.get(1) as usize));
        out = out.add(&term.scale(*c));
    }
    Ok(out)
}

/// ⟨0| π(v)^q π(u)^p |0⟩ computed by matrix products: the vacuum coefficient
/// of ϖ₀₀ ⋆ v^q ⋆ u^p ⋆ ϖ₀₀, which equals δ_{pq}·p!·(iħ)^p.
pub fn matrix_element_check(p: usize, q: usize, dict: &OperatorDict) -> Result<C64> {
    if p > dict.level.saturating_sub(2) || q > dict.level.saturating_sub(2) {
        return Err(Error::TruncationOverflow {
            level: dict.level,
            degree: p.max(q),
        });
    }
    let m = dict.pi_v().pow(q).mul(&dict.pi_u().pow(p));
    Ok(m.get(0, 0))
}

/// Both sign candidates of the vacuum pairing of a scalar-weight evaluator:
/// ∫ w(t)·e^{±t/2} dt. The matrix oracle resolves the sign to +
/// (uv/iħ acts as the number operator plus one half, see the tests), and the
/// other candidate is reported alongside per the open sign convention.
#[derive(Clone, Copy, Debug)]
pub struct VacuumPairing {
    pub plus: C64,
    pub minus: C64,
}

pub fn vacuum_pairing(ev: &StarFunctionEvaluator) -> Result<VacuumPairing> {
    let w00 = crate::closed_forms::vacuum(ev.kt)?;
    let combo_plus = ev.star_vacuum()?;
    // the + pairing: coefficient of ϖ₀₀ at a reference point
    let (u0, v0) = (C64::new(0.3, 0.0), C64::new(0.2, 0.0));
    let plus = combo_plus.eval(u0, v0) / w00.eval(u0, v0);
    // the - candidate: the same weights against e^{-t/2}
    let mut minus = C64::new(0.0, 0.0);
    for term in &ev.terms {
        let (lo, hi) = match term.path {
            crate::quadrature::Path::Line { lo, hi } => (lo, hi),
            _ => {
                return Err(Error::Invalid(
                    "vacuum pairing needs real-line contours".into(),
                ))
            }
        };
        let a = lo.max(-ev.spec.trunc);
        let b = hi.min(ev.spec.trunc);
        let f = |t: f64| term.weight.eval(C64::new(t, 0.0)) * C64::new(-t * 0.5, 0.0).exp();
        let r = crate::quadrature::tanh_sinh(&f, a, b, &ev.spec);
        minus += crate::quadrature::quad::require_converged(&r, &ev.spec, "pairing scalar")?;
    }
    Ok(VacuumPairing { plus, minus })
}
