//! Coefficient rings for the polynomial layer.
//!
//! Exact mode works over Gaussian rationals with ħ as a formal indeterminate,
//! so the algebraic identities of the star product hold with zero tolerance.
//! Float mode binds ħ to a configured complex number and works in `Complex64`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ring operations the star-product kernels need from a coefficient type.
pub trait Coefficient: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiply by the imaginary unit.
    fn mul_i(&self) -> Self;
    fn mul_int(&self, n: i64) -> Self;
    /// Exact division by a nonzero integer.
    fn div_int(&self, n: i64) -> Self;
    fn from_int(n: i64) -> Self;
    /// The deformation parameter as an element of the ring: formal in exact
    /// mode, the bound numeric value in float mode.
    fn hbar_value(hbar: &Self) -> Self {
        hbar.clone()
    }
}

/// A Gaussian rational a + bi with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio_im(num: i64, den: i64) -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::new(BigInt::from(num), BigInt::from(den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn neg(&self) -> Self {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul_i(&self) -> Self {
        GaussRational::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // BigRational -> f64 via a scaled integer division; fine for test-sized values.
    let num = r.numer();
    let den = r.denom();
    let fnum = bigint_to_f64(num);
    let fden = bigint_to_f64(den);
    fnum / fden
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let s = n.to_string();
    s.parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// A polynomial in ħ with Gaussian-rational coefficients; `coeffs[k]` multiplies ħᵏ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactCoeff {
    pub coeffs: Vec<GaussRational>,
}

impl ExactCoeff {
    pub fn constant(c: GaussRational) -> Self {
        if c.is_zero() {
            ExactCoeff { coeffs: vec![] }
        } else {
            ExactCoeff { coeffs: vec![c] }
        }
    }

    /// The formal ħ itself.
    pub fn hbar() -> Self {
        ExactCoeff {
            coeffs: vec![GaussRational::from_int(0), GaussRational::from_int(1)],
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactCoeff::constant(GaussRational::from_ratio(num, den))
    }

    pub fn from_ratio_im(num: i64, den: i64) -> Self {
        ExactCoeff::constant(GaussRational::from_ratio_im(num, den))
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    /// Substitute a numeric ħ.
    pub fn substitute(&self, hbar: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * hbar + c.to_complex();
        }
        acc
    }
}

impl Coefficient for ExactCoeff {
    fn zero() -> Self {
        ExactCoeff { coeffs: vec![] }
    }

    fn one() -> Self {
        ExactCoeff::constant(GaussRational::from_int(1))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussRational::from_int(0);
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).unwrap_or(&zero);
            let b = other.coeffs.get(k).unwrap_or(&zero);
            coeffs.push(a.add(b));
        }
        ExactCoeff { coeffs }.trim()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![GaussRational::from_int(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        ExactCoeff { coeffs }.trim()
    }

    fn neg_ref(&self) -> Self {
        ExactCoeff {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    fn mul_i(&self) -> Self {
        ExactCoeff {
            coeffs: self.coeffs.iter().map(|c| c.mul_i()).collect(),
        }
    }

    fn mul_int(&self, n: i64) -> Self {
        let f = GaussRational::from_int(n);
        ExactCoeff {
            coeffs: self.coeffs.iter().map(|c| c.mul(&f)).collect(),
        }
        .trim()
    }

    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0);
        let f = GaussRational::from_ratio(1, n);
        ExactCoeff {
            coeffs: self.coeffs.iter().map(|c| c.mul(&f)).collect(),
        }
    }

    fn from_int(n: i64) -> Self {
        ExactCoeff::constant(GaussRational::from_int(n))
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn mul_i(&self) -> Self {
        Complex64::new(-self.im, self.re)
    }

    fn mul_int(&self, n: i64) -> Self {
        self * n as f64
    }

    fn div_int(&self, n: i64) -> Self {
        self / n as f64
    }

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}


/// Machine-word exact coefficients: a polynomial in ħ over Gaussian rationals
/// with i128 parts. Same semantics as [`ExactCoeff`] for the magnitudes the
/// property suites generate (small inputs, degree ≤ 6, dimension ≤ 4), at a
/// fraction of the cost; i128 overflow panics under the test profile rather
/// than wrapping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exact128 {
    pub coeffs: Vec<(num_rational::Ratio<i128>, num_rational::Ratio<i128>)>,
}

type Q128 = num_rational::Ratio<i128>;

impl Exact128 {
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Exact128 {
            coeffs: vec![(Q128::new(num as i128, den as i128), Q128::zero())],
        }
        .trim()
    }

    pub fn from_ratio_im(num: i64, den: i64) -> Self {
        Exact128 {
            coeffs: vec![(Q128::zero(), Q128::new(num as i128, den as i128))],
        }
        .trim()
    }

    pub fn hbar() -> Self {
        Exact128 {
            coeffs: vec![
                (Q128::zero(), Q128::zero()),
                (Q128::one(), Q128::zero()),
            ],
        }
    }

    fn trim(mut self) -> Self {
        while self
            .coeffs
            .last()
            .map(|(a, b)| a.is_zero() && b.is_zero())
            .unwrap_or(false)
        {
            self.coeffs.pop();
        }
        self
    }

    pub fn substitute(&self, hbar: Complex64) -> Complex64 {
        let to_f = |q: &Q128| *q.numer() as f64 / *q.denom() as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b) in self.coeffs.iter().rev() {
            acc = acc * hbar + Complex64::new(to_f(a), to_f(b));
        }
        acc
    }
}

impl Coefficient for Exact128 {
    fn zero() -> Self {
        Exact128 { coeffs: vec![] }
    }

    fn one() -> Self {
        Exact128::from_ratio(1, 1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = (Q128::zero(), Q128::zero());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let (ar, ai) = self.coeffs.get(k).unwrap_or(&zero);
            let (br, bi) = other.coeffs.get(k).unwrap_or(&zero);
            coeffs.push((ar + br, ai + bi));
        }
        Exact128 { coeffs }.trim()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![(Q128::zero(), Q128::zero()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, (ar, ai)) in self.coeffs.iter().enumerate() {
            for (j, (br, bi)) in other.coeffs.iter().enumerate() {
                let re = ar * br - ai * bi;
                let im = ar * bi + ai * br;
                coeffs[i + j].0 += re;
                coeffs[i + j].1 += im;
            }
        }
        Exact128 { coeffs }.trim()
    }

    fn neg_ref(&self) -> Self {
        Exact128 {
            coeffs: self.coeffs.iter().map(|(a, b)| (-a, -b)).collect(),
        }
    }

    fn mul_i(&self) -> Self {
        Exact128 {
            coeffs: self.coeffs.iter().map(|(a, b)| (-b, *a)).collect(),
        }
    }

    fn mul_int(&self, n: i64) -> Self {
        let f = Q128::from_integer(n as i128);
        Exact128 {
            coeffs: self.coeffs.iter().map(|(a, b)| (a * f, b * f)).collect(),
        }
        .trim()
    }

    fn div_int(&self, n: i64) -> Self {
        assert!(n != 0);
        let f = Q128::new(1, n as i128);
        Exact128 {
            coeffs: self.coeffs.iter().map(|(a, b)| (a * f, b * f)).collect(),
        }
    }

    fn from_int(n: i64) -> Self {
        Exact128::from_ratio(n, 1)
    }
}
