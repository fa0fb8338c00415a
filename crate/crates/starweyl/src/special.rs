//! Reference special functions used by the test oracles and shape fits.
//!
//! These are deliberately independent of the star-product machinery: plain
//! power series and a Lanczos gamma, good to ~1e-13 in the argument ranges the
//! suites probe.

use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bessel J₀ of a complex argument by its entire power series.
pub fn bessel_j0(z: Complex64) -> Complex64 {
    let q = -z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 1..200 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            return sum;
        }
    }
    sum
}

/// Modified Bessel I₀ by its power series.
pub fn bessel_i0(z: Complex64) -> Complex64 {
    bessel_j0(Complex64::new(-z.im, z.re))
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function of a complex argument (Lanczos, with reflection for Re z < 1/2).
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        return pi / (s * gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut t = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        t += p / (z + i as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powc(z + 0.5) * (-w).exp() * t
}

/// Beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y).
pub fn beta(x: Complex64, y: Complex64) -> Complex64 {
    gamma(x) * gamma(y) / gamma(x + y)
}

/// Reference theta series Σₙ q^{n²} e^{2nw}, summed until the tail is negligible.
pub fn theta3_series(q: Complex64, w: Complex64) -> Complex64 {
    assert!(q.norm() < 1.0, "theta series needs |q| < 1");
    let mut sum = Complex64::new(1.0, 0.0);
    for n in 1..400i32 {
        let qn = q.powi(n * n);
        let e = (2.0 * n as f64 * w).exp();
        let term = qn * (e + 1.0 / e);
        sum += term;
        if term.norm() < 1e-18 * (1.0 + sum.norm()) {
            break;
        }
    }
    sum
}

/// Rising factorial (a)ₙ = a(a+1)…(a+n-1).
pub fn rising(a: Complex64, n: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}
