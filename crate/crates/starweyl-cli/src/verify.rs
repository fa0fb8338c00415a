//! Verification suites: each check records the identity it tests, the worst
//! residual, the tolerance and the runtime. Exit code 0 iff all checks pass.

use std::time::Instant;

use num_complex::Complex64;
use starweyl::closed_forms::{
    antivacuum, evolution_series, exp_group_mul, gaussian_star_gaussian, poly_star_exp,
    star_exp_quadratic, star_sin, theta_partial_sum, vacuum, KappaTau, Side, UvFamily,
};
use starweyl::fock::{matrix_element_check, vacuum_pairing, OperatorDict};
use starweyl::grid::default_grid;
use starweyl::quadrature::{
    continue_inverse, hankel_loop, inverse_minus, inverse_plus, inverse_plus_unchecked,
    laguerre_psi, laguerre_psi_dual, product_gamma, product_sin_accelerated, reciprocal_gamma,
    residue_at, solveq_residual, star_beta, star_delta, star_gamma, star_product,
};
use starweyl::report::VerificationReport;
use starweyl::rng::CounterRng;
use starweyl::special::{bessel_j0, gamma as gamma_ref, theta3_series};
use starweyl::weyl_poly::{intertwine, star_mul, Coefficient, Exact128, MultiIndex, OrderingKey, Polynomial};

use crate::config::Config;

type C64 = Complex64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cmd_verify(cfg: &Config) -> Result<i32, String> {
    let suite = cfg
        .extra
        .get("suite")
        .map(String::as_str)
        .unwrap_or("all")
        .to_string();
    let mut report = VerificationReport::new(&suite);
    let all = suite == "all";
    if all || suite == "associativity" {
        suite_associativity(cfg, &mut report);
    }
    if all || suite == "intertwiner" {
        suite_intertwiner(cfg, &mut report);
    }
    if all || suite == "closedforms" {
        suite_closedforms(cfg, &mut report);
    }
    if all || suite == "inverses" {
        suite_inverses(cfg, &mut report);
    }
    if all || suite == "delta" {
        suite_delta(cfg, &mut report);
    }
    if all || suite == "gammabeta" {
        suite_gammabeta(cfg, &mut report);
    }
    if all || suite == "products" {
        suite_products(cfg, &mut report);
    }
    if all || suite == "fock" {
        suite_fock(cfg, &mut report);
    }
    if all || suite == "residues" {
        suite_residues(cfg, &mut report);
    }
    if all || suite == "theta" {
        suite_theta(cfg, &mut report);
    }
    if all || suite == "hankel" {
        suite_hankel(cfg, &mut report);
    }
    if report.checks.is_empty() {
        return Err(format!("unknown suite `{suite}`; see --help"));
    }
    report.print_lines();
    if let Some(path) = &cfg.out {
        let mut text = serde_json::to_string_pretty(&report.to_json()).map_err(|e| e.to_string())?;
        text.push('\n');
        std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn random_poly(rng: &mut CounterRng, n: usize, terms: usize) -> Polynomial<Exact128> {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0u16; n];
        let mut budget = 6u32;
        for e in exps.iter_mut() {
            let d = rng.below((budget + 1) as u64) as u16;
            *e = d.min(3);
            budget = budget.saturating_sub(*e as u32);
        }
        let coeff = Exact128::from_ratio(rng.small_int(3), 1 + rng.below(2) as i64)
            .add_ref(&Exact128::from_ratio_im(rng.small_int(2), 2));
        p.add_term(MultiIndex::from_slice(&exps), coeff);
    }
    p
}

fn random_scalar(rng: &mut CounterRng) -> Exact128 {
    Exact128::from_ratio(rng.small_int(2), 1 + rng.below(2) as i64)
        .add_ref(&Exact128::from_ratio_im(rng.small_int(2), 2))
}

fn suite_associativity(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let rng = CounterRng::new(cfg.seed, 11);
    let trials: Vec<u64> = (0..200).collect();
    let hbar = Exact128::hbar();
    let bad = starweyl::grid::par_map(&trials, |&trial| {
        let mut r = rng.split(trial);
        let n = match trial % 20 {
            0..=11 => 2,
            12..=16 => 3,
            _ => 4,
        };
        let ord = {
            let mut k = vec![Exact128::zero(); n * n];
            let mut j = vec![Exact128::zero(); n * n];
            for i in 0..n {
                for l in i..n {
                    if r.below(100) < 60 {
                        let s = random_scalar(&mut r);
                        k[i * n + l] = s.clone();
                        k[l * n + i] = s;
                    }
                    if l > i && r.below(100) < 60 {
                        let a = random_scalar(&mut r);
                        j[i * n + l] = a.clone();
                        j[l * n + i] = a.neg_ref();
                    }
                }
            }
            OrderingKey::new(n, k, j).expect("valid parts")
        };
        let f = random_poly(&mut r, n, 3);
        let g = random_poly(&mut r, n, 3);
        let h = random_poly(&mut r, n, 3);
        let lhs = star_mul(&star_mul(&f, &g, &ord, &hbar).unwrap(), &h, &ord, &hbar).unwrap();
        let rhs = star_mul(&f, &star_mul(&g, &h, &ord, &hbar).unwrap(), &ord, &hbar).unwrap();
        lhs != rhs
    })
    .into_iter()
    .filter(|&b| b)
    .count();
    report.record(
        "weyl_poly.associativity",
        "(f⋆g)⋆h = f⋆(g⋆h) exactly, 200 random triples, n ≤ 4, deg ≤ 6",
        bad as f64,
        0.0,
        t0.elapsed().as_millis(),
    );
}

fn suite_intertwiner(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let rng = CounterRng::new(cfg.seed, 13);
    let hbar = Exact128::hbar();
    let mut bad = 0usize;
    for trial in 0..100u64 {
        let mut r = rng.split(trial);
        let a = OrderingKey::w2(random_scalar(&mut r), random_scalar(&mut r));
        let b = OrderingKey::w2(random_scalar(&mut r), random_scalar(&mut r));
        let cc = OrderingKey::w2(random_scalar(&mut r), random_scalar(&mut r));
        let f = random_poly(&mut r, 2, 3);
        let g = random_poly(&mut r, 2, 3);
        let hom_l = intertwine(&star_mul(&f, &g, &a, &hbar).unwrap(), &a, &b, &hbar).unwrap();
        let hom_r = star_mul(
            &intertwine(&f, &a, &b, &hbar).unwrap(),
            &intertwine(&g, &a, &b, &hbar).unwrap(),
            &b,
            &hbar,
        )
        .unwrap();
        let comp_l =
            intertwine(&intertwine(&f, &a, &b, &hbar).unwrap(), &b, &cc, &hbar).unwrap();
        let comp_r = intertwine(&f, &a, &cc, &hbar).unwrap();
        if hom_l != hom_r || comp_l != comp_r {
            bad += 1;
        }
    }
    report.record(
        "weyl_poly.intertwiner",
        "I(f⋆g) = I(f)⋆I(g) and I∘I composes exactly, 100 random pairs",
        bad as f64,
        0.0,
        t0.elapsed().as_millis(),
    );
}

fn suite_closedforms(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for kappa in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.5)] {
        let kt = KappaTau::kappa_only(kappa, cfg.hbar);
        for t in [c(0.5, 0.0), c(-0.3, 0.2)] {
            let series = evolution_series(t, kt, 48).unwrap();
            let closed = star_exp_quadratic(t, kt).unwrap();
            for (u, v) in default_grid() {
                worst = worst.max((series.eval(&[u, v]) - closed.eval(u, v)).norm());
            }
        }
    }
    report.record(
        "closed_forms.series_vs_closed",
        "evolution-equation series matches the closed quadratic exponential, |t| ≤ 0.5",
        worst,
        1e-8,
        t0.elapsed().as_millis(),
    );
    let t1 = Instant::now();
    let mut worst_law: f64 = 0.0;
    for kappa in [c(0.0, 0.0), c(0.0, 0.5)] {
        let kt = KappaTau::kappa_only(kappa, cfg.hbar);
        let e1 = star_exp_quadratic(c(0.3, 0.0), kt).unwrap();
        let e2 = star_exp_quadratic(c(0.5, 0.0), kt).unwrap();
        let prod = gaussian_star_gaussian(&e1, &e2).unwrap();
        let direct = star_exp_quadratic(c(0.8, 0.0), kt).unwrap();
        for (u, v) in default_grid() {
            worst_law = worst_law.max((prod.eval(u, v) - direct.eval(u, v)).norm());
        }
        let gl = exp_group_mul(&UvFamily::finite(c(0.3, 0.0)), &UvFamily::finite(c(0.5, 0.0)))
            .unwrap()
            .to_exp_element(kt)
            .unwrap();
        for (u, v) in default_grid() {
            worst_law = worst_law.max((gl.eval(u, v) - direct.eval(u, v)).norm());
        }
    }
    report.record(
        "closed_forms.exponential_law",
        "e_*^{t₁·2uv/iħ} ⋆ e_*^{t₂·2uv/iħ} = e_*^{(t₁+t₂)·2uv/iħ}",
        worst_law,
        1e-10,
        t1.elapsed().as_millis(),
    );
    let t2 = Instant::now();
    let mut worst_sin: f64 = 0.0;
    let kt = KappaTau::kappa_only(c(1.0, 0.0), cfg.hbar);
    for z in [-2.5f64, -0.5, 0.5, 2.5] {
        let s = star_sin(c(z, 0.0), kt).unwrap();
        for (u, v) in default_grid() {
            worst_sin = worst_sin.max(s.eval(u, v).norm());
        }
    }
    report.record(
        "closed_forms.sin_vanishing",
        "sin_*π(z + uv/iħ) vanishes identically at z ∈ ℤ + 1/2",
        worst_sin,
        1e-10,
        t2.elapsed().as_millis(),
    );
    let t3 = Instant::now();
    let mut worst_vac: f64 = 0.0;
    for kappa in [c(0.0, 0.0), c(0.0, 0.5)] {
        for tau in [c(0.0, 0.0), c(0.3, -0.2)] {
            let kt = KappaTau::new(kappa, tau, cfg.hbar);
            let w00 = vacuum(kt).unwrap();
            let v_w00 = poly_star_exp(&Polynomial::var(2, 1), &w00, Side::Left).unwrap();
            let w00_u = poly_star_exp(&Polynomial::var(2, 0), &w00, Side::Right).unwrap();
            let wb = antivacuum(kt).unwrap();
            let u_wb = poly_star_exp(&Polynomial::var(2, 0), &wb, Side::Left).unwrap();
            for (u, v) in default_grid().into_iter().step_by(4) {
                worst_vac = worst_vac.max(v_w00.eval(u, v).norm());
                worst_vac = worst_vac.max(w00_u.eval(u, v).norm());
                worst_vac = worst_vac.max(u_wb.eval(u, v).norm());
            }
        }
    }
    report.record(
        "closed_forms.vacuum_annihilation",
        "v ⋆ ϖ₀₀ = 0 = ϖ₀₀ ⋆ u (and u ⋆ ϖ̄₀₀ = 0) in every (κ,τ) expression",
        worst_vac,
        1e-12,
        t3.elapsed().as_millis(),
    );
}

fn suite_inverses(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let spec = cfg.quad_spec();
    let mut worst: f64 = 0.0;
    for kappa in [c(0.0, 0.0), c(0.0, 0.5)] {
        let kt = KappaTau::kappa_only(kappa, cfg.hbar);
        for z in [c(1.0, 0.0), c(0.1, 0.0), c(2.0, 1.0)] {
            let wrapped = inverse_plus(z, kt, spec)
                .unwrap()
                .apply_poly_left(&kt.x_poly(z, 1.0))
                .unwrap();
            for (u, v) in default_grid().into_iter().step_by(2) {
                worst = worst.max((wrapped.eval(u, v).unwrap() - 1.0).norm());
            }
        }
    }
    report.record(
        "quadrature.inverse_contract",
        "(z + uv/iħ) ⋆ (z + uv/iħ)⁻¹₊ = 1 on the grid",
        worst,
        1e-6,
        t0.elapsed().as_millis(),
    );
    let t1 = Instant::now();
    let kt = KappaTau::weyl(cfg.hbar);
    let z = c(-0.5, 0.0);
    let wrapped = inverse_plus_unchecked(z, kt, spec)
        .unwrap()
        .apply_poly_left(&kt.x_poly(z, 1.0))
        .unwrap();
    let w00 = vacuum(kt).unwrap();
    let mut worst_defect: f64 = 0.0;
    for (u, v) in default_grid().into_iter().step_by(2) {
        worst_defect = worst_defect
            .max((wrapped.eval(u, v).unwrap() - (c(1.0, 0.0) - w00.eval(u, v))).norm());
    }
    report.record(
        "quadrature.boundary_defect",
        "(z + uv/iħ) ⋆ inverse at z = -1/2 equals 1 - ϖ₀₀",
        worst_defect,
        1e-6,
        t1.elapsed().as_millis(),
    );
    let t2 = Instant::now();
    let ip = inverse_plus(c(0.0, 0.0), kt, spec).unwrap();
    let im = inverse_minus(c(0.0, 0.0), kt, spec).unwrap();
    let diverges = matches!(
        star_product(&ip, &im, "inv+ ⋆ inv-"),
        Err(starweyl::Error::Diverges(_))
    ) && matches!(
        exp_group_mul(&UvFamily::vacuum(), &UvFamily::antivacuum()),
        Err(starweyl::Error::Diverges(_))
    );
    report.record(
        "quadrature.divergence_detection",
        "X⁻¹₊ ⋆ X⁻¹₋ and ϖ₀₀ ⋆ ϖ̄₀₀ are detected as divergent",
        if diverges { 0.0 } else { 1.0 },
        0.0,
        t2.elapsed().as_millis(),
    );
    let t3 = Instant::now();
    let direct = inverse_plus(c(1.0, 0.0), kt, spec).unwrap();
    let cont = continue_inverse(c(1.0, 0.0), kt, spec, 1).unwrap();
    let mut worst_cont: f64 = 0.0;
    for (u, v) in default_grid().into_iter().step_by(4) {
        worst_cont = worst_cont.max((direct.eval(u, v).unwrap() - cont.eval(u, v).unwrap()).norm());
    }
    report.record(
        "quadrature.sliding_continuation",
        "one sliding step reproduces the direct inverse on the overlap",
        worst_cont,
        1e-5,
        t3.elapsed().as_millis(),
    );
}

fn suite_delta(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let kt = KappaTau::weyl(cfg.hbar);
    let spec = cfg.quad_spec();
    let delta = star_delta(kt, spec).unwrap();
    let at0 = delta.eval(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    let mut worst = (at0 - 2.0 * std::f64::consts::PI).norm();
    for (u, v) in default_grid() {
        let ratio = delta.eval(u, v).unwrap() / bessel_j0(2.0 * u * v / cfg.hbar);
        worst = worst.max((ratio - at0).norm());
    }
    report.record(
        "quadrature.hansen_bessel",
        "δ_* is 2π·J₀(2uv/ħ) in the Weyl expression (constant fixed at uv = 0)",
        worst,
        1e-6,
        t0.elapsed().as_millis(),
    );
}

fn suite_gammabeta(cfg: &Config, report: &mut VerificationReport) {
    let spec = cfg.quad_spec();
    let kt = KappaTau::weyl(cfg.hbar);
    let probes: Vec<(C64, C64)> = default_grid().into_iter().step_by(3).collect();
    let z = c(1.0, 0.0);
    let y = c(1.5, 0.0);
    let t0 = Instant::now();
    let lhs = star_gamma(z + 1.0, 1.0, kt, spec).unwrap();
    let rhs = star_gamma(z, 1.0, kt, spec)
        .unwrap()
        .apply_poly_left(&kt.x_poly(z, 1.0))
        .unwrap();
    let mut worst: f64 = 0.0;
    for &(u, v) in &probes {
        worst = worst.max((lhs.eval(u, v).unwrap() - rhs.eval(u, v).unwrap()).norm());
    }
    report.record(
        "quadrature.gamma_functional_equation",
        "Γ_*(z+1+X) = (z+X) ⋆ Γ_*(z+X)",
        worst,
        1e-6,
        t0.elapsed().as_millis(),
    );
    let t1 = Instant::now();
    let lhs = star_beta(z, y, 1.0, kt, spec).unwrap();
    let rhs = star_beta(z, y + 1.0, 1.0, kt, spec)
        .unwrap()
        .apply_poly_left(&kt.x_poly(z + y, 1.0).scale(&(1.0 / y)))
        .unwrap();
    let mut worst: f64 = 0.0;
    for &(u, v) in &probes {
        worst = worst.max((lhs.eval(u, v).unwrap() - rhs.eval(u, v).unwrap()).norm());
    }
    report.record(
        "quadrature.beta_functional_equation",
        "B_*(z+X, y) = ((y+z+X)/y) ⋆ B_*(z+X, y+1)",
        worst,
        1e-6,
        t1.elapsed().as_millis(),
    );
    let t2 = Instant::now();
    let g = star_gamma(z, 1.0, kt, spec).unwrap();
    let prod = star_product(
        &star_gamma(y + z, 1.0, kt, spec).unwrap(),
        &star_beta(z, y, 1.0, kt, spec).unwrap(),
        "Γ ⋆ B",
    )
    .unwrap();
    let gy = gamma_ref(y);
    let mut worst: f64 = 0.0;
    for &(u, v) in &probes {
        worst = worst.max((g.eval(u, v).unwrap() * gy - prod.eval(u, v).unwrap()).norm());
    }
    report.record(
        "quadrature.gamma_beta_relation",
        "Γ_*(z+X)·Γ(y) = Γ_*(y+z+X) ⋆ B_*(z+X, y)",
        worst,
        1e-5,
        t2.elapsed().as_millis(),
    );
    let t3 = Instant::now();
    let pairing = vacuum_pairing(&g).unwrap();
    let worst = (pairing.plus - gamma_ref(z + 0.5)).norm();
    report.record(
        "quadrature.gamma_vacuum_pairing",
        "Γ_*(z+X) ⋆ ϖ₀₀ = Γ(z+1/2)·ϖ₀₀ (sign resolved by the matrix oracle)",
        worst,
        1e-6,
        t3.elapsed().as_millis(),
    );
}

fn suite_products(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let kt = KappaTau::kappa_only(c(1.0, 0.0), cfg.hbar);
    let z = c(0.3, 0.0);
    let acc = product_sin_accelerated(z, 500, kt).unwrap();
    let closed = star_sin(z, kt).unwrap();
    let mut worst: f64 = 0.0;
    for (u, v) in default_grid() {
        worst = worst.max((acc.eval(&[u, v]) - closed.eval(u, v)).norm());
    }
    report.record(
        "quadrature.sin_product",
        "π(z+X) ⋆ ∏(1-(z+X)²/k²) converges to sin_*π(z+X) (N = 500, extrapolated)",
        worst,
        1e-4,
        t0.elapsed().as_millis(),
    );
    let t1 = Instant::now();
    let kt = KappaTau::kappa_only(c(0.0, 0.5), cfg.hbar);
    let (pg, info) = product_gamma(c(1.0, 0.0), 2000, kt, cfg.quad_spec()).unwrap();
    let g = star_gamma(c(1.0, 0.0), 1.0, kt, cfg.quad_spec()).unwrap();
    let mut worst: f64 = 0.0;
    for (u, v) in default_grid().into_iter().step_by(4) {
        worst = worst.max((pg.eval(u, v).unwrap() - g.eval(u, v).unwrap()).norm());
    }
    report.record(
        "quadrature.gamma_product",
        &format!(
            "Euler-product form converges to Γ_* (achieved N = {})",
            info.achieved_n
        ),
        worst,
        1e-3,
        t1.elapsed().as_millis(),
    );
    let t2 = Instant::now();
    let kt = KappaTau::kappa_only(c(-0.4, 0.3), cfg.hbar);
    let mut worst: f64 = 0.0;
    for z in [0.5f64, 1.5, 2.5] {
        let rg = reciprocal_gamma(c(z, 0.0), kt, cfg.quad_spec()).unwrap();
        for (u, v) in default_grid().into_iter().step_by(4) {
            worst = worst.max(rg.eval(u, v).unwrap().norm());
        }
    }
    report.record(
        "quadrature.reciprocal_gamma_vanishing",
        "sin_*π(z+X) ⋆ Γ_*(z+X) vanishes at z ∈ ℕ + 1/2 (Re κ < 0)",
        worst,
        1e-8,
        t2.elapsed().as_millis(),
    );
}

fn suite_fock(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let dict = OperatorDict::new(24, cfg.hbar);
    let ih = c(0.0, 1.0) * cfg.hbar;
    let mut worst: f64 = 0.0;
    for p in 0..=8usize {
        for q in 0..=8usize {
            let got = matrix_element_check(p, q, &dict).unwrap();
            let expect = if p == q {
                let mut f = c(1.0, 0.0);
                for k in 1..=p {
                    f *= k as f64;
                }
                f * ih.powu(p as u32)
            } else {
                c(0.0, 0.0)
            };
            worst = worst.max((got - expect).norm() / (1.0 + expect.norm()));
        }
    }
    report.record(
        "fock.matrix_elements",
        "⟨0|π(v)^q π(u)^p|0⟩ = δ_{pq}·p!·(iħ)^p for p, q ≤ 8 at N = 24",
        worst,
        1e-10,
        t0.elapsed().as_millis(),
    );
}

fn suite_residues(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let kt = KappaTau::weyl(cfg.hbar);
    let spec = cfg.quad_spec();
    let phi0 = residue_at(0, c(0.0, 0.0), kt, spec).unwrap();
    let at0 = phi0.eval(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    let mut worst: f64 = 0.0;
    for (u, v) in default_grid().into_iter().step_by(2) {
        let ratio = phi0.eval(u, v).unwrap() / bessel_j0(2.0 * u * v / cfg.hbar);
        worst = worst.max((ratio - at0).norm());
    }
    let probe = (c(0.5, 0.0), c(0.4, 0.0));
    let v0 = phi0.eval(probe.0, probe.1).unwrap();
    let v1 = residue_at(1, c(0.0, 0.0), kt, spec)
        .unwrap()
        .eval(probe.0, probe.1)
        .unwrap();
    worst = worst.max((v1 / v0 + 1.0).norm());
    report.record(
        "quadrature.residue_bessel",
        "Φ_k(0,·) ∝ J₀(2uv/ħ) with (-1)^k alternation",
        worst,
        1e-6,
        t0.elapsed().as_millis(),
    );
    let t1 = Instant::now();
    let z = c(0.7, 0.0);
    let mut worst_ode: f64 = 0.0;
    let f = |w: f64| laguerre_psi(z, c(w, 0.0)).unwrap();
    for w in [0.5, 1.0, 2.0] {
        worst_ode = worst_ode.max(solveq_residual(&f, z, w, 0.02).norm());
    }
    worst_ode = worst_ode.max(
        (laguerre_psi(z, c(1.3, 0.0)).unwrap() - laguerre_psi_dual(z, c(1.3, 0.0)).unwrap())
            .norm(),
    );
    report.record(
        "quadrature.laguerre_solution",
        "Ψ_z solves (iz+w)f + f' + wf'' = 0; both expressions agree",
        worst_ode,
        1e-6,
        t1.elapsed().as_millis(),
    );
}

fn suite_theta(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let kt = KappaTau::new(c(0.0, 0.0), c(0.0, -0.5), cfg.hbar);
    let sum = theta_partial_sum(50, 1, kt);
    let q = (kt.tau / kt.i_hbar()).exp();
    let mut worst: f64 = 0.0;
    for v in [c(0.0, 0.0), c(0.4, 0.0), c(-0.3, 0.2), c(0.1, -0.5), c(0.8, 0.1)] {
        let got = sum.combo.eval(c(0.3, 0.0), v);
        worst = worst.max((got - theta3_series(q, v / kt.i_hbar())).norm());
    }
    let warned = theta_partial_sum(3, 1, KappaTau::new(c(0.0, 0.0), c(0.0, 0.5), cfg.hbar))
        .convergence_warning;
    if !warned {
        worst = worst.max(1.0);
    }
    report.record(
        "closed_forms.theta",
        "partial sums converge to the theta series for Im K^{kk} < 0; warning otherwise",
        worst,
        1e-10,
        t0.elapsed().as_millis(),
    );
}

fn suite_hankel(cfg: &Config, report: &mut VerificationReport) {
    let t0 = Instant::now();
    let kt = KappaTau::weyl(cfg.hbar);
    let sup = |tau: f64| -> f64 {
        let a = hankel_loop(tau, kt, cfg.quad_spec()).unwrap();
        default_grid()
            .into_iter()
            .step_by(2)
            .map(|(u, v)| a.eval(u, v).unwrap().norm())
            .fold(0.0, f64::max)
    };
    let s10 = sup(-10.0);
    let s20 = sup(-20.0);
    let ok = s10 < 1e-3 && s20 < 1e-7 && s20 < s10 * 1e-4;
    report.record(
        "quadrature.hankel_decay",
        "the Hankel loop decays by ≥ 4 orders from τ = -10 to τ = -20",
        if ok { 0.0 } else { 1.0 },
        0.0,
        t0.elapsed().as_millis(),
    );
}
