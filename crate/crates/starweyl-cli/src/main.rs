//! Command-line driver for star-product evaluations, sweeps and verification
//! suites. Emits JSON or CSV; exit code 0 iff every selected check passes.

mod config;
mod output;
mod verify;

use num_complex::Complex64;
use starweyl::closed_forms::{star_exp_quadratic, theta_partial_sum};
use starweyl::quadrature::{
    inverse_minus, inverse_plus, residue_at, star_beta, star_delta, star_gamma,
};
use starweyl::special::bessel_j0;
use starweyl::weyl_poly::json as wjson;
use starweyl::weyl_poly::{intertwine, star_mul, OrderingKey};

use config::{Config, Mode};
use output::{emit_records, Record};

type C64 = Complex64;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(args) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

const USAGE: &str = "\
starweyl <command> [flags]

commands:
  mul        --lhs <poly> --rhs <poly>        star product of two polynomials
  intertwine --input <poly> --kappa-to <κ'>   move between ordering expressions
  exp        --t <z>                          quadratic star exponential on the grid
  inverse    --z <z> [--side plus|minus]      (z + uv/iħ)⁻¹ evaluator on the grid
  gamma      --z <z> [--sign +|-]             star gamma on the grid
  beta       --z <z> --y <y>                  star beta on the grid
  delta                                       star delta on the grid + J₀ fit
  residue    --k <int> [--z <z>]              residue contour values on the grid
  theta      --n <int> [--var u|v]            theta partial sum on the grid
  verify     --suite <name>                   run a verification suite
             suites: associativity, intertwiner, closedforms, inverses, delta,
                     gammabeta, products, fock, residues, theta, hankel, all

flags (all commands):
  --hbar <c>  --kappa <c>  --tau <c>  --mode exact|float  --tol <f>
  --trunc <f>  --nodes <f>  --grid <min:max:count>  --seed <int>
  --out <path>  --format json|csv  --config <path>

complex numbers parse as 1, -0.5, i, 2i, 1+2i, 0.3-0.4i.
polynomial arguments are JSON files or inline JSON.";

fn run(args: Vec<String>) -> Result<i32, String> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        println!("{USAGE}");
        return Ok(0);
    }
    let command = args[0].clone();
    let cfg = Config::parse(&args[1..])?;
    match command.as_str() {
        "mul" => cmd_mul(&cfg),
        "intertwine" => cmd_intertwine(&cfg),
        "exp" => cmd_exp(&cfg),
        "inverse" => cmd_inverse(&cfg),
        "gamma" => cmd_gamma(&cfg),
        "beta" => cmd_beta(&cfg),
        "delta" => cmd_delta(&cfg),
        "residue" => cmd_residue(&cfg),
        "theta" => cmd_theta(&cfg),
        "verify" => verify::cmd_verify(&cfg),
        other => Err(format!("unknown command `{other}`; see --help")),
    }
}

fn load_poly_arg(cfg: &Config, name: &str) -> Result<serde_json::Value, String> {
    let raw = cfg
        .extra
        .get(name)
        .ok_or_else(|| format!("missing --{name}"))?;
    let text = if raw.trim_start().starts_with('{') {
        raw.clone()
    } else {
        std::fs::read_to_string(raw).map_err(|e| format!("cannot read {raw}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("bad polynomial JSON in --{name}: {e}"))
}

fn cmd_mul(cfg: &Config) -> Result<i32, String> {
    let lhs = load_poly_arg(cfg, "lhs")?;
    let rhs = load_poly_arg(cfg, "rhs")?;
    let out = match cfg.mode {
        Mode::Exact => {
            let f = wjson::exact_poly_from_json(&lhs).map_err(|e| e.to_string())?;
            let g = wjson::exact_poly_from_json(&rhs).map_err(|e| e.to_string())?;
            let ord = cfg.exact_ordering(f.nvars())?;
            let h = star_mul(&f, &g, &ord, &starweyl::weyl_poly::ExactCoeff::hbar())
                .map_err(|e| e.to_string())?;
            wjson::exact_poly_to_json(&h)
        }
        Mode::Float => {
            let f = wjson::float_poly_from_json(&lhs).map_err(|e| e.to_string())?;
            let g = wjson::float_poly_from_json(&rhs).map_err(|e| e.to_string())?;
            let ord = cfg.float_ordering(f.nvars());
            let h = star_mul(&f, &g, &ord, &cfg.hbar).map_err(|e| e.to_string())?;
            wjson::float_poly_to_json(&h)
        }
    };
    output::write_json(cfg, &out)
}

fn cmd_intertwine(cfg: &Config) -> Result<i32, String> {
    let input = load_poly_arg(cfg, "input")?;
    let kappa_to = cfg.complex_flag("kappa-to")?.unwrap_or(cfg.kappa);
    let tau_to = cfg.complex_flag("tau-to")?.unwrap_or(cfg.tau);
    let out = match cfg.mode {
        Mode::Exact => {
            return Err("intertwine is provided in float mode; use exact-mode \
                        library calls for zero-tolerance work"
                .into())
        }
        Mode::Float => {
            let f = wjson::float_poly_from_json(&input).map_err(|e| e.to_string())?;
            let from = cfg.float_ordering(f.nvars());
            let to = OrderingKey::w2(kappa_to, tau_to);
            let h = intertwine(&f, &from, &to, &cfg.hbar).map_err(|e| e.to_string())?;
            wjson::float_poly_to_json(&h)
        }
    };
    output::write_json(cfg, &out)
}

fn z_flag(cfg: &Config) -> Result<C64, String> {
    Ok(cfg.complex_flag("z")?.unwrap_or(C64::new(1.0, 0.0)))
}

fn cmd_exp(cfg: &Config) -> Result<i32, String> {
    let t = cfg.complex_flag("t")?.unwrap_or(C64::new(0.5, 0.0));
    let e = star_exp_quadratic(t, cfg.kt()).map_err(|e| e.to_string())?;
    let records: Vec<Record> = cfg
        .grid()
        .into_iter()
        .map(|(u, v)| Record::new(u, v, t, e.eval(u, v), 0.0))
        .collect();
    emit_records(cfg, &records, Some(("element", e.to_json())))
}

fn cmd_inverse(cfg: &Config) -> Result<i32, String> {
    let z = z_flag(cfg)?;
    let side = cfg.extra.get("side").map(String::as_str).unwrap_or("plus");
    let ev = match side {
        "plus" => inverse_plus(z, cfg.kt(), cfg.quad_spec()),
        "minus" => inverse_minus(z, cfg.kt(), cfg.quad_spec()),
        other => return Err(format!("--side must be plus or minus, got {other}")),
    }
    .map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    for (u, v) in cfg.grid() {
        let (val, err) = ev.eval_with_err(u, v).map_err(|e| e.to_string())?;
        records.push(Record::new(u, v, z, val, err));
    }
    emit_records(cfg, &records, None)
}

fn cmd_gamma(cfg: &Config) -> Result<i32, String> {
    let z = z_flag(cfg)?;
    let sign = match cfg.extra.get("sign").map(String::as_str).unwrap_or("+") {
        "+" | "plus" => 1.0,
        "-" | "minus" => -1.0,
        other => return Err(format!("--sign must be + or -, got {other}")),
    };
    let ev = star_gamma(z, sign, cfg.kt(), cfg.quad_spec()).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    for (u, v) in cfg.grid() {
        let (val, err) = ev.eval_with_err(u, v).map_err(|e| e.to_string())?;
        records.push(Record::new(u, v, z, val, err));
    }
    emit_records(cfg, &records, None)
}

fn cmd_beta(cfg: &Config) -> Result<i32, String> {
    let z = z_flag(cfg)?;
    let y = cfg.complex_flag("y")?.unwrap_or(C64::new(1.0, 0.0));
    let ev = star_beta(z, y, 1.0, cfg.kt(), cfg.quad_spec()).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    for (u, v) in cfg.grid() {
        let (val, err) = ev.eval_with_err(u, v).map_err(|e| e.to_string())?;
        records.push(Record::new(u, v, z, val, err));
    }
    emit_records(cfg, &records, None)
}

fn cmd_delta(cfg: &Config) -> Result<i32, String> {
    let ev = star_delta(cfg.kt(), cfg.quad_spec()).map_err(|e| e.to_string())?;
    let weyl = starweyl::closed_forms::KappaTau::weyl(cfg.hbar);
    let weyl_ev = star_delta(weyl, cfg.quad_spec()).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    // the Bessel proportionality is a statement about the Weyl expression;
    // fit its constant and spread alongside the requested-κ grid values
    let at0 = weyl_ev
        .eval(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
        .map_err(|e| e.to_string())?;
    let mut deviation: f64 = 0.0;
    for (u, v) in cfg.grid() {
        let (val, err) = ev.eval_with_err(u, v).map_err(|e| e.to_string())?;
        records.push(Record::new(u, v, C64::new(0.0, 0.0), val, err));
        let wv = weyl_ev.eval(u, v).map_err(|e| e.to_string())?;
        let ratio = wv / bessel_j0(2.0 * u * v / cfg.hbar);
        deviation = deviation.max((ratio - at0).norm());
    }
    let fit = serde_json::json!({
        "weyl_bessel_constant": [at0.re, at0.im],
        "ratio_max_deviation": deviation,
        "two_pi": 2.0 * std::f64::consts::PI,
    });
    emit_records(cfg, &records, Some(("bessel_fit", fit)))
}

fn cmd_residue(cfg: &Config) -> Result<i32, String> {
    let k = cfg
        .extra
        .get("k")
        .map(|s| s.parse::<i64>().map_err(|e| e.to_string()))
        .transpose()?
        .unwrap_or(0);
    let z = cfg.complex_flag("z")?.unwrap_or(C64::new(0.0, 0.0));
    let weyl = starweyl::closed_forms::KappaTau::weyl(cfg.hbar);
    let ev = residue_at(k, z, weyl, cfg.quad_spec()).map_err(|e| e.to_string())?;
    let mut records = Vec::new();
    for (u, v) in cfg.grid() {
        let (val, err) = ev.eval_with_err(u, v).map_err(|e| e.to_string())?;
        records.push(Record::new(u, v, z, val, err));
    }
    emit_records(cfg, &records, None)
}

fn cmd_theta(cfg: &Config) -> Result<i32, String> {
    let n = cfg
        .extra
        .get("n")
        .map(|s| s.parse::<i64>().map_err(|e| e.to_string()))
        .transpose()?
        .unwrap_or(25);
    let var = match cfg.extra.get("var").map(String::as_str).unwrap_or("v") {
        "u" => 0,
        "v" => 1,
        other => return Err(format!("--var must be u or v, got {other}")),
    };
    let sum = theta_partial_sum(n, var, cfg.kt());
    if sum.convergence_warning {
        eprintln!(
            "warning: Im K^{{kk}} ≥ 0 — the theta series has no convergence \
             guarantee in this ordering expression"
        );
    }
    let records: Vec<Record> = cfg
        .grid()
        .into_iter()
        .map(|(u, v)| Record::new(u, v, C64::new(n as f64, 0.0), sum.combo.eval(u, v), 0.0))
        .collect();
    emit_records(
        cfg,
        &records,
        Some((
            "convergence_warning",
            serde_json::json!(sum.convergence_warning),
        )),
    )
}
