//! Flag/config-file parsing. Every flag can also appear as a key=value line
//! in the file named by --config; flags override the file.

use std::collections::BTreeMap;

use num_complex::Complex64;
use starweyl::closed_forms::KappaTau;
use starweyl::quadrature::{QuadratureSpec, Scheme};
use starweyl::weyl_poly::{ExactCoeff, OrderingKey};

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug)]
pub struct Config {
    pub hbar: C64,
    pub kappa: C64,
    pub tau: C64,
    pub mode: Mode,
    pub tol: f64,
    pub trunc: f64,
    pub nodes: f64,
    pub grid_spec: Option<(f64, f64, usize)>,
    pub seed: u64,
    pub out: Option<String>,
    pub format: String,
    /// command-specific flags (z, y, t, k, n, lhs, rhs, side, sign, …)
    pub extra: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            hbar: C64::new(1.0, 0.0),
            kappa: C64::new(0.0, 0.0),
            tau: C64::new(0.0, 0.0),
            mode: Mode::Float,
            tol: 1e-9,
            trunc: 40.0,
            nodes: 16.0,
            grid_spec: None,
            seed: 1,
            out: None,
            format: "json".into(),
            extra: BTreeMap::new(),
        }
    }
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if !t.ends_with('i') {
        return t
            .parse::<f64>()
            .map(|re| C64::new(re, 0.0))
            .map_err(|_| format!("bad complex literal `{s}`"));
    }
    let body = &t[..t.len() - 1];
    // pure imaginary: i, -i, 2i, -0.5i; signs directly after e/E belong to
    // exponents, not to the split between real and imaginary parts
    let chars: Vec<char> = body.chars().collect();
    let split = (1..chars.len())
        .rev()
        .find(|&idx| {
            (chars[idx] == '+' || chars[idx] == '-')
                && chars[idx - 1] != 'e'
                && chars[idx - 1] != 'E'
        });
    match split {
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                other => other
                    .parse::<f64>()
                    .map_err(|_| format!("bad complex literal `{s}`"))?,
            };
            Ok(C64::new(0.0, im))
        }
        Some(idx) => {
            let re = body[..idx]
                .parse::<f64>()
                .map_err(|_| format!("bad complex literal `{s}`"))?;
            let imtxt = &body[idx..];
            let im = match imtxt {
                "+" => 1.0,
                "-" => -1.0,
                other => other
                    .parse::<f64>()
                    .map_err(|_| format!("bad complex literal `{s}`"))?,
            };
            Ok(C64::new(re, im))
        }
    }
}

impl Config {
    pub fn parse(args: &[String]) -> Result<Self, String> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| format!("expected --flag, got `{arg}`"))?;
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("--{key} needs a value"))?;
            pairs.push((key.to_string(), value.clone()));
            i += 2;
        }
        // config file first, flags override
        let mut merged: Vec<(String, String)> = Vec::new();
        if let Some((_, path)) = pairs.iter().find(|(k, _)| k == "config") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| format!("config line `{line}` is not key=value"))?;
                merged.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
        merged.extend(pairs);
        let mut cfg = Config::default();
        for (k, v) in merged {
            match k.as_str() {
                "hbar" => cfg.hbar = parse_complex(&v)?,
                "kappa" => cfg.kappa = parse_complex(&v)?,
                "tau" => cfg.tau = parse_complex(&v)?,
                "mode" => {
                    cfg.mode = match v.as_str() {
                        "exact" => Mode::Exact,
                        "float" => Mode::Float,
                        other => return Err(format!("--mode must be exact|float, got {other}")),
                    }
                }
                "tol" => cfg.tol = v.parse().map_err(|_| format!("bad --tol {v}"))?,
                "trunc" => cfg.trunc = v.parse().map_err(|_| format!("bad --trunc {v}"))?,
                "nodes" => cfg.nodes = v.parse().map_err(|_| format!("bad --nodes {v}"))?,
                "grid" => {
                    let parts: Vec<&str> = v.split(':').collect();
                    if parts.len() != 3 {
                        return Err("--grid must be min:max:count".into());
                    }
                    cfg.grid_spec = Some((
                        parts[0].parse().map_err(|_| "bad grid min".to_string())?,
                        parts[1].parse().map_err(|_| "bad grid max".to_string())?,
                        parts[2].parse().map_err(|_| "bad grid count".to_string())?,
                    ));
                }
                "seed" => cfg.seed = v.parse().map_err(|_| format!("bad --seed {v}"))?,
                "out" => cfg.out = Some(v),
                "format" => {
                    if v != "json" && v != "csv" {
                        return Err(format!("--format must be json|csv, got {v}"));
                    }
                    cfg.format = v;
                }
                "config" => {}
                _ => {
                    cfg.extra.insert(k, v);
                }
            }
        }
        Ok(cfg)
    }

    pub fn complex_flag(&self, name: &str) -> Result<Option<C64>, String> {
        self.extra.get(name).map(|s| parse_complex(s)).transpose()
    }

    pub fn kt(&self) -> KappaTau {
        KappaTau::new(self.kappa, self.tau, self.hbar)
    }

    pub fn quad_spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            scheme: Scheme::TanhSinh,
            trunc: self.trunc,
            nodes_per_unit: self.nodes,
            abs_tol: self.tol,
            rel_tol: self.tol,
            max_level: 11,
        }
    }

    pub fn float_ordering(&self, n: usize) -> OrderingKey<C64> {
        if n == 2 {
            OrderingKey::w2(self.kappa, self.tau)
        } else {
            OrderingKey::weyl(n)
        }
    }

    pub fn exact_ordering(&self, n: usize) -> Result<OrderingKey<ExactCoeff>, String> {
        // exact mode admits rational κ, τ given as p/q (real) literals
        let to_exact = |c: C64, what: &str| -> Result<ExactCoeff, String> {
            let near = |x: f64| (x - x.round()).abs() < 1e-12;
            if !near(c.re * 12.0) || !near(c.im * 12.0) {
                return Err(format!(
                    "{what} must be a multiple of 1/12 in exact mode (got {c})"
                ));
            }
            let re = ExactCoeff::from_ratio((c.re * 12.0).round() as i64, 12);
            let im = ExactCoeff::from_ratio_im((c.im * 12.0).round() as i64, 12);
            use starweyl::weyl_poly::Coefficient;
            Ok(re.add_ref(&im))
        };
        if n == 2 {
            Ok(OrderingKey::w2(
                to_exact(self.kappa, "κ")?,
                to_exact(self.tau, "τ")?,
            ))
        } else {
            Ok(OrderingKey::weyl(n))
        }
    }

    /// Grid of (u, v) pairs: the fixed 25-point sample by default, or a real
    /// linspace pairing u forward with v backward under --grid min:max:count.
    pub fn grid(&self) -> Vec<(C64, C64)> {
        match self.grid_spec {
            None => starweyl::grid::default_grid(),
            Some((lo, hi, count)) => {
                let count = count.max(2);
                let axis: Vec<f64> = (0..count)
                    .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                    .collect();
                axis.iter()
                    .enumerate()
                    .map(|(k, &x)| {
                        (
                            C64::new(x, 0.0),
                            C64::new(axis[count - 1 - k], 0.0),
                        )
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), C64::new(-0.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("2i").unwrap(), C64::new(0.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("0.3-0.4i").unwrap(), C64::new(0.3, -0.4));
        assert_eq!(parse_complex("1e-2+1e-3i").unwrap(), C64::new(0.01, 0.001));
    }
}
