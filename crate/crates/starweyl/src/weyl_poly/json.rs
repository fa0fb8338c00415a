//! JSON schemas for polynomials and ordering keys.
//!
//! Exact-mode polynomial terms serialize one (exponent, ħ-power) pair per entry
//! with string rationals; float mode uses numeric re/im and omits `hbar_pow`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::coeff::{ExactCoeff, GaussRational};
use super::ordering::OrderingKey;
use super::poly::{MultiIndex, Polynomial};
use crate::error::{Error, Result};

fn rat_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_from_str(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Invalid(format!("bad integer `{t}` in rational")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn exact_poly_to_json(p: &Polynomial<ExactCoeff>) -> Value {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        for (pow, g) in c.coeffs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            terms.push(json!({
                "exp": m.exponents(),
                "coeff": {
                    "hbar_pow": pow,
                    "re": rat_to_string(&g.re),
                    "im": rat_to_string(&g.im),
                }
            }));
        }
    }
    json!({ "n": p.nvars(), "terms": terms })
}

pub fn float_poly_to_json(p: &Polynomial<Complex64>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "exp": m.exponents(),
                "coeff": { "re": c.re, "im": c.im }
            })
        })
        .collect();
    json!({ "n": p.nvars(), "terms": terms })
}

fn parse_exp(v: &Value, n: usize) -> Result<MultiIndex> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("term `exp` must be an array".into()))?;
    if arr.len() != n {
        return Err(Error::Invalid(format!(
            "exponent tuple length {} does not match n={n}",
            arr.len()
        )));
    }
    let mut exps = Vec::with_capacity(n);
    for e in arr {
        let x = e
            .as_u64()
            .ok_or_else(|| Error::Invalid("exponents must be non-negative integers".into()))?;
        exps.push(x as u16);
    }
    Ok(MultiIndex::from_slice(&exps))
}

fn poly_dims(v: &Value) -> Result<(usize, &Vec<Value>)> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Invalid("polynomial JSON needs integer `n`".into()))? as usize;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("polynomial JSON needs `terms` array".into()))?;
    Ok((n, terms))
}

pub fn exact_poly_from_json(v: &Value) -> Result<Polynomial<ExactCoeff>> {
    let (n, terms) = poly_dims(v)?;
    let mut p = Polynomial::zero(n);
    for t in terms {
        let m = parse_exp(
            t.get("exp")
                .ok_or_else(|| Error::Invalid("term needs `exp`".into()))?,
            n,
        )?;
        let c = t
            .get("coeff")
            .ok_or_else(|| Error::Invalid("term needs `coeff`".into()))?;
        let pow = c.get("hbar_pow").and_then(Value::as_u64).unwrap_or(0) as usize;
        let re = rat_from_str(
            c.get("re")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Invalid("exact coeff `re` must be a string".into()))?,
        )?;
        let im = rat_from_str(c.get("im").and_then(Value::as_str).unwrap_or("0"))?;
        let mut coeffs = vec![GaussRational::from_int(0); pow + 1];
        coeffs[pow] = GaussRational::new(re, im);
        p.add_term(m, ExactCoeff { coeffs });
    }
    Ok(p)
}

pub fn float_poly_from_json(v: &Value) -> Result<Polynomial<Complex64>> {
    let (n, terms) = poly_dims(v)?;
    let mut p = Polynomial::zero(n);
    for t in terms {
        let m = parse_exp(
            t.get("exp")
                .ok_or_else(|| Error::Invalid("term needs `exp`".into()))?,
            n,
        )?;
        let c = t
            .get("coeff")
            .ok_or_else(|| Error::Invalid("term needs `coeff`".into()))?;
        let re = c.get("re").and_then(Value::as_f64).unwrap_or(0.0);
        let im = c.get("im").and_then(Value::as_f64).unwrap_or(0.0);
        p.add_term(m, Complex64::new(re, im));
    }
    Ok(p)
}

fn complex_entry(v: &Value) -> Result<Complex64> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("matrix entries must be [re, im] pairs".into()))?;
    if arr.len() != 2 {
        return Err(Error::Invalid("matrix entries must be [re, im] pairs".into()));
    }
    Ok(Complex64::new(
        arr[0].as_f64().unwrap_or(0.0),
        arr[1].as_f64().unwrap_or(0.0),
    ))
}

/// OrderingKey JSON: {"n": int, "K": [[re,im],...], "J": [[re,im],...]} with
/// entries listed row-major.
pub fn ordering_key_to_json(ord: &OrderingKey<Complex64>) -> Value {
    let n = ord.nvars();
    let mut k = Vec::new();
    let mut j = Vec::new();
    for i in 0..n {
        for l in 0..n {
            let ke = ord.k_entry(i, l);
            let je = ord.j_entry(i, l);
            k.push(json!([ke.re, ke.im]));
            j.push(json!([je.re, je.im]));
        }
    }
    json!({ "n": n, "K": k, "J": j })
}

pub fn ordering_key_from_json(v: &Value) -> Result<OrderingKey<Complex64>> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Invalid("ordering key JSON needs `n`".into()))? as usize;
    let get_mat = |name: &str| -> Result<Vec<Complex64>> {
        let arr = v
            .get(name)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid(format!("ordering key JSON needs `{name}`")))?;
        if arr.len() != n * n {
            return Err(Error::Invalid(format!(
                "`{name}` must have {} entries",
                n * n
            )));
        }
        arr.iter().map(complex_entry).collect()
    };
    OrderingKey::new(n, get_mat("K")?, get_mat("J")?)
}

/// Attach helpers to `Value` construction for small objects.
pub fn obj(entries: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
