//! Deterministic JSON/CSV emission: records are written in grid order with
//! shortest-roundtrip float formatting, so identical configs give identical
//! bytes.

use num_complex::Complex64;
use serde_json::json;

use crate::config::Config;

type C64 = Complex64;

pub struct Record {
    pub u: C64,
    pub v: C64,
    pub z: C64,
    pub value: C64,
    pub err_est: f64,
}

impl Record {
    pub fn new(u: C64, v: C64, z: C64, value: C64, err_est: f64) -> Self {
        Record {
            u,
            v,
            z,
            value,
            err_est,
        }
    }
}

fn write_out(cfg: &Config, text: &str) -> Result<(), String> {
    match &cfg.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
    }
}

pub fn write_json(cfg: &Config, value: &serde_json::Value) -> Result<i32, String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    write_out(cfg, &text)?;
    Ok(0)
}

pub fn emit_records(
    cfg: &Config,
    records: &[Record],
    attachment: Option<(&str, serde_json::Value)>,
) -> Result<i32, String> {
    if cfg.format == "csv" {
        let mut text =
            String::from("u_re,u_im,v_re,v_im,z_re,z_im,value_re,value_im,err_est\n");
        for r in records {
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.u.re, r.u.im, r.v.re, r.v.im, r.z.re, r.z.im, r.value.re, r.value.im, r.err_est
            ));
        }
        write_out(cfg, &text)?;
        if let Some((name, value)) = attachment {
            eprintln!("{name}: {value}");
        }
        return Ok(0);
    }
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| {
            json!({
                "point": [[r.u.re, r.u.im], [r.v.re, r.v.im]],
                "z": [r.z.re, r.z.im],
                "value": [r.value.re, r.value.im],
                "err_est": r.err_est,
            })
        })
        .collect();
    let mut doc = json!({ "records": rows });
    if let Some((name, value)) = attachment {
        doc.as_object_mut().unwrap().insert(name.into(), value);
    }
    write_json(cfg, &doc)
}
