use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use super::CliError;
use crate::expr::Symbol;
use crate::numeric::{Bindings, CNum};

/// Environment variable overriding every default tolerance.
pub const TOL_ENV: &str = "AUXWAVE_TOL";

/// `name=value` pairs separated by commas; values may be complex (`1+2i`).
pub fn parse_params(s: &str) -> Result<Bindings, CliError> {
    let mut b = Bindings::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter '{item}' is not name=value")))?;
        let v = parse_value(v.trim()).ok_or_else(|| CliError::Usage(format!("cannot parse value of '{item}'")))?;
        b.insert(Symbol::new(k.trim()), v);
    }
    Ok(b)
}

fn parse_value(s: &str) -> Option<CNum> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q) = (p.trim().parse::<f64>().ok()?, q.trim().parse::<f64>().ok()?);
        return Some(CNum::new(p / q, 0.0));
    }
    CNum::from_str(s).ok()
}

/// `a+bi`, or a plain real when the imaginary part is zero.
pub fn format_value(v: CNum) -> String {
    let (re, im) = (v.re + 0.0, v.im + 0.0);
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}

pub fn params_json(b: &Bindings) -> BTreeMap<String, String> {
    b.iter().map(|(k, v)| (k.name().to_string(), format_value(*v))).collect()
}

/// Explicit value, then `AUXWAVE_TOL`, then the command default.
pub fn resolve_tol(explicit: Option<f64>, default: f64) -> Result<f64, CliError> {
    let tol = match explicit {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOL_ENV}={s} is not a number")))?,
            Err(_) => default,
        },
    };
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("tolerance must be positive, got {tol}")))
    }
}

pub fn check_interval(a: f64, b: f64) -> Result<(f64, f64), CliError> {
    if a < b {
        Ok((a, b))
    } else {
        Err(CliError::Usage(format!("interval [{a}, {b}] is empty")))
    }
}

/// Flat `key = value` lines; `#` starts a comment, the first `=` splits.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut m = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
        m.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(m)
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn json_bytes<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}
