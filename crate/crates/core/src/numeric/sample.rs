use std::io::{self, Write};

use super::{eval_with, Bindings, CNum, EvalError, EvalOptions, ExcludedPoint, GridPoint};
use crate::expr::{Expr, Symbol};

/// `n` uniformly spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Samples of a curve; poles and overflows are dropped into `excluded`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub var: String,
    pub rows: Vec<(f64, CNum)>,
    pub excluded: Vec<ExcludedPoint>,
}

impl CurveSample {
    pub fn all_finite(&self) -> bool {
        self.rows.iter().all(|(_, v)| v.re.is_finite() && v.im.is_finite())
    }
}

pub fn sample_curve(
    e: &Expr,
    var: &Symbol,
    interval: (f64, f64),
    npoints: usize,
    bindings: &Bindings,
) -> Result<CurveSample, EvalError> {
    let opts = EvalOptions::with_pole_scan();
    let mut env = bindings.clone();
    let mut rows = Vec::with_capacity(npoints);
    let mut excluded = Vec::new();
    for x in linspace(interval.0, interval.1, npoints) {
        env.insert(var.clone(), CNum::new(x, 0.0));
        match eval_with(e, &env, &opts) {
            Ok(v) => rows.push((x, v)),
            Err(err @ (EvalError::Pole { .. } | EvalError::NonFinite(_))) => excluded.push(ExcludedPoint {
                point: GridPoint::Xi { xi: x },
                reason: err.to_string(),
            }),
            Err(err) => return Err(err),
        }
    }
    Ok(CurveSample {
        var: var.name().to_string(),
        rows,
        excluded,
    })
}

/// Writes `var,re,im` rows with 17 significant digits.
pub fn write_csv<W: Write>(curve: &CurveSample, mut w: W) -> io::Result<()> {
    writeln!(w, "{},re,im", curve.var)?;
    for (x, v) in &curve.rows {
        writeln!(w, "{x:.16e},{:.16e},{:.16e}", v.re, v.im)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn constant_curve() {
        let c = sample_curve(&Expr::one(), &Symbol::xi(), (0.0, 1.0), 3, &Bindings::new()).unwrap();
        let xs: Vec<f64> = c.rows.iter().map(|r| r.0).collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
        assert!(c.rows.iter().all(|r| r.1 == CNum::new(1.0, 0.0)));
    }

    #[test]
    fn pole_is_excluded() {
        let e = parse("1/xi").unwrap();
        let c = sample_curve(&e, &Symbol::xi(), (-1.0, 1.0), 3, &Bindings::new()).unwrap();
        assert_eq!(c.rows.len(), 2);
        assert_eq!(c.excluded.len(), 1);
    }

    #[test]
    fn csv_layout() {
        let c = sample_curve(&Expr::one(), &Symbol::xi(), (0.0, 1.0), 2, &Bindings::new()).unwrap();
        let mut buf = Vec::new();
        write_csv(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("xi,re,im"));
        assert_eq!(lines.next(), Some("0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0"));
    }
}
