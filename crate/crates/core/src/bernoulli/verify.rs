use super::{AuxEquation, AuxSolution};
use crate::expr::{differentiate, Expr, Symbol};
use crate::numeric::{
    eval_with, is_effectively_real, linspace, numeric_diff, AllExcluded, Bindings, CNum, EvalError, EvalOptions,
    GridPoint, ReportBuilder, ResidualReport, DEFAULT_POLE_REL,
};

/// How `z'` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DerivativeMode {
    /// Symbolic; integral nodes differentiate by the fundamental theorem, so
    /// quadrature forms need no finite differences.
    #[default]
    Auto,
    Symbolic,
    /// Central differences with one Richardson level; `None` uses the default step.
    Numeric { h: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub derivative: DerivativeMode,
    pub eval: EvalOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            derivative: DerivativeMode::Auto,
            eval: EvalOptions::with_pole_scan(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    AllExcluded(#[from] AllExcluded),
    #[error("evaluation failed at xi = {xi}: {source}")]
    Eval {
        xi: f64,
        #[source]
        source: EvalError,
    },
    #[error("no pole-free interval of width {width} found")]
    NoInterval { width: f64 },
    #[error("empty grid: need at least one point on a nonempty interval")]
    EmptyGrid,
}

fn excludable(e: &EvalError) -> bool {
    matches!(e, EvalError::Pole { .. } | EvalError::NonFinite(_))
}

fn at(params: &Bindings, xi: CNum) -> Bindings {
    let mut b = params.clone();
    b.insert(Symbol::xi(), xi);
    b
}

/// Residual `|z' - P z - Q z^n|` of `sol` on a uniform grid.
pub fn verify_aux(
    eq: &AuxEquation,
    sol: &AuxSolution,
    params: &Bindings,
    interval: (f64, f64),
    npoints: usize,
    tol: f64,
    opts: &VerifyOptions,
) -> Result<ResidualReport, VerifyError> {
    if npoints == 0 || !(interval.0 <= interval.1) {
        return Err(VerifyError::EmptyGrid);
    }
    let xi = Symbol::xi();
    let z = &sol.z;
    let symbolic = match opts.derivative {
        DerivativeMode::Auto | DerivativeMode::Symbolic => true,
        DerivativeMode::Numeric { .. } => false,
    };
    let dz: Option<Expr> = symbolic.then(|| differentiate(z, &xi));
    let h = match opts.derivative {
        DerivativeMode::Numeric { h } => h,
        _ => None,
    };
    let n = eq.n as i32;
    let mut report = ReportBuilder::new(vec!["z'".into(), "P*z".into(), format!("Q*z^{n}")]);
    for x in linspace(interval.0, interval.1, npoints) {
        let point = GridPoint::Xi { xi: x };
        let b = at(params, CNum::new(x, 0.0));
        let step = |e: &Expr| eval_with(e, &b, &opts.eval);
        let values = (|| -> Result<(CNum, CNum, CNum, CNum), EvalError> {
            let zv = step(z)?;
            let p = step(&eq.p)?;
            let q = step(&eq.q)?;
            let d = match &dz {
                Some(d) => step(d)?,
                None => numeric_diff(|w| eval_with(z, &at(params, w), &opts.eval), CNum::new(x, 0.0), 1, h)
                    .map_err(|e| match e {
                        crate::numeric::DiffError::Stencil { source, .. } => source,
                        other => EvalError::NonFinite(other.to_string()),
                    })?,
            };
            Ok((zv, p, q, d))
        })();
        match values {
            Ok((zv, p, q, d)) => {
                let pz = p * zv;
                let qz = q * zv.powi(n);
                let r = (d - pz - qz).norm();
                if !is_effectively_real(zv) {
                    report.mark_complex();
                }
                report.record(point, r, &[d.norm(), pz.norm(), qz.norm()]);
            }
            Err(e) if excludable(&e) => report.exclude(point, e.to_string()),
            Err(source) => return Err(VerifyError::Eval { xi: x, source }),
        }
    }
    Ok(report.finish(tol)?)
}

/// Scan resolution and limits used by [`find_pole_free_interval`].
const SCAN_POINTS: usize = 401;
const SCAN_MARGIN: f64 = 1e-3;
const SCAN_MAX_ABS: f64 = 1e8;

/// First window `[c - w/2, c + w/2]`, for centres `0, 0.5, -0.5, 1, -1, …, ±8`,
/// on which `z` evaluates everywhere on a fine scan with no sign-changing
/// zero of `1/z` between scan points.
pub fn find_pole_free_interval(
    sol: &AuxSolution,
    params: &Bindings,
    width: f64,
) -> Result<(f64, f64), VerifyError> {
    let mut centres = vec![0.0];
    for k in 1..=16 {
        let c = 0.5 * k as f64;
        centres.push(c);
        centres.push(-c);
    }
    let opts = EvalOptions {
        pole_rel: DEFAULT_POLE_REL,
        ..Default::default()
    };
    'candidates: for c in centres {
        let (a, b) = (c - width / 2.0, c + width / 2.0);
        let mut prev: Option<CNum> = None;
        for x in linspace(a - SCAN_MARGIN, b + SCAN_MARGIN, SCAN_POINTS) {
            let v = match eval_with(&sol.z, &at(params, CNum::new(x, 0.0)), &opts) {
                Ok(v) if v.norm() <= SCAN_MAX_ABS => v,
                _ => continue 'candidates,
            };
            if v.norm() == 0.0 {
                continue 'candidates;
            }
            let w = v.inv();
            if let Some(pw) = prev {
                let r = pw / w;
                if r.re < 0.0 && r.im.abs() < 0.25 * r.re.abs() {
                    continue 'candidates;
                }
            }
            prev = Some(w);
        }
        return Ok((a, b));
    }
    Err(VerifyError::NoInterval { width })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::catalog_case;
    use crate::numeric::bind;

    #[test]
    fn logistic_case() {
        let c = catalog_case(4).unwrap();
        let params = bind([("A", 1.0), ("B", -1.0), ("C1", 1.0)]);
        let r = verify_aux(&c.eq, &c.solution, &params, (-5.0, 5.0), 101, 1e-10, &VerifyOptions::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.excluded_points.is_empty());
    }

    #[test]
    fn homogeneous_case_is_exact() {
        let eq = AuxEquation::new(crate::expr::parse("cos(xi)").unwrap(), Expr::zero(), 2);
        let sol = AuxSolution::new(crate::expr::parse("C1*exp(sin(xi))").unwrap(), "");
        let r = verify_aux(&eq, &sol, &bind([("C1", 2.0)]), (-3.0, 3.0), 31, 1e-14, &VerifyOptions::default()).unwrap();
        assert!(r.max_abs < 1e-14);
    }

    #[test]
    fn pole_scan_skips_the_origin() {
        let c = catalog_case(4).unwrap();
        let params = bind([("A", 1.0), ("B", 1.0), ("C1", 1.0)]);
        let (a, b) = find_pole_free_interval(&c.solution, &params, 2.0).unwrap();
        assert!(a > 0.0 || b < 0.0, "({a}, {b})");
    }

    #[test]
    fn all_points_on_a_pole() {
        let eq = AuxEquation::new(Expr::zero(), Expr::one(), 2);
        let sol = AuxSolution::new(crate::expr::parse("1/(C1 - xi)").unwrap(), "");
        let r = verify_aux(&eq, &sol, &bind([("C1", 0.0)]), (0.0, 0.0), 1, 1e-10, &VerifyOptions::default());
        assert!(matches!(r, Err(VerifyError::AllExcluded(_))));
    }
}
