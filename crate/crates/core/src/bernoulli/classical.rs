use serde::Serialize;

use super::{verify_aux, AuxEquation, AuxSolution, DerivativeMode, VerifyOptions};
use crate::expr::Expr;
use crate::numeric::Bindings;

/// `z' = a z + b z^k` with constant coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalBernoulli {
    pub a: Expr,
    pub b: Expr,
    pub k: u32,
    pub xi0: Expr,
}

impl ClassicalBernoulli {
    pub fn numeric(a: f64, b: f64, k: u32, xi0: f64) -> Self {
        assert!(k >= 2, "k must be at least 2");
        ClassicalBernoulli {
            a: Expr::from_f64_approx(a),
            b: Expr::from_f64_approx(b),
            k,
            xi0: Expr::from_f64_approx(xi0),
        }
    }

    pub fn symbolic(k: u32) -> Self {
        ClassicalBernoulli {
            a: Expr::symbol("a"),
            b: Expr::symbol("b"),
            k,
            xi0: Expr::symbol("xi0"),
        }
    }

    pub fn equation(&self) -> AuxEquation {
        AuxEquation::new(self.a.clone(), self.b.clone(), self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    I,
    II,
}

/// `[± a e^E / (1 - b e^E)]^{1/(k-1)}` with `E = a(k-1)(ξ+ξ0)`; `+` for
/// branch I, `-` for branch II, principal root.
pub fn classical_solution(cb: &ClassicalBernoulli, branch: Branch) -> Expr {
    let km1 = Expr::int(cb.k as i64 - 1);
    let e = (&cb.a * &km1 * (Expr::xi() + cb.xi0.clone())).exp();
    let sign = match branch {
        Branch::I => Expr::one(),
        Branch::II => Expr::int(-1),
    };
    let inner = sign * cb.a.clone() * e.clone() / (Expr::one() - cb.b.clone() * e);
    if cb.k == 2 {
        inner
    } else {
        inner.pow(&Expr::frac(1, cb.k as i64 - 1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub k: u32,
    pub branch: Branch,
    /// The sign pattern attached to the branch: `a<0, b>0` for I, `a>0, b<0` for II.
    pub stated_condition: bool,
    pub max_abs: Option<f64>,
    pub mean_abs: Option<f64>,
    pub excluded: usize,
    pub satisfies: bool,
    pub complex_values: bool,
    pub error: Option<String>,
}

/// Residual table over `(a, b) ∈ {±1}²`, `k ∈ {2, 3}` and both branches.
pub fn sign_condition_sweep(interval: (f64, f64), npoints: usize, tol: f64) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let opts = VerifyOptions {
        derivative: DerivativeMode::Symbolic,
        ..Default::default()
    };
    for k in [2u32, 3] {
        for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            for branch in [Branch::I, Branch::II] {
                let cb = ClassicalBernoulli::numeric(a, b, k, 0.0);
                let sol = AuxSolution::new(classical_solution(&cb, branch), "");
                let stated_condition = match branch {
                    Branch::I => a < 0.0 && b > 0.0,
                    Branch::II => a > 0.0 && b < 0.0,
                };
                let mut row = SweepRow {
                    a,
                    b,
                    k,
                    branch,
                    stated_condition,
                    max_abs: None,
                    mean_abs: None,
                    excluded: 0,
                    satisfies: false,
                    complex_values: false,
                    error: None,
                };
                match verify_aux(&cb.equation(), &sol, &Bindings::new(), interval, npoints, tol, &opts) {
                    Ok(r) => {
                        row.max_abs = Some(r.max_abs);
                        row.mean_abs = Some(r.mean_abs);
                        row.excluded = r.excluded_points.len();
                        row.satisfies = r.pass;
                        row.complex_values = r.complex_values;
                    }
                    Err(e) => row.error = Some(e.to_string()),
                }
                rows.push(row);
            }
        }
    }
    rows
}
