use std::collections::BTreeMap;

use serde::Serialize;

use super::{Ansatz, Assignment, PdeProblem, TravellingOde, WAVE_NUMBER, WAVE_SPEED};
use crate::bernoulli::{AuxSolution, VerifyError};
use crate::expr::{differentiate, substitute, substitute_many, Expr, Symbol};
use crate::numeric::{
    eval_with, is_effectively_real, linspace, numeric_diff_with, Bindings, CNum, DiffError, EvalError, EvalOptions,
    GridPoint, ReportBuilder, ResidualReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Coefficients returned by [`solve_system`](super::solve_system).
    Solver,
    /// Coefficients transcribed from a published result.
    Reported,
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComposedSolution {
    /// `u(ξ)`.
    pub u: Expr,
    pub coefficients: BTreeMap<Symbol, Expr>,
    pub aux: AuxSolution,
    pub c: Expr,
    pub mu: Expr,
    pub provenance: Provenance,
    /// Residual bound the generating solver reached, if any.
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error("coefficient {0} is not bound")]
    Unbound(String),
}

/// `re + im*I` with short rationals where the double allows.
pub fn complex_expr(v: CNum) -> Expr {
    let re = Expr::from_f64_approx(v.re);
    if v.im == 0.0 {
        re
    } else {
        re + Expr::from_f64_approx(v.im) * Expr::imag_unit()
    }
}

/// Coefficient values of an assignment as expressions.
pub fn assignment_exprs(a: &Assignment) -> BTreeMap<Symbol, Expr> {
    a.values.iter().map(|(k, v)| (k.clone(), complex_expr(*v))).collect()
}

/// `u = Σ g_i z^i` with the auxiliary solution inserted for `z`.
pub fn compose(
    assignment: &BTreeMap<Symbol, Expr>,
    ansatz: &Ansatz,
    aux: &AuxSolution,
    c: Expr,
    mu: Expr,
    provenance: Provenance,
) -> Result<ComposedSolution, ComposeError> {
    let mut terms = Vec::new();
    let mut coefficients = BTreeMap::new();
    for (i, g) in ansatz.coeffs.iter().enumerate() {
        let v = assignment.get(g).ok_or_else(|| ComposeError::Unbound(g.name().into()))?;
        coefficients.insert(g.clone(), v.clone());
        terms.push(v * &aux.z.powi(i as i64));
    }
    Ok(ComposedSolution {
        u: Expr::add_all(terms),
        coefficients,
        aux: aux.clone(),
        c,
        mu,
        provenance,
        tolerance: None,
    })
}

impl ComposedSolution {
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    /// `ξ = mu (x - c t)`.
    pub fn wave_variable(&self) -> Expr {
        self.mu.clone() * (Expr::symbol("x") - self.c.clone() * Expr::symbol("t"))
    }

    /// `u(x, t)`.
    pub fn u_xt(&self) -> Expr {
        substitute(&self.u, &Symbol::xi(), &self.wave_variable())
    }

    /// Every coefficient of a positive power of `z` is zero.
    pub fn is_constant(&self) -> bool {
        self.coefficients.iter().all(|(g, v)| g.name() == "g0" || v.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: BTreeMap<&str, String> =
            self.coefficients.iter().map(|(k, v)| (k.name(), v.to_string())).collect();
        serde_json::json!({
            "u": self.u.to_string(),
            "z": self.aux.z.to_string(),
            "coefficients": coeffs,
            "c": self.c.to_string(),
            "mu": self.mu.to_string(),
            "wave_variable": self.wave_variable().to_string(),
            "provenance": self.provenance,
            "tolerance": self.tolerance,
        })
    }
}

/// What a composed solution is checked against.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    Ode(&'a TravellingOde),
    Pde(&'a PdeProblem),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Xi { interval: (f64, f64), n: usize },
    XT { x: (f64, f64, usize), t: (f64, f64, usize) },
}

/// Step for the nested central differences of the PDE residual.
pub const PDE_STEP: f64 = 1e-2;

fn strip(e: DiffError) -> EvalError {
    match e {
        DiffError::Stencil { source, .. } => source,
        other => EvalError::NonFinite(other.to_string()),
    }
}

fn excludable(e: &EvalError) -> bool {
    matches!(e, EvalError::Pole { .. } | EvalError::NonFinite(_))
}

pub fn verify_solution(
    target: Target<'_>,
    sol: &ComposedSolution,
    params: &Bindings,
    grid: &Grid,
    tol: f64,
) -> Result<ResidualReport, VerifyError> {
    let opts = EvalOptions::with_pole_scan();
    let mut b = params.clone();
    let wave = |e: &Expr, b: &Bindings| eval_with(e, b, &opts).map_err(|source| VerifyError::Eval { xi: f64::NAN, source });
    let cv = wave(&sol.c, params)?;
    let mv = wave(&sol.mu, params)?;
    b.insert(Symbol::new(WAVE_SPEED), cv);
    b.insert(Symbol::new(WAVE_NUMBER), mv);
    match (target, grid) {
        (Target::Ode(ode), Grid::Xi { interval, n }) => verify_ode(ode, sol, &b, *interval, *n, tol, &opts),
        (Target::Pde(pde), Grid::XT { x, t }) => verify_pde(pde, sol, &b, *x, *t, tol, &opts),
        (Target::Ode(_), Grid::XT { .. }) | (Target::Pde(_), Grid::Xi { .. }) => Err(VerifyError::EmptyGrid),
    }
}

fn verify_ode(
    ode: &TravellingOde,
    sol: &ComposedSolution,
    b: &Bindings,
    interval: (f64, f64),
    n: usize,
    tol: f64,
    opts: &EvalOptions,
) -> Result<ResidualReport, VerifyError> {
    if n == 0 || !(interval.0 <= interval.1) {
        return Err(VerifyError::EmptyGrid);
    }
    let xi = Symbol::xi();
    let mut ders = vec![sol.u.clone()];
    for _ in 0..ode.max_order() {
        let d = differentiate(ders.last().expect("nonempty"), &xi);
        ders.push(d);
    }
    let coeffs: Vec<CNum> = ode
        .terms
        .iter()
        .map(|t| eval_with(&t.coeff, b, opts))
        .collect::<Result<_, _>>()
        .map_err(|source| VerifyError::Eval { xi: f64::NAN, source })?;
    let mut report = ReportBuilder::new(ode.term_names());
    for x in linspace(interval.0, interval.1, n) {
        let point = GridPoint::Xi { xi: x };
        let mut bx = b.clone();
        bx.insert(xi.clone(), CNum::new(x, 0.0));
        let vals: Result<Vec<CNum>, EvalError> = ders.iter().map(|d| eval_with(d, &bx, opts)).collect();
        match vals {
            Ok(v) => {
                if !is_effectively_real(v[0]) {
                    report.mark_complex();
                }
                let terms = ode.term_values(&v, &coeffs);
                let r: CNum = terms.iter().sum();
                let mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
                report.record(point, r.norm(), &mags);
            }
            Err(e) if excludable(&e) => report.exclude(point, e.to_string()),
            Err(source) => return Err(VerifyError::Eval { xi: x, source }),
        }
    }
    Ok(report.finish(tol)?)
}

fn verify_pde(
    pde: &PdeProblem,
    sol: &ComposedSolution,
    b: &Bindings,
    xs: (f64, f64, usize),
    ts: (f64, f64, usize),
    tol: f64,
    opts: &EvalOptions,
) -> Result<ResidualReport, VerifyError> {
    if xs.2 == 0 || ts.2 == 0 {
        return Err(VerifyError::EmptyGrid);
    }
    let coeffs: Vec<CNum> = pde
        .terms
        .iter()
        .map(|t| {
            let c = substitute_many(
                &t.coeff,
                &pde.parameters.iter().cloned().collect(),
            );
            eval_with(&c, b, opts)
        })
        .collect::<Result<_, _>>()
        .map_err(|source| VerifyError::Eval { xi: f64::NAN, source })?;
    let u = sol.u_xt();
    let (xsym, tsym) = (Symbol::new("x"), Symbol::new("t"));
    let f = |x: CNum, t: CNum| {
        let mut bx = b.clone();
        bx.insert(xsym.clone(), x);
        bx.insert(tsym.clone(), t);
        eval_with(&u, &bx, opts)
    };
    let names: Vec<String> = pde
        .terms
        .iter()
        .map(|t| {
            let fs: Vec<String> = t.factors.iter().map(|p| p.to_string()).collect();
            format!("{}*{}", t.coeff, fs.join("*"))
        })
        .collect();
    let mut report = ReportBuilder::new(names);
    for x in linspace(xs.0, xs.1, xs.2) {
        for t in linspace(ts.0, ts.1, ts.2) {
            let point = GridPoint::XT { x, t };
            let (xc, tc) = (CNum::new(x, 0.0), CNum::new(t, 0.0));
            let vals = pde.term_values(|p| partial(&f, xc, tc, p.x, p.t), &coeffs);
            match vals {
                Ok(terms) => {
                    if let Ok(v) = f(xc, tc) {
                        if !is_effectively_real(v) {
                            report.mark_complex();
                        }
                    }
                    let r: CNum = terms.iter().sum();
                    let mags: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
                    report.record(point, r.norm(), &mags);
                }
                Err(e) if excludable(&e) => report.exclude(point, e.to_string()),
                Err(source) => return Err(VerifyError::Eval { xi: x, source }),
            }
        }
    }
    Ok(report.finish(tol)?)
}

/// `∂x^i ∂t^j f` by nested central differences with one Richardson level.
pub fn partial<F>(f: &F, x: CNum, t: CNum, i: u32, j: u32) -> Result<CNum, EvalError>
where
    F: Fn(CNum, CNum) -> Result<CNum, EvalError>,
{
    match (i, j) {
        (0, 0) => f(x, t),
        (i, 0) => numeric_diff_with(|xx| f(xx, t), x, i, PDE_STEP, 1).map_err(strip),
        (0, j) => numeric_diff_with(|tt| f(x, tt), t, j, PDE_STEP, 1).map_err(strip),
        (i, j) => numeric_diff_with(|tt| partial(f, x, tt, i, 0), t, j, PDE_STEP, 1).map_err(strip),
    }
}
