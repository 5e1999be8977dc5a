use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use super::config::{
    check_interval, json_bytes, params_json, parse_config, parse_params, resolve_tol, write_atomic,
};
use super::{
    CatalogAction, CliError, OdeArg, PipelineArgs, SampleArgs, StrategyArg, SweepArgs, VerifyAuxArgs, EXIT_FAIL,
    EXIT_NUMERIC, EXIT_OK,
};
use crate::bernoulli::{
    catalog, catalog_case, find_pole_free_interval, sign_condition_sweep, verify_aux, AuxEquation, AuxSolution,
    CatalogCase, DerivativeMode, VerifyError, VerifyOptions,
};
use crate::expr::{parse, Expr, Symbol};
use crate::numeric::{bind, sample_curve, write_csv, Bindings, EvalError};
use crate::wave::reproduction::{cross_check, figure1_grid, figure1_parameters};
use crate::wave::{
    assignment_exprs, balance_with, complex_expr, compose, derive_system, reduce_travelling, solve_system,
    verify_solution, Ansatz, Grid, OdeMode, PdeProblem, Provenance, SolveOptions, SolveOutcome, Strategy, Target,
    WAVE_NUMBER, WAVE_SPEED,
};

pub const VERIFY_AUX_TOL: f64 = 1e-8;
pub const PIPELINE_TOL: f64 = 1e-6;
pub const SWEEP_TOL: f64 = 1e-10;

fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::Unbound(_) => CliError::Usage(e.to_string()),
        _ => CliError::Numeric(e.to_string()),
    }
}

fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::Eval { source, .. } if matches!(source, EvalError::Unbound(_)) => {
            CliError::Usage(source.to_string())
        }
        VerifyError::EmptyGrid => CliError::Usage(e.to_string()),
        _ => CliError::Numeric(e.to_string()),
    }
}

fn parse_expr(s: &str) -> Result<Expr, CliError> {
    parse(s).map_err(|e| CliError::Usage(format!("cannot parse '{s}': {e}")))
}

fn case_or_usage(k: usize) -> Result<CatalogCase, CliError> {
    catalog_case(k).map_err(|e| CliError::Usage(e.to_string()))
}

fn interval_arg(v: &Option<Vec<f64>>, default: (f64, f64)) -> Result<(f64, f64), CliError> {
    match v.as_deref() {
        Some([a, b]) => check_interval(*a, *b),
        Some(_) => Err(CliError::Usage("interval takes two numbers".into())),
        None => Ok(default),
    }
}

/// JSON to `out` if given, else to stdout.
fn emit(v: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let bytes = json_bytes(v);
    match out {
        Some(p) => write_atomic(p, &bytes),
        None => {
            print!("{}", String::from_utf8(bytes).expect("utf8"));
            Ok(())
        }
    }
}

fn case_json(c: &CatalogCase) -> Value {
    json!({
        "index": c.index,
        "P": c.eq.p.to_string(),
        "Q": c.eq.q.to_string(),
        "z": c.solution.z.to_string(),
        "form": c.solution.form,
        "notes": c.solution.notes,
        "complex": c.complex,
        "errata": c.errata,
    })
}

pub fn run_catalog(action: &CatalogAction) -> Result<i32, CliError> {
    match action {
        CatalogAction::List { json } => {
            let all = catalog();
            if *json {
                emit(&Value::Array(all.iter().map(case_json).collect()), None)?;
            } else {
                for c in &all {
                    let mut flags = String::new();
                    if c.complex {
                        flags.push_str("  [complex]");
                    }
                    if !c.errata.is_empty() {
                        flags.push_str("  [corrected]");
                    }
                    println!("{:>2}  P = {}  Q = {}{flags}", c.index, c.eq.p, c.eq.q);
                }
            }
        }
        CatalogAction::Show { index, json } => {
            let c = case_or_usage(*index)?;
            if *json {
                emit(&case_json(&c), None)?;
            } else {
                println!("case {}", c.index);
                println!("P = {}", c.eq.p);
                println!("Q = {}", c.eq.q);
                println!("z = {}", c.solution.z);
                println!("notes: {}", c.solution.notes);
                if c.complex {
                    println!("complex evaluation for real parameters");
                }
                for e in &c.errata {
                    println!("corrected {}: transcribed as {} ({})", e.field, e.original, e.reason);
                }
            }
        }
        CatalogAction::Export { out } => {
            let rows: Vec<Value> = catalog().iter().map(CatalogCase::export_value).collect();
            emit(&Value::Array(rows), out.as_deref())?;
        }
    }
    Ok(EXIT_OK)
}

pub fn run_verify_aux(a: &VerifyAuxArgs) -> Result<i32, CliError> {
    let case = case_or_usage(a.case)?;
    let params = parse_params(&a.params)?;
    let tol = resolve_tol(a.tol, VERIFY_AUX_TOL)?;
    let interval = match &a.interval {
        Some(_) => interval_arg(&a.interval, (0.0, 0.0))?,
        None => find_pole_free_interval(&case.solution, &params, a.width).map_err(verify_error)?,
    };
    let opts = VerifyOptions {
        derivative: match a.derivative {
            super::DerivativeArg::Auto => DerivativeMode::Auto,
            super::DerivativeArg::Numeric => DerivativeMode::Numeric { h: None },
        },
        ..Default::default()
    };
    let report = verify_aux(&case.eq, &case.solution, &params, interval, a.npoints, tol, &opts).map_err(verify_error)?;
    let out = json!({
        "case": case.index,
        "params": params_json(&params),
        "interval": [interval.0, interval.1],
        "npoints": a.npoints,
        "complex_case": case.complex,
        "report": report,
    });
    emit(&out, a.out.as_deref())?;
    eprintln!(
        "case {}: max residual {:.3e} on [{}, {}], {} excluded, {}{}",
        case.index,
        report.max_abs,
        interval.0,
        interval.1,
        report.excluded_points.len(),
        if report.pass { "pass" } else { "FAIL" },
        if report.complex_values {
            " (complex values)"
        } else if case.complex {
            " (complex evaluation)"
        } else {
            ""
        },
    );
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

fn default_pipeline_params() -> Bindings {
    bind([("A", 1.0), ("B", 1.0), ("C", 1.0), ("C1", 1.0), (WAVE_NUMBER, 1.0)])
}

fn merged(mut base: Bindings, extra: &Option<String>) -> Result<Bindings, CliError> {
    if let Some(s) = extra {
        base.extend(parse_params(s)?);
    }
    Ok(base)
}

pub fn run_pipeline(a: &PipelineArgs) -> Result<i32, CliError> {
    let b = parse_expr(&a.b)?;
    let pde = PdeProblem::b_equation(b);
    let mode = match a.ode {
        OdeArg::Mechanical => OdeMode::Mechanical,
        OdeArg::Reported => OdeMode::Reported,
    };
    let ode = reduce_travelling(&pde, mode).map_err(|e| CliError::Usage(e.to_string()))?;
    let bal = balance_with(&ode, a.order).map_err(|e| CliError::Usage(e.to_string()))?;
    let (aux_eq, aux_sol) = match (&a.aux_case, &a.aux_p, &a.aux_q, &a.aux_z) {
        (Some(k), ..) => {
            let c = case_or_usage(*k)?;
            (c.eq, c.solution)
        }
        (None, Some(p), Some(q), Some(z)) => (
            AuxEquation::new(parse_expr(p)?, parse_expr(q)?, 2),
            AuxSolution::new(parse_expr(z)?, "given on the command line"),
        ),
        _ => return Err(CliError::Usage("give --aux-case or all of --aux-p, --aux-q, --aux-z".into())),
    };
    let ansatz = Ansatz::new(bal.order);
    let mut sys = derive_system(&ode, &ansatz, &aux_eq).map_err(|e| CliError::Numeric(e.to_string()))?;
    if let Some(k) = a.aux_case {
        sys = sys.with_case(k);
    }
    let params = merged(default_pipeline_params(), &a.params)?;
    let tol = resolve_tol(a.tol, PIPELINE_TOL)?;
    let interval = interval_arg(&a.interval, (-5.0, 5.0))?;

    std::fs::create_dir_all(&a.out).map_err(|e| CliError::io(&a.out, e))?;
    write_atomic(&a.out.join("system.txt"), sys.export_text().as_bytes())?;
    write_atomic(&a.out.join("system.json"), &json_bytes(&sys.sidecar()))?;

    let unknowns: Vec<Symbol> = match &a.unknowns {
        Some(s) => s.split(',').map(|u| Symbol::new(u.trim())).collect(),
        None => sys.unknowns.clone(),
    };
    let solve_bindings: Bindings = params
        .iter()
        .filter(|(k, _)| !unknowns.contains(k))
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    let bound = sys.bind_parameters(&solve_bindings);
    let opts = SolveOptions {
        unknowns: Some(unknowns),
        bindings: solve_bindings,
        seed: a.seed,
        ..Default::default()
    };
    let strategy = match a.strategy {
        StrategyArg::Constant => Strategy::Constant,
        StrategyArg::Pointwise => Strategy::Pointwise,
        StrategyArg::Export => Strategy::Export,
    };
    let outcome = solve_system(&bound, strategy, &opts).map_err(|e| CliError::Numeric(e.to_string()))?;

    let mut solutions = Vec::new();
    let mut all_pass = true;
    if let SolveOutcome::Solved { assignments } = &outcome {
        for asg in assignments {
            let value = |name: &str| -> Result<Expr, CliError> {
                asg.get(name)
                    .or_else(|| params.get(&Symbol::new(name)).copied())
                    .map(complex_expr)
                    .ok_or_else(|| CliError::Usage(format!("{name} is neither an unknown nor a parameter")))
            };
            let sol = compose(&assignment_exprs(asg), &ansatz, &aux_sol, value(WAVE_SPEED)?, value(WAVE_NUMBER)?, Provenance::Solver)
                .map_err(|e| CliError::Usage(e.to_string()))?
                .with_tolerance(asg.residual);
            let check = verify_solution(Target::Ode(&ode), &sol, &params, &Grid::Xi { interval, n: a.npoints }, tol);
            let (residual, error) = match check {
                Ok(r) => {
                    all_pass &= r.pass;
                    (serde_json::to_value(&r).expect("serializable"), Value::Null)
                }
                Err(e) => {
                    all_pass = false;
                    (Value::Null, Value::String(e.to_string()))
                }
            };
            solutions.push(json!({
                "assignment": asg,
                "constant": sol.is_constant(),
                "solution": sol.to_json(),
                "residual": residual,
                "error": error,
            }));
        }
    }

    let reproduction = a.aux_case == Some(1) && mode == OdeMode::Reported && strategy == Strategy::Pointwise;
    if reproduction {
        let cross = cross_check(&merged(figure1_parameters(), &a.params)?, &figure1_grid());
        write_atomic(&a.out.join("cross_check.json"), &json_bytes(&cross))?;
    }

    let report = json!({
        "pde": pde.to_string(),
        "b": a.b,
        "ode": { "mode": mode, "equation": ode.to_string() },
        "balance": bal,
        "aux": {
            "case": a.aux_case,
            "P": aux_eq.p.to_string(),
            "Q": aux_eq.q.to_string(),
            "z": aux_sol.z.to_string(),
        },
        "params": params_json(&params),
        "strategy": strategy,
        "equations": sys.equations.len(),
        "depends_on_xi": bound.depends_on_xi(),
        "outcome": outcome,
        "verification": { "interval": [interval.0, interval.1], "npoints": a.npoints, "tolerance": tol },
        "solutions": solutions,
    });
    write_atomic(&a.out.join("pipeline.json"), &json_bytes(&report))?;

    let mut summary = String::new();
    writeln!(summary, "reduced ({}): {ode}", mode.name()).expect("string write");
    writeln!(summary, "balance: N = {} (candidates {:?})", bal.order, bal.candidates).expect("string write");
    writeln!(summary, "system: {} equations written to {}", sys.equations.len(), a.out.join("system.txt").display())
        .expect("string write");
    let code = match &outcome {
        SolveOutcome::Solved { assignments } => {
            let good = solutions.iter().filter(|s| s["residual"]["pass"] == Value::Bool(true)).count();
            writeln!(summary, "solved: {} assignments, {good} verified at {tol:e}", assignments.len()).expect("string write");
            if all_pass {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        SolveOutcome::Pointwise { report } => {
            writeln!(
                summary,
                "pointwise: {} grid points, {} xi-independent assignments",
                report.points.len(),
                report.xi_independent.len()
            )
            .expect("string write");
            EXIT_OK
        }
        SolveOutcome::Unsolved { reason, .. } => {
            writeln!(summary, "unsolved: {reason}").expect("string write");
            if strategy == Strategy::Constant {
                EXIT_NUMERIC
            } else {
                EXIT_OK
            }
        }
    };
    if reproduction {
        writeln!(summary, "cross-check written to {}", a.out.join("cross_check.json").display()).expect("string write");
    }
    print!("{summary}");
    Ok(code)
}

/// A sample request after merging a recipe with explicit flags.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePlan {
    pub expr: Expr,
    pub var: Symbol,
    pub params: Bindings,
    pub interval: (f64, f64),
    pub npoints: usize,
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Files named in a recipe are relative to the recipe; `out` is relative to
/// the working directory.
pub fn sample_plan(a: &SampleArgs) -> Result<SamplePlan, CliError> {
    let (cfg, base) = match &a.config {
        Some(p) => (
            parse_config(&read(p)?)?,
            p.parent().map(Path::to_path_buf).unwrap_or_default(),
        ),
        None => (BTreeMap::new(), PathBuf::new()),
    };
    let from_cfg = |key: &str| cfg.get(key).map(|v| base.join(v));
    let expr_file = a.expr_file.clone().or_else(|| from_cfg("expr-file"));
    let solution_file = a.solution_file.clone().or_else(|| from_cfg("solution-file"));
    let expr = match (expr_file, solution_file) {
        (Some(f), None) => parse_expr(read(&f)?.trim())?,
        (None, Some(f)) => {
            let v: Value = serde_json::from_str(&read(&f)?)
                .map_err(|e| CliError::Usage(format!("{}: {e}", f.display())))?;
            let u = v["u"]
                .as_str()
                .ok_or_else(|| CliError::Usage(format!("{}: no string field 'u'", f.display())))?;
            parse_expr(u)?
        }
        (Some(_), Some(_)) => return Err(CliError::Usage("give either an expression or a solution file".into())),
        (None, None) => return Err(CliError::Usage("nothing to sample: give --expr-file or --solution-file".into())),
    };
    let params = match a.params.as_deref().or(cfg.get("params").map(String::as_str)) {
        Some(s) => parse_params(s)?,
        None => Bindings::new(),
    };
    let interval = match (&a.interval, cfg.get("interval")) {
        (Some(_), _) => interval_arg(&a.interval, (0.0, 0.0))?,
        (None, Some(s)) => {
            let v: Vec<f64> = s
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("interval '{s}' is not two numbers")))?;
            interval_arg(&Some(v), (0.0, 0.0))?
        }
        (None, None) => (-5.0, 5.0),
    };
    let npoints = match (a.npoints, cfg.get("npoints")) {
        (Some(n), _) => n,
        (None, Some(s)) => s
            .parse()
            .map_err(|_| CliError::Usage(format!("npoints '{s}' is not an integer")))?,
        (None, None) => 201,
    };
    let var = a
        .var
        .clone()
        .or_else(|| cfg.get("var").cloned())
        .map(|v| Symbol::new(&v))
        .unwrap_or_else(Symbol::xi);
    let out = a.out.clone().or_else(|| cfg.get("out").map(PathBuf::from));
    Ok(SamplePlan {
        expr,
        var,
        params,
        interval,
        npoints,
        out,
    })
}

pub fn run_sample(a: &SampleArgs) -> Result<i32, CliError> {
    let plan = sample_plan(a)?;
    let curve = sample_curve(&plan.expr, &plan.var, plan.interval, plan.npoints, &plan.params).map_err(eval_error)?;
    if curve.rows.is_empty() {
        return Err(CliError::Numeric("every sample point was excluded".into()));
    }
    let mut buf = Vec::new();
    write_csv(&curve, &mut buf).expect("writing to memory");
    match &plan.out {
        Some(p) => write_atomic(p, &buf)?,
        None => print!("{}", String::from_utf8(buf).expect("utf8")),
    }
    let complex = curve.rows.iter().any(|(_, v)| !crate::numeric::is_effectively_real(*v));
    eprintln!(
        "{} rows, {} excluded{}",
        curve.rows.len(),
        curve.excluded.len(),
        if complex { ", complex values" } else { "" }
    );
    Ok(if curve.all_finite() { EXIT_OK } else { EXIT_NUMERIC })
}

pub fn run_classical_sweep(a: &SweepArgs) -> Result<i32, CliError> {
    let interval = interval_arg(&a.interval, (-5.0, 5.0))?;
    let tol = resolve_tol(a.tol, SWEEP_TOL)?;
    let rows = sign_condition_sweep(interval, a.npoints, tol);
    let satisfied = rows.iter().filter(|r| r.satisfies).count();
    emit(&serde_json::to_value(&rows).expect("serializable"), a.out.as_deref())?;
    eprintln!("{} combinations, {satisfied} satisfy the equation at {tol:e}", rows.len());
    Ok(EXIT_OK)
}
