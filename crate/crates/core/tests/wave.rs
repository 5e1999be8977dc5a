mod common;

use std::collections::HashMap;

use auxwave::bernoulli::catalog_case;
use auxwave::expr::{expand, parse, substitute_many, Expr, Symbol};
use auxwave::numeric::{bind, eval, CNum};
use auxwave::wave::{
    balance, balance_with, derive_system, partial, reduce_travelling, solve_system, Ansatz, OdeMode, OdeTerm,
    PdeProblem, SolveOptions, SolveOutcome, Strategy, TravellingOde,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn reconstruction_identity_mechanical() {
    for case in [1, 2, 4] {
        common::reconstruction_trials(case, OdeMode::Mechanical, 100, case as u64).unwrap();
    }
}

#[test]
fn reconstruction_identity_reported() {
    for case in [1, 2, 4] {
        common::reconstruction_trials(case, OdeMode::Reported, 100, 40 + case as u64).unwrap();
    }
}

#[test]
fn balance_is_two_in_both_modes() {
    for mode in [OdeMode::Mechanical, OdeMode::Reported] {
        let ode = reduce_travelling(&PdeProblem::b_equation(Expr::int(-2)), mode).unwrap();
        let b = balance(&ode).unwrap();
        assert_eq!(b.candidates, vec![2]);
        assert_eq!(b.order, 2);
        assert_eq!(balance_with(&ode, Some(3)).unwrap().order, 3);
    }
}

/// All positive `N` with `α1 N + β1 = α2 N + β2` for some pair with `α1 != α2`.
fn pairwise_oracle(degrees: &[(i64, i64)]) -> Vec<i64> {
    let mut out = Vec::new();
    for (i, a) in degrees.iter().enumerate() {
        for b in &degrees[i + 1..] {
            if a.0 != b.0 && (b.1 - a.1) % (a.0 - b.0) == 0 {
                let n = (b.1 - a.1) / (a.0 - b.0);
                if n > 0 && !out.contains(&n) {
                    out.push(n);
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn second_derivative_against_square() {
    let ode = TravellingOde {
        terms: vec![
            OdeTerm {
                coeff: Expr::one(),
                orders: vec![2],
            },
            OdeTerm {
                coeff: Expr::one(),
                orders: vec![0, 0],
            },
        ],
        mode: OdeMode::Mechanical,
    };
    // U'' ~ z^(N+2), U^2 ~ z^(2N)
    assert_eq!(pairwise_oracle(&[(1, 2), (2, 0)]), vec![2]);
    assert_eq!(balance(&ode).unwrap().candidates, vec![2]);
    let b_eq = reduce_travelling(&PdeProblem::b_equation(Expr::int(-2)), OdeMode::Mechanical).unwrap();
    let degrees: Vec<(i64, i64)> = auxwave::wave::term_degrees(&b_eq)
        .iter()
        .map(|d| (d.alpha as i64, d.beta as i64))
        .collect();
    assert_eq!(balance(&b_eq).unwrap().candidates, pairwise_oracle(&degrees).into_iter().map(|n| n as u32).collect::<Vec<_>>());
}

#[test]
fn mechanical_reduction_commutes_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for b in [-2, 2, 3] {
        let pde = PdeProblem::b_equation(Expr::int(b));
        let ode = reduce_travelling(&pde, OdeMode::Mechanical).unwrap();
        let profile = parse("1/(1 + exp(xi)) + sin(xi)/3").unwrap();
        let (c, mu) = (0.7, 1.3);
        let wave = parse("mu*(x - c*t)").unwrap();
        let map: HashMap<Symbol, Expr> = [(Symbol::xi(), wave)].into_iter().collect();
        let u_xt = substitute_many(&profile, &map);
        let params = bind([("c", c), ("mu", mu)]);
        let f = |x: CNum, t: CNum| {
            let mut env = params.clone();
            env.insert(Symbol::new("x"), x);
            env.insert(Symbol::new("t"), t);
            eval(&u_xt, &env)
        };
        let pde_coeffs: Vec<CNum> = pde.terms.iter().map(|t| eval(&t.coeff, &params).unwrap()).collect();
        let ode_lhs = ode.apply(&profile, &Symbol::xi());
        for _ in 0..20 {
            let (x, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0));
            let vals = pde
                .term_values(|p| partial(&f, CNum::new(x, 0.0), CNum::new(t, 0.0), p.x, p.t), &pde_coeffs)
                .unwrap();
            let lhs: CNum = vals.iter().sum();
            let mut env = params.clone();
            env.insert(Symbol::xi(), CNum::new(mu * (x - c * t), 0.0));
            let rhs = eval(&ode_lhs, &env).unwrap();
            assert!((lhs - rhs).norm() <= 1e-6, "b = {b} at ({x}, {t}): {lhs} vs {rhs}");
        }
    }
}

#[test]
fn solver_assignments_satisfy_the_original_equations() {
    let ode = reduce_travelling(&PdeProblem::b_equation(Expr::int(-2)), OdeMode::Mechanical).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..6 {
        let (a, b) = (rng.gen_range(0.3..1.5), rng.gen_range(-1.5..-0.3));
        let aux = catalog_case(4).unwrap().eq;
        let sys = derive_system(&ode, &Ansatz::new(2), &aux).unwrap();
        let params = bind([("A", a), ("B", b), ("mu", 1.0)]);
        let opts = SolveOptions {
            bindings: params.clone(),
            ..Default::default()
        };
        let SolveOutcome::Solved { assignments } = solve_system(&sys.bind_parameters(&params), Strategy::Constant, &opts).unwrap() else {
            panic!("constant system at A = {a}, B = {b} unsolved");
        };
        for asg in &assignments {
            let mut env = params.clone();
            env.extend(asg.values.iter().map(|(k, v)| (k.clone(), *v)));
            for (i, e) in sys.equations.iter().enumerate() {
                let r = eval(e, &env).unwrap();
                let scale: f64 = expand(e).terms().iter().map(|t| eval(t, &env).unwrap().norm()).sum();
                assert!(r.norm() <= 1e-10 * scale.max(1.0), "eq[{i}] = {r} at {:?}", asg.values);
            }
        }
        assert!(assignments.iter().any(|s| s.get("g2").is_some_and(|v| v.norm() > 1e-6)));
    }
}

#[test]
fn xi_dependent_systems_go_to_export() {
    let ode = reduce_travelling(&PdeProblem::b_equation(Expr::int(-2)), OdeMode::Mechanical).unwrap();
    let sys = derive_system(&ode, &Ansatz::new(2), &catalog_case(1).unwrap().eq).unwrap();
    let out = solve_system(&sys, Strategy::Constant, &SolveOptions {
        bindings: bind([("A", 1.0), ("B", 1.0), ("mu", 1.0)]),
        ..Default::default()
    })
    .unwrap();
    match out {
        SolveOutcome::Unsolved { export, .. } => {
            assert_eq!(export.text.lines().count(), sys.equations.len());
            assert!(export.text.lines().all(|l| l.starts_with("eq[") && l.ends_with(" = 0;")));
        }
        other => panic!("expected export, got {other:?}"),
    }
}
