//! The whole pipeline on the b = -2 equation with the constant Case 4:
//! reduce, balance, derive, solve, compose and verify.

use auxwave::bernoulli::catalog_case;
use auxwave::expr::Expr;
use auxwave::numeric::bind;
use auxwave::wave::{
    assignment_exprs, balance, complex_expr, compose, derive_system, reduce_travelling, solve_system, verify_solution,
    Ansatz, Grid, OdeMode, PdeProblem, Provenance, SolveOptions, SolveOutcome, Strategy, Target,
};

fn main() {
    let pde = PdeProblem::b_equation(Expr::int(-2));
    let ode = reduce_travelling(&pde, OdeMode::Mechanical).unwrap();
    println!("{pde}\n  -> {ode}");
    let n = balance(&ode).unwrap().order;
    println!("N = {n}");

    let case = catalog_case(4).unwrap();
    let ansatz = Ansatz::new(n);
    let params = bind([("A", 0.5), ("B", -0.5), ("C1", 1.0), ("mu", 1.0)]);
    let sys = derive_system(&ode, &ansatz, &case.eq).unwrap().bind_parameters(&params);
    for (i, e) in sys.equations.iter().enumerate() {
        println!("  eq[{i}] = {e}");
    }

    let opts = SolveOptions {
        bindings: params.clone(),
        ..Default::default()
    };
    let SolveOutcome::Solved { assignments } = solve_system(&sys, Strategy::Constant, &opts).unwrap() else {
        panic!("unsolved");
    };
    let grid = Grid::Xi {
        interval: (-5.0, 5.0),
        n: 101,
    };
    for a in &assignments {
        let c = complex_expr(a.get("c").unwrap());
        let sol = compose(&assignment_exprs(a), &ansatz, &case.solution, c, Expr::one(), Provenance::Solver).unwrap();
        let r = verify_solution(Target::Ode(&ode), &sol, &params, &grid, 1e-6).unwrap();
        println!("u = {}\n  residual {:.1e} ({})", sol.u, r.max_abs, if r.pass { "pass" } else { "fail" });
    }

    // the same solution checked directly against the PDE
    let pde_grid = Grid::XT {
        x: (-2.0, 2.0, 9),
        t: (0.0, 1.0, 5),
    };
    let last = assignments.iter().find(|a| a.get("g2").is_some_and(|v| v.norm() > 0.0)).unwrap();
    let c = complex_expr(last.get("c").unwrap());
    let sol = compose(&assignment_exprs(last), &ansatz, &case.solution, c, Expr::one(), Provenance::Solver).unwrap();
    let r = verify_solution(Target::Pde(&pde), &sol, &params, &pde_grid, 1e-6).unwrap();
    println!("PDE residual by finite differences: {:.1e}", r.max_abs);
}
