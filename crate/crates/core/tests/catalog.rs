use auxwave::bernoulli::{catalog, catalog_case, erratum_expr, find_pole_free_interval, solve_general, verify_aux, VerifyOptions};
use auxwave::numeric::{bind, equal_numeric, linspace, Bindings, CNum};

fn unit_params() -> Bindings {
    bind([("A", 1.0), ("B", 1.0), ("C", 1.0), ("C1", 1.0)])
}

#[test]
fn every_case_satisfies_its_equation() {
    let params = unit_params();
    for c in catalog() {
        let window = find_pole_free_interval(&c.solution, &params, 2.0).unwrap();
        let r = verify_aux(&c.eq, &c.solution, &params, window, 41, 1e-8, &VerifyOptions::default()).unwrap();
        println!("case {:2} on [{:5.2}, {:5.2}]: max {:.3e}", c.index, window.0, window.1, r.max_abs);
        assert!(r.pass, "case {} max {:e} at {:?}", c.index, r.max_abs, r.worst_point);
    }
}

#[test]
fn errata_originals_fail() {
    let params = unit_params();
    for c in catalog() {
        for e in &c.errata {
            let mut eq = c.eq.clone();
            let mut sol = c.solution.clone();
            match e.field {
                "P" => eq.p = erratum_expr(e),
                "Q" => eq.q = erratum_expr(e),
                _ => sol.z = erratum_expr(e),
            }
            let window = find_pole_free_interval(&c.solution, &params, 2.0).unwrap();
            let r = verify_aux(&eq, &sol, &params, window, 21, 1e-8, &VerifyOptions::default()).unwrap();
            assert!(!r.pass, "case {} original {} unexpectedly passes", c.index, e.field);
        }
    }
}

#[test]
fn independent_derivation_matches_closed_forms() {
    for k in [3, 4, 5, 6] {
        let c = catalog_case(k).unwrap();
        let s = solve_general(&c.eq);
        let samples: Vec<Bindings> = linspace(-1.0, 1.0, 50)
            .into_iter()
            .map(|x| {
                let mut b = bind([("A", 1.0), ("B", 0.5), ("C", 0.75), ("C1", 2.0)]);
                b.insert("xi".parse::<auxwave::expr::Expr>().unwrap().as_symbol().unwrap().clone(), CNum::new(x, 0.0));
                b
            })
            .collect();
        assert!(equal_numeric(&s.z, &c.solution.z, &samples, 1e-9).unwrap(), "case {k}");
    }
}

#[test]
fn quarter_slope_quadrature_case() {
    let c = catalog_case(1).unwrap();
    let params = bind([("A", 0.25), ("B", 1.0), ("C1", 1.0)]);
    let r = verify_aux(&c.eq, &c.solution, &params, (-2.0, 2.0), 81, 1e-8, &VerifyOptions::default()).unwrap();
    assert!(r.pass, "{:e}", r.max_abs);
    assert!(r.excluded_points.is_empty());
}

#[test]
fn finite_difference_mode_agrees_loosely() {
    use auxwave::bernoulli::DerivativeMode;
    let c = catalog_case(2).unwrap();
    let opts = VerifyOptions {
        derivative: DerivativeMode::Numeric { h: None },
        ..Default::default()
    };
    let r = verify_aux(&c.eq, &c.solution, &unit_params(), (-1.0, 0.5), 21, 1e-8, &opts).unwrap();
    assert!(r.pass, "{:e}", r.max_abs);
}

#[test]
fn flagged_cases_are_complex() {
    let params = unit_params();
    for c in catalog() {
        let window = find_pole_free_interval(&c.solution, &params, 2.0).unwrap();
        let r = verify_aux(&c.eq, &c.solution, &params, window, 11, 1e-8, &VerifyOptions::default()).unwrap();
        if !c.complex {
            assert!(!r.complex_values, "case {}", c.index);
        }
    }
}
