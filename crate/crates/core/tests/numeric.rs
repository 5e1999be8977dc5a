use auxwave::bernoulli::catalog_case;
use auxwave::expr::{parse, Expr, Symbol};
use auxwave::numeric::special::{e1, erf};
use auxwave::numeric::{
    bind, eval, integrate_real, numeric_diff, sample_curve, Bindings, CNum, QuadSpec,
};
use proptest::prelude::*;

/// `E1(1) = ∫_0^1 e^{-1/u} / u du` by composite Simpson.
fn e1_of_one_by_simpson(n: usize) -> f64 {
    let f = |u: f64| if u == 0.0 { 0.0 } else { (-1.0 / u).exp() / u };
    let h = 1.0 / n as f64;
    let mut s = f(0.0) + f(1.0);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn exponential_integral_at_one() {
    let oracle = e1_of_one_by_simpson(200_000);
    assert!((oracle - 0.2193839344).abs() < 1e-10, "oracle {oracle}");
    let v = e1(CNum::new(1.0, 0.0));
    assert!((v.re - 0.2193839344).abs() < 1e-9);
    assert!((v.re - oracle).abs() < 1e-9);
    assert_eq!(v.im, 0.0);
}

#[test]
fn exponential_integral_on_the_cut_takes_the_upper_side() {
    // E1(-x + i0) = -Ei(x) - i pi
    let v = e1(CNum::new(-1.0, 0.0));
    assert!((v.re + 1.8951178163559368).abs() < 1e-12);
    assert!((v.im + std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn erf_matches_reference_values() {
    // 30-digit references, odd extension checked on the negatives
    for (x, want) in [
        (0.1, 0.112_462_916_018_284_892_2),
        (0.5, 0.520_499_877_813_046_537_7),
        (0.8, 0.742_100_964_707_660_486_2),
        (1.5, 0.966_105_146_475_310_727_1),
        (1.9, 0.992_790_429_235_257_469_9),
        (2.1, 0.997_020_533_343_667_014_5),
        (3.0, 0.999_977_909_503_001_414_6),
        (4.5, 0.999_999_999_803_383_955_8),
    ] {
        let v = erf(CNum::new(x, 0.0));
        assert!((v.re - want).abs() < 1e-15, "x = {x}");
        assert_eq!(v.im, 0.0);
        assert_eq!(erf(CNum::new(-x, 0.0)).re, -v.re);
    }
    let v = erf(CNum::new(1.0, 1.0));
    assert!((v - CNum::new(1.316_151_281_697_947_644_9, 0.190_453_469_237_834_686_28)).norm() < 1e-14);
    assert_eq!(eval(&parse("erf(0)").unwrap(), &Bindings::new()).unwrap(), CNum::new(0.0, 0.0));
}

fn w() -> impl Strategy<Value = CNum> {
    (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(a, b)| CNum::new(a, b))
}

proptest! {
    #[test]
    fn erf_is_odd(w in w()) {
        let d = erf(-w) + erf(w);
        prop_assert!(d.norm() <= 1e-12 * (1.0 + erf(w).norm()));
    }

    #[test]
    fn erf_commutes_with_conjugation(w in w()) {
        let d = erf(w.conj()) - erf(w).conj();
        prop_assert!(d.norm() <= 1e-12 * (1.0 + erf(w).norm()));
    }

    #[test]
    fn quadrature_is_additive(k in 0usize..4, a in -1.5..1.5f64, b in -1.5..1.5f64, p in 0.2..1.5f64) {
        let f = integrand(k);
        let s = Symbol::new("s");
        let params = bind([("A", p), ("B", 0.7), ("C", 0.4)]);
        let int_to = |x: f64| {
            let mut env = params.clone();
            env.insert(Symbol::xi(), CNum::new(x, 0.0));
            eval(&Expr::integral(f.clone(), &s, Expr::xi()), &env).unwrap()
        };
        let middle = integrate_real(
            |t| {
                let mut env = params.clone();
                env.insert(s.clone(), CNum::new(t, 0.0));
                eval(&f, &env)
            },
            a,
            b,
            &QuadSpec::default(),
        )
        .unwrap();
        let whole = int_to(b);
        let parts = int_to(a) + middle;
        prop_assert!((whole - parts).norm() <= 1e-9 * whole.norm().max(1.0), "{whole} vs {parts}");
    }
}

/// Integrand shapes occurring in the catalog, in the variable `s`.
fn integrand(k: usize) -> Expr {
    let src = [
        "-exp((1/3)*A^2*s^3 + A*s^2*B + s*B^2)*(A*s + B)",
        "B*sin(s)*exp(A*sin(s))",
        "exp(C*s)*exp(-A*s)",
        "exp(-(C*s + B)^2)",
    ];
    parse(src[k]).unwrap()
}

#[test]
fn derivative_of_integral_is_the_integrand() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let s = Symbol::new("s");
    let params = bind([("A", 0.8), ("B", 0.6), ("C", 0.5)]);
    for k in 0..4 {
        let f = integrand(k);
        let big = Expr::integral(f.clone(), &s, Expr::xi());
        for _ in 0..5 {
            let x = rng.gen_range(-1.5..1.5);
            let d = numeric_diff(
                |v| {
                    let mut env = params.clone();
                    env.insert(Symbol::xi(), v);
                    eval(&big, &env)
                },
                CNum::new(x, 0.0),
                1,
                None,
            )
            .unwrap();
            let mut env = params.clone();
            env.insert(s.clone(), CNum::new(x, 0.0));
            let expected = eval(&f, &env).unwrap();
            assert!((d - expected).norm() <= 1e-6, "integrand {k} at {x}: {d} vs {expected}");
        }
    }
}

#[test]
fn evaluation_is_bit_identical() {
    let case = catalog_case(17).unwrap();
    let b = bind([("A", 1.0), ("B", 1.0), ("C", 1.0), ("C1", 1.0), ("xi", 0.3)]);
    let first = eval(&case.solution.z, &b).unwrap();
    for _ in 0..3 {
        let again = eval(&case.solution.z, &b).unwrap();
        assert_eq!(first.re.to_bits(), again.re.to_bits());
        assert_eq!(first.im.to_bits(), again.im.to_bits());
    }
}

#[test]
fn finite_differences_of_known_functions() {
    let d = numeric_diff(|x| Ok(x.exp()), CNum::new(0.0, 0.0), 1, Some(1e-2)).unwrap();
    assert!((d - 1.0).norm() < 1e-8);
    let d = numeric_diff(|x| Ok(x.sin()), CNum::new(0.0, 0.0), 3, None).unwrap();
    assert!((d + 1.0).norm() < 1e-6);
}

#[test]
fn quadrature_backed_case_obeys_its_equation() {
    let case = catalog_case(2).unwrap();
    let b = bind([("A", 1.0), ("B", 1.0), ("C1", 1.0)]);
    let at = |x: CNum| {
        let mut env = b.clone();
        env.insert(Symbol::xi(), x);
        env
    };
    let x0 = CNum::new(0.5, 0.0);
    let d = numeric_diff(|x| eval(&case.solution.z, &at(x)), x0, 1, None).unwrap();
    let z = eval(&case.solution.z, &at(x0)).unwrap();
    let rhs = eval(&case.eq.p, &at(x0)).unwrap() * z + eval(&case.eq.q, &at(x0)).unwrap() * z * z;
    assert!((d - rhs).norm() < 1e-6, "{d} vs {rhs}");
}

#[test]
fn first_case_is_one_at_the_origin() {
    let case = catalog_case(1).unwrap();
    let v = eval(&case.solution.z, &bind([("A", 0.25), ("B", 1.0), ("C1", 1.0), ("xi", 0.0)])).unwrap();
    assert_eq!(v, CNum::new(1.0, 0.0));
}

#[test]
fn sigmoid_samples_increase_inside_the_unit_interval() {
    let e = parse("1/(1 + exp(-xi))").unwrap();
    let c = sample_curve(&e, &Symbol::xi(), (-5.0, 5.0), 101, &Bindings::new()).unwrap();
    assert_eq!(c.rows.len(), 101);
    for w in c.rows.windows(2) {
        assert!(w[1].1.re > w[0].1.re);
    }
    assert!(c.rows.iter().all(|(_, v)| v.re > 0.0 && v.re < 1.0 && v.im == 0.0));
}
