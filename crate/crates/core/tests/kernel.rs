use std::collections::BTreeMap;

use auxwave::expr::{differentiate, expand, normalize, parse, poly_collect, substitute, Expr, Symbol};
use auxwave::numeric::{bind, equal_numeric, Bindings, CNum};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        prop::sample::select(vec!["x", "y", "A", "xi"]).prop_map(Expr::symbol),
        (-4i64..=4).prop_map(Expr::int),
        (-3i64..=3, 1i64..=4).prop_map(|(p, q)| Expr::frac(p, q)),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::add_all),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::mul_all),
            (inner.clone(), -2i64..=3).prop_map(|(b, k)| b.powi(k)),
            inner.clone().prop_map(|e| e.exp()),
            inner.clone().prop_map(|e| e.sin()),
            inner.prop_map(|e| e.cos()),
        ]
    })
}

/// Polynomial-only expressions: no division, no functions.
fn poly_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::add_all),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Expr::mul_all),
            (inner, 0i64..=2).prop_map(|(b, k)| b.powi(k)),
        ]
    })
}

fn samples(seed: u64, n: usize) -> Vec<Bindings> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            ["x", "y", "A", "xi", "z"]
                .iter()
                .map(|s| (Symbol::new(s), CNum::new(rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9))))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(e in expr()) {
        let once = normalize(&e);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn parse_render_round_trip(e in expr()) {
        let e = normalize(&e);
        let back = parse(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn derivative_is_linear(e1 in expr(), e2 in expr(), a in (-3i64..=3, 1i64..=3), b in (-3i64..=3, 1i64..=3)) {
        let x = Symbol::new("x");
        let (a, b) = (Expr::frac(a.0, a.1), Expr::frac(b.0, b.1));
        let lhs = differentiate(&(&a * &e1 + &b * &e2), &x);
        let rhs = &a * &differentiate(&e1, &x) + &b * &differentiate(&e2, &x);
        prop_assert_eq!(expand(&lhs), expand(&rhs));
    }

    #[test]
    fn product_rule_numerically(e1 in expr(), e2 in expr()) {
        let x = Symbol::new("x");
        let lhs = differentiate(&(&e1 * &e2), &x);
        let rhs = &e1 * &differentiate(&e2, &x) + &e2 * &differentiate(&e1, &x);
        // samples on which either side fails to evaluate are skipped
        let pts: Vec<Bindings> = samples(11, 40)
            .into_iter()
            .filter(|s| equal_numeric(&lhs, &lhs, std::slice::from_ref(s), 0.0).is_ok()
                && equal_numeric(&rhs, &rhs, std::slice::from_ref(s), 0.0).is_ok())
            .take(20)
            .collect();
        prop_assert!(equal_numeric(&lhs, &rhs, &pts, 1e-10).unwrap());
    }

    #[test]
    fn poly_collect_reconstructs(coeffs in prop::collection::vec(poly_expr(), 1..=9)) {
        let z = Symbol::new("z");
        let ze = Expr::sym(&z);
        let input = Expr::add_all(coeffs.iter().enumerate().map(|(i, c)| c * &ze.powi(i as i64)));
        let p = poly_collect(&input, &z).unwrap();
        prop_assert!(p.degree().map_or(true, |d| d <= 8));
        prop_assert_eq!(expand(&p.reconstruct()), expand(&input));
        for c in &p.coeffs {
            prop_assert!(c.free_of(&z));
        }
    }
}

#[test]
fn first_case_exponent_differentiates_to_p() {
    let g = parse("(1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2").unwrap();
    let d = differentiate(&g, &Symbol::xi());
    assert_eq!(expand(&d), expand(&parse("(A*xi + B)^2").unwrap()));
}

#[test]
fn first_case_integrating_factor_parses_as_exp_of_polynomial() {
    let e = parse("exp((1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2)").unwrap();
    assert_eq!(e.to_string(), "exp(B^2*xi + (1/3)*A^2*xi^3 + A*B*xi^2)");
    let arg = poly_collect(&parse("(1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2").unwrap(), &Symbol::xi()).unwrap();
    assert_eq!(arg.degree(), Some(3));
}

#[test]
fn linear_coefficient_vanishes_at_a_zero() {
    let e = substitute(&parse("A*xi + B").unwrap(), &Symbol::new("A"), &Expr::zero());
    assert_eq!(e, Expr::symbol("B"));
}

/// Monomials in `A, B, g1, g2, z` by repeated distribution over exponent
/// vectors, independent of the kernel's polynomial code.
fn brute_expand(terms: &[(i64, [u32; 5])], factors: &[Vec<(i64, [u32; 5])>]) -> BTreeMap<[u32; 5], i64> {
    let mut acc: BTreeMap<[u32; 5], i64> = terms.iter().map(|(c, m)| (*m, *c)).collect();
    for f in factors {
        let mut next = BTreeMap::new();
        for (m, c) in &acc {
            for (fc, fm) in f {
                let mut k = *m;
                for i in 0..5 {
                    k[i] += fm[i];
                }
                *next.entry(k).or_insert(0) += c * fc;
            }
        }
        acc = next;
    }
    acc.retain(|_, c| *c != 0);
    acc
}

#[test]
fn ansatz_derivative_collects_like_brute_force() {
    // g1 (A z + B z^2) + 2 g2 z (A z + B z^2), order A, B, g1, g2, z
    let rhs = vec![(1, [1, 0, 0, 0, 1]), (1, [0, 1, 0, 0, 2])];
    let mut oracle = brute_expand(&[(1, [0, 0, 1, 0, 0])], &[rhs.clone()]);
    for (m, c) in brute_expand(&[(2, [0, 0, 0, 1, 1])], &[rhs]) {
        *oracle.entry(m).or_insert(0) += c;
    }
    let e = parse("g1*(A*z + B*z^2) + 2*g2*z*(A*z + B*z^2)").unwrap();
    let p = poly_collect(&e, &Symbol::new("z")).unwrap();
    let names = ["A", "B", "g1", "g2"];
    for i in 0..=3 {
        let expected = Expr::add_all(oracle.iter().filter(|(m, _)| m[4] == i as u32).map(|(m, c)| {
            Expr::mul_all(
                std::iter::once(Expr::int(*c)).chain((0..4).map(|j| Expr::symbol(names[j]).powi(m[j] as i64))),
            )
        }));
        assert_eq!(p.coeff(i), expected, "coefficient of z^{i}");
    }
    assert_eq!(p.coeff(1), parse("g1*A").unwrap());
    assert_eq!(p.coeff(2), parse("g1*B + 2*g2*A").unwrap());
    assert_eq!(p.coeff(3), parse("2*g2*B").unwrap());
}

#[test]
fn exact_decimals() {
    assert_eq!(parse("0.25").unwrap(), Expr::frac(1, 4));
    let v = auxwave::numeric::eval(&parse("0.1 + 0.2").unwrap(), &bind::<_, f64>([])).unwrap();
    assert_eq!(v.re, 0.3);
}
