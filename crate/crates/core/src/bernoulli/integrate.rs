//! Bounded symbolic antiderivatives.
//!
//! Rules, applied term by term after expansion:
//!
//! * `x^k` times constants,
//! * `K g'(x) e^{g(x)}` (direct substitution),
//! * `x^k e^{αx+β}` by parts,
//! * `x^k e^{ax²+bx+c}` via erf and the reduction `2a I_k = x^{k-1}e^Q - (k-1) I_{k-2} - b I_{k-1}`,
//! * `e^{γ + βe^{λx}}` via E₁, and `e^{λx + γ + βe^{λx}}` by substitution,
//! * a lone `sin`/`cos` of a linear argument directly; otherwise
//!   `sin`/`cos` of linear arguments are expanded through `e^{±iu}` so that they
//!   combine with the exponential rules.
//!
//! Terms outside the table are gathered into one unevaluated integral from 0.

use crate::expr::{expand, poly_collect, Expr, Func, Node, Symbol};

#[derive(Debug, Clone, PartialEq)]
pub struct Antiderivative {
    pub expr: Expr,
    /// No unevaluated integral was needed.
    pub closed: bool,
}

/// An antiderivative of `f` in `x`. The additive constant is unspecified.
pub fn antiderivative(f: &Expr, x: &Symbol) -> Antiderivative {
    let expanded = expand(f);
    let mut closed = Vec::new();
    let mut rest = Vec::new();
    for t in expanded.terms() {
        match integrate_term(&t, x, 0) {
            Some(r) => closed.push(r),
            None => rest.push(t),
        }
    }
    let is_closed = rest.is_empty();
    if !is_closed {
        closed.push(Expr::integral_to_var(Expr::add_all(rest), x));
    }
    Antiderivative {
        expr: Expr::add_all(closed),
        closed: is_closed,
    }
}

/// Polynomial coefficients of `e` in `x` up to `max_degree`.
fn poly_coeffs(e: &Expr, x: &Symbol, max_degree: usize) -> Option<Vec<Expr>> {
    let p = poly_collect(e, x).ok()?;
    if p.coeffs.len() > max_degree + 1 {
        return None;
    }
    let mut c = p.coeffs;
    c.resize(max_degree + 1, Expr::zero());
    Some(c)
}

struct Split {
    constant: Vec<Expr>,
    power: i64,
    exp_arg: Expr,
    trig: Vec<Expr>,
}

fn split_term(t: &Expr, x: &Symbol) -> Option<Split> {
    let mut s = Split {
        constant: Vec::new(),
        power: 0,
        exp_arg: Expr::zero(),
        trig: Vec::new(),
    };
    for f in t.factors() {
        if f.free_of(x) {
            s.constant.push(f);
            continue;
        }
        match f.node() {
            Node::Symbol(_) => s.power += 1,
            Node::Pow(b, e) if b.as_symbol() == Some(x) => {
                let k = e.as_integer().filter(|k| *k >= 0)?;
                s.power += k;
            }
            Node::Func(Func::Exp, a) => s.exp_arg = a.clone(),
            Node::Func(Func::Sin | Func::Cos, _) => s.trig.push(f.clone()),
            Node::Pow(b, e) if matches!(b.node(), Node::Func(Func::Sin | Func::Cos, _)) => {
                let k = e.as_integer().filter(|k| *k >= 0)?;
                for _ in 0..k {
                    s.trig.push(b.clone());
                }
            }
            _ => return None,
        }
    }
    Some(s)
}

fn euler(f: &Expr) -> Expr {
    let i = Expr::imag_unit();
    match f.node() {
        Node::Func(Func::Sin, u) => {
            let plus = (&i * u).exp();
            let minus = (-(&i * u)).exp();
            (plus - minus) * (Expr::frac(-1, 2) * i)
        }
        Node::Func(Func::Cos, u) => {
            let plus = (&i * u).exp();
            let minus = (-(&i * u)).exp();
            (plus + minus) * Expr::frac(1, 2)
        }
        _ => f.clone(),
    }
}

fn integrate_term(t: &Expr, x: &Symbol, depth: usize) -> Option<Expr> {
    if t.free_of(x) {
        return Some(t * &Expr::sym(x));
    }
    let s = split_term(t, x)?;
    let k = Expr::mul_all(s.constant.iter().cloned());
    let xs = Expr::sym(x);

    if !s.exp_arg.is_zero() {
        if let Some(r) = substitution(t, &s.exp_arg, x) {
            return Some(r);
        }
    }

    if s.trig.len() == 1 && s.power == 0 && s.exp_arg.is_zero() {
        if let Node::Func(f, u) = s.trig[0].node() {
            if let Some(c) = poly_coeffs(u, x, 1).filter(|c| !c[1].is_zero()) {
                let r = match f {
                    Func::Sin => -u.cos(),
                    _ => u.sin(),
                };
                return Some(k * r / c[1].clone());
            }
        }
    }

    if !s.trig.is_empty() {
        if depth > 0 {
            return None;
        }
        // Trig arguments must be linear for the exponential rules to close.
        for f in &s.trig {
            if let Node::Func(_, u) = f.node() {
                poly_coeffs(u, x, 1)?;
            }
        }
        let rebuilt = Expr::mul_all(
            [k.clone(), xs.powi(s.power), s.exp_arg.exp()]
                .into_iter()
                .chain(s.trig.iter().map(euler)),
        );
        let mut parts = Vec::new();
        for term in expand(&rebuilt).terms() {
            parts.push(integrate_term(&term, x, depth + 1)?);
        }
        return Some(Expr::add_all(parts));
    }

    if s.exp_arg.is_zero() {
        let n = s.power + 1;
        return Some(k * xs.powi(n) * Expr::frac(1, n));
    }

    if let Some(c) = poly_coeffs(&s.exp_arg, x, 2) {
        let r = if c[2].is_zero() {
            by_parts(s.power, &c[1], &c[0], &xs)
        } else {
            gaussian(s.power, &c[2], &c[1], &c[0], &xs)
        };
        return Some(k * r);
    }

    if s.power == 0 {
        return exp_of_exp(&s.exp_arg, x).map(|r| k * r);
    }
    None
}

/// `t = K g' e^g` with `K` free of `x`.
fn substitution(t: &Expr, g: &Expr, x: &Symbol) -> Option<Expr> {
    let dg = crate::expr::differentiate(g, x);
    if dg.is_zero() {
        return None;
    }
    let ratio = t / &(g.exp() * dg);
    ratio.free_of(x).then(|| ratio * g.exp())
}

/// `∫ x^k e^{αx+β} dx = e^{αx+β} Σ_j (-1)^j k!/(k-j)! x^{k-j} / α^{j+1}`.
fn by_parts(k: i64, alpha: &Expr, beta: &Expr, x: &Expr) -> Expr {
    let e = (alpha * x + beta.clone()).exp();
    let mut terms = Vec::new();
    let mut falling = 1i64;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        terms.push(Expr::int(sign * falling) * x.powi(k - j) * alpha.powi(-(j + 1)));
        falling *= k - j;
    }
    e * Expr::add_all(terms)
}

/// `∫ x^k e^{ax²+bx+c} dx`.
fn gaussian(k: i64, a: &Expr, b: &Expr, c: &Expr, x: &Expr) -> Expr {
    let q = a * &x.powi(2) + b * x + c.clone();
    let two_a = Expr::int(2) * a.clone();
    let mut table: Vec<Expr> = Vec::with_capacity(k as usize + 1);
    let root = (-a.clone()).sqrt();
    let i0 = Expr::mul_all([
        Expr::pi().sqrt(),
        (Expr::int(2) * root.clone()).recip(),
        (c.clone() - b.powi(2) / (Expr::int(4) * a.clone())).exp(),
        (root * (x.clone() + b / &two_a)).erf(),
    ]);
    table.push(i0);
    for n in 1..=k {
        let mut r = x.powi(n - 1) * q.exp() / two_a.clone() - b / &two_a * table[(n - 1) as usize].clone();
        if n >= 2 {
            r = r - Expr::int(n - 1) / two_a.clone() * table[(n - 2) as usize].clone();
        }
        table.push(r);
    }
    table.pop().expect("order zero entry")
}

/// `e^{αx + γ + βe^{λx}}` with `α ∈ {0, λ}`.
fn exp_of_exp(arg: &Expr, x: &Symbol) -> Option<Expr> {
    let mut gamma = Vec::new();
    let mut alpha = Expr::zero();
    let mut inner: Option<(Expr, Expr)> = None;
    for t in arg.terms() {
        if t.free_of(x) {
            gamma.push(t);
            continue;
        }
        if let Some(c) = poly_coeffs(&t, x, 1) {
            if c[0].is_zero() {
                alpha = alpha + c[1].clone();
                continue;
            }
        }
        if inner.is_some() {
            return None;
        }
        let mut beta = Vec::new();
        let mut lambda = None;
        for f in t.factors() {
            match f.node() {
                _ if f.free_of(x) => beta.push(f),
                Node::Func(Func::Exp, u) if lambda.is_none() => {
                    let c = poly_coeffs(u, x, 1)?;
                    beta.push(c[0].exp());
                    lambda = Some(c[1].clone());
                }
                _ => return None,
            }
        }
        inner = Some((Expr::mul_all(beta), lambda?));
    }
    let (beta, lambda) = inner?;
    if lambda.is_zero() {
        return None;
    }
    let gamma = Expr::add_all(gamma);
    let w = beta.clone() * (lambda.clone() * Expr::sym(x)).exp();
    if alpha.is_zero() {
        // ∫ e^{βw}/(λw) dw = Ei(βw)/λ = -E1(-βw)/λ
        Some(-(gamma.exp() * (-w).ei1() / lambda))
    } else if alpha == lambda {
        Some((gamma + w).exp() / (beta * lambda))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{differentiate, parse};
    use crate::numeric::{bind, equal_numeric, CNum};

    fn equal_rule_check(a: &Expr, b: &Expr) -> bool {
        let samples: Vec<_> = [-0.8, -0.1, 0.45, 1.3]
            .iter()
            .map(|&xi| bind([("xi", CNum::new(xi, 0.0)), ("A", CNum::new(-0.7, 0.0)), ("B", CNum::new(0.3, 0.0)), ("C", CNum::new(0.9, 0.2))]))
            .collect();
        equal_numeric(a, b, &samples, 1e-9).unwrap()
    }

    fn check(src: &str, closed: bool) {
        let f = parse(src).unwrap();
        let x = Symbol::xi();
        let a = antiderivative(&f, &x);
        assert_eq!(a.closed, closed, "{src} -> {}", a.expr);
        let d = differentiate(&a.expr, &x);
        assert!(equal_rule_check(&d, &f), "{src}: d/dx {} != f", a.expr);
    }

    #[test]
    fn table_families() {
        check("(A*xi+B)^2", true);
        check("A*cos(xi)", true);
        check("A*exp(C*xi)", true);
        check("(C*xi+B)^2*exp(A*xi)", true);
        check("exp(C*xi)*exp(A*xi)", true);
        check("xi^2*exp(-xi^2 + xi)", true);
        check("exp(C*xi)*exp((1/2)*A*xi^2 + B*xi)", true);
        check("cos(xi)*exp((1/2)*C*xi^2 + B*xi)", true);
        check("A*exp(exp(C*xi)/C)", true);
        check("exp(C*xi)*exp(exp(C*xi)/C)", true);
        check("B*cos(xi)*exp(A*sin(xi))", true);
    }

    #[test]
    fn outside_the_table() {
        check("B*sin(xi)*exp(A*sin(xi))", false);
        check("(A*xi+B)*exp((1/3)*A^2*xi^3 + A*xi^2*B + xi*B^2)", false);
    }
}
