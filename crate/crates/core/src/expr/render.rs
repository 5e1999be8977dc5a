use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{split_coeff, Expr, NamedConst, Node};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Renders in the input grammar; `parse(render(e)) == e` for normalized `e`.
pub fn render(e: &Expr) -> String {
    match e.node() {
        Node::Sum(ts) => {
            let mut out = String::new();
            for (i, t) in ts.iter().enumerate() {
                let (c, _) = split_coeff(t);
                if c.is_negative() {
                    out.push_str(if i == 0 { "-" } else { " - " });
                    out.push_str(&render(&-t));
                } else {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    out.push_str(&render(t));
                }
            }
            out
        }
        Node::Product(_) => render_product(e),
        Node::Pow(_, x) if x.as_rational().is_some_and(|r| r.is_negative()) => render_product(e),
        _ => render_atomish(e),
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Anything that is not a sum or product.
fn render_atomish(e: &Expr) -> String {
    match e.node() {
        Node::Rational(r) => render_rational(r),
        Node::Const(NamedConst::Pi) => "pi".into(),
        Node::Const(NamedConst::I) => "I".into(),
        Node::Symbol(s) => s.name().into(),
        Node::Func(f, a) => format!("{}({})", f.name(), render(a)),
        Node::Integral(int) => {
            if int.upper.as_symbol() == Some(&int.var) {
                format!("int({}, {})", render(&int.integrand), int.var)
            } else {
                format!("int({}, {}, {})", render(&int.integrand), int.var, render(&int.upper))
            }
        }
        Node::Pow(b, x) => format!("{}^{}", render_base(b), render_exponent(x)),
        Node::Sum(_) | Node::Product(_) => format!("({})", render(e)),
    }
}

fn is_bare(e: &Expr) -> bool {
    match e.node() {
        Node::Rational(r) => r.is_integer() && !r.is_negative(),
        Node::Const(_) | Node::Symbol(_) | Node::Func(..) | Node::Integral(_) => true,
        _ => false,
    }
}

fn render_base(b: &Expr) -> String {
    if is_bare(b) {
        render_atomish(b)
    } else {
        format!("({})", render(b))
    }
}

fn render_exponent(x: &Expr) -> String {
    if is_bare(x) {
        render_atomish(x)
    } else {
        format!("({})", render(x))
    }
}

/// A factor inside a product or denominator.
fn render_factor(e: &Expr) -> String {
    match e.node() {
        Node::Sum(_) | Node::Product(_) => format!("({})", render(e)),
        Node::Rational(r) if !is_bare(e) => format!("({})", render_rational(r)),
        Node::Pow(_, x) if x.as_rational().is_some_and(|r| r.is_negative()) => format!("({})", render(e)),
        _ => render_atomish(e),
    }
}

fn render_product(e: &Expr) -> String {
    let (c, mono) = split_coeff(e);
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    for f in mono.factors() {
        match f.node() {
            Node::Pow(b, x) if x.as_rational().is_some_and(|r| r.is_negative()) => {
                let flipped = b.pow(&-x);
                den.push(render_factor(&flipped));
            }
            _ => num.push(render_factor(&f)),
        }
    }
    let sign = if c.is_negative() { "-" } else { "" };
    let c = c.abs();
    let p = BigRational::from_integer(c.numer().clone());
    let q = BigRational::from_integer(c.denom().clone());
    if den.is_empty() {
        let mut parts = Vec::new();
        if !c.is_one() {
            parts.push(if c.is_integer() {
                render_rational(&c)
            } else {
                format!("({})", render_rational(&c))
            });
        }
        parts.extend(num);
        return format!("{sign}{}", parts.join("*"));
    }
    if !p.is_one() || num.is_empty() {
        num.insert(0, render_rational(&p));
    }
    if !q.is_one() {
        den.insert(0, render_rational(&q));
    }
    let den_s = if den.len() == 1 {
        den.pop().expect("one factor")
    } else {
        format!("({})", den.join("*"))
    };
    format!("{sign}{}/{den_s}", num.join("*"))
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    fn rt(src: &str) -> String {
        parse(src).unwrap().to_string()
    }

    #[test]
    fn golden_forms() {
        assert_eq!(rt("A*xi + B"), "A*xi + B");
        assert_eq!(rt("B - A*xi"), "-A*xi + B");
        assert_eq!(rt("1 + x + x^2"), "x^2 + x + 1");
        assert_eq!(rt("x/(3*y)"), "x/(3*y)");
        assert_eq!(rt("x/3"), "(1/3)*x");
        assert_eq!(rt("1/(C1 - xi)"), "1/(-xi + C1)");
        assert_eq!(rt("int(exp(s), s, xi)"), "int(exp(s), s, xi)");
        assert_eq!(rt("int(exp(xi), xi)"), "int(exp(xi), xi)");
        assert_eq!(rt("x^(1/2)"), "x^(1/2)");
        assert_eq!(rt("-I"), "-I");
    }
}
