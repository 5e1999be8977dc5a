use super::{add, mul, pow, Expr, Node, Symbol};

/// Coefficients of an expression viewed as a polynomial in one symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyInZ {
    pub z: Symbol,
    /// `coeffs[i]` multiplies `z^i`. The last entry is never zero, and the
    /// zero polynomial has an empty list.
    pub coeffs: Vec<Expr>,
}

impl PolyInZ {
    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Expr {
        self.coeffs.get(i).cloned().unwrap_or_else(Expr::zero)
    }

    pub fn reconstruct(&self) -> Expr {
        let z = Expr::sym(&self.z);
        Expr::add_all(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &z.powi(i as i64)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expression is not polynomial in {symbol}: {reason}")]
pub struct NotPolynomial {
    pub symbol: String,
    pub reason: String,
}

/// Fully distributes products over sums and expands natural powers of sums.
/// Function arguments and integrands are expanded recursively.
pub fn expand(e: &Expr) -> Expr {
    match e.node() {
        Node::Rational(_) | Node::Const(_) | Node::Symbol(_) => e.clone(),
        Node::Sum(ts) => add(ts.iter().map(expand).collect()),
        Node::Product(fs) => {
            let mut acc: Vec<Expr> = vec![Expr::one()];
            for f in fs {
                let terms = expand(f).terms();
                acc = distribute(&acc, &terms);
            }
            add(acc)
        }
        Node::Pow(b, x) => {
            let base = expand(b);
            let x = expand(x);
            match x.as_integer() {
                Some(n) if n >= 2 && matches!(base.node(), Node::Sum(_)) => {
                    let terms = base.terms();
                    let mut acc = terms.clone();
                    for _ in 1..n {
                        acc = distribute(&acc, &terms);
                    }
                    add(acc)
                }
                _ => {
                    let p = pow(base, x);
                    // pow may distribute over a product whose factors are sums.
                    if matches!(p.node(), Node::Product(_)) && p != *e {
                        expand(&p)
                    } else {
                        p
                    }
                }
            }
        }
        Node::Func(f, a) => Expr::apply(*f, expand(a)),
        Node::Integral(int) => Expr::integral(expand(&int.integrand), &int.var, expand(&int.upper)),
    }
}

fn distribute(left: &[Expr], right: &[Expr]) -> Vec<Expr> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            out.push(mul(vec![a.clone(), b.clone()]));
        }
    }
    // Merge like terms early so intermediate lists stay small.
    add(out).terms()
}

/// Collects `e` as `Σ c_i z^i` after expansion.
pub fn poly_collect(e: &Expr, z: &Symbol) -> Result<PolyInZ, NotPolynomial> {
    let err = |reason: String| NotPolynomial {
        symbol: z.name().to_string(),
        reason,
    };
    let expanded = expand(e);
    let mut buckets: Vec<Vec<Expr>> = Vec::new();
    for term in expanded.terms() {
        let mut degree = 0usize;
        let mut rest = Vec::new();
        for f in term.factors() {
            match f.node() {
                Node::Symbol(s) if s == z => degree += 1,
                Node::Pow(b, x) if b.as_symbol() == Some(z) => match x.as_integer() {
                    Some(n) if n >= 0 => degree += n as usize,
                    _ => return Err(err(format!("power {x} of {z}"))),
                },
                _ if f.contains_symbol(z) => {
                    return Err(err(format!("{z} occurs inside {f}")));
                }
                _ => rest.push(f),
            }
        }
        if buckets.len() <= degree {
            buckets.resize_with(degree + 1, Vec::new);
        }
        buckets[degree].push(mul(rest));
    }
    let mut coeffs: Vec<Expr> = buckets.into_iter().map(add).collect();
    while coeffs.last().is_some_and(Expr::is_zero) {
        coeffs.pop();
    }
    Ok(PolyInZ {
        z: z.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn binomial() {
        let e = parse("(g0+g1*z)^2").unwrap();
        let p = poly_collect(&e, &Symbol::new("z")).unwrap();
        assert_eq!(p.coeffs.len(), 3);
        assert_eq!(p.coeffs[0], parse("g0^2").unwrap());
        assert_eq!(p.coeffs[1], parse("2*g0*g1").unwrap());
        assert_eq!(p.coeffs[2], parse("g1^2").unwrap());
    }

    #[test]
    fn function_of_z_rejected() {
        let e = parse("exp(z)").unwrap();
        assert!(poly_collect(&e, &Symbol::new("z")).is_err());
        let e = parse("1/z").unwrap();
        assert!(poly_collect(&e, &Symbol::new("z")).is_err());
    }

    #[test]
    fn zero_polynomial_is_empty() {
        let p = poly_collect(&parse("z - z").unwrap(), &Symbol::new("z")).unwrap();
        assert_eq!(p.degree(), None);
    }
}
