use super::{add, mul, pow, substitute, Expr, Func, NamedConst, Node, Symbol};

/// Symbolic derivative of `e` with respect to `s`, normalized.
pub fn differentiate(e: &Expr, s: &Symbol) -> Expr {
    if e.free_of(s) {
        return Expr::zero();
    }
    match e.node() {
        Node::Rational(_) | Node::Const(NamedConst::Pi | NamedConst::I) => Expr::zero(),
        Node::Symbol(t) => {
            if t == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Node::Sum(ts) => add(ts.iter().map(|t| differentiate(t, s)).collect()),
        Node::Product(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for (i, f) in fs.iter().enumerate() {
                let df = differentiate(f, s);
                if df.is_zero() {
                    continue;
                }
                let mut parts: Vec<Expr> = fs
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                parts.push(df);
                terms.push(mul(parts));
            }
            add(terms)
        }
        Node::Pow(b, x) => {
            if x.free_of(s) {
                // d b^x = x b^(x-1) b'
                let db = differentiate(b, s);
                mul(vec![x.clone(), pow(b.clone(), x - &Expr::one()), db])
            } else {
                // d b^x = b^x (x' ln b + x b'/b)
                let dx = differentiate(x, s);
                let db = differentiate(b, s);
                let inner = add(vec![
                    mul(vec![dx, b.ln()]),
                    mul(vec![x.clone(), db, b.recip()]),
                ]);
                mul(vec![e.clone(), inner])
            }
        }
        Node::Func(f, a) => {
            let da = differentiate(a, s);
            let outer = match f {
                Func::Exp => e.clone(),
                Func::Ln => a.recip(),
                Func::Sin => a.cos(),
                Func::Cos => -a.sin(),
                Func::Erf => mul(vec![
                    Expr::int(2),
                    Expr::pi().pow(&Expr::frac(-1, 2)),
                    (-a.powi(2)).exp(),
                ]),
                Func::Ei1 => mul(vec![Expr::int(-1), (-a).exp(), a.recip()]),
            };
            mul(vec![outer, da])
        }
        Node::Integral(int) => {
            // Leibniz: f(upper) upper' + ∫ ∂f/∂s (the bound variable shadows s).
            let du = differentiate(&int.upper, s);
            let boundary = if du.is_zero() {
                Expr::zero()
            } else {
                mul(vec![substitute(&int.integrand, &int.var, &int.upper), du])
            };
            let inner = if &int.var == s {
                Expr::zero()
            } else {
                Expr::integral(differentiate(&int.integrand, s), &int.var, int.upper.clone())
            };
            add(vec![boundary, inner])
        }
    }
}
