use std::collections::HashMap;

use super::{add, func, mul, pow, Expr, Node, Symbol};

/// Replaces every free occurrence of `s` by `replacement` and normalizes.
pub fn substitute(e: &Expr, s: &Symbol, replacement: &Expr) -> Expr {
    let mut map = HashMap::new();
    map.insert(s.clone(), replacement.clone());
    substitute_many(e, &map)
}

/// Simultaneous substitution.
pub fn substitute_many(e: &Expr, map: &HashMap<Symbol, Expr>) -> Expr {
    if map.is_empty() || !map.keys().any(|s| e.contains_symbol(s)) {
        return e.clone();
    }
    match e.node() {
        Node::Rational(_) | Node::Const(_) => e.clone(),
        Node::Symbol(t) => map.get(t).cloned().unwrap_or_else(|| e.clone()),
        Node::Sum(ts) => add(ts.iter().map(|t| substitute_many(t, map)).collect()),
        Node::Product(fs) => mul(fs.iter().map(|f| substitute_many(f, map)).collect()),
        Node::Pow(b, x) => pow(substitute_many(b, map), substitute_many(x, map)),
        Node::Func(f, a) => func(*f, substitute_many(a, map)),
        Node::Integral(int) => {
            let upper = substitute_many(&int.upper, map);
            let mut inner = map.clone();
            inner.remove(&int.var);
            let captures = inner.values().any(|r| r.contains_symbol(&int.var));
            let (var, integrand) = if captures {
                let fresh = fresh_symbol(&int.var, e, &inner);
                let renamed = substitute(&int.integrand, &int.var, &Expr::sym(&fresh));
                (fresh, renamed)
            } else {
                (int.var.clone(), int.integrand.clone())
            };
            Expr::integral(substitute_many(&integrand, &inner), &var, upper)
        }
    }
}

fn fresh_symbol(base: &Symbol, e: &Expr, map: &HashMap<Symbol, Expr>) -> Symbol {
    let used = |cand: &Symbol| {
        e.contains_symbol(cand)
            || map.contains_key(cand)
            || map.values().any(|r| r.contains_symbol(cand))
    };
    (1..)
        .map(|k| Symbol::new(&format!("{}_{k}", base.name())))
        .find(|c| !used(c))
        .expect("unbounded search")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn basic() {
        let e = parse("z^2").unwrap();
        assert_eq!(substitute(&e, &"z".into(), &Expr::symbol("g")), parse("g^2").unwrap());
        let e = parse("A*xi+B").unwrap();
        assert_eq!(substitute(&e, &"A".into(), &Expr::zero()), Expr::symbol("B"));
        let e = Expr::symbol("x");
        assert_eq!(substitute(&e, &"y".into(), &Expr::symbol("w")), e);
    }

    #[test]
    fn bound_variable_is_not_replaced() {
        let e = parse("int(s*a, s, xi)").unwrap();
        let got = substitute(&e, &"s".into(), &Expr::int(5));
        assert_eq!(got, e);
    }

    #[test]
    fn capture_is_avoided() {
        // Replacing a by s must not bind the new s to the integration variable.
        let e = parse("int(s*a, s, xi)").unwrap();
        let got = substitute(&e, &"a".into(), &Expr::symbol("s"));
        assert!(got.free_symbols().contains(&Symbol::new("s")));
    }
}
