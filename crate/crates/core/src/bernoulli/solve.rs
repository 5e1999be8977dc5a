use super::{antiderivative, AuxEquation, AuxSolution, C1};
use crate::expr::{Expr, Symbol};

/// `exp(F)` with `F' = P`.
pub fn integrating_factor(eq: &AuxEquation) -> Expr {
    antiderivative(&eq.p, &Symbol::xi()).expr.exp()
}

/// Solution through the linearizing substitution `w = z^{1-n}`:
///
/// `w = e^{(1-n)G} (C1 + (1-n) ∫ Q e^{(n-1)G})`, `G = ∫P`, `z = w^{1/(1-n)}`.
///
/// For `n = 2` this is `z = e^G / (C1 - ∫ Q e^G)`.
pub fn solve_general(eq: &AuxEquation) -> AuxSolution {
    let xi = Symbol::xi();
    let m = 1 - eq.n as i64;
    let g = antiderivative(&eq.p, &xi);
    let inner = antiderivative(&(&eq.q * &(Expr::int(-m) * g.expr.clone()).exp()), &xi);
    let w = (Expr::int(m) * g.expr.clone()).exp() * (Expr::symbol(C1) + Expr::int(m) * inner.expr);
    let z = if m == -1 {
        w.recip()
    } else {
        w.pow(&Expr::frac(1, m))
    };
    let mut notes = Vec::new();
    if !g.closed || !inner.closed {
        notes.push("unevaluated integrals from 0");
    }
    if m != -1 {
        notes.push("principal branch of the root");
    }
    AuxSolution::new(z, notes.join("; "))
}
