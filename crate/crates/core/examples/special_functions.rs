//! Complex erf, the exponential integral and quadrature over an
//! unevaluated integral.

use auxwave::expr::{parse, Expr, Symbol};
use auxwave::numeric::special::{e1, erf};
use auxwave::numeric::{bind, eval, Bindings, CNum};

fn main() {
    for w in [CNum::new(0.5, 0.0), CNum::new(1.0, 1.0), CNum::new(-2.0, 0.5)] {
        println!("erf({w}) = {}", erf(w));
    }
    for w in [CNum::new(1.0, 0.0), CNum::new(-1.0, 0.0), CNum::new(0.5, 2.0)] {
        println!("E1({w}) = {}", e1(w));
    }

    // the Case 2 denominator integral at xi = 1
    let s = Symbol::new("s");
    let f = parse("-B*exp(A*sin(s))*sin(s)").unwrap();
    let big = Expr::integral(f, &s, Expr::xi());
    println!("{big} = {}", eval(&big, &bind([("A", 1.0), ("B", 1.0), ("xi", 1.0)])).unwrap());
    let mut at = Bindings::new();
    at.insert(Symbol::xi(), CNum::new(1.0, 1.0));
    println!("erf(1 + i) through the evaluator: {}", eval(&parse("erf(xi)").unwrap(), &at).unwrap());
}
