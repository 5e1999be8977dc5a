//! Parse an expression, differentiate it and collect it as a polynomial in `z`.

use auxwave::expr::{differentiate, expand, parse, poly_collect, Symbol};
use auxwave::numeric::{bind, eval};

fn main() {
    let e = parse("g0 + g1*z + g2*z^2").unwrap();
    let z = Symbol::new("z");
    println!("U      = {e}");
    println!("dU/dz  = {}", differentiate(&e, &z));

    let chain = parse("(g1 + 2*g2*z)*(A*z + B*z^2)").unwrap();
    let p = poly_collect(&expand(&chain), &z).unwrap();
    for (i, c) in p.coeffs.iter().enumerate() {
        println!("  z^{i}: {c}");
    }

    let f = parse("exp(-xi^2)*sin(3*xi)").unwrap();
    let d = differentiate(&f, &Symbol::xi());
    println!("d/dxi {f} = {d}");
    println!("at xi = 0.4: {}", eval(&d, &bind([("xi", 0.4)])).unwrap());
}
