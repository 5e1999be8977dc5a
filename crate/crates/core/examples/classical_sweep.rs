//! Constant-coefficient Bernoulli formulas: one explicit check, then the
//! sign-condition table.

use auxwave::bernoulli::{classical_solution, sign_condition_sweep, verify_aux, AuxSolution, Branch, ClassicalBernoulli, VerifyOptions};
use auxwave::numeric::Bindings;

fn main() {
    let cb = ClassicalBernoulli::numeric(1.0, -1.0, 2, 0.0);
    let z = classical_solution(&cb, Branch::I);
    println!("z' = z - z^2, formula I: z = {z}");
    let sol = AuxSolution::new(z, "formula I");
    let r = verify_aux(&cb.equation(), &sol, &Bindings::new(), (-5.0, 5.0), 101, 1e-10, &VerifyOptions::default()).unwrap();
    println!("max residual on [-5, 5]: {:.2e}\n", r.max_abs);

    println!(" a  b  k  branch  stated  satisfies  max");
    for row in sign_condition_sweep((-5.0, 5.0), 101, 1e-10) {
        println!(
            "{:>2} {:>2} {:>2}  {:<6}  {:<6}  {:<9}  {}",
            row.a,
            row.b,
            row.k,
            format!("{:?}", row.branch),
            row.stated_condition,
            row.satisfies,
            row.max_abs.map_or("-".into(), |m| format!("{m:.1e}"))
        );
    }
}
