//! Case 1 has xi-dependent coefficients, so the constant solver hands the
//! system back in the export format instead.

use auxwave::numeric::bind;
use auxwave::wave::reproduction::{case1_system, compare_top};
use auxwave::wave::{solve_system, OdeMode, SolveOptions, SolveOutcome, Strategy};

fn main() {
    let sys = case1_system(OdeMode::Reported);
    let opts = SolveOptions {
        bindings: bind([("A", 1.0), ("B", 1.0), ("mu", 1.0)]),
        ..Default::default()
    };
    match solve_system(&sys, Strategy::Constant, &opts).unwrap() {
        SolveOutcome::Unsolved { reason, export } => {
            println!("# {reason}");
            print!("{}", export.text);
            println!("{}", serde_json::to_string_pretty(&export.sidecar).unwrap());
        }
        other => println!("{other:?}"),
    }

    let top = compare_top(&sys, 1);
    println!("\ntop equation proportional to the printed one: {}", top.proportional);
}
