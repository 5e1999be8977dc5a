//! Walk the twenty auxiliary cases and check each one on a pole-free window.

use auxwave::bernoulli::{catalog, find_pole_free_interval, verify_aux, VerifyOptions};
use auxwave::numeric::bind;

fn main() {
    let params = bind([("A", 1.0), ("B", 1.0), ("C", 1.0), ("C1", 1.0)]);
    for case in catalog() {
        let window = find_pole_free_interval(&case.solution, &params, 2.0).unwrap();
        let r = verify_aux(&case.eq, &case.solution, &params, window, 41, 1e-8, &VerifyOptions::default()).unwrap();
        let flags = match (case.complex, case.errata.is_empty()) {
            (true, false) => " complex, corrected",
            (true, true) => " complex",
            (false, false) => " corrected",
            _ => "",
        };
        println!(
            "{:>2} [{:>5.2}, {:>5.2}] max {:.2e} {}{flags}",
            case.index,
            window.0,
            window.1,
            r.max_abs,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
}
