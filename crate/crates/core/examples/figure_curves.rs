//! Sample the Figure 1 and Figure 2(a) solutions and write CSV to stdout.
//!
//!     cargo run --example figure_curves > curves.csv

use std::io::Write;

use auxwave::expr::Symbol;
use auxwave::numeric::{bind, sample_curve, write_csv};
use auxwave::wave::reproduction::{figure1_solution, figure2a_solution};

fn main() {
    let out = std::io::stdout();
    let mut out = out.lock();
    let runs = [
        ("figure1", figure1_solution(), 0.25, (-2.0, 2.0)),
        ("figure2a", figure2a_solution(), 0.0, (-5.0, 5.0)),
    ];
    for (name, sol, a, window) in runs {
        let params = bind([("A", a), ("B", 1.0), ("C1", 1.0), ("c", 1.0), ("mu", 1.0)]);
        let curve = sample_curve(&sol.u, &Symbol::xi(), window, 201, &params).unwrap();
        eprintln!("{name}: {} rows, {} excluded", curve.rows.len(), curve.excluded.len());
        writeln!(out, "# {name}").unwrap();
        write_csv(&curve, &mut out).unwrap();
    }
}
