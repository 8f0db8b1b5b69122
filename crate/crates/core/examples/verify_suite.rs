//! Runs the built-in check suite, optionally filtered by the names given as
//! arguments, and prints one line per check.

use lobwave::cli::run_checks;
use lobwave::scattering::oracle_tolerance;

fn main() {
    let only: Vec<String> = std::env::args().skip(1).collect();
    let outcomes = run_checks(&only, None, &oracle_tolerance());
    for c in &outcomes {
        let mark = if c.pass { "pass" } else { "FAIL" };
        println!(
            "{mark}  {:28} {:.3e} ≤ {:.0e}",
            c.name, c.measured, c.threshold
        );
    }
    if outcomes.iter().any(|c| !c.pass) {
        std::process::exit(1);
    }
}
