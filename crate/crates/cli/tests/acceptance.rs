//! Acceptance harness: runs each top-level criterion at full scale and prints
//! one pass/fail line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use klpoly_cli::suites::{
    c1_isomorphism, c2_stirling, c3_operators, c4_hermite_type, c5_reversed_appell,
    c6_connection, c7_classification, c8_perturbed, c9_numeric, Check,
};

fn report(num: usize, title: &str, checks: Vec<Check>, start: Instant) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    let secs = start.elapsed().as_secs_f64();
    println!(
        "criterion {num} [{}] {title} ({} checks, {secs:.2}s)",
        if pass { "PASS" } else { "FAIL" },
        checks.len(),
    );
    for c in checks.iter().filter(|c| !c.pass) {
        println!("    failed: {} — {}", c.name, c.detail);
    }
    pass
}

fn main() -> ExitCode {
    let mut all = true;
    let t = Instant::now();
    all &= report(1, "isomorphism & moments (deg <= 40, n <= 20)", c1_isomorphism(40), t);
    let t = Instant::now();
    all &= report(2, "Stirling-type inversion (n <= 40)", c2_stirling(40), t);
    let t = Instant::now();
    all &= report(3, "operator lemmas (m <= 4, chain m <= 3, delta pair)", c3_operators(), t);
    let t = Instant::now();
    all &= report(4, "Appell-image recurrence (d <= 3, n <= 14)", c4_hermite_type(14), t);
    let t = Instant::now();
    all &= report(5, "reversed-Appell images & contiguity (n <= 10)", c5_reversed_appell(10), t);
    let t = Instant::now();
    all &= report(6, "connection formulas vs extraction (n <= 15)", c6_connection(15), t);
    let t = Instant::now();
    all &= report(7, "classification & theorem relation", c7_classification(10), t);
    let t = Instant::now();
    all &= report(8, "perturbed-Laguerre closed form & singular lambda", c8_perturbed(12), t);
    let t = Instant::now();
    all &= report(9, "numeric side channel (1e-8 / 1e-6)", c9_numeric(1e-8, 1e-6), t);
    if all {
        println!("acceptance: all criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAIL");
        ExitCode::FAILURE
    }
}
