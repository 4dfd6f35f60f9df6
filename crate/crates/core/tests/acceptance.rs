//! Acceptance suite. Prints one line per check and a verdict per criterion;
//! exits non-zero when any check fails.
//!
//! `cargo test -p salemscope --test acceptance -- 1 4 9` runs a subset.
//! `SALEMSCOPE_GRID_M` overrides the grid resolution of criterion 6.

use std::process::ExitCode;

use salemscope::corpus::{self, tolerances};

const TITLES: [&str; 10] = [
    "power-polynomial coefficients of row 6",
    "first witness exponents of the Salem table",
    "witness frequency lists of rows 1 and 2",
    "p4 exact and grid",
    "p6 integral and grid",
    "p8 and p10 grid estimates",
    "power and direct certifiers agree",
    "coefficient growth and Graeffe convergence",
    "exact root counts vs float roots",
    "cyclotomic detection by periodicity",
];

fn main() -> ExitCode {
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let grid_m = std::env::var("SALEMSCOPE_GRID_M")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(tolerances::P8_P10_GRID_M);

    let mut failed = Vec::new();
    for id in 1..=10u8 {
        if !ids.is_empty() && !ids.contains(&id) {
            continue;
        }
        let outcomes = corpus::run(&[id], grid_m);
        for o in &outcomes {
            println!("  {}", o.line());
        }
        let ok = outcomes.iter().all(|o| o.passed);
        println!(
            "criterion {id:>2} {}: {}",
            if ok { "PASS" } else { "FAIL" },
            TITLES[id as usize - 1]
        );
        if !ok {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
