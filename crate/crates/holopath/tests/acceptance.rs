//! Runs every acceptance criterion with the shipped defaults and prints
//! one pass/fail line per criterion.
//!
//! Checks listed in `KNOWN_FAILURES` are reported as failing but do not
//! fail the test; the project README explains each one.

use holopath::verify::Verifier;
use holopath::{RunConfig, ThreadPool};

const KNOWN_FAILURES: [(&str, &str); 4] = [
    ("path-robustness", "Rx(pi/2) fraction of cells optimized <= single loop"),
    ("two-qubit-cp", "F2"),
    ("two-qubit-cp", "argmax beta3 in [1.8, 2.2]"),
    ("two-qubit-cp", "argmax Delta3/2pi in [650, 750] MHz"),
];

fn main() {
    let cfg = RunConfig::default();
    let pool = ThreadPool::available();
    let report = Verifier::new(cfg, &pool).run(None).expect("suite runs to completion");
    assert_eq!(report.criteria.len(), 10);
    let mut unexpected = Vec::new();
    for c in &report.criteria {
        println!("{}", c.line());
        for check in c.checks.iter().filter(|k| !k.passed) {
            if !KNOWN_FAILURES.contains(&(c.id.as_str(), check.name.as_str())) {
                unexpected.push(format!("{} / {}: {} (want {})", c.id, check.name, check.measured, check.expected));
            }
        }
    }
    let failing: Vec<&str> = report.criteria.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    println!("criteria failing: {}", if failing.is_empty() { "none".to_string() } else { failing.join(", ") });
    if !unexpected.is_empty() {
        eprintln!("unexpected failures:\n{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
