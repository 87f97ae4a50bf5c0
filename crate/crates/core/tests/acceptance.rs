//! Acceptance suite: runs every verification check at full scale and
//! prints one pass/fail line per check, including its runtime budget
//! where one applies.
//!
//! Run with `cargo test --release -p licom --test acceptance -- --nocapture`
//! to see the lines as they complete.

use licom::model::ModelParams;
use licom::verify::{run_all, VerifyConfig};

/// Wall-clock budgets (seconds) for the checks that carry one.
fn budget(name: &str) -> Option<f64> {
    match name {
        "boundary_structure" => Some(10.0),
        "infinite_horizon_limit" => Some(60.0),
        "laplace_identity" => Some(1.0),
        "duality_gradient" => Some(60.0),
        "cross_method_oracle" => Some(120.0),
        "monte_carlo_duality" => Some(120.0),
        _ => None,
    }
}

#[test]
fn acceptance_criteria() {
    let params = ModelParams::base(0.04);
    let cfg = VerifyConfig::default();
    let results = run_all(&params, &cfg).expect("valid base parameters");
    assert_eq!(results.len(), 10, "every check must report");

    let mut failures = Vec::new();
    for r in &results {
        let mut pass = r.pass;
        let time_note = match budget(r.name) {
            Some(limit) => {
                pass &= r.seconds <= limit;
                format!("{:.1}s of {limit:.0}s", r.seconds)
            }
            None => format!("{:.1}s", r.seconds),
        };
        println!(
            "[{}] {:<24} measured {:>12.4e} (threshold {:>8.1e})  [{time_note}]  {}",
            if pass { "PASS" } else { "FAIL" },
            r.name,
            r.measured,
            r.threshold,
            r.detail
        );
        if !pass {
            failures.push(format!("{}: measured {:e}, {}", r.name, r.measured, r.detail));
        }
    }
    assert!(failures.is_empty(), "failed checks:\n{}", failures.join("\n"));
}
