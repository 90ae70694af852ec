//! Scenario files: describe a batch of checks as JSON, run it, and emit the
//! reports in JSON or CSV. The CLI (`tscalc check --spec file.json`) wraps
//! exactly this path.
//!
//! ```bash
//! cargo run -p tscalc --example scenario_check
//! ```

use tscalc::harness::{emit_report, run_scenario, ReportFormat, ScenarioSpec};

fn main() {
    let text = r#"{
        "timescale": {"qlattice": {"q": 2, "m": 0, "n": 2}},
        "functions": ["t^2", "t^3 - 2*t"],
        "points": "all-scale-points",
        "checks": ["montgomery", "ostrowski", "ostrowski_gruss", "corollaries"],
        "tolerances": {"abs_tol": 1e-11}
    }"#;

    let spec: ScenarioSpec = serde_json::from_str(text).unwrap();
    let run = run_scenario(&spec).unwrap();

    println!(
        "{} reports, {} failures, all hold = {}\n",
        run.reports.len(),
        run.failures.len(),
        run.all_hold()
    );

    let csv = emit_report(&run.reports, ReportFormat::Csv);
    println!("--- CSV ---\n{}", String::from_utf8(csv).unwrap());

    let json = emit_report(&run.reports[..2.min(run.reports.len())], ReportFormat::Json);
    println!("--- JSON (first two reports) ---\n{}", String::from_utf8(json).unwrap());
}
