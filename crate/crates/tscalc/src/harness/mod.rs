//! Scenario runner, randomized fuzzing of the inequality checks, and
//! machine-readable reporting.

mod fuzz;
mod report;
mod scenario;

pub use fuzz::{
    fuzz, fuzz_trial, generate_trial, summary_json, FuzzConfig, FuzzSummary, TrialOutcome,
};
pub use report::{emit_report, ReportFormat};
pub use scenario::{
    montgomery_tolerance, run_scenario, scale_points, CheckFailure, CheckKind, HarnessError,
    PointsSpec, ScenarioRun, ScenarioSpec, TimeScaleSpec, ToleranceOverrides,
};
