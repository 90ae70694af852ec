//! Numerical delta calculus on time scales, plus a verification harness
//! that machine-checks the Montgomery identity and the Gruss, Ostrowski and
//! Ostrowski-Gruss bounds — including their continuous, discrete and quantum
//! specializations — on arbitrary finitely-represented scales.
//!
//! A time scale here is a finite union of disjoint closed segments and
//! isolated points. That class admits exact jump operators and graininess,
//! making the delta derivative exact at scattered points and reducing the
//! delta integral to gap sums plus ordinary quadrature over dense parts.
//!
//! ```
//! use tscalc::{delta_integral, QuadratureConfig, TimeScale};
//!
//! // [0,1] ∪ {2}: one dense segment and one isolated point.
//! let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
//! let cfg = QuadratureConfig::default();
//! let v = delta_integral(&ts, &|t: f64| t * t, 0.0, 2.0, &cfg).unwrap();
//! // ∫₀¹ t² dt + mu(1)·f(1) = 1/3 + 1
//! assert!((v - 4.0 / 3.0).abs() < 1e-9);
//! ```
//!
//! # Layout
//!
//! - [`scale`] — [`TimeScale`], jump operators, graininess, classification.
//! - [`calculus`] — delta derivative/integral, `f∘sigma`, monomials `h_k`.
//! - [`inequality`] — [`inequality::BoundReport`] producers for every check.
//! - [`expr`] — the expression language for test functions.
//! - [`harness`] — scenario runner, seeded fuzzing, JSON/CSV reports.
//!
//! # Examples
//!
//! Each major capability has a runnable example, e.g.:
//!
//! ```bash
//! cargo run -p tscalc --example jump_operators
//! cargo run -p tscalc --example delta_integral
//! cargo run -p tscalc --example ostrowski_gruss
//! cargo run -p tscalc --example quantum_misprint
//! cargo run -p tscalc --example fuzz_campaign
//! ```
//!
//! The `tscalc` binary exposes the same harness as a CLI
//! (`check`, `fuzz`, `replay`).

pub mod calculus;
pub mod expr;
pub mod harness;
pub mod inequality;
mod quad;
pub mod scale;

pub use calculus::{
    delta_derivative, delta_integral, delta_integral_sigma, delta_integral_with, delta_sup_inf,
    f_sigma, h2_closed_form, monomial, quantum_h_closed_form, CalcError, DeltaFn,
    QuadratureConfig, RealFunction, Sample, ScaleKind,
};
pub use expr::{classical_derivative, eval_expr, parse, EvalError, Expr, ParseError};
pub use harness::{
    emit_report, fuzz, run_scenario, FuzzConfig, FuzzSummary, HarnessError, ReportFormat,
    ScenarioRun, ScenarioSpec,
};
pub use inequality::{
    corollary_bounded, corollary_continuous, corollary_discrete, corollary_endpoint,
    corollary_midpoint, corollary_quantum, derivative_mean, gruss_check, kernel_delta_integral,
    montgomery_kernel, montgomery_residual, ostrowski_check, ostrowski_gruss_check,
    sigma_value_range, BoundReport, BoundsMeta, BoundsSource, IneqError, ReportInputs,
};
pub use scale::{PointClass, ScaleError, Segment, Side, TimeScale};
