//! Scenario runner: a JSON-describable batch of inequality checks over one
//! time scale, a list of test functions, and a list of evaluation points.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{delta_sup_inf, DeltaFn, QuadratureConfig};
use crate::expr::{classical_derivative, parse, Expr};
use crate::inequality::{
    corollary_bounded, corollary_continuous, corollary_discrete, corollary_midpoint,
    corollary_quantum, gruss_check, montgomery_residual, ostrowski_check,
    ostrowski_gruss_check, sigma_value_range, BoundReport, BoundsMeta, ReportInputs,
};
use crate::scale::TimeScale;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("scenario error: {0}")]
    Spec(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn spec_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Spec(msg.into())
}

/// Declarative time-scale construction, externally tagged:
/// `{"segments": [[0,1],[2,2]]}`, `{"integers": {"a":0,"b":5}}`,
/// `{"qlattice": {"q":2,"m":0,"n":2}}` or `{"interval": {"a":0,"b":1}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum TimeScaleSpec {
    Segments(Vec<[f64; 2]>),
    Integers { a: i64, b: i64 },
    Qlattice { q: f64, m: i32, n: i32 },
    Interval { a: f64, b: f64 },
}

impl TimeScaleSpec {
    pub fn build(&self) -> Result<TimeScale, HarnessError> {
        let ts = match self {
            TimeScaleSpec::Segments(segs) => {
                TimeScale::from_segments(segs.iter().map(|s| (s[0], s[1])))
            }
            TimeScaleSpec::Integers { a, b } => TimeScale::integers(*a, *b),
            TimeScaleSpec::Qlattice { q, m, n } => TimeScale::q_lattice(*q, *m, *n),
            TimeScaleSpec::Interval { a, b } => TimeScale::interval(*a, *b),
        };
        ts.map_err(|e| spec_err(format!("bad timescale: {e}")))
    }
}

/// Evaluation points: an explicit list or the token `"all-scale-points"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PointsSpec {
    Token(String),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Montgomery,
    Gruss,
    Ostrowski,
    OstrowskiGruss,
    Corollaries,
}

/// Optional overrides of the default quadrature tolerances.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense_samples: Option<usize>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: &QuadratureConfig) -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            max_depth: self.max_depth.unwrap_or(base.max_depth),
            fd_step: self.fd_step.unwrap_or(base.fd_step),
            dense_samples: self.dense_samples.unwrap_or(base.dense_samples),
        }
    }
}

/// One runnable scenario: a scale, test functions as expression strings,
/// evaluation points, and the set of checks to run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScenarioSpec {
    pub timescale: TimeScaleSpec,
    pub functions: Vec<String>,
    pub points: PointsSpec,
    pub checks: Vec<CheckKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

/// A check that errored; the batch continues past it.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckFailure {
    pub function: String,
    pub point: Option<f64>,
    pub check: String,
    pub error: String,
}

/// Outcome of a scenario: one report per successful (function, point, check)
/// combination, in deterministic order, plus isolated failures.
#[derive(Debug, Clone, Default)]
pub struct ScenarioRun {
    pub reports: Vec<BoundReport>,
    pub failures: Vec<CheckFailure>,
}

impl ScenarioRun {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty() && self.reports.iter().all(|r| r.holds)
    }
}

/// Representative points of a scale: segment endpoints (hence every isolated
/// point) plus the midpoint of each dense segment.
pub fn scale_points(ts: &TimeScale) -> Vec<f64> {
    let mut pts = Vec::new();
    for seg in ts.segments() {
        pts.push(seg.lo);
        if !seg.is_point() {
            pts.push(0.5 * (seg.lo + seg.hi));
            pts.push(seg.hi);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// The per-point identity tolerance used to score a Montgomery residual as a
/// pass/fail report: `1e-7 * (1 + |f(t)|)`.
pub fn montgomery_tolerance(f_at_t: f64) -> f64 {
    1e-7 * (1.0 + f_at_t.abs())
}

fn montgomery_report(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, crate::inequality::IneqError> {
    let residual = montgomery_residual(ts, f, t, cfg)?;
    let lhs = residual.abs();
    let rhs = montgomery_tolerance(f.value(t));
    let mut inputs = ReportInputs {
        scale: ts.summary(),
        function: f.label().to_string(),
        bounds: BoundsMeta::None,
        extra: Default::default(),
    };
    inputs.extra.insert("residual".to_string(), residual);
    let slack = rhs - lhs;
    Ok(BoundReport {
        name: "montgomery".to_string(),
        t: Some(t),
        lhs,
        rhs,
        slack,
        holds: slack >= 0.0,
        tol_check: 0.0,
        inputs,
    })
}

struct ScenarioCtx<'a> {
    ts: &'a TimeScale,
    spec_scale: &'a TimeScaleSpec,
    cfg: &'a QuadratureConfig,
    out: ScenarioRun,
}

impl<'a> ScenarioCtx<'a> {
    fn record(
        &mut self,
        function: &str,
        point: Option<f64>,
        check: &str,
        result: Result<BoundReport, crate::inequality::IneqError>,
    ) {
        match result {
            Ok(report) => self.out.reports.push(report),
            Err(e) => self.out.failures.push(CheckFailure {
                function: function.to_string(),
                point,
                check: check.to_string(),
                error: e.to_string(),
            }),
        }
    }

    fn run_check(&mut self, kind: CheckKind, f: &DeltaFn, text: &str, t: f64, first_point: bool) {
        let (ts, cfg) = (self.ts, self.cfg);
        match kind {
            CheckKind::Montgomery => {
                self.record(text, Some(t), "montgomery", montgomery_report(ts, f, t, cfg));
            }
            CheckKind::Gruss => {
                // Pair the function with itself; value bounds come from the
                // verification grid, so validation is consistent by
                // construction.
                let result = sigma_value_range(ts, f, cfg).and_then(|(lo, hi)| {
                    gruss_check(ts, f, f, (lo, hi, lo, hi), cfg)
                });
                self.record(text, None, "gruss", result);
            }
            CheckKind::Ostrowski => {
                self.record(text, Some(t), "ostrowski", ostrowski_check(ts, f, t, cfg));
            }
            CheckKind::OstrowskiGruss => {
                self.record(
                    text,
                    Some(t),
                    "ostrowski_gruss",
                    ostrowski_gruss_check(ts, f, t, None, cfg),
                );
            }
            CheckKind::Corollaries => self.run_corollaries(f, text, t, first_point),
        }
    }

    fn run_corollaries(&mut self, f: &DeltaFn, text: &str, t: f64, first_point: bool) {
        let (ts, cfg) = (self.ts, self.cfg);
        match *self.spec_scale {
            TimeScaleSpec::Interval { a, b } => {
                let result = delta_sup_inf(ts, f, cfg)
                    .map_err(crate::inequality::IneqError::from)
                    .and_then(|(lo, hi)| corollary_continuous(f, a, b, t, lo, hi, cfg));
                self.record(text, Some(t), "corollary_continuous", result);
            }
            TimeScaleSpec::Integers { a, b } => {
                let i = (t - a as f64).round();
                let n = b - a;
                if (t - a as f64 - i).abs() < 1e-9 && i >= 1.0 && i <= n as f64 {
                    let x: Vec<f64> = (a..=b).map(|j| f.value(j as f64)).collect();
                    self.record(
                        text,
                        Some(t),
                        "corollary_discrete",
                        corollary_discrete(&x, i as usize),
                    );
                }
            }
            TimeScaleSpec::Qlattice { q, m, n } => {
                self.record(
                    text,
                    Some(t),
                    "corollary_quantum",
                    corollary_quantum(f, q, m, n, t, cfg),
                );
            }
            TimeScaleSpec::Segments(_) => {}
        }

        let bounded = delta_sup_inf(ts, f, cfg)
            .map_err(crate::inequality::IneqError::from)
            .and_then(|(lo, hi)| corollary_bounded(ts, f, t, lo.abs().max(hi.abs()), cfg));
        self.record(text, Some(t), "corollary_bounded", bounded);

        // Point-independent specializations run once per function.
        if first_point {
            let midpoint = 0.5 * (ts.min() + ts.max());
            if ts.contains(midpoint) {
                self.record(
                    text,
                    Some(midpoint),
                    "corollary_midpoint",
                    corollary_midpoint(ts, f, cfg),
                );
            }
            self.record(
                text,
                Some(ts.max()),
                "corollary_endpoint",
                crate::inequality::corollary_endpoint(ts, f, cfg),
            );
        }
    }
}

/// Runs every `(function, point, check)` combination of a scenario in
/// deterministic order. Schema problems (empty function/check lists, bad
/// expressions, points outside the scale) abort with an error; computation
/// errors are isolated per report.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioRun, HarnessError> {
    let ts = spec.timescale.build()?;
    if spec.functions.is_empty() {
        return Err(spec_err("scenario needs at least one function"));
    }
    if spec.checks.is_empty() {
        return Err(spec_err("scenario needs at least one check"));
    }
    let cfg = spec
        .tolerances
        .clone()
        .unwrap_or_default()
        .apply(&QuadratureConfig::default());
    cfg.validate()
        .map_err(|e| spec_err(format!("bad tolerances: {e}")))?;

    let points: Vec<f64> = match &spec.points {
        PointsSpec::Token(token) if token == "all-scale-points" => scale_points(&ts),
        PointsSpec::Token(other) => {
            return Err(spec_err(format!(
                "unknown points token '{other}' (expected \"all-scale-points\")"
            )))
        }
        PointsSpec::List(list) => {
            if list.is_empty() {
                return Err(spec_err("scenario needs at least one point"));
            }
            let mut canonical = Vec::with_capacity(list.len());
            for &p in list {
                canonical.push(
                    ts.canonical(p)
                        .map_err(|e| spec_err(format!("bad point: {e}")))?,
                );
            }
            canonical
        }
    };

    let mut parsed: Vec<(String, Expr, Expr)> = Vec::with_capacity(spec.functions.len());
    for text in &spec.functions {
        let expr = parse(text)
            .map_err(|e| spec_err(format!("bad function '{text}': {e}")))?;
        let derivative = classical_derivative(&expr);
        parsed.push((text.clone(), expr, derivative));
    }

    let mut ctx = ScenarioCtx {
        ts: &ts,
        spec_scale: &spec.timescale,
        cfg: &cfg,
        out: ScenarioRun::default(),
    };
    for (text, expr, derivative) in &parsed {
        let f = DeltaFn::with_slope(expr, derivative).named(text);
        for (pi, &t) in points.iter().enumerate() {
            for &kind in &spec.checks {
                ctx.run_check(kind, &f, text, t, pi == 0);
            }
        }
    }
    Ok(ctx.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_json(text: &str) -> ScenarioSpec {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn interval_square_ostrowski_gruss() {
        let spec = spec_json(
            r#"{
                "timescale": {"interval": {"a": 0, "b": 1}},
                "functions": ["t^2"],
                "points": [0],
                "checks": ["ostrowski_gruss"]
            }"#,
        );
        let run = run_scenario(&spec).unwrap();
        assert!(run.failures.is_empty());
        assert_eq!(run.reports.len(), 1);
        let r = &run.reports[0];
        assert!((r.lhs - 1.0 / 6.0).abs() <= 1e-8, "lhs {}", r.lhs);
        assert!((r.rhs - 0.5).abs() <= 1e-8, "rhs {}", r.rhs);
        assert!(r.holds);
    }

    #[test]
    fn integers_montgomery_all_points() {
        let spec = spec_json(
            r#"{
                "timescale": {"integers": {"a": 0, "b": 5}},
                "functions": ["t"],
                "points": "all-scale-points",
                "checks": ["montgomery"]
            }"#,
        );
        let run = run_scenario(&spec).unwrap();
        assert!(run.failures.is_empty());
        assert_eq!(run.reports.len(), 6);
        for r in &run.reports {
            let residual = r.inputs.extra["residual"];
            assert!(residual.abs() <= 1e-9, "residual {residual}");
            assert!(r.holds);
        }
    }

    #[test]
    fn qlattice_square_matches_hand_oracle() {
        let spec = spec_json(
            r#"{
                "timescale": {"qlattice": {"q": 2, "m": 0, "n": 2}},
                "functions": ["t^2"],
                "points": [2],
                "checks": ["ostrowski_gruss"]
            }"#,
        );
        let run = run_scenario(&spec).unwrap();
        let r = &run.reports[0];
        assert!((r.lhs - 4.0 / 3.0).abs() <= 1e-12, "lhs {}", r.lhs);
        assert!((r.rhs - 2.25).abs() <= 1e-12, "rhs {}", r.rhs);
        assert!(r.holds);
    }

    #[test]
    fn corollaries_expand_per_scale_kind() {
        let spec = spec_json(
            r#"{
                "timescale": {"integers": {"a": 0, "b": 4}},
                "functions": ["t^2"],
                "points": [2],
                "checks": ["corollaries"]
            }"#,
        );
        let run = run_scenario(&spec).unwrap();
        let names: Vec<&str> = run.reports.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "corollary_discrete",
                "corollary_bounded",
                "corollary_midpoint",
                "corollary_endpoint"
            ]
        );
        assert!(run.reports.iter().all(|r| r.holds));
    }

    #[test]
    fn spec_errors() {
        let bad_point = spec_json(
            r#"{
                "timescale": {"integers": {"a": 0, "b": 4}},
                "functions": ["t"],
                "points": [2.5],
                "checks": ["montgomery"]
            }"#,
        );
        assert!(matches!(run_scenario(&bad_point), Err(HarnessError::Spec(_))));

        let bad_expr = spec_json(
            r#"{
                "timescale": {"integers": {"a": 0, "b": 4}},
                "functions": ["t +"],
                "points": [2],
                "checks": ["montgomery"]
            }"#,
        );
        assert!(matches!(run_scenario(&bad_expr), Err(HarnessError::Spec(_))));

        let no_checks = spec_json(
            r#"{
                "timescale": {"integers": {"a": 0, "b": 4}},
                "functions": ["t"],
                "points": [2],
                "checks": []
            }"#,
        );
        assert!(matches!(run_scenario(&no_checks), Err(HarnessError::Spec(_))));
    }

    #[test]
    fn domain_errors_isolate_per_report() {
        // log(t) is undefined at t = 0, defined at t = 1; the batch continues.
        let spec = spec_json(
            r#"{
                "timescale": {"segments": [[0, 0], [1, 1], [2, 2]]},
                "functions": ["log(t)"],
                "points": [0, 1],
                "checks": ["montgomery"]
            }"#,
        );
        let run = run_scenario(&spec).unwrap();
        assert_eq!(run.reports.len() + run.failures.len(), 2);
        assert!(!run.failures.is_empty());
    }

    #[test]
    fn scenario_spec_round_trips_through_json() {
        let spec = ScenarioSpec {
            timescale: TimeScaleSpec::Segments(vec![[0.0, 1.0], [2.0, 2.0]]),
            functions: vec!["t^2 - 1".to_string()],
            points: PointsSpec::List(vec![0.5]),
            checks: vec![CheckKind::Montgomery, CheckKind::OstrowskiGruss],
            tolerances: None,
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: ScenarioSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(spec, back);
    }
}
