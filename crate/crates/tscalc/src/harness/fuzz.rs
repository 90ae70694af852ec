//! Randomized verification: every trial draws a random time scale, a random
//! polynomial and an evaluation point, then checks the Montgomery identity
//! and the Ostrowski / Ostrowski-Gruss bounds on it.
//!
//! Trial randomness derives from `(seed, trial index)` via independent
//! ChaCha streams, so any single trial replays in isolation and the whole
//! run is reproducible byte-for-byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::scenario::{
    run_scenario, scale_points, CheckKind, HarnessError, PointsSpec, ScenarioRun, ScenarioSpec,
    TimeScaleSpec,
};

/// Parameters of a fuzzing campaign.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_segments: usize,
    pub max_poly_degree: u32,
    /// Coefficients are drawn uniformly from `[-coeff_range, coeff_range]`.
    pub coeff_range: f64,
    /// Scales live inside `[scale_span.0, scale_span.1]`.
    pub scale_span: (f64, f64),
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 100,
            max_segments: 6,
            max_poly_degree: 5,
            coeff_range: 4.0,
            scale_span: (0.0, 10.0),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials < 1 {
            return Err(HarnessError::Spec("trials must be >= 1".into()));
        }
        if self.max_segments < 1 {
            return Err(HarnessError::Spec("max_segments must be >= 1".into()));
        }
        if !(self.coeff_range > 0.0) {
            return Err(HarnessError::Spec("coeff_range must be > 0".into()));
        }
        if !(self.scale_span.0 < self.scale_span.1) {
            return Err(HarnessError::Spec("scale_span must be increasing".into()));
        }
        Ok(())
    }
}

/// Aggregate outcome of a campaign. `violations` counts reports with
/// `holds = false` (expected zero: these are proved bounds); `worst_case` is
/// a full scenario reproducing the minimal-slack trial.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FuzzSummary {
    pub trials_run: u64,
    pub violations: u64,
    pub min_slack: f64,
    pub worst_trial: u64,
    pub worst_case: Option<ScenarioSpec>,
    pub residual_max: f64,
    pub trial_errors: u64,
}

/// One generated-and-executed trial.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub index: u64,
    pub scenario: ScenarioSpec,
    pub run: ScenarioRun,
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws a random scale as alternating gaps and segments spanning
/// `cfg.scale_span`; roughly 40% of the segments collapse to isolated points.
fn random_scale(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> Vec<[f64; 2]> {
    let k = rng.gen_range(1..=cfg.max_segments);
    let mut lengths = Vec::with_capacity(2 * k + 1);
    for _ in 0..(2 * k + 1) {
        lengths.push(rng.gen_range(0.05f64..1.0));
    }
    let is_point: Vec<bool> = (0..k)
        .map(|_| k > 1 && rng.gen_bool(0.4))
        .collect();
    let total: f64 = lengths.iter().sum();
    let scale = (cfg.scale_span.1 - cfg.scale_span.0) / total;

    let mut segments = Vec::with_capacity(k);
    let mut pos = cfg.scale_span.0;
    for j in 0..k {
        pos += lengths[2 * j] * scale; // leading/inner gap
        let width = lengths[2 * j + 1] * scale;
        if is_point[j] {
            let p = pos + 0.5 * width;
            segments.push([p, p]);
        } else {
            segments.push([pos, pos + width]);
        }
        pos += width;
    }
    segments
}

/// Draws a random polynomial and renders it as an expression string, so the
/// trial exercises the same parse-and-evaluate path a scenario file does.
fn random_polynomial(rng: &mut ChaCha8Rng, cfg: &FuzzConfig) -> String {
    let degree = rng.gen_range(0..=cfg.max_poly_degree);
    let coeffs: Vec<f64> = (0..=degree)
        .map(|_| rng.gen_range(-cfg.coeff_range..=cfg.coeff_range))
        .collect();
    let mut text = format!("{}", coeffs[0]);
    for (j, &c) in coeffs.iter().enumerate().skip(1) {
        if c < 0.0 {
            text.push_str(&format!(" - {}*t^{}", -c, j));
        } else {
            text.push_str(&format!(" + {}*t^{}", c, j));
        }
    }
    text
}

/// Generates the scenario for trial `index` without running it.
pub fn generate_trial(cfg: &FuzzConfig, index: u64) -> Result<ScenarioSpec, HarnessError> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, index);
    let segments = random_scale(&mut rng, cfg);
    let function = random_polynomial(&mut rng, cfg);
    let spec_scale = TimeScaleSpec::Segments(segments);
    let ts = spec_scale.build()?;
    let candidates = scale_points(&ts);
    let t = candidates[rng.gen_range(0..candidates.len())];
    Ok(ScenarioSpec {
        timescale: spec_scale,
        functions: vec![function],
        points: PointsSpec::List(vec![t]),
        checks: vec![
            CheckKind::Montgomery,
            CheckKind::Ostrowski,
            CheckKind::OstrowskiGruss,
        ],
        tolerances: None,
    })
}

/// Generates and runs trial `index`.
pub fn fuzz_trial(cfg: &FuzzConfig, index: u64) -> Result<TrialOutcome, HarnessError> {
    let scenario = generate_trial(cfg, index)?;
    let run = run_scenario(&scenario)?;
    Ok(TrialOutcome {
        index,
        scenario,
        run,
    })
}

/// Runs the whole campaign. Per-trial computation errors are counted, never
/// fatal; aggregation uses only order-independent reductions.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzSummary, HarnessError> {
    cfg.validate()?;
    let mut summary = FuzzSummary {
        trials_run: 0,
        violations: 0,
        min_slack: f64::INFINITY,
        worst_trial: 0,
        worst_case: None,
        residual_max: 0.0,
        trial_errors: 0,
    };
    for index in 0..cfg.trials {
        let outcome = fuzz_trial(cfg, index)?;
        summary.trials_run += 1;
        summary.trial_errors += outcome.run.failures.len() as u64;
        for report in &outcome.run.reports {
            if !report.holds {
                summary.violations += 1;
            }
            match report.name.as_str() {
                "montgomery" => {
                    let residual = report.inputs.extra["residual"].abs();
                    summary.residual_max = summary.residual_max.max(residual);
                }
                _ => {
                    if report.slack < summary.min_slack {
                        summary.min_slack = report.slack;
                        summary.worst_trial = outcome.index;
                        summary.worst_case = Some(outcome.scenario.clone());
                    }
                }
            }
        }
    }
    Ok(summary)
}

/// Serializes a summary as deterministic pretty JSON.
pub fn summary_json(summary: &FuzzSummary) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(summary).expect("summary is serializable");
    bytes.push(b'\n');
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_seed_is_deterministic() {
        let cfg = FuzzConfig {
            seed: 7,
            trials: 10,
            ..FuzzConfig::default()
        };
        let a = fuzz(&cfg).unwrap();
        let b = fuzz(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(summary_json(&a), summary_json(&b));
    }

    #[test]
    fn generated_scales_pass_validation() {
        let cfg = FuzzConfig::default();
        for index in 0..50 {
            let spec = generate_trial(&cfg, index).unwrap();
            let ts = spec.timescale.build().unwrap();
            assert!(ts.min() < ts.max(), "trial {index}: {}", ts.summary());
        }
    }

    #[test]
    fn trials_replay_in_isolation() {
        let cfg = FuzzConfig {
            seed: 99,
            trials: 5,
            ..FuzzConfig::default()
        };
        let full = fuzz(&cfg).unwrap();
        let again = fuzz_trial(&cfg, full.worst_trial).unwrap();
        let worst_min = again
            .run
            .reports
            .iter()
            .filter(|r| r.name != "montgomery")
            .map(|r| r.slack)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(worst_min, full.min_slack);
        assert_eq!(Some(again.scenario), full.worst_case);
    }

    #[test]
    fn worst_case_scenario_reruns_identically() {
        let cfg = FuzzConfig {
            seed: 3,
            trials: 8,
            ..FuzzConfig::default()
        };
        let summary = fuzz(&cfg).unwrap();
        let spec = summary.worst_case.clone().unwrap();
        let run = run_scenario(&spec).unwrap();
        let min = run
            .reports
            .iter()
            .filter(|r| r.name != "montgomery")
            .map(|r| r.slack)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min, summary.min_slack);
    }

    #[test]
    fn constant_functions_give_zero_left_sides() {
        let cfg = FuzzConfig {
            seed: 11,
            trials: 30,
            max_poly_degree: 0,
            ..FuzzConfig::default()
        };
        let summary = fuzz(&cfg).unwrap();
        assert_eq!(summary.violations, 0);
        // constants: lhs = 0 and rhs = 0, so the minimal slack collapses to 0
        assert!(summary.min_slack.abs() <= 1e-9, "{}", summary.min_slack);
    }

    #[test]
    fn small_campaign_holds_everywhere() {
        let cfg = FuzzConfig {
            seed: 42,
            trials: 60,
            ..FuzzConfig::default()
        };
        let summary = fuzz(&cfg).unwrap();
        assert_eq!(summary.violations, 0, "{summary:?}");
        assert_eq!(summary.trial_errors, 0, "{summary:?}");
        assert!(summary.min_slack >= -1e-7, "{summary:?}");
        assert!(summary.residual_max <= 1e-6, "{summary:?}");
    }
}
