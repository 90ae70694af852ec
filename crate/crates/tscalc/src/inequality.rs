//! Evaluates both sides of the Montgomery identity and the Gruss /
//! Ostrowski / Ostrowski-Gruss bounds on a time scale, together with their
//! continuous, discrete and quantum specializations, and reports the slack
//! of every check.
//!
//! Each check produces a [`BoundReport`] carrying the two sides, the signed
//! slack `rhs - lhs`, and provenance metadata (scale summary, function text,
//! which derivative bounds were used and where they came from). Since both
//! sides are computed numerically, `holds` uses a one-sided signed tolerance
//! rather than claiming a certified enclosure.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::calculus::{
    delta_sup_inf, integrate_cells, monomial, verification_grid, CalcError, DeltaFn,
    QuadratureConfig, Sample,
};
use crate::quad::adaptive_simpson;
use crate::scale::TimeScale;

#[derive(Debug, Error, PartialEq)]
pub enum IneqError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error("{what} = {value} lies outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("supplied bound violated at t = {at}: value {value} outside [{lo}, {hi}]")]
    BoundsViolated {
        at: f64,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("sequence needs at least two entries, got {len}")]
    SequenceTooShort { len: usize },
    #[error("midpoint {midpoint} does not belong to the time scale")]
    MidpointNotInScale { midpoint: f64 },
    #[error("scale spans a single point [{a}, {b}]; bound checks need a < b")]
    DegenerateSpan { a: f64, b: f64 },
}

impl From<crate::scale::ScaleError> for IneqError {
    fn from(e: crate::scale::ScaleError) -> Self {
        IneqError::Calc(CalcError::Scale(e))
    }
}

/// Where derivative (or value) bounds used by a check came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsSource {
    Supplied,
    GridEstimate,
}

impl BoundsSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundsSource::Supplied => "supplied",
            BoundsSource::GridEstimate => "grid-estimate",
        }
    }
}

/// The bound data a check consumed.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundsMeta {
    /// `lo <= f^Δ <= hi`.
    DerivativeRange {
        lo: f64,
        hi: f64,
        source: BoundsSource,
    },
    /// `|f^Δ| <= bound`.
    SupBound { bound: f64, source: BoundsSource },
    /// Value ranges of two functions, `m1 <= f <= M1`, `m2 <= g <= M2`.
    PairRanges {
        f_lo: f64,
        f_hi: f64,
        g_lo: f64,
        g_hi: f64,
    },
    None,
}

/// Provenance metadata attached to every report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportInputs {
    pub scale: String,
    pub function: String,
    pub bounds: BoundsMeta,
    /// Auxiliary named values (e.g. the literal-form left side of the
    /// quantum corollary).
    pub extra: BTreeMap<String, f64>,
}

/// Outcome of one inequality evaluation: both sides, slack and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub t: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; nonnegative slack (up to `tol_check`) certifies the check.
    pub slack: f64,
    pub holds: bool,
    pub tol_check: f64,
    pub inputs: ReportInputs,
}

/// Default check tolerance: quadrature and grid-estimated bounds make both
/// sides approximate, so `holds` allows slack down to `-tol_check`.
pub fn default_tol_check(lhs: f64, rhs: f64) -> f64 {
    1e-7 * 1f64.max(lhs.abs()).max(rhs.abs())
}

impl BoundReport {
    fn new(name: &str, t: Option<f64>, lhs: f64, rhs: f64, inputs: ReportInputs) -> Self {
        let tol_check = default_tol_check(lhs, rhs);
        let slack = rhs - lhs;
        BoundReport {
            name: name.to_string(),
            t,
            lhs,
            rhs,
            slack,
            holds: slack >= -tol_check,
            tol_check,
            inputs,
        }
    }
}

fn span(ts: &TimeScale) -> Result<(f64, f64), IneqError> {
    let (a, b) = (ts.min(), ts.max());
    if a < b {
        Ok((a, b))
    } else {
        Err(IneqError::DegenerateSpan { a, b })
    }
}

fn inputs_for(ts: &TimeScale, f: &DeltaFn, bounds: BoundsMeta) -> ReportInputs {
    ReportInputs {
        scale: ts.summary(),
        function: f.label().to_string(),
        bounds,
        extra: BTreeMap::new(),
    }
}

/// Catches the first calculus error raised inside an integrand closure.
struct Stash(Option<CalcError>);

impl Stash {
    fn new() -> Self {
        Stash(None)
    }

    fn catch(&mut self, r: Result<f64, CalcError>) -> f64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                if self.0.is_none() {
                    self.0 = Some(e);
                }
                f64::NAN
            }
        }
    }

    fn check(self, value: Result<f64, CalcError>) -> Result<f64, IneqError> {
        if let Some(e) = self.0 {
            return Err(e.into());
        }
        Ok(value?)
    }
}

// ---------------------------------------------------------------------------
// Montgomery identity
// ---------------------------------------------------------------------------

/// The Montgomery kernel `p(t, s)`: `s - a` for `s < t`, `s - b` for
/// `t <= s <= b` (so `p(t, t) = t - b`).
pub fn montgomery_kernel(t: f64, s: f64, a: f64, b: f64) -> Result<f64, IneqError> {
    if !(a <= s && s <= b) {
        return Err(IneqError::OutOfRange {
            what: "s",
            value: s,
            lo: a,
            hi: b,
        });
    }
    if !(a <= t && t <= b) {
        return Err(IneqError::OutOfRange {
            what: "t",
            value: t,
            lo: a,
            hi: b,
        });
    }
    Ok(if s < t { s - a } else { s - b })
}

/// Mean of `f∘sigma` over `[a, b]`, i.e. `(1/(b-a)) ∫_a^b f(sigma(s)) Δs`.
fn mean_f_sigma(
    ts: &TimeScale,
    f: &DeltaFn,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    let total = integrate_cells(ts, a, b, cfg, &mut |sample| match sample {
        Sample::Gap { sigma_t, .. } => f.value(sigma_t),
        Sample::Dense { t } => f.value(t),
    })?;
    Ok(total / (b - a))
}

/// Integrates `weight(s) * f^Δ(s)` over `[from, to]` cell-aware: scattered
/// cells use the exact gap quotient, dense points the classical slope.
fn weighted_delta_integral(
    ts: &TimeScale,
    f: &DeltaFn,
    from: f64,
    to: f64,
    weight: impl Fn(f64) -> f64,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    let mut stash = Stash::new();
    let value = integrate_cells(ts, from, to, cfg, &mut |sample| match sample {
        Sample::Gap { t, sigma_t } => {
            let quotient = (f.value(sigma_t) - f.value(t)) / (sigma_t - t);
            weight(t) * quotient
        }
        Sample::Dense { t } => weight(t) * stash.catch(f.dense_slope_at(ts, t, cfg)),
    });
    stash.check(value)
}

/// Residual of the Montgomery identity at `t`:
///
/// `f(t) - (1/(b-a)) ∫ f^σ Δs - (1/(b-a)) ∫ p(t,s) f^Δ(s) Δs`.
///
/// The kernel integral is split at `s = t`, where the kernel jumps between
/// its two branches; each half is smooth on its range.
pub fn montgomery_residual(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let t = ts.canonical(t)?;
    let mean = mean_f_sigma(ts, f, a, b, cfg)?;
    let left = weighted_delta_integral(ts, f, a, t, |s| s - a, cfg)?;
    let right = weighted_delta_integral(ts, f, t, b, |s| s - b, cfg)?;
    Ok(f.value(t) - mean - (left + right) / (b - a))
}

/// Delta integral of the Montgomery kernel, `∫_a^b p(t, s) Δs`, computed by
/// direct cell integration with the split at `s = t`. Equals
/// `h_2(t, a) - h_2(t, b)` up to quadrature error.
pub fn kernel_delta_integral(
    ts: &TimeScale,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let t = ts.canonical(t)?;
    let value_at = |s: f64, branch_lo: bool| if branch_lo { s - a } else { s - b };
    let left = integrate_cells(ts, a, t, cfg, &mut |sample| match sample {
        Sample::Gap { t: s, .. } => value_at(s, true),
        Sample::Dense { t: s } => value_at(s, true),
    })?;
    let right = integrate_cells(ts, t, b, cfg, &mut |sample| match sample {
        Sample::Gap { t: s, .. } => value_at(s, false),
        Sample::Dense { t: s } => value_at(s, false),
    })?;
    Ok(left + right)
}

/// Mean of the delta derivative, `(1/(b-a)) ∫_a^b f^Δ(s) Δs`. Equals
/// `(f(b) - f(a)) / (b - a)` up to quadrature error.
pub fn derivative_mean(
    ts: &TimeScale,
    f: &DeltaFn,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let total = weighted_delta_integral(ts, f, a, b, |_| 1.0, cfg)?;
    Ok(total / (b - a))
}

// ---------------------------------------------------------------------------
// Bound validation grids
// ---------------------------------------------------------------------------

fn validation_tol(lo: f64, hi: f64) -> f64 {
    1e-9 * 1f64.max(lo.abs()).max(hi.abs())
}

/// Validation grid: the derivative grid plus the right endpoint, where
/// `f^σ(b) = f(b)` still participates in value bounds.
fn value_grid(ts: &TimeScale, cfg: &QuadratureConfig) -> Vec<f64> {
    let mut grid = verification_grid(ts, cfg);
    let b = ts.max();
    if grid.last() != Some(&b) {
        grid.push(b);
    }
    grid
}

/// Range `(min, max)` of `f∘sigma` over the validation grid; a sound choice
/// of `(m, M)` for [`gruss_check`] when no sharper bounds are known.
pub fn sigma_value_range(
    ts: &TimeScale,
    f: &DeltaFn,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in value_grid(ts, cfg) {
        let v = f.value(ts.sigma(s)?);
        if !v.is_finite() {
            return Err(IneqError::Calc(CalcError::NonFiniteValue { at: s }));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

fn validate_value_bounds(
    ts: &TimeScale,
    f: &DeltaFn,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<(), IneqError> {
    let tol = validation_tol(lo, hi);
    for s in value_grid(ts, cfg) {
        let v = f.value(ts.sigma(s)?);
        if v < lo - tol || v > hi + tol {
            return Err(IneqError::BoundsViolated {
                at: s,
                value: v,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

fn validate_derivative_bounds(
    ts: &TimeScale,
    f: &DeltaFn,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<(), IneqError> {
    let tol = validation_tol(lo, hi);
    let b = ts.max();
    for t in verification_grid(ts, cfg) {
        if t == b && !ts.in_kappa(b)? {
            continue;
        }
        let v = f.delta_at(ts, t, cfg)?;
        if v < lo - tol || v > hi + tol {
            return Err(IneqError::BoundsViolated {
                at: t,
                value: v,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Gruss bound
// ---------------------------------------------------------------------------

/// Checks the Gruss bound: the mean of `f^σ g^σ` deviates from the product
/// of means by at most `(M1-m1)(M2-m2)/4`. `bounds = (m1, M1, m2, M2)` are
/// caller-supplied value ranges, validated on the verification grid.
pub fn gruss_check(
    ts: &TimeScale,
    f: &DeltaFn,
    g: &DeltaFn,
    bounds: (f64, f64, f64, f64),
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let (m1, cap_m1, m2, cap_m2) = bounds;
    validate_value_bounds(ts, f, m1, cap_m1, cfg)?;
    validate_value_bounds(ts, g, m2, cap_m2, cfg)?;

    let mean_f = mean_f_sigma(ts, f, a, b, cfg)?;
    let mean_g = mean_f_sigma(ts, g, a, b, cfg)?;
    let mean_fg = integrate_cells(ts, a, b, cfg, &mut |sample| match sample {
        Sample::Gap { sigma_t, .. } => f.value(sigma_t) * g.value(sigma_t),
        Sample::Dense { t } => f.value(t) * g.value(t),
    })? / (b - a);

    let lhs = (mean_fg - mean_f * mean_g).abs();
    let rhs = 0.25 * (cap_m1 - m1) * (cap_m2 - m2);
    let mut inputs = inputs_for(
        ts,
        f,
        BoundsMeta::PairRanges {
            f_lo: m1,
            f_hi: cap_m1,
            g_lo: m2,
            g_hi: cap_m2,
        },
    );
    if f.label() != g.label() {
        inputs.function = format!("{} ; {}", f.label(), g.label());
    }
    Ok(BoundReport::new("gruss", None, lhs, rhs, inputs))
}

// ---------------------------------------------------------------------------
// Ostrowski bound
// ---------------------------------------------------------------------------

/// Checks the Ostrowski bound at `t`:
/// `|f(t) - mean(f^σ)| <= M/(b-a) * (h_2(t,a) + h_2(t,b))` with
/// `M = max(|inf f^Δ|, |sup f^Δ|)` estimated on the verification grid.
pub fn ostrowski_check(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let t = ts.canonical(t)?;
    let (lo, hi) = delta_sup_inf(ts, f, cfg)?;
    let sup_abs = lo.abs().max(hi.abs());
    let mean = mean_f_sigma(ts, f, a, b, cfg)?;
    let lhs = (f.value(t) - mean).abs();
    let h2a = monomial(ts, 2, t, a, cfg)?;
    let h2b = monomial(ts, 2, t, b, cfg)?;
    let rhs = sup_abs / (b - a) * (h2a + h2b);
    Ok(BoundReport::new(
        "ostrowski",
        Some(t),
        lhs,
        rhs,
        inputs_for(
            ts,
            f,
            BoundsMeta::SupBound {
                bound: sup_abs,
                source: BoundsSource::GridEstimate,
            },
        ),
    ))
}

// ---------------------------------------------------------------------------
// Ostrowski-Gruss bound
// ---------------------------------------------------------------------------

fn og_left_side(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, IneqError> {
    let mean = mean_f_sigma(ts, f, a, b, cfg)?;
    let h2a = monomial(ts, 2, t, a, cfg)?;
    let h2b = monomial(ts, 2, t, b, cfg)?;
    let correction = (f.value(b) - f.value(a)) / ((b - a) * (b - a)) * (h2a - h2b);
    Ok((f.value(t) - mean - correction).abs())
}

/// Checks the Ostrowski-Gruss bound at `t`:
///
/// `|f(t) - mean(f^σ) - (f(b)-f(a))/(b-a)² (h_2(t,a) - h_2(t,b))|
///  <= (b-a)(Γ-γ)/4`.
///
/// `derivative_range` supplies `(γ, Γ)` (validated on the grid); when absent
/// the range is estimated by [`delta_sup_inf`].
pub fn ostrowski_gruss_check(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    derivative_range: Option<(f64, f64)>,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let t = ts.canonical(t)?;
    let (lo, hi, source) = match derivative_range {
        Some((lo, hi)) => {
            validate_derivative_bounds(ts, f, lo, hi, cfg)?;
            (lo, hi, BoundsSource::Supplied)
        }
        None => {
            let (lo, hi) = delta_sup_inf(ts, f, cfg)?;
            (lo, hi, BoundsSource::GridEstimate)
        }
    };
    let lhs = og_left_side(ts, f, t, a, b, cfg)?;
    let rhs = 0.25 * (b - a) * (hi - lo);
    Ok(BoundReport::new(
        "ostrowski_gruss",
        Some(t),
        lhs,
        rhs,
        inputs_for(ts, f, BoundsMeta::DerivativeRange { lo, hi, source }),
    ))
}

// ---------------------------------------------------------------------------
// Specializations
// ---------------------------------------------------------------------------

/// Continuous specialization, evaluated with classical quadrature only:
/// `|f(t) - (1/(b-a))∫f - (f(b)-f(a))/(b-a) (t - (a+b)/2)| <= (b-a)(Γ-γ)/4`.
///
/// `(gamma, gamma_sup)` bound the classical derivative and are trusted as
/// supplied (they typically come from a symbolic-derivative oracle).
pub fn corollary_continuous(
    f: &DeltaFn,
    a: f64,
    b: f64,
    t: f64,
    gamma: f64,
    gamma_sup: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    if !(a < b) {
        return Err(IneqError::DegenerateSpan { a, b });
    }
    if !(a <= t && t <= b) {
        return Err(IneqError::OutOfRange {
            what: "t",
            value: t,
            lo: a,
            hi: b,
        });
    }
    let integral = adaptive_simpson(
        |x| f.value(x),
        a,
        b,
        cfg.abs_tol,
        cfg.rel_tol,
        cfg.max_depth,
    )
    .map_err(CalcError::from)?;
    let correction = (f.value(b) - f.value(a)) / (b - a) * (t - 0.5 * (a + b));
    let lhs = (f.value(t) - integral / (b - a) - correction).abs();
    let rhs = 0.25 * (b - a) * (gamma_sup - gamma);
    let mut inputs = ReportInputs {
        scale: format!("[{a},{b}]"),
        function: f.label().to_string(),
        bounds: BoundsMeta::DerivativeRange {
            lo: gamma,
            hi: gamma_sup,
            source: BoundsSource::Supplied,
        },
        extra: BTreeMap::new(),
    };
    inputs.extra.insert("classical_route".to_string(), 1.0);
    Ok(BoundReport::new(
        "corollary_continuous",
        Some(t),
        lhs,
        rhs,
        inputs,
    ))
}

/// Discrete specialization over a sequence `x_0..x_n` at index `i`:
///
/// `|x_i - (1/n)Σ_{j=1..n} x_j - (x_n - x_0)/n (i - (n+1)/2)| <= n(Γ-γ)/4`
///
/// with `γ, Γ` the min/max forward difference. All arithmetic is exact sums.
pub fn corollary_discrete(x: &[f64], i: usize) -> Result<BoundReport, IneqError> {
    if x.len() < 2 {
        return Err(IneqError::SequenceTooShort { len: x.len() });
    }
    let n = x.len() - 1;
    if i < 1 || i > n {
        return Err(IneqError::OutOfRange {
            what: "i",
            value: i as f64,
            lo: 1.0,
            hi: n as f64,
        });
    }
    let nf = n as f64;
    let mean = x[1..].iter().sum::<f64>() / nf;
    let correction = (x[n] - x[0]) / nf * (i as f64 - 0.5 * (nf + 1.0));
    let lhs = (x[i] - mean - correction).abs();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for w in x.windows(2) {
        let d = w[1] - w[0];
        lo = lo.min(d);
        hi = hi.max(d);
    }
    let rhs = 0.25 * nf * (hi - lo);
    Ok(BoundReport::new(
        "corollary_discrete",
        Some(i as f64),
        lhs,
        rhs,
        ReportInputs {
            scale: format!("integers 0..{n}"),
            function: "sequence".to_string(),
            bounds: BoundsMeta::DerivativeRange {
                lo,
                hi,
                source: BoundsSource::GridEstimate,
            },
            extra: BTreeMap::new(),
        },
    ))
}

/// Quantum specialization on the lattice `{q^m, ..., q^n}`.
///
/// The general bound (authoritative) is evaluated on the lattice; the report
/// additionally carries the left side of the commonly printed literal closed
/// form, whose correction term `t - (q^{2n+1} - q^{2m+1})/(q+1)` omits a
/// `(q^n - q^m)` divisor, so the discrepancy between the two stays visible.
pub fn corollary_quantum(
    f: &DeltaFn,
    q: f64,
    m: i32,
    n: i32,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    let ts = TimeScale::q_lattice(q, m, n)?;
    let (a, b) = span(&ts)?;
    let t = ts.canonical(t)?;
    let mut report = ostrowski_gruss_check(&ts, f, t, None, cfg)?;

    let mean = mean_f_sigma(&ts, f, a, b, cfg)?;
    let printed_center = (q.powi(2 * n + 1) - q.powi(2 * m + 1)) / (q + 1.0);
    let literal_correction = (f.value(b) - f.value(a)) / (b - a) * (t - printed_center);
    let literal_lhs = (f.value(t) - mean - literal_correction).abs();

    report.name = "corollary_quantum".to_string();
    report
        .inputs
        .extra
        .insert("lhs_literal".to_string(), literal_lhs);
    report.inputs.extra.insert(
        "literal_minus_general".to_string(),
        literal_lhs - report.lhs,
    );
    Ok(report)
}

/// Bounded-derivative variant: same left side as the Ostrowski-Gruss bound,
/// right side `(b-a) M / 2` for a supplied `M >= |f^Δ|` (grid-validated).
pub fn corollary_bounded(
    ts: &TimeScale,
    f: &DeltaFn,
    t: f64,
    sup_bound: f64,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    cfg.validate().map_err(IneqError::from)?;
    let (a, b) = span(ts)?;
    let t = ts.canonical(t)?;
    validate_derivative_bounds(ts, f, -sup_bound, sup_bound, cfg)?;
    let lhs = og_left_side(ts, f, t, a, b, cfg)?;
    let rhs = 0.5 * (b - a) * sup_bound;
    Ok(BoundReport::new(
        "corollary_bounded",
        Some(t),
        lhs,
        rhs,
        inputs_for(
            ts,
            f,
            BoundsMeta::SupBound {
                bound: sup_bound,
                source: BoundsSource::Supplied,
            },
        ),
    ))
}

/// Midpoint specialization: the Ostrowski-Gruss check at `t = (a+b)/2`,
/// which must belong to the scale.
pub fn corollary_midpoint(
    ts: &TimeScale,
    f: &DeltaFn,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    let (a, b) = span(ts)?;
    let midpoint = 0.5 * (a + b);
    if !ts.contains(midpoint) {
        return Err(IneqError::MidpointNotInScale { midpoint });
    }
    let mut report = ostrowski_gruss_check(ts, f, midpoint, None, cfg)?;
    report.name = "corollary_midpoint".to_string();
    Ok(report)
}

/// Endpoint specialization: the Ostrowski-Gruss check at `t = b`.
pub fn corollary_endpoint(
    ts: &TimeScale,
    f: &DeltaFn,
    cfg: &QuadratureConfig,
) -> Result<BoundReport, IneqError> {
    let (_, b) = span(ts)?;
    let mut report = ostrowski_gruss_check(ts, f, b, None, cfg)?;
    report.name = "corollary_endpoint".to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::RealFunction;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn id() -> impl RealFunction {
        |t: f64| t
    }

    #[test]
    fn kernel_branches() {
        assert_eq!(montgomery_kernel(3.0, 1.0, 0.0, 5.0), Ok(1.0));
        assert_eq!(montgomery_kernel(3.0, 4.0, 0.0, 5.0), Ok(-1.0));
        // s = t falls on the second branch
        assert_eq!(montgomery_kernel(3.0, 3.0, 0.0, 5.0), Ok(-2.0));
        assert!(matches!(
            montgomery_kernel(3.0, 6.0, 0.0, 5.0),
            Err(IneqError::OutOfRange { .. })
        ));
    }

    #[test]
    fn kernel_stays_in_range() {
        let (a, b) = (0.0, 5.0);
        for ti in 0..=10 {
            let t = a + (b - a) * ti as f64 / 10.0;
            for si in 0..=10 {
                let s = a + (b - a) * si as f64 / 10.0;
                let p = montgomery_kernel(t, s, a, b).unwrap();
                assert!(t - b <= p && p <= t - a, "p({t},{s}) = {p}");
            }
        }
    }

    #[test]
    fn montgomery_residual_vanishes_for_constants() {
        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
        let c = |_: f64| 2.5;
        let f = DeltaFn::numeric(&c);
        let r = montgomery_residual(&ts, &f, 3.0, &cfg()).unwrap();
        assert!(r.abs() <= 2e-10, "got {r}");
    }

    #[test]
    fn montgomery_residual_exact_on_integers() {
        let z = TimeScale::integers(0, 5).unwrap();
        let sq = |t: f64| t * t;
        let slope = |t: f64| 2.0 * t;
        let f = DeltaFn::with_slope(&sq, &slope);
        let r = montgomery_residual(&z, &f, 2.0, &cfg()).unwrap();
        assert!(r.abs() <= 1e-9, "got {r}");
    }

    #[test]
    fn montgomery_residual_on_interval() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let cube = |t: f64| t * t * t;
        let slope = |t: f64| 3.0 * t * t;
        let f = DeltaFn::with_slope(&cube, &slope);
        let r = montgomery_residual(&ts, &f, 0.25, &cfg()).unwrap();
        assert!(r.abs() <= 1e-9, "got {r}");
    }

    #[test]
    fn gruss_constant_functions() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let c = |_: f64| 3.0;
        let f = DeltaFn::numeric(&c);
        let report = gruss_check(&ts, &f, &f, (3.0, 3.0, 3.0, 3.0), &cfg()).unwrap();
        assert!(report.lhs <= 1e-10);
        assert_eq!(report.rhs, 0.0);
        assert!(report.holds);
    }

    #[test]
    fn gruss_identity_on_unit_interval() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = gruss_check(&ts, &f, &f, (0.0, 1.0, 0.0, 1.0), &cfg()).unwrap();
        // ∫t² - (∫t)² = 1/3 - 1/4
        assert!((report.lhs - 1.0 / 12.0).abs() <= 1e-9, "lhs {}", report.lhs);
        assert_eq!(report.rhs, 0.25);
        assert!(report.holds);
    }

    #[test]
    fn gruss_on_integers_exact_sums() {
        let z = TimeScale::integers(0, 4).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = gruss_check(&z, &f, &f, (1.0, 4.0, 1.0, 4.0), &cfg()).unwrap();
        // f^σ(j) = j+1 for j = 0..3: mean 10/4, mean of squares 30/4
        assert_eq!(report.lhs, 1.25);
        assert_eq!(report.rhs, 2.25);
        assert!(report.holds);
    }

    #[test]
    fn gruss_rejects_bad_bounds() {
        let z = TimeScale::integers(0, 4).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let r = gruss_check(&z, &f, &f, (1.0, 2.0, 1.0, 4.0), &cfg());
        assert!(matches!(r, Err(IneqError::BoundsViolated { .. })));
    }

    #[test]
    fn ostrowski_sharpness_witness() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = ostrowski_check(&ts, &f, 1.0, &cfg()).unwrap();
        assert!((report.lhs - 0.5).abs() <= 1e-9, "lhs {}", report.lhs);
        assert!((report.rhs - 0.5).abs() <= 1e-9, "rhs {}", report.rhs);
        assert!(report.holds);
    }

    #[test]
    fn ostrowski_constant() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let c = |_: f64| 7.0;
        let f = DeltaFn::numeric(&c);
        let report = ostrowski_check(&ts, &f, 0.5, &cfg()).unwrap();
        assert!(report.lhs <= 1e-10);
        assert!(report.rhs.abs() <= 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn ostrowski_on_integers() {
        let z = TimeScale::integers(0, 4).unwrap();
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        let report = ostrowski_check(&z, &f, 2.0, &cfg()).unwrap();
        // lhs = |4 - 30/4| = 3.5; M = 7; rhs = (7/4)(1 + 3) = 7
        assert_eq!(report.lhs, 3.5);
        assert_eq!(report.rhs, 7.0);
        assert!(report.holds);
    }

    #[test]
    fn og_linear_function_gives_zero_left_side() {
        for ts in [
            TimeScale::integers(0, 5).unwrap(),
            TimeScale::interval(0.0, 1.0).unwrap(),
            TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap(),
        ] {
            let tfn = id();
            let f = DeltaFn::numeric(&tfn);
            let t = ts.min();
            let report = ostrowski_gruss_check(&ts, &f, t, None, &cfg()).unwrap();
            assert!(report.lhs <= 1e-8, "lhs {} on {}", report.lhs, ts.summary());
            assert!(report.holds);
        }
    }

    #[test]
    fn og_square_on_unit_interval() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let sq = |t: f64| t * t;
        let slope = |t: f64| 2.0 * t;
        let f = DeltaFn::with_slope(&sq, &slope);
        let report = ostrowski_gruss_check(&ts, &f, 0.0, None, &cfg()).unwrap();
        // |0 - 1/3 - 1·(0 - 1/2)| = 1/6; rhs = (1/4)(2 - 0) = 1/2
        assert!((report.lhs - 1.0 / 6.0).abs() <= 1e-9, "lhs {}", report.lhs);
        assert!((report.rhs - 0.5).abs() <= 1e-8, "rhs {}", report.rhs);
        assert!(report.holds);
    }

    #[test]
    fn og_exact_equality_on_q_lattice() {
        let ts = TimeScale::q_lattice(2.0, 0, 2).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = ostrowski_gruss_check(&ts, &f, 2.0, None, &cfg()).unwrap();
        assert!(report.lhs <= 1e-12, "lhs {}", report.lhs);
        assert!(report.rhs <= 1e-12, "rhs {}", report.rhs);
        assert!(report.holds);
    }

    #[test]
    fn og_supplied_bounds_are_validated() {
        let ts = TimeScale::integers(0, 4).unwrap();
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        // true range of f^Δ is [1, 7]
        let ok = ostrowski_gruss_check(&ts, &f, 2.0, Some((1.0, 7.0)), &cfg()).unwrap();
        assert!(ok.holds);
        assert!(matches!(
            ostrowski_gruss_check(&ts, &f, 2.0, Some((1.0, 5.0)), &cfg()),
            Err(IneqError::BoundsViolated { .. })
        ));
    }

    #[test]
    fn continuous_corollary_examples() {
        let c = cfg();
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        let report = corollary_continuous(&f, 0.0, 1.0, 0.0, 0.0, 2.0, &c).unwrap();
        assert!((report.lhs - 1.0 / 6.0).abs() <= 1e-9);
        assert_eq!(report.rhs, 0.5);

        let lin = |t: f64| 3.0 * t - 1.0;
        let f = DeltaFn::numeric(&lin);
        let report = corollary_continuous(&f, 0.0, 1.0, 0.25, 3.0, 3.0, &c).unwrap();
        assert!(report.lhs <= 1e-10);

        let cube = |t: f64| t * t * t;
        let f = DeltaFn::numeric(&cube);
        let report = corollary_continuous(&f, 0.0, 1.0, 0.5, 0.0, 3.0, &c).unwrap();
        // midpoint kills the correction term: |1/8 - 1/4| = 1/8
        assert!((report.lhs - 0.125).abs() <= 1e-9);
        assert_eq!(report.rhs, 0.75);
    }

    #[test]
    fn discrete_corollary_examples() {
        // x_j = j: constant forward difference, zero left side
        let x: Vec<f64> = (0..=6).map(|j| j as f64).collect();
        let report = corollary_discrete(&x, 3).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.rhs, 0.0);
        assert!(report.holds);

        // x_j = j², n = 4, i = 2
        let x: Vec<f64> = (0..=4).map(|j| (j * j) as f64).collect();
        let report = corollary_discrete(&x, 2).unwrap();
        assert_eq!(report.lhs, 1.5);
        assert_eq!(report.rhs, 6.0);
        assert!(report.holds);

        assert!(matches!(
            corollary_discrete(&[1.0], 1),
            Err(IneqError::SequenceTooShort { .. })
        ));
        assert!(matches!(
            corollary_discrete(&x, 0),
            Err(IneqError::OutOfRange { .. })
        ));
    }

    #[test]
    fn discrete_matches_ostrowski_gruss_on_integer_window() {
        let x: Vec<f64> = (0..=4).map(|j| (j * j) as f64).collect();
        let discrete = corollary_discrete(&x, 2).unwrap();

        let z = TimeScale::integers(0, 4).unwrap();
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        let general = ostrowski_gruss_check(&z, &f, 2.0, None, &cfg()).unwrap();
        assert!((discrete.lhs - general.lhs).abs() <= 1e-12);
        assert!((discrete.rhs - general.rhs).abs() <= 1e-12);
    }

    #[test]
    fn quantum_corollary_linear_equality() {
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = corollary_quantum(&f, 2.0, 0, 2, 2.0, &cfg()).unwrap();
        assert!(report.lhs <= 1e-12);
        assert!(report.rhs <= 1e-12);
        assert!(report.holds);
    }

    #[test]
    fn quantum_corollary_square_hand_oracle() {
        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        let report = corollary_quantum(&f, 2.0, 0, 2, 2.0, &cfg()).unwrap();
        // hand oracle on {1, 2, 4}: |4 - 12 + (15/9)·4| = 4/3, rhs = (3/4)(6-3)
        assert!((report.lhs - 4.0 / 3.0).abs() <= 1e-12, "lhs {}", report.lhs);
        assert!((report.rhs - 2.25).abs() <= 1e-12, "rhs {}", report.rhs);
        assert!(report.holds);

        // literal printed form: |4 - 12 + 40| = 32
        let literal = report.inputs.extra["lhs_literal"];
        assert!((literal - 32.0).abs() <= 1e-12, "literal {literal}");
        let gap = report.inputs.extra["literal_minus_general"];
        assert!((gap - 92.0 / 3.0).abs() <= 1e-12, "gap {gap}");
    }

    #[test]
    fn quantum_corollary_constant() {
        let c = |_: f64| 5.0;
        let f = DeltaFn::numeric(&c);
        let report = corollary_quantum(&f, 2.0, 0, 2, 2.0, &cfg()).unwrap();
        assert!(report.lhs <= 1e-12);
        assert!(report.inputs.extra["lhs_literal"] <= 1e-12);
    }

    #[test]
    fn bounded_corollary() {
        let ts = TimeScale::interval(0.0, 1.0).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let report = corollary_bounded(&ts, &f, 0.0, 1.0, &cfg()).unwrap();
        assert!(report.lhs <= 1e-10);
        assert_eq!(report.rhs, 0.5);

        let sq = |t: f64| t * t;
        let f = DeltaFn::numeric(&sq);
        let report = corollary_bounded(&ts, &f, 0.0, 2.0, &cfg()).unwrap();
        assert!((report.lhs - 1.0 / 6.0).abs() <= 1e-9);
        assert_eq!(report.rhs, 1.0);

        // claiming |f^Δ| <= 1 for f = t² on [0,1] fails on the grid
        assert!(matches!(
            corollary_bounded(&ts, &f, 0.0, 1.0, &cfg()),
            Err(IneqError::BoundsViolated { .. })
        ));
    }

    #[test]
    fn bounded_dominates_ostrowski_gruss_bound() {
        let ts = TimeScale::from_segments([(0.0, 2.0), (3.0, 3.0)]).unwrap();
        let sq = |t: f64| t * t;
        let slope = |t: f64| 2.0 * t;
        let f = DeltaFn::with_slope(&sq, &slope);
        let og = ostrowski_gruss_check(&ts, &f, 2.0, None, &cfg()).unwrap();
        let (lo, hi) = delta_sup_inf(&ts, &f, &cfg()).unwrap();
        let sup = lo.abs().max(hi.abs());
        let bounded = corollary_bounded(&ts, &f, 2.0, sup, &cfg()).unwrap();
        assert!(bounded.rhs >= og.rhs - 1e-12);
    }

    #[test]
    fn midpoint_and_endpoint_specializations() {
        let z = TimeScale::integers(0, 4).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        let mid = corollary_midpoint(&z, &f, &cfg()).unwrap();
        assert_eq!(mid.t, Some(2.0));
        assert!(mid.lhs <= 1e-10);

        let odd = TimeScale::integers(0, 5).unwrap();
        assert!(matches!(
            corollary_midpoint(&odd, &f, &cfg()),
            Err(IneqError::MidpointNotInScale { .. })
        ));

        let r = TimeScale::interval(0.0, 1.0).unwrap();
        let sq = |t: f64| t * t;
        let slope = |t: f64| 2.0 * t;
        let fsq = DeltaFn::with_slope(&sq, &slope);
        let end = corollary_endpoint(&r, &fsq, &cfg()).unwrap();
        // |1 - 1/3 - 1·(1/2)| = 1/6, rhs = 1/2
        assert!((end.lhs - 1.0 / 6.0).abs() <= 1e-9, "lhs {}", end.lhs);
        assert!((end.rhs - 0.5).abs() <= 1e-8, "rhs {}", end.rhs);

        // exact agreement with the general check at the same point
        let og = ostrowski_gruss_check(&r, &fsq, 1.0, None, &cfg()).unwrap();
        assert_eq!(end.lhs, og.lhs);
        assert_eq!(end.rhs, og.rhs);
    }

    #[test]
    fn kernel_integral_matches_monomial_difference() {
        let cfgv = cfg();
        for ts in [
            TimeScale::integers(0, 5).unwrap(),
            TimeScale::interval(0.0, 2.0).unwrap(),
            TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap(),
            TimeScale::q_lattice(2.0, 0, 3).unwrap(),
        ] {
            let (a, b) = (ts.min(), ts.max());
            for frac in [0.0, 0.3, 0.7, 1.0] {
                let raw = a + (b - a) * frac;
                let Ok(t) = ts.canonical(raw) else { continue };
                let direct = kernel_delta_integral(&ts, t, &cfgv).unwrap();
                let via_h2 = monomial(&ts, 2, t, a, &cfgv).unwrap()
                    - monomial(&ts, 2, t, b, &cfgv).unwrap();
                assert!(
                    (direct - via_h2).abs() <= 1e-8 * via_h2.abs().max(1.0),
                    "{}: t={t}: {direct} vs {via_h2}",
                    ts.summary()
                );
            }
        }
    }

    #[test]
    fn derivative_mean_matches_endpoint_quotient() {
        let cfgv = cfg();
        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
        let cube = |t: f64| t * t * t - t;
        let slope = |t: f64| 3.0 * t * t - 1.0;
        let f = DeltaFn::with_slope(&cube, &slope);
        let mean = derivative_mean(&ts, &f, &cfgv).unwrap();
        let expected = (f.value(4.0) - f.value(0.0)) / 4.0;
        assert!((mean - expected).abs() <= 1e-8 * expected.abs().max(1.0));
    }

    #[test]
    fn degenerate_span_is_rejected() {
        let point = TimeScale::from_segments([(1.0, 1.0)]).unwrap();
        let tfn = id();
        let f = DeltaFn::numeric(&tfn);
        assert!(matches!(
            ostrowski_check(&point, &f, 1.0, &cfg()),
            Err(IneqError::DegenerateSpan { .. })
        ));
    }
}
