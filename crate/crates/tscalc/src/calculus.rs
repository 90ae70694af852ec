//! Delta calculus on a [`TimeScale`]: derivatives, oriented integrals,
//! the forward-jump composition `f∘sigma`, and the generalized monomials
//! `h_k(t, s)`.
//!
//! Computationally a delta integral over `[from, to]` splits into scattered
//! cells `[t, sigma(t)]`, each contributing `mu(t) * f(t)`, plus ordinary
//! integrals over maximal dense sub-segments, evaluated by adaptive Simpson
//! quadrature. Derivatives at right-scattered points are exact difference
//! quotients across the gap; at right-dense points they are extrapolated
//! one-sided finite differences taken from within the containing dense
//! segment.

use std::collections::HashMap;

use thiserror::Error;

use crate::quad::{adaptive_simpson, one_sided_derivative, NumericError};
use crate::scale::{ScaleError, Segment, TimeScale};

/// Evaluation contract for test functions: a deterministic map from a real
/// `t` to a real value, defined on the hull `[min, max]` of the target scale.
pub trait RealFunction {
    fn eval(&self, t: f64) -> f64;
}

impl<F: Fn(f64) -> f64> RealFunction for F {
    fn eval(&self, t: f64) -> f64 {
        self(t)
    }
}

/// Tolerances and limits governing all approximate computation.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub fd_step: f64,
    pub dense_samples: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_depth: 40,
            fd_step: 1e-6,
            dense_samples: 1024,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), CalcError> {
        if !(self.abs_tol > 0.0) {
            return Err(CalcError::InvalidConfig("abs_tol must be > 0".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(CalcError::InvalidConfig("rel_tol must be > 0".into()));
        }
        if self.max_depth < 1 {
            return Err(CalcError::InvalidConfig("max_depth must be >= 1".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(CalcError::InvalidConfig("fd_step must be > 0".into()));
        }
        if self.dense_samples < 2 {
            return Err(CalcError::InvalidConfig(
                "dense_samples must be >= 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CalcError {
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error("t = {t} is a left-scattered maximum; delta derivative undefined there")]
    NotInKappa { t: f64 },
    #[error("difference quotients failed to settle at t = {t}")]
    NumericalDivergence { t: f64 },
    #[error("quadrature tolerance unmet on [{lo}, {hi}] before the depth limit")]
    QuadratureFailure { lo: f64, hi: f64 },
    #[error("function value is not finite at t = {at}")]
    NonFiniteValue { at: f64 },
    #[error("invalid quadrature config: {0}")]
    InvalidConfig(String),
    #[error("closed-form kind mismatch: {0}")]
    KindMismatch(String),
}

impl From<NumericError> for CalcError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::DepthExhausted { lo, hi } => CalcError::QuadratureFailure { lo, hi },
            NumericError::NonFinite { at } => CalcError::NonFiniteValue { at },
            NumericError::NoConvergence { at } => CalcError::NumericalDivergence { t: at },
        }
    }
}

// ---------------------------------------------------------------------------
// Cell decomposition and compensated accumulation
// ---------------------------------------------------------------------------

/// Where an integrand value is requested during cell integration.
///
/// Rd-continuous integrands built from `f^σ` or `f^Δ` jump exactly at
/// scattered points, so an integrand is asked separately for the value it
/// takes on a scattered cell and for the value it takes inside the dense
/// parts (where the left-limit convention applies at a scattered right end).
#[derive(Debug, Clone, Copy)]
pub enum Sample {
    /// Value used for the scattered cell `[t, sigma_t]`; the cell contributes
    /// `(sigma_t - t) * value`.
    Gap { t: f64, sigma_t: f64 },
    /// Value used inside a dense sub-segment.
    Dense { t: f64 },
}

#[derive(Debug, Clone, Copy)]
enum Piece {
    Gap { t: f64, sigma_t: f64 },
    Dense { lo: f64, hi: f64 },
}

fn decompose(ts: &TimeScale, from: f64, to: f64) -> Vec<Piece> {
    debug_assert!(from <= to);
    let segs = ts.segments();
    let mut pieces = Vec::new();
    for (i, seg) in segs.iter().enumerate() {
        if seg.hi < from {
            continue;
        }
        if seg.lo > to {
            break;
        }
        let lo = seg.lo.max(from);
        let hi = seg.hi.min(to);
        if lo < hi {
            pieces.push(Piece::Dense { lo, hi });
        }
        if seg.hi < to && i + 1 < segs.len() {
            pieces.push(Piece::Gap {
                t: seg.hi,
                sigma_t: segs[i + 1].lo,
            });
        }
    }
    pieces
}

/// Neumaier-compensated accumulator; keeps long scattered sums near one ulp.
#[derive(Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Integrates a cell-aware integrand over `[from, to] ∩ T` for canonical
/// in-scale endpoints `from <= to`. Evaluation errors inside `eval` should be
/// stashed by the caller (return NaN); non-finite values abort with an error.
pub(crate) fn integrate_cells(
    ts: &TimeScale,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
    eval: &mut dyn FnMut(Sample) -> f64,
) -> Result<f64, CalcError> {
    if from == to {
        return Ok(0.0);
    }
    let mut acc = Acc::default();
    for piece in decompose(ts, from, to) {
        match piece {
            Piece::Gap { t, sigma_t } => {
                let v = eval(Sample::Gap { t, sigma_t });
                if !v.is_finite() {
                    return Err(CalcError::NonFiniteValue { at: t });
                }
                acc.add((sigma_t - t) * v);
            }
            Piece::Dense { lo, hi } => {
                let v = adaptive_simpson(
                    |x| eval(Sample::Dense { t: x }),
                    lo,
                    hi,
                    cfg.abs_tol,
                    cfg.rel_tol,
                    cfg.max_depth,
                )?;
                acc.add(v);
            }
        }
    }
    Ok(acc.total())
}

// ---------------------------------------------------------------------------
// Derivatives
// ---------------------------------------------------------------------------

/// A function packaged for delta differentiation: its pointwise values plus,
/// optionally, an exact classical derivative used inside dense segments.
///
/// When no slope is supplied, dense-point derivatives fall back to the
/// extrapolated finite differences of [`delta_derivative`]. Supplying the
/// exact slope (e.g. from [`crate::expr::classical_derivative`]) removes all
/// finite-difference noise from integrands built on `f^Δ`.
#[derive(Clone, Copy)]
pub struct DeltaFn<'a> {
    value: &'a dyn RealFunction,
    slope: Option<&'a dyn RealFunction>,
    label: Option<&'a str>,
}

impl<'a> DeltaFn<'a> {
    /// Wraps a bare function; dense-point derivatives use finite differences.
    pub fn numeric(value: &'a dyn RealFunction) -> Self {
        DeltaFn {
            value,
            slope: None,
            label: None,
        }
    }

    /// Wraps a function together with its exact classical derivative.
    pub fn with_slope(value: &'a dyn RealFunction, slope: &'a dyn RealFunction) -> Self {
        DeltaFn {
            value,
            slope: Some(slope),
            label: None,
        }
    }

    /// Attaches a display label used in report provenance.
    pub fn named(mut self, label: &'a str) -> Self {
        self.label = Some(label);
        self
    }

    /// Display label for reports.
    pub fn label(&self) -> &str {
        self.label.unwrap_or("<fn>")
    }

    pub fn value(&self, t: f64) -> f64 {
        self.value.eval(t)
    }

    pub fn has_exact_slope(&self) -> bool {
        self.slope.is_some()
    }

    /// Classical slope inside the dense segment containing `t` (left-limit
    /// convention at a scattered right end).
    pub(crate) fn dense_slope_at(
        &self,
        ts: &TimeScale,
        t: f64,
        cfg: &QuadratureConfig,
    ) -> Result<f64, CalcError> {
        if let Some(slope) = self.slope {
            let v = slope.eval(t);
            if !v.is_finite() {
                return Err(CalcError::NonFiniteValue { at: t });
            }
            return Ok(v);
        }
        let seg = containing_dense_segment(ts, t)?;
        fd_dense_derivative(self.value, t, seg, cfg)
    }

    /// Full delta derivative semantics at a canonical in-scale point: exact
    /// gap quotient when right-scattered, classical slope when right-dense.
    pub fn delta_at(
        &self,
        ts: &TimeScale,
        t: f64,
        cfg: &QuadratureConfig,
    ) -> Result<f64, CalcError> {
        let p = ts.canonical(t)?;
        let sigma = ts.sigma(p)?;
        if sigma > p {
            let quotient = (self.value.eval(sigma) - self.value.eval(p)) / (sigma - p);
            if !quotient.is_finite() {
                return Err(CalcError::NonFiniteValue { at: p });
            }
            return Ok(quotient);
        }
        if !ts.in_kappa(p)? {
            return Err(CalcError::NotInKappa { t: p });
        }
        self.dense_slope_at(ts, p, cfg)
    }
}

fn containing_dense_segment(ts: &TimeScale, t: f64) -> Result<Segment, CalcError> {
    let (i, p) = ts
        .resolve(t)
        .ok_or(ScaleError::PointNotInScale { t })?;
    let seg = ts.segments()[i];
    if seg.is_point() {
        // A right-dense isolated point is the maximum; no dense neighborhood.
        return Err(CalcError::NumericalDivergence { t: p });
    }
    Ok(seg)
}

fn fd_dense_derivative(
    f: &dyn RealFunction,
    t: f64,
    seg: Segment,
    cfg: &QuadratureConfig,
) -> Result<f64, CalcError> {
    let room_right = seg.hi - t;
    let room_left = t - seg.lo;
    let (dir, room) = if room_right >= room_left {
        (1.0, room_right)
    } else {
        (-1.0, room_left)
    };
    let h0 = cfg.fd_step.min(room);
    one_sided_derivative(
        |x| f.eval(x),
        t,
        dir,
        room,
        h0,
        cfg.abs_tol,
        cfg.rel_tol,
    )
    .map_err(CalcError::from)
}

/// Delta derivative of `f` at `t`.
///
/// At a right-scattered point this is exactly
/// `(f(sigma(t)) - f(t)) / mu(t)`; at a right-dense point it is a one-sided
/// finite-difference limit from within the containing dense segment,
/// Richardson-extrapolated with initial step
/// `min(fd_step, distance to the segment edge)`.
pub fn delta_derivative(
    ts: &TimeScale,
    f: &dyn RealFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, CalcError> {
    cfg.validate()?;
    DeltaFn::numeric(f).delta_at(ts, t, cfg)
}

// ---------------------------------------------------------------------------
// Forward-jump composition
// ---------------------------------------------------------------------------

/// The composition `t ↦ f(sigma(t))` on a fixed scale.
pub struct FSigma<'a> {
    ts: &'a TimeScale,
    f: &'a dyn RealFunction,
}

impl<'a> FSigma<'a> {
    /// Evaluates `f(sigma(t))`, reporting out-of-scale points.
    pub fn eval_checked(&self, t: f64) -> Result<f64, ScaleError> {
        Ok(self.f.eval(self.ts.sigma(t)?))
    }
}

impl<'a> RealFunction for FSigma<'a> {
    /// Out-of-scale points evaluate to NaN so that downstream numerics
    /// surface the failure instead of silently continuing.
    fn eval(&self, t: f64) -> f64 {
        match self.ts.sigma(t) {
            Ok(s) => self.f.eval(s),
            Err(_) => f64::NAN,
        }
    }
}

/// Builds the forward-jump composition `f^sigma = f∘sigma` on `ts`.
pub fn f_sigma<'a>(ts: &'a TimeScale, f: &'a dyn RealFunction) -> FSigma<'a> {
    FSigma { ts, f }
}

// ---------------------------------------------------------------------------
// Integrals
// ---------------------------------------------------------------------------

/// Oriented delta integral of `f` from `from` to `to` (both in the scale).
///
/// For `from <= to` the value is the sum of scattered-cell contributions
/// `mu(t) * f(t)` and adaptive quadrature over maximal dense sub-segments;
/// reversing the endpoints negates the result exactly, and equal endpoints
/// yield exactly zero.
pub fn delta_integral(
    ts: &TimeScale,
    f: &dyn RealFunction,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, CalcError> {
    cfg.validate()?;
    let from = ts.canonical(from)?;
    let to = ts.canonical(to)?;
    oriented_cells(ts, from, to, cfg, &mut |sample| match sample {
        Sample::Gap { t, .. } => f.eval(t),
        Sample::Dense { t } => f.eval(t),
    })
}

/// `integrate_cells` with orientation handling; endpoints must be canonical.
pub(crate) fn oriented_cells(
    ts: &TimeScale,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
    eval: &mut dyn FnMut(Sample) -> f64,
) -> Result<f64, CalcError> {
    if from <= to {
        integrate_cells(ts, from, to, cfg, eval)
    } else {
        Ok(-integrate_cells(ts, to, from, cfg, eval)?)
    }
}

/// Oriented delta integral of a caller-supplied cell-aware integrand.
///
/// The closure is asked for the value on each scattered cell and at each
/// dense quadrature node separately (see [`Sample`]), which lets callers
/// integrate rd-continuous expressions such as `f(s) * g^Δ(s)` without the
/// quadrature ever seeing the jump at a scattered segment end.
pub fn delta_integral_with(
    ts: &TimeScale,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
    eval: &mut dyn FnMut(Sample) -> f64,
) -> Result<f64, CalcError> {
    cfg.validate()?;
    let from = ts.canonical(from)?;
    let to = ts.canonical(to)?;
    oriented_cells(ts, from, to, cfg, eval)
}

/// Delta integral of the composition `f∘sigma` from `from` to `to`.
///
/// Scattered cells contribute `mu(t) * f(sigma(t))`; on dense sub-segments
/// `sigma` is the identity almost everywhere, so the integrand reduces to `f`
/// there. Integrating the composition cell-aware keeps quadrature away from
/// the jump the raw composition has at a scattered right endpoint.
pub fn delta_integral_sigma(
    ts: &TimeScale,
    f: &dyn RealFunction,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, CalcError> {
    cfg.validate()?;
    let from = ts.canonical(from)?;
    let to = ts.canonical(to)?;
    oriented_cells(ts, from, to, cfg, &mut |sample| match sample {
        Sample::Gap { sigma_t, .. } => f.eval(sigma_t),
        Sample::Dense { t } => f.eval(t),
    })
}

// ---------------------------------------------------------------------------
// Generalized monomials
// ---------------------------------------------------------------------------

/// Generalized monomial `h_k(t, s)` computed by the defining recursion
/// `h_0 = 1`, `h_{k+1}(t, s) = ∫_s^t h_k(τ, s) Δτ`.
///
/// Lower-order values are memoized per `(k, s)` across the evaluation grid,
/// since the recursion re-reads the same lower-order monomial at every
/// quadrature node.
pub fn monomial(
    ts: &TimeScale,
    k: u32,
    t: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<f64, CalcError> {
    cfg.validate()?;
    let t = ts.canonical(t)?;
    let s = ts.canonical(s)?;
    if k == 0 {
        return Ok(1.0);
    }
    let mut memo: Vec<HashMap<u64, f64>> = vec![HashMap::new(); k as usize];
    monomial_rec(ts, k, t, s, cfg, &mut memo)
}

fn monomial_rec(
    ts: &TimeScale,
    k: u32,
    t: f64,
    s: f64,
    cfg: &QuadratureConfig,
    memo: &mut Vec<HashMap<u64, f64>>,
) -> Result<f64, CalcError> {
    if k == 0 {
        return Ok(1.0);
    }
    let slot = (k - 1) as usize;
    if let Some(&v) = memo[slot].get(&t.to_bits()) {
        return Ok(v);
    }
    let mut stashed: Option<CalcError> = None;
    let value = oriented_cells(ts, s, t, cfg, &mut |sample| {
        let tau = match sample {
            Sample::Gap { t, .. } => t,
            Sample::Dense { t } => t,
        };
        match monomial_rec(ts, k - 1, tau, s, cfg, memo) {
            Ok(v) => v,
            Err(e) => {
                if stashed.is_none() {
                    stashed = Some(e);
                }
                f64::NAN
            }
        }
    });
    if let Some(e) = stashed {
        return Err(e);
    }
    let value = value?;
    memo[slot].insert(t.to_bits(), value);
    Ok(value)
}

/// The scale family a closed form belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleKind {
    Continuous,
    Discrete,
    Quantum,
}

/// Closed form of the second monomial `h_2(t, s)` on the three canonical
/// scales: `(t-s)²/2` on the reals, the binomial form `(t-s)(t-s-1)/2` on the
/// integers, and `(t-s)(t-qs)/(1+q)` on a q-lattice.
pub fn h2_closed_form(
    kind: ScaleKind,
    t: f64,
    s: f64,
    q: Option<f64>,
) -> Result<f64, CalcError> {
    match kind {
        ScaleKind::Continuous => Ok((t - s) * (t - s) / 2.0),
        ScaleKind::Discrete => Ok((t - s) * (t - s - 1.0) / 2.0),
        ScaleKind::Quantum => {
            let q = q.ok_or_else(|| {
                CalcError::KindMismatch("quantum closed form needs a base q".into())
            })?;
            if !(q > 1.0) || !q.is_finite() {
                return Err(CalcError::Scale(ScaleError::BadBase { q }));
            }
            if !(s > 0.0) || !is_power_of(s, q) {
                return Err(CalcError::KindMismatch(format!(
                    "s = {s} is not a power of the base q = {q}"
                )));
            }
            Ok((t - s) * (t - q * s) / (1.0 + q))
        }
    }
}

fn is_power_of(s: f64, q: f64) -> bool {
    let k = (s.ln() / q.ln()).round();
    let p = q.powi(k as i32);
    (s - p).abs() <= 1e-9 * p.abs().max(1.0)
}

/// Product closed form of `h_k(t, s)` on a q-lattice, available as a
/// cross-check for small orders (`k <= 3`).
pub fn quantum_h_closed_form(q: f64, k: u32, t: f64, s: f64) -> Result<f64, CalcError> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(CalcError::Scale(ScaleError::BadBase { q }));
    }
    if k > 3 {
        return Err(CalcError::KindMismatch(
            "quantum product form is provided as a cross-check for k <= 3 only".into(),
        ));
    }
    let mut prod = 1.0;
    let mut geom = 0.0;
    let mut q_pow = 1.0;
    for _ in 0..k {
        geom += q_pow; // 1 + q + ... + q^nu
        prod *= (t - q_pow * s) / geom;
        q_pow *= q;
    }
    Ok(prod)
}

// ---------------------------------------------------------------------------
// Derivative range over a verification grid
// ---------------------------------------------------------------------------

/// The evaluation grid used by [`delta_sup_inf`] and the bound validators:
/// every right-scattered point plus `dense_samples` evenly spaced points per
/// dense segment.
pub(crate) fn verification_grid(ts: &TimeScale, cfg: &QuadratureConfig) -> Vec<f64> {
    let mut grid = ts.right_scattered_points();
    for seg in ts.dense_segments() {
        let n = cfg.dense_samples;
        for j in 0..n {
            let frac = j as f64 / (n - 1) as f64;
            grid.push(seg.lo + frac * (seg.hi - seg.lo));
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

/// Estimated range `(inf, sup)` of the delta derivative of `f` over the
/// verification grid.
///
/// This is a grid estimate, not a certified enclosure: scattered points are
/// evaluated exactly via their gap quotients, dense segments are sampled at
/// `dense_samples` points each. Consumers apply a signed slack tolerance.
pub fn delta_sup_inf(
    ts: &TimeScale,
    f: &DeltaFn,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64), CalcError> {
    cfg.validate()?;
    let b = ts.max();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for t in verification_grid(ts, cfg) {
        if t == b && !ts.in_kappa(b)? {
            continue;
        }
        let v = f.delta_at(ts, t, cfg)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(CalcError::NonFiniteValue { at: ts.min() });
    }
    Ok((lo, hi))
}
