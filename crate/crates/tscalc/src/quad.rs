//! Low-level numerics: adaptive Simpson quadrature and extrapolated
//! one-sided finite differences. Shared by the calculus module; not part of
//! the public surface.

/// Why a numeric routine gave up.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum NumericError {
    /// Subdivision limit reached before the tolerance was met.
    DepthExhausted { lo: f64, hi: f64 },
    /// The integrand or difference quotient produced a non-finite value.
    NonFinite { at: f64 },
    /// The extrapolation table never settled.
    NoConvergence { at: f64 },
}

struct SimpsonState<'a, F> {
    f: &'a mut F,
    max_depth: u32,
    failure: Option<NumericError>,
}

impl<'a, F: FnMut(f64) -> f64> SimpsonState<'a, F> {
    fn eval(&mut self, x: f64) -> f64 {
        let v = (self.f)(x);
        if !v.is_finite() && self.failure.is_none() {
            self.failure = Some(NumericError::NonFinite { at: x });
        }
        v
    }

    // Classic adaptive Simpson with the Richardson correction term. `whole`
    // is Simpson over [lo, hi]; fm the midpoint value.
    fn refine(
        &mut self,
        lo: f64,
        hi: f64,
        flo: f64,
        fm: f64,
        fhi: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (lo + hi);
        let lm = 0.5 * (lo + mid);
        let rm = 0.5 * (mid + hi);
        let flm = self.eval(lm);
        let frm = self.eval(rm);
        let h = hi - lo;
        let left = h * (flo + 4.0 * flm + fm) / 12.0;
        let right = h * (fm + 4.0 * frm + fhi) / 12.0;
        let split = left + right;
        let delta = split - whole;
        if delta.abs() <= 15.0 * eps || mid <= lo || mid >= hi {
            return split + delta / 15.0;
        }
        if depth >= self.max_depth {
            if self.failure.is_none() {
                self.failure = Some(NumericError::DepthExhausted { lo, hi });
            }
            return split + delta / 15.0;
        }
        self.refine(lo, mid, flo, flm, fm, left, 0.5 * eps, depth + 1)
            + self.refine(mid, hi, fm, frm, fhi, right, 0.5 * eps, depth + 1)
    }
}

/// Integrates `f` over `[lo, hi]` (`lo <= hi`) adaptively.
///
/// The local acceptance threshold starts at
/// `max(abs_tol, rel_tol * |first estimate|)` and halves with each split.
pub(crate) fn adaptive_simpson<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
) -> Result<f64, NumericError> {
    if lo == hi {
        return Ok(0.0);
    }
    let mut state = SimpsonState {
        f: &mut f,
        max_depth,
        failure: None,
    };
    let mid = 0.5 * (lo + hi);
    let flo = state.eval(lo);
    let fm = state.eval(mid);
    let fhi = state.eval(hi);
    let whole = (hi - lo) * (flo + 4.0 * fm + fhi) / 6.0;
    let eps = abs_tol.max(rel_tol * whole.abs());
    let value = state.refine(lo, hi, flo, fm, fhi, whole, eps, 0);
    match state.failure {
        Some(err) => Err(err),
        None if !value.is_finite() => Err(NumericError::NonFinite { at: mid }),
        None => Ok(value),
    }
}

/// One-sided difference quotient of `f` at `t`, extrapolated to step zero.
///
/// `room` is how far `f` may be sampled on the chosen side (positive
/// direction = `dir`), `h0` the initial step. Steps grow geometrically from
/// `h0` while they fit into `room` (shrinking instead when there is no room
/// to grow), and a Neville table extrapolates the quotients to h -> 0. The
/// quotient sequence must settle within `max(abs_tol, rel_tol * |value|)`.
pub(crate) fn one_sided_derivative<F: FnMut(f64) -> f64>(
    mut f: F,
    t: f64,
    dir: f64,
    room: f64,
    h0: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64, NumericError> {
    const MAX_NODES: usize = 12;
    debug_assert!(room > 0.0 && h0 > 0.0);
    let h0 = h0.min(room);
    // Growing steps keep the rounding floor of the smallest quotient while
    // cancelling the truncation terms; fall back to shrinking when the point
    // sits too close to the segment edge.
    let ratio = if h0 * 2.0 <= room { 2.0 } else { 0.5 };
    let ft = f(t);
    if !ft.is_finite() {
        return Err(NumericError::NonFinite { at: t });
    }

    let mut steps: Vec<f64> = Vec::with_capacity(MAX_NODES);
    let mut diag: Vec<f64> = Vec::with_capacity(MAX_NODES);
    let mut prev_best: Option<f64> = None;

    let mut h = h0;
    for _ in 0..MAX_NODES {
        let x = t + dir * h;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(NumericError::NonFinite { at: x });
        }
        let quotient = (fx - ft) / (dir * h);
        steps.push(h);
        diag.push(quotient);
        // Neville update: diag[j] becomes the degree-(i-j) extrapolation at
        // h = 0 using nodes steps[j..=i].
        let i = diag.len() - 1;
        for j in (0..i).rev() {
            let num = steps[j] * diag[j + 1] - steps[i] * diag[j];
            diag[j] = num / (steps[j] - steps[i]);
        }
        let best = diag[0];
        if let Some(prev) = prev_best {
            let tol = abs_tol.max(rel_tol * best.abs());
            if (best - prev).abs() <= tol {
                return Ok(best);
            }
        }
        prev_best = Some(best);
        let next = h * ratio;
        h = if ratio > 1.0 && next > room { h * 0.5 } else { next };
        if h <= 0.0 || !h.is_finite() {
            break;
        }
    }
    // Smooth functions settle in a handful of nodes; report the stall rather
    // than returning a noisy table entry.
    Err(NumericError::NoConvergence { at: t })
}
