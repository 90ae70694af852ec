//! Time scales represented as finite unions of disjoint closed segments.
//!
//! A [`TimeScale`] is an ordered list of closed segments `[lo, hi]`; a segment
//! with `lo == hi` is an isolated point. This class covers every scale used by
//! the verification harness (real intervals, integer windows, q-lattices and
//! arbitrary mixtures) while keeping membership and the jump operators exactly
//! computable.

use thiserror::Error;

/// Relative tolerance used to match a query point against a stored endpoint.
///
/// Lattice points such as powers of q are computed in floating point, so exact
/// equality is too strict at endpoints. Interior containment uses plain
/// comparisons.
pub const MEMBERSHIP_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum ScaleError {
    #[error("time scale needs at least one segment")]
    EmptyScale,
    #[error("segment has lo > hi: ({lo}, {hi})")]
    UnorderedSegment { lo: f64, hi: f64 },
    #[error("segment endpoint is not finite: {value}")]
    NonFiniteEndpoint { value: f64 },
    #[error("window is empty or reversed: ({lo}, {hi})")]
    DegenerateWindow { lo: f64, hi: f64 },
    #[error("lattice base must be > 1, got {q}")]
    BadBase { q: f64 },
    #[error("point {t} does not belong to the time scale")]
    PointNotInScale { t: f64 },
}

/// One maximal closed segment `[lo, hi]` of a time scale (`lo == hi` is an
/// isolated point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Dense-or-scattered classification of one side of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Dense,
    Scattered,
}

/// How a point sits inside its scale: whether the forward/backward jump moves
/// it, and whether it is an extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClass {
    pub right: Side,
    pub left: Side,
    pub is_min: bool,
    pub is_max: bool,
}

impl PointClass {
    pub fn is_isolated(&self) -> bool {
        self.right == Side::Scattered && self.left == Side::Scattered
    }

    pub fn is_dense(&self) -> bool {
        self.right == Side::Dense && self.left == Side::Dense
    }
}

fn endpoint_tol(p: f64) -> f64 {
    MEMBERSHIP_EPS * p.abs().max(1.0)
}

/// An ordered finite union of disjoint closed segments and isolated points.
///
/// Immutable after construction; every operation is pure, so values can be
/// shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    segments: Vec<Segment>,
}

impl TimeScale {
    /// Builds a scale from raw `(lo, hi)` pairs.
    ///
    /// Segments are sorted and validated; overlapping or touching segments
    /// (endpoints closer than the membership tolerance) merge into one, which
    /// preserves closed-set semantics.
    pub fn from_segments<I>(segments: I) -> Result<Self, ScaleError>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut raw: Vec<Segment> = Vec::new();
        for (lo, hi) in segments {
            if !lo.is_finite() {
                return Err(ScaleError::NonFiniteEndpoint { value: lo });
            }
            if !hi.is_finite() {
                return Err(ScaleError::NonFiniteEndpoint { value: hi });
            }
            if lo > hi {
                return Err(ScaleError::UnorderedSegment { lo, hi });
            }
            raw.push(Segment { lo, hi });
        }
        if raw.is_empty() {
            return Err(ScaleError::EmptyScale);
        }
        raw.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Segment> = Vec::with_capacity(raw.len());
        for seg in raw {
            match merged.last_mut() {
                Some(last) if seg.lo <= last.hi + endpoint_tol(last.hi) => {
                    last.hi = last.hi.max(seg.hi);
                }
                _ => merged.push(seg),
            }
        }
        Ok(TimeScale { segments: merged })
    }

    /// The integer window `{a, a+1, ..., b}` as isolated points.
    pub fn integers(a: i64, b: i64) -> Result<Self, ScaleError> {
        if a >= b {
            return Err(ScaleError::DegenerateWindow {
                lo: a as f64,
                hi: b as f64,
            });
        }
        Self::from_segments((a..=b).map(|k| (k as f64, k as f64)))
    }

    /// The lattice `{q^m, q^{m+1}, ..., q^n}` of powers of `q > 1`.
    pub fn q_lattice(q: f64, m: i32, n: i32) -> Result<Self, ScaleError> {
        if !(q > 1.0) || !q.is_finite() {
            return Err(ScaleError::BadBase { q });
        }
        if m >= n {
            return Err(ScaleError::DegenerateWindow {
                lo: m as f64,
                hi: n as f64,
            });
        }
        Self::from_segments((m..=n).map(|k| {
            let p = q.powi(k);
            (p, p)
        }))
    }

    /// The single dense segment `[a, b]`.
    pub fn interval(a: f64, b: f64) -> Result<Self, ScaleError> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(ScaleError::DegenerateWindow { lo: a, hi: b });
        }
        Self::from_segments([(a, b)])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Minimum of the scale.
    pub fn min(&self) -> f64 {
        self.segments[0].lo
    }

    /// Maximum of the scale.
    pub fn max(&self) -> f64 {
        self.segments[self.segments.len() - 1].hi
    }

    /// Locates `t` in the scale, snapping onto an endpoint when it matches
    /// within the membership tolerance. Returns the segment index and the
    /// canonical (snapped) coordinate.
    pub(crate) fn resolve(&self, t: f64) -> Option<(usize, f64)> {
        if !t.is_finite() {
            return None;
        }
        for (i, seg) in self.segments.iter().enumerate() {
            if (t - seg.lo).abs() <= endpoint_tol(seg.lo) {
                return Some((i, seg.lo));
            }
            if (t - seg.hi).abs() <= endpoint_tol(seg.hi) {
                return Some((i, seg.hi));
            }
            if t > seg.lo && t < seg.hi {
                return Some((i, t));
            }
            if t < seg.lo {
                break;
            }
        }
        None
    }

    /// Exact membership test (endpoints matched within the membership
    /// tolerance).
    pub fn contains(&self, t: f64) -> bool {
        self.resolve(t).is_some()
    }

    /// Snaps `t` onto its canonical in-scale coordinate.
    pub fn canonical(&self, t: f64) -> Result<f64, ScaleError> {
        self.resolve(t)
            .map(|(_, p)| p)
            .ok_or(ScaleError::PointNotInScale { t })
    }

    /// Forward jump operator: the nearest strict successor within the scale,
    /// with `sigma(max) = max`.
    pub fn sigma(&self, t: f64) -> Result<f64, ScaleError> {
        let (i, p) = self
            .resolve(t)
            .ok_or(ScaleError::PointNotInScale { t })?;
        let seg = self.segments[i];
        if p < seg.hi {
            Ok(p)
        } else if i + 1 < self.segments.len() {
            Ok(self.segments[i + 1].lo)
        } else {
            Ok(p)
        }
    }

    /// Backward jump operator: the nearest strict predecessor within the
    /// scale, with `rho(min) = min`.
    pub fn rho(&self, t: f64) -> Result<f64, ScaleError> {
        let (i, p) = self
            .resolve(t)
            .ok_or(ScaleError::PointNotInScale { t })?;
        let seg = self.segments[i];
        if p > seg.lo {
            Ok(p)
        } else if i > 0 {
            Ok(self.segments[i - 1].hi)
        } else {
            Ok(p)
        }
    }

    /// Forward graininess `sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64, ScaleError> {
        let p = self.canonical(t)?;
        Ok(self.sigma(p)? - p)
    }

    /// Backward graininess `t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64, ScaleError> {
        let p = self.canonical(t)?;
        Ok(p - self.rho(p)?)
    }

    /// Classifies `t` as dense/scattered on each side.
    pub fn classify(&self, t: f64) -> Result<PointClass, ScaleError> {
        let p = self.canonical(t)?;
        let right = if self.sigma(p)? > p {
            Side::Scattered
        } else {
            Side::Dense
        };
        let left = if self.rho(p)? < p {
            Side::Scattered
        } else {
            Side::Dense
        };
        Ok(PointClass {
            right,
            left,
            is_min: p == self.min(),
            is_max: p == self.max(),
        })
    }

    /// True when `t` belongs to the derived scale on which delta derivatives
    /// exist: every point except a left-scattered maximum.
    pub fn in_kappa(&self, t: f64) -> Result<bool, ScaleError> {
        let c = self.classify(t)?;
        Ok(!(c.is_max && c.left == Side::Scattered))
    }

    /// All right-scattered points, in increasing order. These are exactly the
    /// segment right-endpoints that have a successor segment.
    pub fn right_scattered_points(&self) -> Vec<f64> {
        self.segments[..self.segments.len() - 1]
            .iter()
            .map(|seg| seg.hi)
            .collect()
    }

    /// Segments of positive length, in increasing order.
    pub fn dense_segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.segments.iter().copied().filter(|s| !s.is_point())
    }

    /// A short human-readable summary, e.g. `[0,1] u {2} u [3,4]`.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| {
                if s.is_point() {
                    format!("{{{}}}", s.lo)
                } else {
                    format!("[{},{}]", s.lo, s.hi)
                }
            })
            .collect();
        parts.join(" u ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_sorts_and_merges() {
        let ts = TimeScale::from_segments([(3.0, 4.0), (0.0, 1.0), (2.0, 2.0)]).unwrap();
        assert_eq!(ts.segments().len(), 3);
        assert_eq!(ts.min(), 0.0);
        assert_eq!(ts.max(), 4.0);

        let merged = TimeScale::from_segments([(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(merged.segments(), &[Segment { lo: 0.0, hi: 2.0 }]);

        let overlap = TimeScale::from_segments([(0.0, 1.5), (1.0, 2.0)]).unwrap();
        assert_eq!(overlap.segments(), &[Segment { lo: 0.0, hi: 2.0 }]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            TimeScale::from_segments([(1.0, 0.0)]),
            Err(ScaleError::UnorderedSegment { lo: 1.0, hi: 0.0 })
        );
        assert_eq!(
            TimeScale::from_segments(std::iter::empty()),
            Err(ScaleError::EmptyScale)
        );
        assert!(matches!(
            TimeScale::from_segments([(f64::NAN, 1.0)]),
            Err(ScaleError::NonFiniteEndpoint { .. })
        ));
        assert!(matches!(
            TimeScale::integers(5, 5),
            Err(ScaleError::DegenerateWindow { .. })
        ));
        assert!(matches!(
            TimeScale::q_lattice(1.0, 0, 3),
            Err(ScaleError::BadBase { .. })
        ));
        assert!(matches!(
            TimeScale::q_lattice(2.0, 2, 2),
            Err(ScaleError::DegenerateWindow { .. })
        ));
        assert!(matches!(
            TimeScale::interval(1.0, 1.0),
            Err(ScaleError::DegenerateWindow { .. })
        ));
    }

    #[test]
    fn canonical_constructors() {
        let z = TimeScale::integers(0, 5).unwrap();
        assert_eq!(z.segments().len(), 6);
        assert!(z.segments().iter().all(Segment::is_point));

        let q = TimeScale::q_lattice(2.0, 0, 2).unwrap();
        let pts: Vec<f64> = q.segments().iter().map(|s| s.lo).collect();
        assert_eq!(pts, vec![1.0, 2.0, 4.0]);

        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(r.segments(), &[Segment { lo: 0.0, hi: 1.0 }]);
    }

    #[test]
    fn jump_operators_on_integers() {
        let z = TimeScale::integers(0, 5).unwrap();
        assert_eq!(z.sigma(3.0).unwrap(), 4.0);
        assert_eq!(z.rho(3.0).unwrap(), 2.0);
        assert_eq!(z.mu(3.0).unwrap(), 1.0);
        assert_eq!(z.sigma(5.0).unwrap(), 5.0);
        assert_eq!(z.rho(0.0).unwrap(), 0.0);
    }

    #[test]
    fn jump_operators_on_mixed_scale() {
        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
        assert_eq!(ts.sigma(1.0).unwrap(), 2.0);
        assert_eq!(ts.rho(3.0).unwrap(), 2.0);
        assert_eq!(ts.sigma(0.5).unwrap(), 0.5);
        assert_eq!(ts.rho(0.5).unwrap(), 0.5);
    }

    #[test]
    fn sigma_max_convention() {
        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(r.sigma(1.0).unwrap(), 1.0);
        assert_eq!(r.mu(1.0).unwrap(), 0.0);
    }

    #[test]
    fn graininess_on_q_lattice() {
        let q = TimeScale::q_lattice(2.0, 0, 2).unwrap();
        // mu(q^k) = (q-1) q^k
        assert_eq!(q.mu(2.0).unwrap(), 2.0);
        assert_eq!(q.nu(2.0).unwrap(), 1.0);
    }

    #[test]
    fn membership_tolerance_snaps_endpoints() {
        let q = TimeScale::q_lattice(2.0, 0, 2).unwrap();
        let off = 2.0 + 1e-13;
        assert!(q.contains(off));
        assert_eq!(q.canonical(off).unwrap(), 2.0);
        assert_eq!(q.sigma(off).unwrap(), 4.0);
        assert!(!q.contains(3.0));
        assert_eq!(
            q.sigma(3.0),
            Err(ScaleError::PointNotInScale { t: 3.0 })
        );
    }

    #[test]
    fn classification() {
        let z = TimeScale::integers(0, 5).unwrap();
        let c = z.classify(3.0).unwrap();
        assert!(c.is_isolated());
        assert!(!c.is_min && !c.is_max);

        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert!(r.classify(0.5).unwrap().is_dense());

        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
        let c = ts.classify(1.0).unwrap();
        assert_eq!(c.left, Side::Dense);
        assert_eq!(c.right, Side::Scattered);

        // The maximum is right-dense under the sigma(max) = max convention.
        assert_eq!(ts.classify(2.0).unwrap().right, Side::Dense);
        assert!(ts.classify(2.0).unwrap().is_max);
    }

    #[test]
    fn kappa_set() {
        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0)]).unwrap();
        assert!(!ts.in_kappa(2.0).unwrap());
        assert!(ts.in_kappa(1.0).unwrap());
        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert!(r.in_kappa(1.0).unwrap());
    }

    #[test]
    fn construction_idempotence() {
        let ts = TimeScale::from_segments([(0.0, 1.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
        let again =
            TimeScale::from_segments(ts.segments().iter().map(|s| (s.lo, s.hi))).unwrap();
        assert_eq!(ts, again);
    }
}
