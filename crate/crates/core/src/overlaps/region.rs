use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Closed interval `[lo, hi]` of the real line; `lo` may be `-inf` and `hi`
/// may be `+inf`. Endpoint inclusion is immaterial for overlaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// `[lo, hi]`; rejects NaN and `lo > hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::invalid("interval", "endpoints must not be NaN"));
        }
        if lo > hi {
            return Err(Error::invalid("interval", "lower endpoint exceeds upper"));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::invalid("interval", "interval lies at infinity"));
        }
        Ok(Interval { lo, hi })
    }

    /// `(-inf, inf)`.
    pub const fn full() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// `[x, inf)`.
    pub fn upper(x: f64) -> Result<Self> {
        Self::new(x, f64::INFINITY)
    }

    /// `(-inf, x]`.
    pub fn lower(x: f64) -> Result<Self> {
        Self::new(f64::NEG_INFINITY, x)
    }

    /// Lower endpoint.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Zero length.
    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Both endpoints infinite.
    pub fn is_full(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    /// Whether `x` lies in the interval.
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A finite union of disjoint intervals, kept sorted with touching or
/// overlapping pieces merged and empty pieces dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Region {
    intervals: Vec<Interval>,
}

impl Region {
    /// Normalize an arbitrary list of intervals into a region.
    pub fn new(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| !iv.is_empty());
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        Region { intervals: merged }
    }

    /// The empty region.
    pub fn empty() -> Self {
        Region::default()
    }

    /// The whole line.
    pub fn full() -> Self {
        Region {
            intervals: alloc::vec![Interval::full()],
        }
    }

    /// Region made of one interval.
    pub fn from_interval(iv: Interval) -> Self {
        Region::new(alloc::vec![iv])
    }

    /// Sorted disjoint pieces.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// No pieces.
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Whether `x` lies in the region.
    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Gaps between the pieces, including the unbounded ends.
    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = f64::NEG_INFINITY;
        for iv in &self.intervals {
            if iv.lo > cursor {
                out.push(Interval { lo: cursor, hi: iv.lo });
            }
            cursor = iv.hi;
        }
        if cursor < f64::INFINITY {
            out.push(Interval {
                lo: cursor,
                hi: f64::INFINITY,
            });
        }
        Region { intervals: out }
    }
}

impl From<Interval> for Region {
    fn from(iv: Interval) -> Self {
        Region::from_interval(iv)
    }
}
