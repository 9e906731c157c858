//! Leggett-Garg kernels at the equally spaced times `0, tau, 2 tau, 3 tau`.
//!
//! Conventions, fixed throughout the crate:
//!
//! - LG2: `1 + s1 <Q_i> + s2 <Q_j> + s1 s2 C_ij >= 0` (equal to `4 q(s1, s2)`),
//!   for the pairs `(1,2)`, `(2,3)`, `(1,3)` in that order, each with signs
//!   `++`, `+-`, `-+`, `--`.
//! - LG3: `L1 = 1 + C12 + C23 + C13`, `L2 = 1 - C12 - C23 + C13`,
//!   `L3 = 1 + C12 - C23 - C13`, `L4 = 1 - C12 + C23 - C13`, all `>= 0`.
//! - LG4: `K_j` is `C12 + C23 + C34 + C14` with the sign of term `j`
//!   flipped; the eight kernels are `K_1..K_4, -K_1..-K_4`, all `<= 2`.
//!
//! A kernel counts as violated only when it crosses its bound by more
//! than [`VIOLATION_TOLERANCE`].

use alloc::vec::Vec;
use core::fmt;

use crate::correlators::{MomentData, TwoTimeModel};
use crate::{Error, Result};

/// Slack before a kernel counts as violated.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;
/// Quantum lower limit of the LG3 kernels.
pub const LUDERS_BOUND: f64 = -0.5;
/// Classical upper limit of the LG4 kernels.
pub const LG4_BOUND: f64 = 2.0;

/// Labels of the twelve LG2 kernels, in [`lg2_set`] order.
pub const LG2_LABELS: [&str; 12] = [
    "lg2_12_pp", "lg2_12_pm", "lg2_12_mp", "lg2_12_mm", "lg2_23_pp", "lg2_23_pm", "lg2_23_mp", "lg2_23_mm",
    "lg2_13_pp", "lg2_13_pm", "lg2_13_mp", "lg2_13_mm",
];
/// Labels of the four LG3 kernels.
pub const LG3_LABELS: [&str; 4] = ["L1", "L2", "L3", "L4"];
/// Labels of the eight LG4 kernels, in [`lg4_set`] order.
pub const LG4_LABELS: [&str; 8] = [
    "lg4_m1", "lg4_m2", "lg4_m3", "lg4_m4", "lg4_p1", "lg4_p2", "lg4_p3", "lg4_p4",
];

const SIGNS: [(f64, f64); 4] = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];

/// The twelve LG2 kernels from the moments of the pairs `(1,2)`, `(2,3)`
/// and `(1,3)`.
pub fn lg2_set(m12: &MomentData, m23: &MomentData, m13: &MomentData) -> [f64; 12] {
    let mut out = [0.0; 12];
    for (p, m) in [m12, m23, m13].into_iter().enumerate() {
        for (s, (s1, s2)) in SIGNS.into_iter().enumerate() {
            out[4 * p + s] = 1.0 + s1 * m.q1 + s2 * m.q2 + s1 * s2 * m.c12;
        }
    }
    out
}

/// `L1..L4`.
pub fn lg3_set(c12: f64, c23: f64, c13: f64) -> [f64; 4] {
    [
        1.0 + c12 + c23 + c13,
        1.0 - c12 - c23 + c13,
        1.0 + c12 - c23 - c13,
        1.0 - c12 + c23 - c13,
    ]
}

/// `K_1..K_4, -K_1..-K_4`.
pub fn lg4_set(c12: f64, c23: f64, c34: f64, c14: f64) -> [f64; 8] {
    let terms = [c12, c23, c34, c14];
    let total: f64 = terms.iter().sum();
    let mut out = [0.0; 8];
    for j in 0..4 {
        let k = total - 2.0 * terms[j];
        out[j] = k;
        out[j + 4] = -k;
    }
    out
}

/// Generic `n`-time kernels over the correlator cycle
/// `[C12, C23, .., C_{n-1,n}, C_{1n}]`: `sum_i sigma_i C_i` for every sign
/// vector with an odd number of minus signs, in increasing order of the
/// sign bitmask (bit `i` set means a minus on term `i`). Macrorealism
/// requires each to be at most `n - 2`.
pub fn lgn_kernels(cycle: &[f64]) -> Result<Vec<f64>> {
    let n = cycle.len();
    if n < 3 {
        return Err(Error::invalid("cycle", "needs at least three correlators"));
    }
    if n > 20 {
        return Err(Error::invalid("cycle", "at most twenty correlators"));
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u32..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            out.push(
                cycle
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if mask >> i & 1 == 1 { -c } else { *c })
                    .sum(),
            );
        }
    }
    Ok(out)
}

/// Table 1 regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// No LG2 or LG3 violation.
    I,
    /// LG3 violated, LG2 satisfied.
    II,
    /// LG2 violated, LG3 satisfied.
    III,
    /// Both violated.
    IV,
}

impl Regime {
    /// Classify from the two aggregate violation flags.
    pub fn from_flags(lg2_violated: bool, lg3_violated: bool) -> Self {
        match (lg2_violated, lg3_violated) {
            (false, false) => Regime::I,
            (false, true) => Regime::II,
            (true, false) => Regime::III,
            (true, true) => Regime::IV,
        }
    }

    /// Roman numeral.
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::I => "I",
            Regime::II => "II",
            Regime::III => "III",
            Regime::IV => "IV",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All kernels at one `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgPoint {
    /// Spacing between measurement times.
    pub tau: f64,
    /// `C(0, tau)`, the two-time correlator at this spacing.
    pub correlator: f64,
    /// Twelve LG2 kernels.
    pub lg2: [f64; 12],
    /// Four LG3 kernels.
    pub lg3: [f64; 4],
    /// Eight LG4 kernels.
    pub lg4: [f64; 8],
}

fn min_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max_of(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

impl LgPoint {
    /// Kernels from single-time means at `0, tau, 2 tau, 3 tau` and the
    /// correlators `C12, C23, C13, C34, C14`.
    pub fn from_parts(tau: f64, means: [f64; 4], c12: f64, c23: f64, c13: f64, c34: f64, c14: f64) -> Self {
        let (t1, t2, t3) = (0.0, tau, 2.0 * tau);
        let m12 = MomentData::from_moments(t1, t2, means[0], means[1], c12);
        let m23 = MomentData::from_moments(t2, t3, means[1], means[2], c23);
        let m13 = MomentData::from_moments(t1, t3, means[0], means[2], c13);
        LgPoint {
            tau,
            correlator: c12,
            lg2: lg2_set(&m12, &m23, &m13),
            lg3: lg3_set(c12, c23, c13),
            lg4: lg4_set(c12, c23, c34, c14),
        }
    }

    /// Kernels for a stationary state with constant mean `mean` and
    /// correlator values `C(tau)`, `C(2 tau)`, `C(3 tau)`.
    pub fn stationary(tau: f64, mean: f64, c1: f64, c2: f64, c3: f64) -> Self {
        Self::from_parts(tau, [mean; 4], c1, c1, c2, c1, c3)
    }

    /// Evaluate a model at `0, tau, 2 tau, 3 tau`.
    pub fn evaluate<M: TwoTimeModel + ?Sized>(model: &M, tau: f64) -> Self {
        if model.is_stationary() {
            return Self::stationary(
                tau,
                model.mean(0.0),
                model.correlator(0.0, tau),
                model.correlator(0.0, 2.0 * tau),
                model.correlator(0.0, 3.0 * tau),
            );
        }
        let t = [0.0, tau, 2.0 * tau, 3.0 * tau];
        let means = [model.mean(t[0]), model.mean(t[1]), model.mean(t[2]), model.mean(t[3])];
        Self::from_parts(
            tau,
            means,
            model.correlator(t[0], t[1]),
            model.correlator(t[1], t[2]),
            model.correlator(t[0], t[2]),
            model.correlator(t[2], t[3]),
            model.correlator(t[0], t[3]),
        )
    }

    /// Smallest LG2 kernel.
    pub fn min_lg2(&self) -> f64 {
        min_of(&self.lg2)
    }

    /// Smallest LG3 kernel.
    pub fn min_lg3(&self) -> f64 {
        min_of(&self.lg3)
    }

    /// Largest LG4 kernel.
    pub fn max_lg4(&self) -> f64 {
        max_of(&self.lg4)
    }

    /// Violation flags at this point.
    pub fn flags(&self) -> LgFlags {
        LgFlags {
            lg2: self.min_lg2() < -VIOLATION_TOLERANCE,
            lg3: self.min_lg3() < -VIOLATION_TOLERANCE,
            lg4: self.max_lg4() > LG4_BOUND + VIOLATION_TOLERANCE,
        }
    }
}

/// Per-family violation flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LgFlags {
    /// Some LG2 kernel below zero.
    pub lg2: bool,
    /// Some LG3 kernel below zero.
    pub lg3: bool,
    /// Some LG4 kernel above two.
    pub lg4: bool,
}

impl LgFlags {
    /// Component-wise or.
    pub fn union(self, other: Self) -> Self {
        LgFlags {
            lg2: self.lg2 || other.lg2,
            lg3: self.lg3 || other.lg3,
            lg4: self.lg4 || other.lg4,
        }
    }
}

/// A value and the `tau` where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    /// Extreme value.
    pub value: f64,
    /// Where it occurs.
    pub tau: f64,
}

/// Extremes of each family over a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgSummary {
    /// Smallest LG2 kernel.
    pub min_lg2: Extremum,
    /// Smallest LG3 kernel.
    pub min_lg3: Extremum,
    /// Largest LG4 kernel.
    pub max_lg4: Extremum,
    /// Smallest two-time correlator.
    pub min_correlator: Extremum,
}

/// Kernels over a `tau` scan with aggregate flags and the regime.
/// A family counts as violated if it is violated at any scanned point.
#[derive(Debug, Clone, PartialEq)]
pub struct LgReport {
    /// Per-`tau` kernels.
    pub points: Vec<LgPoint>,
    /// Aggregate flags.
    pub flags: LgFlags,
    /// Regime from the LG2/LG3 flags.
    pub regime: Regime,
    /// Extremes.
    pub summary: LgSummary,
}

impl LgReport {
    /// Aggregate a non-empty list of points.
    pub fn from_points(points: Vec<LgPoint>) -> Result<Self> {
        let first = points
            .first()
            .ok_or(Error::invalid("points", "report needs at least one point"))?;
        let ext = |v: f64| Extremum { value: v, tau: first.tau };
        let mut summary = LgSummary {
            min_lg2: ext(first.min_lg2()),
            min_lg3: ext(first.min_lg3()),
            max_lg4: ext(first.max_lg4()),
            min_correlator: ext(first.correlator),
        };
        let mut flags = LgFlags::default();
        for p in &points {
            flags = flags.union(p.flags());
            if p.min_lg2() < summary.min_lg2.value {
                summary.min_lg2 = Extremum { value: p.min_lg2(), tau: p.tau };
            }
            if p.min_lg3() < summary.min_lg3.value {
                summary.min_lg3 = Extremum { value: p.min_lg3(), tau: p.tau };
            }
            if p.max_lg4() > summary.max_lg4.value {
                summary.max_lg4 = Extremum { value: p.max_lg4(), tau: p.tau };
            }
            if p.correlator < summary.min_correlator.value {
                summary.min_correlator = Extremum { value: p.correlator, tau: p.tau };
            }
        }
        Ok(LgReport {
            points,
            regime: regime_classify(flags),
            flags,
            summary,
        })
    }

    /// Evaluate `model` at every `tau` in `taus`.
    pub fn evaluate<M: TwoTimeModel + ?Sized>(model: &M, taus: &[f64]) -> Result<Self> {
        Self::from_points(taus.iter().map(|&t| LgPoint::evaluate(model, t)).collect())
    }

    /// Deepest LG3 value as a fraction of the Lüders bound (0 if none).
    pub fn luders_fraction(&self) -> f64 {
        luders_fraction(self.summary.min_lg3.value)
    }
}

/// `max(0, min_lg3) / (-1/2)` expressed as a non-negative fraction.
pub fn luders_fraction(min_lg3: f64) -> f64 {
    (min_lg3 / LUDERS_BOUND).max(0.0)
}

/// Regime from aggregate flags.
pub fn regime_classify(flags: LgFlags) -> Regime {
    Regime::from_flags(flags.lg2, flags.lg3)
}
