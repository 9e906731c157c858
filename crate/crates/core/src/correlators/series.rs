use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{MomentData, TwoTimeModel};
use crate::eigensystems::BoundSystem;
use crate::overlaps::{select_row, Cutoff, Interval, OverlapRow, Region};
use crate::{Error, Result};

/// Truncation error above which series results are flagged.
pub const TRUNCATION_WARNING: f64 = 1e-2;

// Re-seed the phase rotation this often to bound accumulated rounding.
const RESEED: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
enum Rates {
    /// `omega_k - omega_n = (k - n) h`.
    Uniform { spacing: f64 },
    /// `omega_k - omega_n` listed per term.
    Explicit(Vec<f64>),
}

/// `Re sum_k c_k exp(-i (omega_k - omega_n) tau)` for real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSum {
    n: usize,
    coeffs: Vec<f64>,
    rates: Rates,
}

impl PhaseSum {
    /// Phases from the system's level frequencies relative to level `n`.
    pub fn new<S: BoundSystem + ?Sized>(sys: &S, n: usize, coeffs: Vec<f64>) -> Self {
        let rates = match sys.level_spacing() {
            Some(spacing) => Rates::Uniform { spacing },
            None => {
                let base = sys.frequency(n);
                Rates::Explicit((0..coeffs.len()).map(|k| sys.frequency(k) - base).collect())
            }
        };
        PhaseSum { n, coeffs, rates }
    }

    /// Coefficients `c_k`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Recurrence period `2 pi / h` for an equally spaced spectrum.
    pub fn period(&self) -> Option<f64> {
        match self.rates {
            Rates::Uniform { spacing } => Some(TAU / spacing),
            Rates::Explicit(_) => None,
        }
    }

    /// Value at one time difference `tau`. Cost is linear in the number of
    /// terms.
    pub fn eval(&self, tau: f64) -> f64 {
        match &self.rates {
            Rates::Explicit(rates) => self.coeffs.iter().zip(rates).map(|(c, r)| c * (r * tau).cos()).sum(),
            Rates::Uniform { spacing } => {
                let theta = spacing * tau;
                let (step_s, step_c) = theta.sin_cos();
                let mut total = 0.0;
                for (block, chunk) in self.coeffs.chunks(RESEED).enumerate() {
                    let k0 = (block * RESEED) as f64 - self.n as f64;
                    let (mut s, mut c) = (k0 * theta).sin_cos();
                    for &coef in chunk {
                        total += coef * c;
                        let next_c = c * step_c - s * step_s;
                        s = s * step_c + c * step_s;
                        c = next_c;
                    }
                }
                total
            }
        }
    }

    /// Values at `tau_j = period * j / count`, `j = 0..count`.
    ///
    /// Terms are folded by `(k - n) mod count` first, which is exact on this
    /// grid, so the cost is `O(terms + count^2)` regardless of the cutoff.
    pub fn eval_periodic(&self, count: usize) -> Result<Vec<f64>> {
        if !matches!(self.rates, Rates::Uniform { .. }) {
            return Err(Error::IncommensurateSpectrum);
        }
        if count == 0 {
            return Err(Error::invalid("count", "grid needs at least one point"));
        }
        let mut folded = alloc::vec![0.0; count];
        let n = self.n as i64;
        let modulus = count as i64;
        for (k, &c) in self.coeffs.iter().enumerate() {
            folded[(k as i64 - n).rem_euclid(modulus) as usize] += c;
        }
        let cos_table: Vec<f64> = (0..count).map(|i| (TAU * i as f64 / count as f64).cos()).collect();
        Ok((0..count)
            .map(|j| {
                let mut acc = 0.0;
                let mut idx = 0usize;
                for &a in &folded {
                    acc += a * cos_table[idx];
                    idx += j;
                    if idx >= count {
                        idx -= count;
                    }
                }
                acc
            })
            .collect())
    }
}

/// Truncated eigenbasis series for a stationary state `|n>` measured with
/// `Q = sgn(x - x_c)`:
///
/// `q(+,+)(tau) = Re sum_k exp(-i (omega_k - omega_n) tau) J_nk^2`,
/// with `J` over `[x_c, inf)`, `<Q> = 2 J_nn - 1` and
/// `C = 4 q(+,+) - 1 - 2 <Q>`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSeries {
    sum: PhaseSum,
    mean: f64,
    truncation_error: f64,
}

impl EigenSeries {
    /// Series for `|n>` with the cutoff chosen by `cutoff`.
    pub fn new<S: BoundSystem + ?Sized>(sys: &S, n: usize, cutoff: Cutoff) -> Result<Self> {
        let right = Region::from(Interval::upper(sys.split_point())?);
        let row = select_row(sys, n, &right, cutoff)?;
        Ok(Self::from_row(sys, &row))
    }

    /// Series for `|n>` keeping states `0..=m`.
    pub fn with_cutoff<S: BoundSystem + ?Sized>(sys: &S, n: usize, m: usize) -> Result<Self> {
        Self::new(sys, n, Cutoff::Fixed(m))
    }

    /// Series from a precomputed overlap row (sharp or smoothed projector).
    pub fn from_row<S: BoundSystem + ?Sized>(sys: &S, row: &OverlapRow) -> Self {
        let coeffs = row.values().iter().map(|j| j * j).collect();
        EigenSeries {
            sum: PhaseSum::new(sys, row.state(), coeffs),
            mean: 2.0 * row.diagonal() - 1.0,
            truncation_error: row.truncation_error(),
        }
    }

    /// Eigenstate index.
    pub fn state(&self) -> usize {
        self.sum.n
    }

    /// Largest retained state index.
    pub fn cutoff(&self) -> usize {
        self.sum.coeffs.len() - 1
    }

    /// Missing weight `J_nn - sum_k J_nk^2`.
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Time-independent `<Q>`.
    pub fn mean_value(&self) -> f64 {
        self.mean
    }

    /// Underlying phase sum.
    pub fn phase_sum(&self) -> &PhaseSum {
        &self.sum
    }

    /// `q(+,+)` at time difference `tau`.
    pub fn quasi_pp(&self, tau: f64) -> f64 {
        self.sum.eval(tau)
    }

    fn correlator_from_q(&self, q: f64) -> f64 {
        4.0 * q - 1.0 - 2.0 * self.mean
    }

    /// `C(tau)`.
    pub fn correlator_at(&self, tau: f64) -> f64 {
        self.correlator_from_q(self.quasi_pp(tau))
    }

    /// Correlator at `tau_j = period * j / count`; see
    /// [`PhaseSum::eval_periodic`].
    pub fn correlator_periodic(&self, count: usize) -> Result<Vec<f64>> {
        Ok(self
            .sum
            .eval_periodic(count)?
            .into_iter()
            .map(|q| self.correlator_from_q(q))
            .collect())
    }

    /// Recurrence period, if the spectrum is equally spaced.
    pub fn period(&self) -> Option<f64> {
        self.sum.period()
    }
}

impl TwoTimeModel for EigenSeries {
    fn mean(&self, _t: f64) -> f64 {
        self.mean
    }

    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        self.correlator_at(t2 - t1)
    }
    fn is_stationary(&self) -> bool {
        true
    }
}

/// Moments from a truncated series plus its quality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOutcome {
    /// Moments at `(0, tau)`.
    pub moments: MomentData,
    /// Truncation error of the series used.
    pub truncation_error: f64,
    /// Largest retained state index.
    pub cutoff: usize,
    /// Set when the truncation error exceeds [`TRUNCATION_WARNING`].
    pub warning: bool,
}

/// Two-time moments of eigenstate `n` at time difference `tau`.
pub fn series_quasiprob<S: BoundSystem + ?Sized>(sys: &S, n: usize, tau: f64, cutoff: Cutoff) -> Result<SeriesOutcome> {
    let series = EigenSeries::new(sys, n, cutoff)?;
    Ok(SeriesOutcome {
        moments: series.moments(0.0, tau),
        truncation_error: series.truncation_error(),
        cutoff: series.cutoff(),
        warning: series.truncation_error() > TRUNCATION_WARNING,
    })
}
