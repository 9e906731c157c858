//! Two-time moments of the dichotomic variable `Q = sgn(x - x_c)`.
//!
//! Every model here reduces to the triple `(<Q(t1)>, <Q(t2)>, C_12)`; the
//! four quasi-probabilities follow from the moment expansion
//! `q(s1, s2) = (1 + s1 <Q1> + s2 <Q2> + s1 s2 C_12) / 4`.
//!
//! Sources of moments:
//!
//! - [`EigenSeries`]: a truncated eigenbasis sum for any [`BoundSystem`]
//!   eigenstate, evaluated pointwise or on a whole periodic grid at once.
//! - [`exact_qho_correlator`]: closed forms for oscillator states `0..=8`.
//! - [`SuperpositionState`]: `|0>`/`|1>` superpositions of the oscillator.
//! - [`RegionSeries`] and [`region_quasiprob`]: projectors onto arbitrary
//!   regions instead of half lines.
//! - [`classical_correlator`]: the triangle wave of a classical oscillator
//!   with uniformly distributed phase.

mod classical;
mod exact;
mod region;
mod series;
mod superposition;

pub use classical::{classical_correlator, triangle_wave_partial_sum, ClassicalOscillator};
pub use exact::{
    cosine_correlator, exact_qho_correlator, three_term_correlator, three_term_quasiprob, ExactEigenstate,
    EXACT_MAX_STATE,
};
pub use region::{region_quasiprob, RegionOutcome, RegionSeries};
pub use series::{series_quasiprob, EigenSeries, PhaseSum, SeriesOutcome, TRUNCATION_WARNING};
pub use superposition::{superposition_correlator, superposition_mean, superposition_moments};

use crate::eigensystems::{BoundSystem, SuperpositionState};
use crate::overlaps::{region_overlap, Interval, Region};
use crate::Result;

/// Outcome of a dichotomic measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `Q = +1`.
    Plus,
    /// `Q = -1`.
    Minus,
}

impl Sign {
    /// Both outcomes, `+` first.
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// `+1.0` or `-1.0`.
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// Moments of `Q` at two times and the quasi-probabilities built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentData {
    /// First measurement time (dimensionless phase).
    pub t1: f64,
    /// Second measurement time.
    pub t2: f64,
    /// `<Q(t1)>`.
    pub q1: f64,
    /// `<Q(t2)>`.
    pub q2: f64,
    /// Symmetrized correlator `C_12`.
    pub c12: f64,
    /// `q_table[i][j] = q(s1, s2)` with index 0 for `+`, 1 for `-`.
    pub q_table: [[f64; 2]; 2],
}

impl MomentData {
    /// Fill in the quasi-probabilities from the moments.
    pub fn from_moments(t1: f64, t2: f64, q1: f64, q2: f64, c12: f64) -> Self {
        let mut q_table = [[0.0; 2]; 2];
        for s1 in Sign::BOTH {
            for s2 in Sign::BOTH {
                q_table[s1.index()][s2.index()] =
                    0.25 * (1.0 + s1.value() * q1 + s2.value() * q2 + s1.value() * s2.value() * c12);
            }
        }
        MomentData {
            t1,
            t2,
            q1,
            q2,
            c12,
            q_table,
        }
    }

    /// `q(s1, s2)`.
    pub fn q(&self, s1: Sign, s2: Sign) -> f64 {
        self.q_table[s1.index()][s2.index()]
    }

    /// Smallest of the four quasi-probabilities.
    pub fn min_q(&self) -> f64 {
        self.q_table.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Anything that yields `<Q(t)>` and `C(t1, t2)`.
pub trait TwoTimeModel {
    /// `<Q(t)>`.
    fn mean(&self, t: f64) -> f64;

    /// `C(t1, t2) = Re <Q(t2) Q(t1)>`.
    fn correlator(&self, t1: f64, t2: f64) -> f64;

    /// Whether means and correlators depend only on time differences,
    /// letting callers evaluate `C(tau)` once per spacing.
    fn is_stationary(&self) -> bool {
        false
    }

    /// Both single-time means and the correlator.
    fn moments(&self, t1: f64, t2: f64) -> MomentData {
        MomentData::from_moments(t1, t2, self.mean(t1), self.mean(t2), self.correlator(t1, t2))
    }
}

impl<M: TwoTimeModel + ?Sized> TwoTimeModel for &M {
    fn mean(&self, t: f64) -> f64 {
        (**self).mean(t)
    }
    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        (**self).correlator(t1, t2)
    }
    fn is_stationary(&self) -> bool {
        (**self).is_stationary()
    }
}

impl TwoTimeModel for SuperpositionState {
    fn mean(&self, t: f64) -> f64 {
        superposition_mean(self, t)
    }

    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        superposition_moments(self, t1, t2).c12
    }
}

/// `<k| sgn(x - x_c) |l>` with `x_c` the system's split point.
pub fn sign_matrix_element<S: BoundSystem + ?Sized>(sys: &S, k: usize, l: usize) -> Result<f64> {
    let right = Region::from(Interval::upper(sys.split_point())?);
    let left = right.complement();
    Ok(region_overlap(sys, k, l, &right)? - region_overlap(sys, k, l, &left)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystems::QhoSystem;
    use core::f64::consts::PI;

    #[test]
    fn moment_expansion_sums_to_one() {
        let m = MomentData::from_moments(0.0, 1.0, 0.3, -0.6, -0.2);
        let total: f64 = m.q_table.iter().flatten().sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!((m.q(Sign::Plus, Sign::Plus) + m.q(Sign::Plus, Sign::Minus) - 0.5 * (1.0 + 0.3)).abs() < 1e-15);
        assert!((m.min_q() - m.q(Sign::Minus, Sign::Plus)).abs() < 1e-15);
    }

    #[test]
    fn ground_to_first_sign_element() {
        let v = sign_matrix_element(&QhoSystem, 0, 1).unwrap();
        assert!((v - (2.0 / PI).sqrt()).abs() < 1e-12);
        assert!(sign_matrix_element(&QhoSystem, 0, 2).unwrap().abs() < 1e-15);
        assert!(sign_matrix_element(&QhoSystem, 3, 3).unwrap().abs() < 1e-15);
    }
}
