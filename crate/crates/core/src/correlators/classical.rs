use num_traits::Euclid;
use core::f64::consts::{PI, TAU};

use super::TwoTimeModel;

/// Correlator of `sgn x` for a classical oscillator with uniformly
/// distributed phase: the triangle wave `-1 + (2/pi) |pi - (tau mod 2 pi)|`.
pub fn classical_correlator(tau: f64) -> f64 {
    -1.0 + 2.0 / PI * (PI - Euclid::rem_euclid(&tau, &TAU)).abs()
}

/// Fourier partial sum of the triangle wave,
/// `(8/pi^2) sum_{k odd, k < 2 terms} cos(k tau) / k^2`.
pub fn triangle_wave_partial_sum(tau: f64, terms: usize) -> f64 {
    let sum: f64 = (0..terms)
        .map(|j| {
            let k = (2 * j + 1) as f64;
            (k * tau).cos() / (k * k)
        })
        .sum();
    8.0 / (PI * PI) * sum
}

/// The classical oscillator as a two-time model (zero mean).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassicalOscillator;

impl TwoTimeModel for ClassicalOscillator {
    fn mean(&self, _t: f64) -> f64 {
        0.0
    }

    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        classical_correlator(t2 - t1)
    }
    fn is_stationary(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_values() {
        assert_eq!(classical_correlator(0.0), 1.0);
        assert_eq!(classical_correlator(PI), -1.0);
        assert!(classical_correlator(0.5 * PI).abs() < 1e-15);
        assert!((classical_correlator(-0.3) - classical_correlator(0.3)).abs() < 1e-15);
    }

    #[test]
    fn fourier_series_converges() {
        for &tau in &[0.0, 0.4, 2.0, PI, 5.5] {
            let gap = (triangle_wave_partial_sum(tau, 2000) - classical_correlator(tau)).abs();
            assert!(gap < 1e-3, "tau={tau}: {gap}");
        }
    }
}
