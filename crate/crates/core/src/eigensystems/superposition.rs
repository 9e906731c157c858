use num_traits::Euclid;
use num_complex::Complex64;

use crate::{Error, Result};

/// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>` of the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionState {
    theta: f64,
    phi: f64,
}

impl SuperpositionState {
    /// `theta` in `[0, pi]`; `phi` is any finite angle (reduced to `[0, 2 pi)`).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=core::f64::consts::PI).contains(&theta) {
            return Err(Error::invalid("theta", "must lie in [0, pi]"));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", "must be finite"));
        }
        Ok(SuperpositionState {
            theta,
            phi: Euclid::rem_euclid(&phi, &core::f64::consts::TAU),
        })
    }

    /// Polar angle.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Relative phase in `[0, 2 pi)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(a, b)` with `a = cos(theta/2)` real and `b = e^{i phi} sin(theta/2)`.
    pub fn amplitudes(&self) -> (f64, Complex64) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (c, Complex64::from_polar(s, self.phi))
    }

    /// `(|a|^2, |b|^2)`.
    pub fn weights(&self) -> (f64, f64) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (c * c, s * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn amplitudes_are_normalized() {
        for &(t, p) in &[(0.0, 0.0), (0.7, PI), (1.4, 4.0), (PI, 6.0)] {
            let (a, b) = SuperpositionState::new(t, p).unwrap().amplitudes();
            assert!((a * a + b.norm_sqr() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_out_of_range_theta() {
        assert!(SuperpositionState::new(-0.1, 0.0).is_err());
        assert!(SuperpositionState::new(3.5, 0.0).is_err());
        assert!(SuperpositionState::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn phi_is_wrapped() {
        let s = SuperpositionState::new(1.0, -PI / 2.0).unwrap();
        assert!((s.phi() - 1.5 * PI).abs() < 1e-15);
    }
}
