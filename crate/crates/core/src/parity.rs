//! Two-time LG2 test with the parity operator on a gaussian state.
//!
//! Measure `Q1 = sgn x` and then the parity `Pi`. The two anticommute, so
//! their symmetrized correlator vanishes and the LG2 kernel depends only on
//! the single-time averages. For a gaussian of mean `q` and width `sigma`,
//! `<sgn x> = erf(q / (sqrt 2 sigma))` and `<Pi> = exp(-q^2 / (2 sigma^2))`,
//! leaving `1 - erf(u / sqrt 2) - exp(-u^2 / 2)` with `u = q / sigma`.
//!
//! The parity-inversion operator `R` that would complete the picture is
//! not modelled.

use core::f64::consts::{FRAC_2_PI, SQRT_2};

use crate::special::{erf, golden_section_min};
use crate::{Error, Result};

/// Gaussian wave packet `<x> = q`, width `sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianState {
    q: f64,
    sigma: f64,
}

impl GaussianState {
    /// Needs `sigma > 0`.
    pub fn new(q: f64, sigma: f64) -> Result<Self> {
        if sigma.is_nan() || sigma <= 0.0 || !sigma.is_finite() || !q.is_finite() {
            return Err(Error::invalid("sigma", "need finite q and sigma > 0"));
        }
        Ok(GaussianState { q, sigma })
    }

    /// Mean position.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Width.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `q / sigma`.
    pub fn ratio(&self) -> f64 {
        self.q / self.sigma
    }

    /// LG2 kernel for this state.
    pub fn lg2(&self) -> f64 {
        parity_kernel(self.ratio())
    }
}

/// `1 - erf(u / sqrt 2) - exp(-u^2 / 2)`.
pub fn parity_kernel(u: f64) -> f64 {
    1.0 - erf(u / SQRT_2) - (-0.5 * u * u).exp()
}

/// LG2 kernel for mean `q` and width `sigma`; negative means violation.
pub fn parity_lg2(q: f64, sigma: f64) -> Result<f64> {
    Ok(GaussianState::new(q, sigma)?.lg2())
}

/// Minimum of the kernel over `q / sigma`: `(argmin, value)`, by golden
/// section on `[0, 5]`. The exact minimizer is `sqrt(2/pi)`.
pub fn parity_min() -> (f64, f64) {
    golden_section_min(parity_kernel, 0.0, 5.0, 1e-10)
}

/// Closed-form minimizer `sqrt(2/pi)`, where `d/du` of the kernel vanishes.
pub fn parity_argmin_exact() -> f64 {
    FRAC_2_PI.sqrt()
}
