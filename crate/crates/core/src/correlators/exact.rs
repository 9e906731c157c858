use num_traits::Euclid;
use core::f64::consts::{PI, TAU};
use num_complex::Complex64;

use super::TwoTimeModel;
use crate::{Error, Result};

/// Highest oscillator state with a tabulated closed form.
pub const EXACT_MAX_STATE: usize = 8;

// Coefficients of P_n(u) = sum_j p_j u^j, u = exp(-2i tau).
const POLYS: [&[f64]; EXACT_MAX_STATE + 1] = [
    &[0.0],
    &[1.0],
    &[0.5],
    &[5.0 / 6.0, 1.0 / 6.0],
    &[14.0 / 24.0, 1.0 / 24.0],
    &[94.0 / 120.0, 17.0 / 120.0, 9.0 / 120.0],
    &[148.0 / 240.0, 14.0 / 240.0, 3.0 / 240.0],
    &[1276.0 / 1680.0, 218.0 / 1680.0, 111.0 / 1680.0, 75.0 / 1680.0],
    &[8528.0 / 13440.0, 904.0 / 13440.0, 258.0 / 13440.0, 75.0 / 13440.0],
];

/// Closed-form oscillator correlator for `|n>`, `n <= 8`:
///
/// `C(tau) = (2/pi) Re[ atan(1/f) + P_n(e^{-2i tau}) f ]`,
/// `f = -i e^{-i tau/2} sqrt(2i sin tau)`,
///
/// with principal branches. `tau` is reduced to `[0, 2 pi)` first; at
/// `sin tau = 0` the parity-forced values `+1` and `-1` are returned.
pub fn exact_qho_correlator(n: usize, tau: f64) -> Result<f64> {
    if n > EXACT_MAX_STATE {
        return Err(Error::IndexOutOfRange {
            index: n,
            count: EXACT_MAX_STATE + 1,
        });
    }
    Ok(closed_form(POLYS[n], tau))
}

fn closed_form(poly: &[f64], tau: f64) -> f64 {
    let t = Euclid::rem_euclid(&tau, &TAU);
    let s = t.sin();
    // sin(pi) rounds to ~1e-16 rather than zero; treat that as the node.
    if s.abs() < 1e-15 {
        return if !(0.5 * PI..=1.5 * PI).contains(&t) { 1.0 } else { -1.0 };
    }
    let i = Complex64::i();
    let f = -i * (-0.5 * i * t).exp() * (Complex64::new(0.0, 2.0 * s)).sqrt();
    let u = (-2.0 * i * t).exp();
    let mut p = Complex64::new(0.0, 0.0);
    for &c in poly.iter().rev() {
        p = p * u + c;
    }
    let value = f.inv().atan() + p * f;
    2.0 / PI * value.re
}

/// `q(+,+)` of `|1>` from its first three series terms:
/// `1/4 + (3 / (4 pi)) cos tau`.
pub fn three_term_quasiprob(tau: f64) -> f64 {
    0.25 + 0.75 / PI * tau.cos()
}

/// Correlator of the three-term series, `(3/pi) cos tau`.
pub fn three_term_correlator(tau: f64) -> f64 {
    3.0 / PI * tau.cos()
}

/// The three-term correlator renormalized to `C(0) = 1`: `cos tau`.
pub fn cosine_correlator(tau: f64) -> f64 {
    tau.cos()
}

/// Oscillator eigenstate `|n>`, `n <= 8`, evaluated in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactEigenstate {
    n: usize,
}

impl ExactEigenstate {
    /// Fails for `n > 8`.
    pub fn new(n: usize) -> Result<Self> {
        exact_qho_correlator(n, 0.0)?;
        Ok(ExactEigenstate { n })
    }

    /// State index.
    pub fn state(&self) -> usize {
        self.n
    }

    /// `C(tau)`.
    pub fn correlator_at(&self, tau: f64) -> f64 {
        closed_form(POLYS[self.n], tau)
    }
}

impl TwoTimeModel for ExactEigenstate {
    fn mean(&self, _t: f64) -> f64 {
        0.0
    }

    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        self.correlator_at(t2 - t1)
    }
    fn is_stationary(&self) -> bool {
        true
    }
}
