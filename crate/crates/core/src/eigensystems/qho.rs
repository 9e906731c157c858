use alloc::vec::Vec;
use num_traits::Float;

use super::{BoundSystem, StateValue};
use crate::special::{hermite_function_derivatives, hermite_functions, PI_POW_NEG_QUARTER};

/// Harmonic oscillator in natural units (`hbar = m = omega = 1`):
/// `eps_n = n + 1/2`, `psi_n(x) = (2^n n!)^(-1/2) pi^(-1/4) e^(-x^2/2) H_n(x)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QhoSystem;

/// `(psi_n(x), psi_{n-1}(x))` without allocating.
fn psi_pair(n: usize, x: f64) -> (f64, f64) {
    let p0 = PI_POW_NEG_QUARTER * (-0.5 * x * x).exp();
    if n == 0 {
        return (p0, 0.0);
    }
    let mut prev = p0;
    let mut cur = core::f64::consts::SQRT_2 * x * p0;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Normalized oscillator eigenfunction `psi_n(x)`.
pub fn qho_psi(n: usize, x: f64) -> f64 {
    psi_pair(n, x).0
}

/// `psi_n'(x) = sqrt(2n) psi_{n-1}(x) - x psi_n(x)`.
pub fn qho_psi_prime(n: usize, x: f64) -> f64 {
    let (cur, prev) = psi_pair(n, x);
    (2.0 * n as f64).sqrt() * prev - x * cur
}

impl BoundSystem for QhoSystem {
    fn energy(&self, n: usize) -> f64 {
        n as f64 + 0.5
    }

    fn psi(&self, n: usize, x: f64) -> f64 {
        qho_psi(n, x)
    }

    fn psi_prime(&self, n: usize, x: f64) -> f64 {
        qho_psi_prime(n, x)
    }

    fn num_states(&self) -> Option<usize> {
        None
    }

    fn is_symmetric(&self) -> bool {
        true
    }

    fn support(&self, n: usize) -> (f64, f64) {
        // Gaussian tail beyond the turning point sqrt(2n+1) is < 1e-30 at 12
        // for low n; widen with the turning point for high n.
        let half = 12.0.max((2.0 * n as f64 + 1.0).sqrt() + 10.0);
        (-half, half)
    }

    fn level_spacing(&self) -> Option<f64> {
        Some(1.0)
    }

    fn states_at(&self, x: f64, count: usize) -> Vec<StateValue> {
        let values = hermite_functions(x, count);
        let derivs = hermite_function_derivatives(x, &values);
        values
            .into_iter()
            .zip(derivs)
            .map(|(psi, dpsi)| StateValue { psi, dpsi })
            .collect()
    }
}
