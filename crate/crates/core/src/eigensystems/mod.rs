//! Bound one-dimensional systems with known eigenspectra.
//!
//! Units are dimensionless throughout: the Schrödinger equation reads
//! `psi_n'' = 2 (V - eps_n) psi_n`, and time enters only as a phase
//! `frequency(n) * tau`.

mod morse;
mod qho;
mod superposition;

use alloc::vec::Vec;

pub use morse::{morse_psi, morse_psi_prime, MorseSystem};
pub use qho::{qho_psi, qho_psi_prime, QhoSystem};
pub use superposition::SuperpositionState;

use crate::{Error, Result};

/// Eigenfunction value and first derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateValue {
    /// `psi_n(x)`.
    pub psi: f64,
    /// `psi_n'(x)`.
    pub dpsi: f64,
}

/// A one-dimensional bound system: eigenenergies, real normalized
/// eigenfunctions and their derivatives.
///
/// Indices passed to the evaluation methods must be below
/// [`num_states`](Self::num_states); use [`check_index`](Self::check_index)
/// at API boundaries.
pub trait BoundSystem {
    /// Dimensionless eigenenergy `eps_n`, strictly increasing in `n`.
    fn energy(&self, n: usize) -> f64;

    /// Phase rate of level `n` per unit of the system's time variable.
    /// Equal to the energy unless the time variable is rescaled.
    fn frequency(&self, n: usize) -> f64 {
        self.energy(n)
    }

    /// `psi_n(x)`.
    fn psi(&self, n: usize, x: f64) -> f64;

    /// `psi_n'(x)`.
    fn psi_prime(&self, n: usize, x: f64) -> f64;

    /// Number of bound states, `None` if unbounded.
    fn num_states(&self) -> Option<usize>;

    /// Whether `V(-x) = V(x)`, giving `psi_n` parity `(-1)^n`.
    fn is_symmetric(&self) -> bool;

    /// Interval outside which `psi_n` and `psi_n'` are negligible (< 1e-15).
    fn support(&self, n: usize) -> (f64, f64);

    /// Natural boundary for a two-sided coarse graining (the well minimum).
    fn split_point(&self) -> f64 {
        0.0
    }

    /// `Some(h)` if `frequency(k) - frequency(n) = (k - n) h` exactly.
    fn level_spacing(&self) -> Option<f64> {
        None
    }

    /// Values and derivatives of the first `count` states at `x`.
    fn states_at(&self, x: f64, count: usize) -> Vec<StateValue> {
        (0..count)
            .map(|n| StateValue {
                psi: self.psi(n, x),
                dpsi: self.psi_prime(n, x),
            })
            .collect()
    }

    /// Error unless `n` is a bound state.
    fn check_index(&self, n: usize) -> Result<()> {
        match self.num_states() {
            Some(count) if n >= count => Err(Error::IndexOutOfRange { index: n, count }),
            _ => Ok(()),
        }
    }
}

impl<S: BoundSystem + ?Sized> BoundSystem for &S {
    fn energy(&self, n: usize) -> f64 {
        (**self).energy(n)
    }
    fn frequency(&self, n: usize) -> f64 {
        (**self).frequency(n)
    }
    fn psi(&self, n: usize, x: f64) -> f64 {
        (**self).psi(n, x)
    }
    fn psi_prime(&self, n: usize, x: f64) -> f64 {
        (**self).psi_prime(n, x)
    }
    fn num_states(&self) -> Option<usize> {
        (**self).num_states()
    }
    fn is_symmetric(&self) -> bool {
        (**self).is_symmetric()
    }
    fn support(&self, n: usize) -> (f64, f64) {
        (**self).support(n)
    }
    fn split_point(&self) -> f64 {
        (**self).split_point()
    }
    fn level_spacing(&self) -> Option<f64> {
        (**self).level_spacing()
    }
    fn states_at(&self, x: f64, count: usize) -> Vec<StateValue> {
        (**self).states_at(x, count)
    }
}
