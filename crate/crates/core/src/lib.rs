//! Temporal correlators, two-time quasi-probabilities and Leggett-Garg
//! kernels for dichotomic position measurements in one-dimensional bound
//! systems.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is a pure
//! function of its arguments; grid sweeps in [`scans`] take an
//! [`scans::Executor`] so a std front end can run them in parallel.
//!
//! Layout, bottom up:
//!
//! - [`quadrature`] and [`special`]: adaptive Gauss-Kronrod integration,
//!   orthogonal polynomial recurrences, golden-section search.
//! - [`eigensystems`]: the [`BoundSystem`] interface plus the harmonic
//!   oscillator and the Morse well, in dimensionless units.
//! - [`overlaps`]: partial overlaps `J_kl(x1, x2)` of eigenfunctions via the
//!   Wronskian identity, regions, smoothed projectors, truncation errors.
//! - [`correlators`]: truncated eigenbasis series, closed-form oscillator
//!   correlators, superpositions, arbitrary regions, the classical analogue.
//! - [`lg`]: the LG2 / LG3 / LG4 families, violation flags and regimes.
//! - [`parity`]: the parity-operator two-time test on a gaussian state.
//! - [`scans`]: parameter sweeps over the above.

#![no_std]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod correlators;
pub mod eigensystems;
mod error;
pub mod lg;
pub mod overlaps;
pub mod parity;
pub mod quadrature;
pub mod scans;
pub mod special;

pub use eigensystems::{BoundSystem, MorseSystem, QhoSystem, StateValue, SuperpositionState};
pub use error::{Error, Result};
pub use overlaps::{Interval, Region};
