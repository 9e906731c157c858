use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Eigenstate index beyond the bound spectrum (or a tabulated range).
    #[error("state index {index} out of range (valid: 0..{count})")]
    IndexOutOfRange {
        /// Requested index.
        index: usize,
        /// Number of valid indices.
        count: usize,
    },

    /// The Wronskian formula was asked for `k == l`.
    #[error("wronskian overlap needs distinct indices, got k = l = {0}")]
    DegenerateIndex(usize),

    /// Distinct indices with equal energies.
    #[error("levels {0} and {1} are degenerate")]
    DegenerateSpectrum(usize, usize),

    /// Adaptive quadrature hit its subdivision limit.
    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureNonConvergence {
        /// Achieved error estimate.
        estimate: f64,
        /// Requested tolerance.
        tolerance: f64,
    },

    /// A parameter outside its domain.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// What is wrong with it.
        reason: &'static str,
    },

    /// Operation needs an equally spaced spectrum.
    #[error("operation needs a commensurate (equally spaced) spectrum")]
    IncommensurateSpectrum,
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) const fn invalid(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }
}
