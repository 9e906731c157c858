use alloc::vec::Vec;

use super::series::{PhaseSum, TRUNCATION_WARNING};
use crate::eigensystems::BoundSystem;
use crate::overlaps::{diagonal_overlap, overlap_row, select_row, Cutoff, Region};
use crate::{Error, Result};

/// `q(+,+)` for two region projectors, with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionOutcome {
    /// `Re <n| P_2(tau) P_1(0) |n>`.
    pub value: f64,
    /// Cauchy-Schwarz bound `sqrt(Delta_1 Delta_2)` on the neglected terms.
    pub error_bound: f64,
    /// Largest retained state index.
    pub cutoff: usize,
    /// Set when the bound exceeds the warning level.
    pub warning: bool,
}

/// `Re sum_k exp(-i (omega_k - omega_n) tau) J_nk(R1) J_nk(R2)` for
/// eigenstate `n`. With an adaptive cutoff, the larger of the cutoffs the
/// two regions need is used for both.
pub fn region_quasiprob<S: BoundSystem + ?Sized>(
    sys: &S,
    n: usize,
    first: &Region,
    second: &Region,
    tau: f64,
    cutoff: Cutoff,
) -> Result<RegionOutcome> {
    let m = match cutoff {
        Cutoff::Fixed(m) => m,
        Cutoff::Adaptive { .. } => {
            let a = select_row(sys, n, first, cutoff)?.cutoff();
            let b = select_row(sys, n, second, cutoff)?.cutoff();
            a.max(b)
        }
    };
    let r1 = overlap_row(sys, n, first, m)?;
    let r2 = overlap_row(sys, n, second, m)?;
    let coeffs = r1.values().iter().zip(r2.values()).map(|(a, b)| a * b).collect();
    let value = PhaseSum::new(sys, n, coeffs).eval(tau);
    let error_bound = (r1.truncation_error() * r2.truncation_error()).sqrt();
    Ok(RegionOutcome {
        value,
        error_bound,
        cutoff: r1.cutoff(),
        warning: error_bound > TRUNCATION_WARNING,
    })
}

/// `q(+,+)` for a fixed first region as a function of the second one.
///
/// Because each overlap `J_nk([c, d])` is a difference of endpoint terms,
/// `q(R1, [c, d]) = S(d) - S(c)` for the cumulative function `S`, so a full
/// `(c, d)` scan costs one eigenfunction table per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSeries<S> {
    sys: S,
    n: usize,
    /// `cos((omega_k - omega_n) tau) J_nk(R1) / (2 (eps_k - eps_n))`, zero at `k = n`.
    weights: Vec<f64>,
    diagonal_weight: f64,
    truncation_error: f64,
}

impl<S: BoundSystem> RegionSeries<S> {
    /// Precompute the weights for state `n`, first region `first`, time
    /// difference `tau` and states `0..=m`.
    pub fn new(sys: S, n: usize, first: &Region, tau: f64, m: usize) -> Result<Self> {
        let row = overlap_row(&sys, n, first, m)?;
        let base = sys.frequency(n);
        let eps_n = sys.energy(n);
        let mut weights = Vec::with_capacity(row.values().len());
        for (k, &j) in row.values().iter().enumerate() {
            if k == n {
                weights.push(0.0);
                continue;
            }
            let gap = sys.energy(k) - eps_n;
            if gap == 0.0 {
                return Err(Error::DegenerateSpectrum(k.min(n), k.max(n)));
            }
            let phase = ((sys.frequency(k) - base) * tau).cos();
            weights.push(phase * j / (2.0 * gap));
        }
        Ok(RegionSeries {
            n,
            diagonal_weight: row.diagonal(),
            truncation_error: row.truncation_error(),
            weights,
            sys,
        })
    }

    /// Truncation error of the first region's row.
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Largest retained state index.
    pub fn cutoff(&self) -> usize {
        self.weights.len() - 1
    }

    fn boundary_part(&self, x: f64) -> f64 {
        if x.is_infinite() {
            return 0.0;
        }
        let states = self.sys.states_at(x, self.weights.len());
        let (pn, dn) = (states[self.n].psi, states[self.n].dpsi);
        self.weights
            .iter()
            .zip(&states)
            .map(|(w, s)| w * (dn * s.psi - s.dpsi * pn))
            .sum()
    }

    /// `S(x)`, so that `q(R1, [c, d]) = S(d) - S(c)`.
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::invalid("x", "must not be NaN"));
        }
        let mass = diagonal_overlap(&self.sys, self.n, f64::NEG_INFINITY, x)?;
        Ok(self.diagonal_weight * mass + self.boundary_part(x))
    }

    /// `S` at each point of `xs`.
    pub fn cumulative_many(&self, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.cumulative(x)).collect()
    }

    /// `q(R1, [c, d])`.
    pub fn quasi_pp(&self, c: f64, d: f64) -> Result<f64> {
        Ok(self.cumulative(d)? - self.cumulative(c)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensystems::QhoSystem;
    use crate::overlaps::Interval;

    fn half() -> Region {
        Region::from(Interval::upper(0.0).unwrap())
    }

    #[test]
    fn identity_second_projector() {
        for tau in [0.0, 1.1, 2.77] {
            let out = region_quasiprob(&QhoSystem, 0, &half(), &Region::full(), tau, Cutoff::Fixed(50)).unwrap();
            assert!((out.value - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_time_products() {
        let same = region_quasiprob(&QhoSystem, 0, &half(), &half(), 0.0, Cutoff::target(1e-3)).unwrap();
        assert!((same.value - 0.5).abs() <= same.error_bound + 1e-12);
        let other = half().complement();
        let disjoint = region_quasiprob(&QhoSystem, 0, &half(), &other, 0.0, Cutoff::target(1e-3)).unwrap();
        assert!(disjoint.value.abs() <= disjoint.error_bound + 1e-12);
    }

    #[test]
    fn cumulative_matches_direct() {
        let tau = 2.77;
        let rs = RegionSeries::new(QhoSystem, 0, &half(), tau, 120).unwrap();
        let second = Region::from(Interval::new(0.84, 1.72).unwrap());
        let direct = region_quasiprob(&QhoSystem, 0, &half(), &second, tau, Cutoff::Fixed(120)).unwrap();
        let via = rs.quasi_pp(0.84, 1.72).unwrap();
        assert!((direct.value - via).abs() < 1e-12, "{} vs {}", direct.value, via);
        assert!(rs.quasi_pp(1.3, 1.3).unwrap().abs() < 1e-15);
        let tail = rs.quasi_pp(0.84, f64::INFINITY).unwrap();
        let upper = Region::from(Interval::upper(0.84).unwrap());
        let direct = region_quasiprob(&QhoSystem, 0, &half(), &upper, tau, Cutoff::Fixed(120)).unwrap();
        assert!((direct.value - tail).abs() < 1e-12);
    }
}
