use alloc::vec::Vec;

use super::{Cell, Executor, Tabular};
use crate::correlators::{EigenSeries, TwoTimeModel, TRUNCATION_WARNING};
use crate::eigensystems::MorseSystem;
use crate::lg::{LgPoint, LgReport, LG2_LABELS, LG3_LABELS, LG4_LABELS};
use crate::overlaps::Cutoff;
use crate::Result;

impl Tabular for LgPoint {
    fn columns() -> Vec<&'static str> {
        let mut cols = alloc::vec!["tau", "C"];
        cols.extend(LG3_LABELS);
        cols.extend(LG2_LABELS);
        cols.extend(LG4_LABELS);
        cols.extend(["lg2_violated", "lg3_violated", "lg4_violated"]);
        cols
    }

    fn cells(&self) -> Vec<Cell> {
        let mut cells = alloc::vec![Cell::Float(self.tau), Cell::Float(self.correlator)];
        cells.extend(self.lg3.iter().map(|&v| Cell::Float(v)));
        cells.extend(self.lg2.iter().map(|&v| Cell::Float(v)));
        cells.extend(self.lg4.iter().map(|&v| Cell::Float(v)));
        let f = self.flags();
        cells.extend([Cell::Bool(f.lg2), Cell::Bool(f.lg3), Cell::Bool(f.lg4)]);
        cells
    }
}

/// Kernels of a stationary state from its correlator on the periodic grid
/// `tau_j = period * j / N`: the times `2 tau_j` and `3 tau_j` land on
/// grid points again.
pub fn periodic_lg_points(correlators: &[f64], mean: f64, period: f64) -> Vec<LgPoint> {
    let n = correlators.len();
    (0..n)
        .map(|j| {
            let tau = period * j as f64 / n as f64;
            LgPoint::stationary(
                tau,
                mean,
                correlators[j],
                correlators[(2 * j) % n],
                correlators[(3 * j) % n],
            )
        })
        .collect()
}

/// Kernels of `model` at each `tau`.
pub fn lg_trace<M, E>(model: &M, taus: &[f64], exec: &E) -> Result<LgReport>
where
    M: TwoTimeModel + Sync + ?Sized,
    E: Executor,
{
    LgReport::from_points(exec.map_indexed(taus.len(), |i| LgPoint::evaluate(model, taus[i])))
}

/// Morse eigenstate kernels over `omega_0 tau` with the series quality.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseTrace {
    /// Kernels and aggregates.
    pub report: LgReport,
    /// Weight missing from the truncated series.
    pub truncation_error: f64,
    /// Largest retained state.
    pub cutoff: usize,
    /// Time-independent `<Q>`.
    pub mean: f64,
    /// Set when the truncation error exceeds the warning level.
    pub warning: bool,
}

/// Kernel trace for Morse eigenstate `n`, coarse-grained at the well
/// minimum.
pub fn scan_morse<E: Executor>(lambda: f64, n: usize, taus: &[f64], cutoff: Cutoff, exec: &E) -> Result<MorseTrace> {
    let sys = MorseSystem::new(lambda)?;
    let series = EigenSeries::new(&sys, n, cutoff)?;
    let report = lg_trace(&series, taus, exec)?;
    Ok(MorseTrace {
        report,
        truncation_error: series.truncation_error(),
        cutoff: series.cutoff(),
        mean: series.mean_value(),
        warning: series.truncation_error() > TRUNCATION_WARNING,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::ExactEigenstate;
    use crate::scans::{periodic_grid, Serial};
    use core::f64::consts::TAU;

    #[test]
    fn periodic_points_match_direct_evaluation() {
        let model = ExactEigenstate::new(1).unwrap();
        let taus = periodic_grid(TAU, 64);
        let c: Vec<f64> = taus.iter().map(|&t| model.correlator_at(t)).collect();
        let fast = periodic_lg_points(&c, 0.0, TAU);
        let slow = lg_trace(&model, &taus, &Serial).unwrap();
        for (a, b) in fast.iter().zip(&slow.points) {
            for (x, y) in a.lg3.iter().zip(&b.lg3) {
                assert!((x - y).abs() < 1e-12);
            }
            for (x, y) in a.lg4.iter().zip(&b.lg4) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn columns_match_cells() {
        let p = LgPoint::stationary(0.3, 0.0, 0.5, 0.1, -0.2);
        assert_eq!(LgPoint::columns().len(), p.cells().len());
    }
}
