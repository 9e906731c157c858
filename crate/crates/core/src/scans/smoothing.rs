use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{collect_results, periodic_lg_points, Axis, Cell, Executor, ScanGrid, ScanResult, Tabular};
use crate::correlators::EigenSeries;
use crate::eigensystems::QhoSystem;
use crate::lg::luders_fraction;
use crate::overlaps::smoothed_row;
use crate::{Error, Result};

/// LG3 extreme of oscillator state `|n>` measured with a smoothed step of
/// width `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingRecord {
    /// Smoothing width.
    pub a: f64,
    /// Smallest LG3 kernel over one period.
    pub min_lg3: f64,
    /// Where it is attained.
    pub min_lg3_tau: f64,
    /// `min_lg3` relative to the Lüders bound.
    pub luders_fraction: f64,
    /// Missing weight of the truncated row.
    pub truncation_error: f64,
}

impl Tabular for SmoothingRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec!["a", "min_lg3", "min_lg3_tau", "luders_fraction", "truncation_error"]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![
            self.a.into(),
            self.min_lg3.into(),
            self.min_lg3_tau.into(),
            self.luders_fraction.into(),
            self.truncation_error.into(),
        ]
    }
}

/// Smoothing sweep for eigenstate `n`, rows truncated at `m`, correlators
/// on `tau_points` points of one period.
pub fn scan_smoothing<E: Executor>(
    a_axis: &Axis,
    n: usize,
    m: usize,
    tau_points: usize,
    exec: &E,
) -> Result<ScanResult<SmoothingRecord>> {
    if tau_points < 8 {
        return Err(Error::invalid("tau_points", "need at least 8 points per period"));
    }
    let widths = a_axis.points();
    let records = collect_results(exec.map_indexed(widths.len(), |i| {
        let a = widths[i];
        let row = smoothed_row(n, a, m)?;
        let series = EigenSeries::from_row(&QhoSystem, &row);
        let correlators = series.correlator_periodic(tau_points)?;
        let points = periodic_lg_points(&correlators, series.mean_value(), TAU);
        let best = points
            .iter()
            .min_by(|x, y| x.min_lg3().total_cmp(&y.min_lg3()))
            .expect("tau_points >= 8");
        Ok(SmoothingRecord {
            a,
            min_lg3: best.min_lg3(),
            min_lg3_tau: best.tau,
            luders_fraction: luders_fraction(best.min_lg3()),
            truncation_error: series.truncation_error(),
        })
    }))?;
    ScanResult::new(ScanGrid::new(alloc::vec![a_axis.clone()]), records)
}
