use alloc::vec::Vec;
use core::f64::consts::TAU;

use super::{collect_results, periodic_grid, periodic_lg_points, Axis, Cell, Executor, ScanGrid, ScanResult, Tabular};
use crate::correlators::{classical_correlator, EigenSeries, ExactEigenstate, EXACT_MAX_STATE};
use crate::eigensystems::QhoSystem;
use crate::lg::luders_fraction;
use crate::overlaps::Cutoff;
use crate::{Error, Result};

/// How an eigenstate correlator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenstateMethod {
    /// Tabulated closed form (`n <= 8`).
    ClosedForm,
    /// Truncated eigenbasis series.
    Series,
}

impl EigenstateMethod {
    fn as_str(self) -> &'static str {
        match self {
            EigenstateMethod::ClosedForm => "closed-form",
            EigenstateMethod::Series => "series",
        }
    }
}

struct Trace {
    correlators: Vec<f64>,
    method: EigenstateMethod,
    truncation_error: f64,
    cutoff: Option<usize>,
}

/// Oscillator correlator of `|n>` on `tau_j = 2 pi j / count`.
fn oscillator_trace(n: usize, count: usize, cutoff: Cutoff) -> Result<Trace> {
    if n <= EXACT_MAX_STATE {
        let model = ExactEigenstate::new(n)?;
        return Ok(Trace {
            correlators: periodic_grid(TAU, count).into_iter().map(|t| model.correlator_at(t)).collect(),
            method: EigenstateMethod::ClosedForm,
            truncation_error: 0.0,
            cutoff: None,
        });
    }
    let series = EigenSeries::new(&QhoSystem, n, cutoff)?;
    Ok(Trace {
        correlators: series.correlator_periodic(count)?,
        method: EigenstateMethod::Series,
        truncation_error: series.truncation_error(),
        cutoff: Some(series.cutoff()),
    })
}

fn parity_label(n: usize) -> &'static str {
    if n.is_multiple_of(2) {
        "even"
    } else {
        "odd"
    }
}

fn check_points(count: usize) -> Result<()> {
    if count < 8 {
        Err(Error::invalid("tau_points", "need at least 8 points per period"))
    } else {
        Ok(())
    }
}

/// Maximal violations of oscillator eigenstate `|n>` over one period.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenstateRecord {
    /// State index.
    pub n: usize,
    /// Smallest LG3 kernel.
    pub min_lg3: f64,
    /// Where it is attained.
    pub min_lg3_tau: f64,
    /// `min_lg3` as a fraction of the Lüders bound.
    pub luders_fraction: f64,
    /// Largest LG4 kernel.
    pub max_lg4: f64,
    /// Correlator source.
    pub method: EigenstateMethod,
    /// Series truncation error (zero for closed forms).
    pub truncation_error: f64,
    /// Series cutoff, if a series was used.
    pub cutoff: Option<usize>,
}

impl Tabular for EigenstateRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec![
            "n",
            "parity",
            "min_lg3",
            "min_lg3_tau",
            "luders_fraction",
            "max_lg4",
            "method",
            "truncation_error",
            "cutoff",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![
            self.n.into(),
            parity_label(self.n).into(),
            self.min_lg3.into(),
            self.min_lg3_tau.into(),
            self.luders_fraction.into(),
            self.max_lg4.into(),
            self.method.as_str().into(),
            self.truncation_error.into(),
            self.cutoff.map_or(Cell::Missing, Cell::from),
        ]
    }
}

/// LG3/LG4 extremes of `|0> .. |n_max>` on a periodic grid of
/// `tau_points` points: closed forms up to `n = 8`, series beyond.
pub fn scan_eigenstate_violation<E: Executor>(
    n_max: usize,
    tau_points: usize,
    cutoff: Cutoff,
    exec: &E,
) -> Result<ScanResult<EigenstateRecord>> {
    check_points(tau_points)?;
    let records = collect_results(exec.map_indexed(n_max + 1, |n| {
        let trace = oscillator_trace(n, tau_points, cutoff)?;
        let points = periodic_lg_points(&trace.correlators, 0.0, TAU);
        let (mut min_lg3, mut min_tau, mut max_lg4) = (f64::INFINITY, 0.0, f64::NEG_INFINITY);
        for p in &points {
            if p.min_lg3() < min_lg3 {
                min_lg3 = p.min_lg3();
                min_tau = p.tau;
            }
            max_lg4 = max_lg4.max(p.max_lg4());
        }
        Ok(EigenstateRecord {
            n,
            min_lg3,
            min_lg3_tau: min_tau,
            luders_fraction: luders_fraction(min_lg3),
            max_lg4,
            method: trace.method,
            truncation_error: trace.truncation_error,
            cutoff: trace.cutoff,
        })
    }))?;
    let grid = ScanGrid::new(alloc::vec![n_axis(n_max)]);
    ScanResult::new(grid, records)
}

fn n_axis(n_max: usize) -> Axis {
    if n_max == 0 {
        Axis::fixed("n", 0.0)
    } else {
        Axis::new("n", 0.0, n_max as f64, n_max + 1).expect("n_max >= 1")
    }
}

/// Distance of `|n>`'s correlator from the classical triangle wave.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalizationRecord {
    /// State index.
    pub n: usize,
    /// `(1 / 2 pi) int_0^{2 pi} |C_cl - C_n| d tau`.
    pub delta: f64,
    /// `max_tau |C_cl - C_n|` on the grid.
    pub max_gap: f64,
    /// Correlator source.
    pub method: EigenstateMethod,
    /// Series truncation error (zero for closed forms).
    pub truncation_error: f64,
    /// Series cutoff, if a series was used.
    pub cutoff: Option<usize>,
}

impl Tabular for ClassicalizationRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec!["n", "parity", "delta", "max_gap", "method", "truncation_error", "cutoff"]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![
            self.n.into(),
            parity_label(self.n).into(),
            self.delta.into(),
            self.max_gap.into(),
            self.method.as_str().into(),
            self.truncation_error.into(),
            self.cutoff.map_or(Cell::Missing, Cell::from),
        ]
    }
}

/// `Delta(n)` by the rectangle rule on `tau_points` points of one period,
/// which is the trapezoidal rule for a periodic integrand.
pub fn classicalization_delta(n: usize, tau_points: usize, cutoff: Cutoff) -> Result<ClassicalizationRecord> {
    check_points(tau_points)?;
    let trace = oscillator_trace(n, tau_points, cutoff)?;
    let taus = periodic_grid(TAU, tau_points);
    let mut sum = 0.0;
    let mut max_gap: f64 = 0.0;
    for (c, t) in trace.correlators.iter().zip(&taus) {
        let gap = (classical_correlator(*t) - c).abs();
        sum += gap;
        max_gap = max_gap.max(gap);
    }
    Ok(ClassicalizationRecord {
        n,
        delta: sum / tau_points as f64,
        max_gap,
        method: trace.method,
        truncation_error: trace.truncation_error,
        cutoff: trace.cutoff,
    })
}

/// [`classicalization_delta`] for `n = 0..=n_max`.
pub fn scan_classicalization<E: Executor>(
    n_max: usize,
    tau_points: usize,
    cutoff: Cutoff,
    exec: &E,
) -> Result<ScanResult<ClassicalizationRecord>> {
    let records = collect_results(exec.map_indexed(n_max + 1, |n| classicalization_delta(n, tau_points, cutoff)))?;
    ScanResult::new(ScanGrid::new(alloc::vec![n_axis(n_max)]), records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scans::Serial;

    #[test]
    fn low_states() {
        let scan = scan_eigenstate_violation(3, 512, Cutoff::default(), &Serial).unwrap();
        let r = &scan.records;
        assert!(r[0].min_lg3 > -1e-9);
        assert!((r[1].luders_fraction - 0.73).abs() < 0.01);
        assert!(r[1].luders_fraction > r[2].luders_fraction);
        assert!(r[3].luders_fraction > r[2].luders_fraction);
        assert_eq!(r[3].method, EigenstateMethod::ClosedForm);
    }

    #[test]
    fn series_beyond_closed_forms() {
        let rec = classicalization_delta(9, 256, Cutoff::default()).unwrap();
        assert_eq!(rec.method, EigenstateMethod::Series);
        assert!(rec.truncation_error <= 1e-3);
        assert!(rec.delta > 0.0 && rec.delta < 0.05);
    }

    #[test]
    fn too_few_points() {
        assert!(classicalization_delta(1, 4, Cutoff::default()).is_err());
    }
}
