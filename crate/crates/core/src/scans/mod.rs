//! Parameter sweeps that turn the kernels into tables.
//!
//! Every sweep evaluates independent grid points through an [`Executor`],
//! stores one record per point in grid order and then reduces. Output is
//! therefore identical for any executor that preserves index order.

mod eigenstates;
mod region;
mod smoothing;
mod superposition;
mod traces;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use eigenstates::{
    classicalization_delta, scan_classicalization, scan_eigenstate_violation, ClassicalizationRecord,
    EigenstateRecord, EigenstateMethod,
};
pub use region::{scan_region, scan_region_half_line, HalfLineRecord, RegionRecord};
pub use smoothing::{scan_smoothing, SmoothingRecord};
pub use superposition::{scan_superposition, SuperpositionRecord};
pub use traces::{lg_trace, periodic_lg_points, scan_morse, MorseTrace};

use crate::{Error, Result};

/// Spacing of an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// Equal steps.
    Linear,
    /// Equal ratios.
    Log,
}

/// One named grid axis, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    name: String,
    start: f64,
    stop: f64,
    count: usize,
    scale: Scale,
}

impl Axis {
    /// Linear axis; needs `count >= 2` and `stop > start`.
    pub fn new(name: &str, start: f64, stop: f64, count: usize) -> Result<Self> {
        Self::with_scale(name, start, stop, count, Scale::Linear)
    }

    /// Logarithmic axis; additionally needs `start > 0`.
    pub fn log(name: &str, start: f64, stop: f64, count: usize) -> Result<Self> {
        Self::with_scale(name, start, stop, count, Scale::Log)
    }

    /// Axis of any scale.
    pub fn with_scale(name: &str, start: f64, stop: f64, count: usize, scale: Scale) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid("axis", "needs at least two points"));
        }
        if !(start.is_finite() && stop.is_finite() && stop > start) {
            return Err(Error::invalid("axis", "needs finite endpoints with stop > start"));
        }
        if scale == Scale::Log && start <= 0.0 {
            return Err(Error::invalid("axis", "log axis needs a positive start"));
        }
        Ok(Axis {
            name: name.to_string(),
            start,
            stop,
            count,
            scale,
        })
    }

    /// Single-point axis.
    pub fn fixed(name: &str, value: f64) -> Self {
        Axis {
            name: name.to_string(),
            start: value,
            stop: value,
            count: 1,
            scale: Scale::Linear,
        }
    }

    /// Axis name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// First point.
    pub fn start(&self) -> f64 {
        self.start
    }

    /// Last point.
    pub fn stop(&self) -> f64 {
        self.stop
    }

    /// Number of points.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Spacing.
    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// Point `i`; the last index returns `stop` exactly.
    pub fn point(&self, i: usize) -> f64 {
        if self.count == 1 || i == 0 {
            return self.start;
        }
        if i + 1 == self.count {
            return self.stop;
        }
        let frac = i as f64 / (self.count - 1) as f64;
        match self.scale {
            Scale::Linear => self.start + (self.stop - self.start) * frac,
            Scale::Log => self.start * (self.stop / self.start).powf(frac),
        }
    }

    /// All points.
    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

/// Ordered list of axes; the last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanGrid {
    /// Axes, outermost first.
    pub axes: Vec<Axis>,
}

impl ScanGrid {
    /// Grid from axes.
    pub fn new(axes: Vec<Axis>) -> Self {
        ScanGrid { axes }
    }

    /// Product of the axis counts.
    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::count).product()
    }

    /// No points.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Real number.
    Float(f64),
    /// Integer.
    Int(i64),
    /// Flag.
    Bool(bool),
    /// Label.
    Text(String),
    /// Masked or undefined entry.
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

/// A record that can be written as one table row.
pub trait Tabular {
    /// Column names, fixed for the type.
    fn columns() -> Vec<&'static str>;
    /// Cells in column order.
    fn cells(&self) -> Vec<Cell>;
}

/// Extremes of one numeric column.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSummary {
    /// Column name.
    pub column: &'static str,
    /// Smallest value.
    pub min: f64,
    /// Record index of the smallest value.
    pub argmin: usize,
    /// Largest value.
    pub max: f64,
    /// Record index of the largest value.
    pub argmax: usize,
}

/// Per-column extremes plus sweep-specific scalars.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanSummary {
    /// One entry per numeric column with at least one finite value.
    pub columns: Vec<ColumnSummary>,
    /// Named scalars specific to the sweep.
    pub extras: Vec<(String, Cell)>,
}

impl ScanSummary {
    /// Summarize the float columns of `records`.
    pub fn of<R: Tabular>(records: &[R]) -> Self {
        let names = R::columns();
        let mut columns: Vec<Option<ColumnSummary>> = alloc::vec![None; names.len()];
        for (i, r) in records.iter().enumerate() {
            for (j, cell) in r.cells().into_iter().enumerate() {
                let v = match cell {
                    Cell::Float(v) if v.is_finite() => v,
                    _ => continue,
                };
                let entry = columns[j].get_or_insert(ColumnSummary {
                    column: names[j],
                    min: v,
                    argmin: i,
                    max: v,
                    argmax: i,
                });
                if v < entry.min {
                    entry.min = v;
                    entry.argmin = i;
                }
                if v > entry.max {
                    entry.max = v;
                    entry.argmax = i;
                }
            }
        }
        ScanSummary {
            columns: columns.into_iter().flatten().collect(),
            extras: Vec::new(),
        }
    }

    /// Summary of the named column.
    pub fn column(&self, name: &str) -> Option<&ColumnSummary> {
        self.columns.iter().find(|c| c.column == name)
    }

    /// Value of the named extra.
    pub fn extra(&self, name: &str) -> Option<&Cell> {
        self.extras.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// Records of a sweep in grid order, the grid itself and a summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult<R> {
    /// Grid echo.
    pub grid: ScanGrid,
    /// One record per grid point.
    pub records: Vec<R>,
    /// Extremes and extras.
    pub summary: ScanSummary,
}

impl<R: Tabular> ScanResult<R> {
    /// Assemble and summarize; the record count must match the grid.
    pub fn new(grid: ScanGrid, records: Vec<R>) -> Result<Self> {
        if records.len() != grid.len() {
            return Err(Error::invalid("records", "record count must match the grid size"));
        }
        let summary = ScanSummary::of(&records);
        Ok(ScanResult { grid, records, summary })
    }

    /// Attach a named scalar to the summary.
    pub fn with_extra(mut self, name: &str, value: Cell) -> Self {
        self.summary.extras.push((name.to_string(), value));
        self
    }
}

/// Maps a function over `0..count`, returning results in index order.
pub trait Executor: Sync {
    /// `(0..count).map(f).collect()` in any evaluation order.
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Single-threaded executor.
#[derive(Debug, Clone, Copy, Default)]
pub struct Serial;

impl Executor for Serial {
    fn map_indexed<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// Collect a vector of results, failing on the first error in index order.
pub(crate) fn collect_results<T>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

/// `count` times `k period / count`, `k = 0..count`.
pub fn periodic_grid(period: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| period * k as f64 / count as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_points() {
        let a = Axis::new("x", 0.0, 1.0, 5).unwrap();
        assert_eq!(a.points(), alloc::vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let l = Axis::log("a", 1e-3, 1.0, 4).unwrap();
        let p = l.points();
        assert_eq!(p[0], 1e-3);
        assert_eq!(p[3], 1.0);
        assert!((p[1] - 1e-2).abs() < 1e-15);
        assert_eq!(Axis::fixed("phi", 3.0).points(), alloc::vec![3.0]);
    }

    #[test]
    fn axis_validation() {
        assert!(Axis::new("x", 0.0, 1.0, 1).is_err());
        assert!(Axis::new("x", 1.0, 1.0, 3).is_err());
        assert!(Axis::log("x", 0.0, 1.0, 3).is_err());
    }

    struct Row(f64, Option<f64>);

    impl Tabular for Row {
        fn columns() -> Vec<&'static str> {
            alloc::vec!["a", "b"]
        }
        fn cells(&self) -> Vec<Cell> {
            alloc::vec![self.0.into(), self.1.into()]
        }
    }

    #[test]
    fn summary_skips_missing() {
        let grid = ScanGrid::new(alloc::vec![Axis::new("i", 0.0, 2.0, 3).unwrap()]);
        let r = ScanResult::new(grid, alloc::vec![Row(1.0, None), Row(-2.0, Some(5.0)), Row(0.5, Some(4.0))])
            .unwrap();
        let a = r.summary.column("a").unwrap();
        assert_eq!((a.min, a.argmin, a.max, a.argmax), (-2.0, 1, 1.0, 0));
        let b = r.summary.column("b").unwrap();
        assert_eq!((b.min, b.argmin), (4.0, 2));
    }

    #[test]
    fn record_count_checked() {
        let grid = ScanGrid::new(alloc::vec![Axis::new("i", 0.0, 2.0, 3).unwrap()]);
        assert!(ScanResult::new(grid, alloc::vec![Row(1.0, None)]).is_err());
    }
}
