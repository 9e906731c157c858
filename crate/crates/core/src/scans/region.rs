use alloc::vec::Vec;

use super::{collect_results, Axis, Cell, Executor, ScanGrid, ScanResult, Tabular};
use crate::correlators::RegionSeries;
use crate::eigensystems::BoundSystem;
use crate::overlaps::Region;
use crate::Result;

/// `q(+,+)` with second region `[c, d]`; `q` is `None` where `c >= d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionRecord {
    /// Lower edge of the second region.
    pub c: f64,
    /// Upper edge of the second region.
    pub d: f64,
    /// Quasi-probability, masked outside `c < d`.
    pub q: Option<f64>,
}

impl Tabular for RegionRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec!["c", "d", "q"]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![self.c.into(), self.d.into(), self.q.into()]
    }
}

/// `q(+,+)` with second region `[c, inf)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineRecord {
    /// Lower edge of the second region.
    pub c: f64,
    /// Quasi-probability.
    pub q: f64,
}

impl Tabular for HalfLineRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec!["c", "q"]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![self.c.into(), self.q.into()]
    }
}

fn attach_quality<R: Tabular, S>(result: ScanResult<R>, series: &RegionSeries<S>, tau: f64) -> ScanResult<R>
where
    S: BoundSystem,
{
    result
        .with_extra("tau", Cell::Float(tau))
        .with_extra("cutoff", Cell::from(series.cutoff()))
        .with_extra("truncation_error", Cell::Float(series.truncation_error()))
}

/// Map of `q(R1, [c, d])` over `c` (outer) and `d` (inner) for eigenstate
/// `n` at time difference `tau`, keeping states `0..=m`.
#[allow(clippy::too_many_arguments)]
pub fn scan_region<S, E>(
    sys: S,
    n: usize,
    first: &Region,
    c_axis: &Axis,
    d_axis: &Axis,
    tau: f64,
    m: usize,
    exec: &E,
) -> Result<ScanResult<RegionRecord>>
where
    S: BoundSystem + Sync,
    E: Executor,
{
    let series = RegionSeries::new(sys, n, first, tau, m)?;
    let cs = c_axis.points();
    let ds = d_axis.points();
    let s_c = collect_results(exec.map_indexed(cs.len(), |i| series.cumulative(cs[i])))?;
    let s_d = collect_results(exec.map_indexed(ds.len(), |i| series.cumulative(ds[i])))?;
    let mut records = Vec::with_capacity(cs.len() * ds.len());
    for (i, &c) in cs.iter().enumerate() {
        for (j, &d) in ds.iter().enumerate() {
            let q = (c < d).then(|| s_d[j] - s_c[i]);
            records.push(RegionRecord { c, d, q });
        }
    }
    let grid = ScanGrid::new(alloc::vec![c_axis.clone(), d_axis.clone()]);
    Ok(attach_quality(ScanResult::new(grid, records)?, &series, tau))
}

/// `q(R1, [c, inf))` along `c_axis`.
pub fn scan_region_half_line<S, E>(
    sys: S,
    n: usize,
    first: &Region,
    c_axis: &Axis,
    tau: f64,
    m: usize,
    exec: &E,
) -> Result<ScanResult<HalfLineRecord>>
where
    S: BoundSystem + Sync,
    E: Executor,
{
    let series = RegionSeries::new(sys, n, first, tau, m)?;
    let total = series.cumulative(f64::INFINITY)?;
    let cs = c_axis.points();
    let records = collect_results(exec.map_indexed(cs.len(), |i| {
        Ok(HalfLineRecord {
            c: cs[i],
            q: total - series.cumulative(cs[i])?,
        })
    }))?;
    let grid = ScanGrid::new(alloc::vec![c_axis.clone()]);
    Ok(attach_quality(ScanResult::new(grid, records)?, &series, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::region_quasiprob;
    use crate::eigensystems::QhoSystem;
    use crate::overlaps::{Cutoff, Interval};
    use crate::scans::Serial;

    fn half() -> Region {
        Region::from(Interval::upper(0.0).unwrap())
    }

    #[test]
    fn masked_lower_triangle_and_direct_agreement() {
        let c = Axis::new("c", 0.0, 2.0, 5).unwrap();
        let d = Axis::new("d", 0.5, 2.5, 5).unwrap();
        let scan = scan_region(QhoSystem, 0, &half(), &c, &d, 2.5, 80, &Serial).unwrap();
        assert_eq!(scan.records.len(), 25);
        for r in &scan.records {
            match r.q {
                None => assert!(r.c >= r.d),
                Some(q) => {
                    let second = Region::from(Interval::new(r.c, r.d).unwrap());
                    let direct = region_quasiprob(&QhoSystem, 0, &half(), &second, 2.5, Cutoff::Fixed(80)).unwrap();
                    assert!((q - direct.value).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn half_line_starts_at_equal_split() {
        let c = Axis::new("c", 0.0, 3.0, 4).unwrap();
        let scan = scan_region_half_line(QhoSystem, 0, &half(), &c, 0.0, 200, &Serial).unwrap();
        // At tau = 0 and c = 0 the two projectors coincide.
        assert!((scan.records[0].q - 0.5).abs() < 2e-2);
        assert!(scan.records.windows(2).all(|w| w[1].q <= w[0].q + 1e-3));
    }
}
