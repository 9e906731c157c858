use alloc::string::ToString;
use alloc::vec::Vec;

use super::{Axis, Cell, Executor, ScanGrid, ScanResult, Tabular};
use crate::correlators::{exact_qho_correlator, superposition_correlator, superposition_mean};
use crate::eigensystems::SuperpositionState;
use crate::lg::{LgFlags, LgPoint, Regime, LG2_LABELS};
use crate::Result;

/// Aggregates over the `tau` axis for one `(theta, phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionRecord {
    /// Polar angle.
    pub theta: f64,
    /// Relative phase.
    pub phi: f64,
    /// Smallest LG2 kernel over `tau`.
    pub min_lg2: f64,
    /// Which LG2 kernel attains it.
    pub min_lg2_kernel: &'static str,
    /// Where it is attained.
    pub min_lg2_tau: f64,
    /// Smallest LG3 kernel over `tau`.
    pub min_lg3: f64,
    /// Where it is attained.
    pub min_lg3_tau: f64,
    /// Largest LG4 kernel over `tau`.
    pub max_lg4: f64,
    /// Aggregate flags.
    pub flags: LgFlags,
    /// Regime label.
    pub regime: Regime,
}

impl Tabular for SuperpositionRecord {
    fn columns() -> Vec<&'static str> {
        alloc::vec![
            "theta",
            "phi",
            "min_lg2",
            "min_lg2_kernel",
            "min_lg2_tau",
            "min_lg3",
            "min_lg3_tau",
            "max_lg4",
            "lg2_violated",
            "lg3_violated",
            "lg4_violated",
            "regime",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        alloc::vec![
            self.theta.into(),
            self.phi.into(),
            self.min_lg2.into(),
            self.min_lg2_kernel.into(),
            self.min_lg2_tau.into(),
            self.min_lg3.into(),
            self.min_lg3_tau.into(),
            self.max_lg4.into(),
            self.flags.lg2.into(),
            self.flags.lg3.into(),
            self.flags.lg4.into(),
            self.regime.as_str().into(),
        ]
    }
}

/// Regime map over `(theta, phi)`, each point aggregated over `tau`.
///
/// The `|0>` and `|1>` correlators are tabulated once at `tau`, `2 tau`
/// and `3 tau`; every superposition is then a convex mixture plus its
/// single-time averages.
pub fn scan_superposition<E: Executor>(
    theta: &Axis,
    phi: &Axis,
    tau: &Axis,
    exec: &E,
) -> Result<ScanResult<SuperpositionRecord>> {
    let taus = tau.points();
    let table = |n: usize, k: f64| -> Result<Vec<f64>> { taus.iter().map(|&t| exact_qho_correlator(n, k * t)).collect() };
    let c0 = [table(0, 1.0)?, table(0, 2.0)?, table(0, 3.0)?];
    let c1 = [table(1, 1.0)?, table(1, 2.0)?, table(1, 3.0)?];
    let thetas = theta.points();
    let phis = phi.points();
    let states = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| SuperpositionState::new(t, p)))
        .collect::<Result<Vec<_>>>()?;

    let records = exec.map_indexed(states.len(), |i| {
        let state = &states[i];
        let th = state.theta();
        let mut rec = SuperpositionRecord {
            theta: thetas[i / phis.len()],
            phi: phis[i % phis.len()],
            min_lg2: f64::INFINITY,
            min_lg2_kernel: LG2_LABELS[0],
            min_lg2_tau: taus[0],
            min_lg3: f64::INFINITY,
            min_lg3_tau: taus[0],
            max_lg4: f64::NEG_INFINITY,
            flags: LgFlags::default(),
            regime: Regime::I,
        };
        for (j, &t) in taus.iter().enumerate() {
            let c = |k: usize| superposition_correlator(th, c0[k][j], c1[k][j]);
            let (ct, c2t, c3t) = (c(0), c(1), c(2));
            let means = [0.0, t, 2.0 * t, 3.0 * t].map(|s| superposition_mean(state, s));
            let point = LgPoint::from_parts(t, means, ct, ct, c2t, ct, c3t);
            rec.flags = rec.flags.union(point.flags());
            for (k, &v) in point.lg2.iter().enumerate() {
                if v < rec.min_lg2 {
                    rec.min_lg2 = v;
                    rec.min_lg2_kernel = LG2_LABELS[k];
                    rec.min_lg2_tau = t;
                }
            }
            if point.min_lg3() < rec.min_lg3 {
                rec.min_lg3 = point.min_lg3();
                rec.min_lg3_tau = t;
            }
            rec.max_lg4 = rec.max_lg4.max(point.max_lg4());
        }
        rec.regime = Regime::from_flags(rec.flags.lg2, rec.flags.lg3);
        rec
    });

    let mut counts = [0usize; 4];
    for r in &records {
        counts[r.regime as usize] += 1;
    }
    let grid = ScanGrid::new(alloc::vec![theta.clone(), phi.clone()]);
    let mut result = ScanResult::new(grid, records)?.with_extra("tau_axis", Cell::Text(tau.name().to_string()));
    for (regime, count) in [Regime::I, Regime::II, Regime::III, Regime::IV].into_iter().zip(counts) {
        result = result.with_extra(&alloc::format!("regime_{}_count", regime.as_str()), Cell::Int(count as i64));
    }
    Ok(result)
}
