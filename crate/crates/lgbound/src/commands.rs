use std::f64::consts::{FRAC_2_PI, SQRT_2};

use lgbound_core::correlators::{
    classical_correlator, three_term_correlator, EigenSeries, ExactEigenstate, Sign, TwoTimeModel,
};
use lgbound_core::eigensystems::{MorseSystem, QhoSystem, SuperpositionState};
use lgbound_core::lg::{LgReport, LG4_BOUND};
use lgbound_core::overlaps::{select_row, Cutoff, Interval, Region};
use lgbound_core::parity::{parity_kernel, parity_lg2, parity_min};
use lgbound_core::scans::{
    lg_trace, scan_classicalization, scan_eigenstate_violation, scan_region, scan_region_half_line, scan_smoothing,
    scan_superposition, Cell, Executor, Tabular,
};
use lgbound_core::BoundSystem;

use crate::config::{Approx, Plan, StateSpec, SystemSpec, Task};
use crate::output::Report;
use crate::CliError;

/// `(3/pi) cos tau`, the three-term series for `|1>`.
struct ThreeTerm;

impl TwoTimeModel for ThreeTerm {
    fn mean(&self, _t: f64) -> f64 {
        0.0
    }
    fn correlator(&self, t1: f64, t2: f64) -> f64 {
        three_term_correlator(t2 - t1)
    }
    fn is_stationary(&self) -> bool {
        true
    }
}

/// Three-term truncation error `Delta_1(2) = 1/2 - 1/(2 pi) - 1/4 - 1/(4 pi)`.
fn three_term_truncation() -> f64 {
    0.25 - 0.75 / std::f64::consts::PI
}

struct Model {
    inner: Box<dyn TwoTimeModel + Sync>,
    truncation_error: Option<f64>,
    cutoff: Option<usize>,
}

fn series_model<S: BoundSystem>(sys: &S, n: usize, cutoff: Cutoff) -> Result<Model, CliError> {
    let series = EigenSeries::new(sys, n, cutoff)?;
    Ok(Model {
        truncation_error: Some(series.truncation_error()),
        cutoff: Some(series.cutoff()),
        inner: Box::new(series),
    })
}

fn build_model(system: SystemSpec, state: StateSpec, approx: Approx, plan: &Plan) -> Result<Model, CliError> {
    let plain = |inner: Box<dyn TwoTimeModel + Sync>| Model {
        inner,
        truncation_error: None,
        cutoff: None,
    };
    match (system, state, approx) {
        (SystemSpec::Qho, StateSpec::Superposition { theta, phi }, _) => {
            Ok(plain(Box::new(SuperpositionState::new(theta, phi)?)))
        }
        (SystemSpec::Qho, StateSpec::Eigen(n), Approx::Exact) => Ok(plain(Box::new(ExactEigenstate::new(n)?))),
        (SystemSpec::Qho, StateSpec::Eigen(_), Approx::ThreeTerm) => Ok(Model {
            inner: Box::new(ThreeTerm),
            truncation_error: Some(three_term_truncation()),
            cutoff: Some(2),
        }),
        (SystemSpec::Qho, StateSpec::Eigen(n), Approx::Series) => series_model(&QhoSystem, n, plan.cutoff),
        (SystemSpec::Morse { lambda }, StateSpec::Eigen(n), _) => series_model(&MorseSystem::new(lambda)?, n, plan.cutoff),
        _ => Err(CliError::Config("unsupported system and state combination".into())),
    }
}

/// One row of the `correlator` table.
struct CorrelatorRow {
    tau: f64,
    c: f64,
    classical: f64,
    q_pp: f64,
}

impl Tabular for CorrelatorRow {
    fn columns() -> Vec<&'static str> {
        vec!["tau", "C", "C_classical", "q_pp"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![self.tau.into(), self.c.into(), self.classical.into(), self.q_pp.into()]
    }
}

/// One row of the `parity` table.
struct ParityRow {
    ratio: f64,
    lg2: f64,
}

impl Tabular for ParityRow {
    fn columns() -> Vec<&'static str> {
        vec!["ratio", "lg2"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![self.ratio.into(), self.lg2.into()]
    }
}

fn with_model_quality(mut report: Report, model: &Model, plan: &Plan, approx: Approx) -> Report {
    if let Some(err) = model.truncation_error {
        report = report.extra("truncation_error", err);
        // A deliberately chosen approximation is only held to an explicit target.
        if approx != Approx::ThreeTerm || plan.explicit_truncation {
            report = report.with_quality(err);
        }
    }
    if let Some(m) = model.cutoff {
        report = report.extra("cutoff", m);
    }
    report
}

fn lg_extras(report: Report, lg: &LgReport) -> Report {
    let s = &lg.summary;
    report
        .extra("regime", lg.regime.as_str())
        .extra("lg2_violated", lg.flags.lg2)
        .extra("lg3_violated", lg.flags.lg3)
        .extra("lg4_violated", lg.flags.lg4)
        .extra("min_lg2", s.min_lg2.value)
        .extra("min_lg2_tau", s.min_lg2.tau)
        .extra("min_lg3", s.min_lg3.value)
        .extra("min_lg3_tau", s.min_lg3.tau)
        .extra("luders_fraction", lg.luders_fraction())
        .extra("max_lg4", s.max_lg4.value)
        .extra("max_lg4_tau", s.max_lg4.tau)
        .extra("lg4_fraction", s.max_lg4.value / (LG4_BOUND * SQRT_2))
        .extra("min_correlator", s.min_correlator.value)
}

/// Run the planned task.
pub fn execute<E: Executor>(plan: &Plan, exec: &E) -> Result<Report, CliError> {
    match &plan.task {
        &Task::Correlator { system, state, approx, ref taus } => {
            let model = build_model(system, state, approx, plan)?;
            let points = taus.points();
            let rows = exec.map_indexed(points.len(), |i| {
                let tau = points[i];
                let m = model.inner.moments(0.0, tau);
                CorrelatorRow {
                    tau,
                    c: m.c12,
                    classical: classical_correlator(tau),
                    q_pp: m.q(Sign::Plus, Sign::Plus),
                }
            });
            let report = Report::from_records(&rows).extra("mean_0", model.inner.mean(0.0));
            Ok(with_model_quality(report, &model, plan, approx))
        }
        &Task::Lg { system, state, approx, ref taus } => {
            let model = build_model(system, state, approx, plan)?;
            let lg = lg_trace(&*model.inner, &taus.points(), exec)?;
            let report = lg_extras(Report::from_records(&lg.points), &lg).extra("mean_0", model.inner.mean(0.0));
            Ok(with_model_quality(report, &model, plan, approx))
        }
        Task::ScanSuperposition { theta, phi, tau } => Ok(Report::from_scan(&scan_superposition(theta, phi, tau, exec)?)),
        &Task::ScanEigenstates { max_n, tau_points } => {
            let scan = scan_eigenstate_violation(max_n, tau_points, plan.cutoff, exec)?;
            let worst = scan.records.iter().map(|r| r.truncation_error).fold(0.0, f64::max);
            Ok(Report::from_scan(&scan).with_quality(worst))
        }
        &Task::Classicalization { max_n, tau_points } => {
            let scan = scan_classicalization(max_n, tau_points, plan.cutoff, exec)?;
            let worst = scan.records.iter().map(|r| r.truncation_error).fold(0.0, f64::max);
            Ok(Report::from_scan(&scan).with_quality(worst))
        }
        &Task::ScanRegion { n, tau, ref c, ref d } => {
            let first = Region::from(Interval::upper(0.0)?);
            let m = match plan.cutoff {
                Cutoff::Fixed(m) => m,
                adaptive => select_row(&QhoSystem, n, &first, adaptive)?.cutoff(),
            };
            let (report, err) = match d {
                Some(d) => {
                    let scan = scan_region(QhoSystem, n, &first, c, d, tau, m, exec)?;
                    (Report::from_scan(&scan), scan.summary.extra("truncation_error").cloned())
                }
                None => {
                    let scan = scan_region_half_line(QhoSystem, n, &first, c, tau, m, exec)?;
                    (Report::from_scan(&scan), scan.summary.extra("truncation_error").cloned())
                }
            };
            Ok(match err {
                Some(Cell::Float(e)) => report.with_quality(e),
                _ => report,
            })
        }
        &Task::ScanSmoothing { n, ref a, m, tau_points } => {
            let scan = scan_smoothing(a, n, m, tau_points, exec)?;
            let worst = scan.records.iter().map(|r| r.truncation_error).fold(0.0, f64::max);
            Ok(Report::from_scan(&scan).with_quality(worst))
        }
        &Task::Parity { ref ratio, gaussian } => {
            let points = ratio.points();
            let rows = exec.map_indexed(points.len(), |i| ParityRow {
                ratio: points[i],
                lg2: parity_kernel(points[i]),
            });
            let (argmin, min) = parity_min();
            let mut report = Report::from_records(&rows)
                .extra("argmin_ratio", argmin)
                .extra("min_lg2", min)
                .extra("argmin_ratio_exact", FRAC_2_PI.sqrt());
            if let Some((q, sigma)) = gaussian {
                report = report.extra("state_lg2", parity_lg2(q, sigma)?);
            }
            Ok(report)
        }
    }
}
