//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::f64::consts::{FRAC_2_PI, PI, TAU};
use std::io::Write;

use lgbound::RayonExecutor;
use lgbound_core::correlators::{
    exact_qho_correlator, series_quasiprob, sign_matrix_element, superposition_correlator,
    superposition_moments, triangle_wave_partial_sum, EigenSeries, ExactEigenstate, Sign, TwoTimeModel,
};
use lgbound_core::eigensystems::{BoundSystem, MorseSystem, QhoSystem, SuperpositionState};
use lgbound_core::lg::{lg3_set, LgReport, Regime, VIOLATION_TOLERANCE};
use lgbound_core::overlaps::{overlap_row, partial_overlap, wronskian_overlap, Cutoff, Interval, Region};
use lgbound_core::parity::parity_min;
use lgbound_core::quadrature::Quadrature;
use lgbound_core::scans::{
    periodic_grid, periodic_lg_points, scan_classicalization, scan_morse, scan_region, scan_smoothing,
    scan_superposition, Axis,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn right_half() -> Region {
    Region::from(Interval::upper(0.0).unwrap())
}

fn exec() -> RayonExecutor {
    RayonExecutor::new(None).unwrap()
}

fn tau_axis(count: usize) -> Axis {
    Axis::new("tau", 0.0, TAU, count).unwrap()
}

fn three_term() -> Outcome {
    let mut worst: f64 = 0.0;
    for j in 0..64 {
        let tau = TAU * j as f64 / 63.0;
        let out = series_quasiprob(&QhoSystem, 1, tau, Cutoff::Fixed(2)).map_err(|e| e.to_string())?;
        let expect = 0.25 + 3.0 / (4.0 * PI) * tau.cos();
        worst = worst.max((out.moments.q(Sign::Plus, Sign::Plus) - expect).abs());
    }
    check(worst <= 1e-12, format!("max deviation {worst:.2e} over 64 points"))
}

fn truncation_errors() -> Outcome {
    let d2 = overlap_row(&QhoSystem, 1, &right_half(), 2).unwrap().truncation_error();
    let d4 = overlap_row(&QhoSystem, 1, &right_half(), 4).unwrap().truncation_error();
    check(
        (d2 - 0.011).abs() <= 1e-3 && (d4 - 0.005).abs() <= 1e-3,
        format!("Delta_1(2) = {d2:.5}, Delta_1(4) = {d4:.5}"),
    )
}

fn overlap_goldens() -> Outcome {
    let j = |l: usize| wronskian_overlap(&QhoSystem, 1, l, 0.0, f64::INFINITY).unwrap().powi(2);
    let cases = [
        (0, 1.0 / (2.0 * PI)),
        (2, 1.0 / (4.0 * PI)),
        (3, 0.0),
        (4, 1.0 / (48.0 * PI)),
    ];
    let worst = cases.iter().map(|&(l, v)| (j(l) - v).abs()).fold(0.0, f64::max);
    check(worst <= 1e-10, format!("J_10^2, J_12^2, J_13^2, J_14^2 max error {worst:.2e}"))
}

fn oracle_equivalence() -> Outcome {
    let taus = periodic_grid(TAU, 256);
    let mut worst: f64 = 0.0;
    let mut worst_delta: f64 = 0.0;
    for n in 0..=8 {
        let series = EigenSeries::new(&QhoSystem, n, Cutoff::target(1e-4)).map_err(|e| e.to_string())?;
        worst_delta = worst_delta.max(series.truncation_error());
        let exact = ExactEigenstate::new(n).unwrap();
        let grid = series.correlator_periodic(256).unwrap();
        for (c, &t) in grid.iter().zip(&taus) {
            worst = worst.max((c - exact.correlator_at(t)).abs());
        }
    }
    check(
        worst <= 0.01 && worst_delta < 1e-4,
        format!("max |series - closed form| = {worst:.2e}, max Delta = {worst_delta:.2e}"),
    )
}

fn parity_flip() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 0..=8 {
        worst = worst.max((exact_qho_correlator(n, PI).unwrap() + 1.0).abs());
    }
    for i in 0..=20 {
        for j in 0..8 {
            let state = SuperpositionState::new(PI * i as f64 / 20.0, TAU * j as f64 / 8.0).unwrap();
            for t1 in [0.0, 0.7, 2.1] {
                worst = worst.max((superposition_moments(&state, t1, t1 + PI).c12 + 1.0).abs());
            }
        }
    }
    check(worst <= 1e-6, format!("max |C(pi) + 1| = {worst:.2e}"))
}

fn lg3_first_excited() -> Outcome {
    let taus = tau_axis(2048).points();
    let one = LgReport::evaluate(&ExactEigenstate::new(1).unwrap(), &taus).unwrap();
    let zero = LgReport::evaluate(&ExactEigenstate::new(0).unwrap(), &taus).unwrap();
    let (m1, m0) = (one.summary.min_lg3.value, zero.summary.min_lg3.value);
    check(
        (m1 + 0.365).abs() <= 0.010 && m0 >= -1e-9,
        format!("|1>: min L = {m1:.4} ({:.1}% of Luders); |0>: min L = {m0:.2e}", 100.0 * one.luders_fraction()),
    )
}

fn lg4_first_excited() -> Outcome {
    let taus = tau_axis(2048).points();
    let one = LgReport::evaluate(&ExactEigenstate::new(1).unwrap(), &taus).unwrap();
    let zero = LgReport::evaluate(&ExactEigenstate::new(0).unwrap(), &taus).unwrap();
    let (m1, m0) = (one.summary.max_lg4.value, zero.summary.max_lg4.value);
    check(
        (m1 - 2.615).abs() <= 0.010 && m0 <= 2.0 + 1e-9,
        format!("|1>: max K = {m1:.4}; |0>: max K = {m0:.12}"),
    )
}

fn single_time_average() -> Outcome {
    let v = sign_matrix_element(&QhoSystem, 0, 1).unwrap();
    let gap = (v - FRAC_2_PI.sqrt()).abs();
    check(gap <= 1e-10, format!("<0|sgn x|1> = {v:.12}, error {gap:.1e}"))
}

fn regime_coverage() -> Outcome {
    let theta = Axis::new("theta", 0.0, PI, 61).unwrap();
    let phi = Axis::new("phi", 0.0, TAU, 73).unwrap();
    let scan = scan_superposition(&theta, &phi, &tau_axis(256), &exec()).unwrap();
    let mut seen = [false; 4];
    for r in &scan.records {
        seen[r.regime as usize] = true;
    }
    let edge = |th: f64, want: Regime| scan.records.iter().filter(|r| r.theta == th).all(|r| r.regime == want);
    let phi_pi = phi.points().into_iter().min_by(|a, b| (a - PI).abs().total_cmp(&(b - PI).abs())).unwrap();
    let slice: Vec<_> = scan.records.iter().filter(|r| r.phi == phi_pi).collect();
    let regime_three: Vec<_> = slice.iter().filter(|r| r.regime == Regime::III).collect();
    let pair_23 = regime_three.iter().any(|r| r.min_lg2_kernel.starts_with("lg2_23"));
    let (lo, hi) = regime_three
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r.theta), hi.max(r.theta)));
    check(
        seen.iter().all(|&s| s) && edge(0.0, Regime::I) && edge(PI, Regime::II) && pair_23,
        format!(
            "regimes seen {:?}; theta=0 all I, theta=pi all II; phi=pi regime III for theta in [{lo:.3}, {hi:.3}] ({} points, (tau, 2tau) pair: {pair_23})",
            seen,
            regime_three.len()
        ),
    )
}

fn region_violation() -> Outcome {
    let c = Axis::new("c", -3.0, 5.0, 201).unwrap();
    let d = Axis::new("d", -3.0, 5.0, 201).unwrap();
    let scan = scan_region(QhoSystem, 0, &right_half(), &c, &d, 2.77, 200, &exec()).unwrap();
    let s = scan.summary.column("q").unwrap();
    let at = &scan.records[s.argmin];
    check(
        s.min <= -0.02,
        format!(
            "min q(+,+) = {:.4} at [c, d] = [{:.2}, {:.2}] ({:.0}% of -1/8)",
            s.min,
            at.c,
            at.d,
            100.0 * s.min / -0.125
        ),
    )
}

fn smoothing() -> Outcome {
    let axis = Axis::log("a", 1e-3, 1.0, 2).unwrap();
    let scan = scan_smoothing(&axis, 1, 80, 512, &exec()).unwrap();
    let exact = ExactEigenstate::new(1).unwrap();
    let c: Vec<f64> = periodic_grid(TAU, 512).iter().map(|&t| exact.correlator_at(t)).collect();
    let sharp = periodic_lg_points(&c, 0.0, TAU)
        .iter()
        .map(|p| p.min_lg3())
        .fold(f64::INFINITY, f64::min);
    let (narrow, wide) = (scan.records[0].min_lg3, scan.records[1].min_lg3);
    check(
        (narrow - sharp).abs() <= 1e-3 && wide >= -1e-3,
        format!("a=1e-3: {narrow:.5} (sharp {sharp:.5}); a=1: {wide:.4}"),
    )
}

fn classicalization() -> Outcome {
    let scan = scan_classicalization(50, 1024, Cutoff::default(), &exec()).unwrap();
    let d: Vec<f64> = scan.records.iter().map(|r| r.delta).collect();
    let decreasing = |start: usize| (start..=48).step_by(2).all(|n| d[n + 2] < d[n]);
    let trend = decreasing(0) && decreasing(1);
    let series = EigenSeries::new(&QhoSystem, 50, Cutoff::default()).unwrap();
    let taus = periodic_grid(TAU, 1024);
    let grid = series.correlator_periodic(1024).unwrap();
    let fourier_gap = grid
        .iter()
        .zip(&taus)
        .map(|(c, &t)| (c - triangle_wave_partial_sum(t, 200)).abs())
        .fold(0.0, f64::max);
    let exact_gap = scan.records[50].max_gap;
    check(
        trend && d[0] > 0.0 && d[50] < d[2] / 3.0 && fourier_gap < 0.05 && exact_gap < 0.05,
        format!(
            "even and odd subsequences decreasing: {trend}; Delta(0) = {:.4}, Delta(2) = {:.4}, Delta(50) = {:.2e}; n=50 gap to triangle wave {exact_gap:.4}, to its Fourier sum {fourier_gap:.4}",
            d[0], d[2], d[50]
        ),
    )
}

fn parity_test() -> Outcome {
    let (u, v) = parity_min();
    check(
        (v + 0.3024).abs() <= 1e-3 && (u - FRAC_2_PI.sqrt()).abs() <= 1e-4,
        format!("min {v:.5} at q/sigma = {u:.6}"),
    )
}

fn morse() -> Outcome {
    let trace = scan_morse(50.0, 1, &tau_axis(1024).points(), Cutoff::default(), &exec()).unwrap();
    let s = &trace.report.summary;
    check(
        (trace.truncation_error - 0.001).abs() <= 5e-4
            && (s.min_lg3.value + 0.35).abs() <= 0.02
            && (s.max_lg4.value - 2.60).abs() <= 0.05
            && s.min_correlator.value > -1.0,
        format!(
            "Delta = {:.5} (m = {}); min LG3 = {:.4}; max LG4 = {:.4}; min C = {:.4}",
            trace.truncation_error, trace.cutoff, s.min_lg3.value, s.max_lg4.value, s.min_correlator.value
        ),
    )
}

fn invariant_suites() -> Outcome {
    let mut failures = Vec::new();

    // Moments: quasi-probabilities sum to one, reproduce the marginals and the correlator.
    let state = SuperpositionState::new(1.1, 2.3).unwrap();
    let series = EigenSeries::new(&QhoSystem, 2, Cutoff::Fixed(400)).unwrap();
    let mut moment_gap: f64 = 0.0;
    for t in [0.3, 1.7, 4.0] {
        for m in [state.moments(0.2, 0.2 + t), series.moments(0.0, t)] {
            let total: f64 = Sign::BOTH.iter().flat_map(|&a| Sign::BOTH.map(|b| m.q(a, b))).sum();
            let corr: f64 = Sign::BOTH
                .iter()
                .flat_map(|&a| Sign::BOTH.map(|b| a.value() * b.value() * m.q(a, b)))
                .sum();
            let marginal = m.q(Sign::Plus, Sign::Plus) + m.q(Sign::Plus, Sign::Minus) - 0.5 * (1.0 + m.q1);
            moment_gap = moment_gap.max((total - 1.0).abs()).max((corr - m.c12).abs()).max(marginal.abs());
        }
        let direct = series.quasi_pp(t);
        let via = series.moments(0.0, t).q(Sign::Plus, Sign::Plus);
        moment_gap = moment_gap.max((direct - via).abs());
    }
    if moment_gap > 1e-12 {
        failures.push(format!("moment expansion {moment_gap:.1e}"));
    }

    // LG3 kernels sum to four.
    let sum_gap = [(0.3, -0.7, 0.1), (1.0, 1.0, 1.0), (-0.2, 0.9, -0.95)]
        .iter()
        .map(|&(a, b, c)| (lg3_set(a, b, c).iter().sum::<f64>() - 4.0).abs())
        .fold(0.0, f64::max);
    if sum_gap > 1e-14 {
        failures.push(format!("sum L_i {sum_gap:.1e}"));
    }

    // LG3 kernels of superpositions are the convex mixture of the |0>, |1> kernels.
    let mut convex_gap: f64 = 0.0;
    for (theta, tau) in [(0.4, 0.9), (1.3, 2.2), (2.9, 1.1)] {
        let c = |n: usize, k: f64| exact_qho_correlator(n, k * tau).unwrap();
        let l = |n: usize| lg3_set(c(n, 1.0), c(n, 1.0), c(n, 2.0));
        let mixed = lg3_set(
            superposition_correlator(theta, c(0, 1.0), c(1, 1.0)),
            superposition_correlator(theta, c(0, 1.0), c(1, 1.0)),
            superposition_correlator(theta, c(0, 2.0), c(1, 2.0)),
        );
        let w = (theta / 2.0).sin().powi(2);
        let (l0, l1) = (l(0), l(1));
        for (i, value) in mixed.iter().enumerate() {
            convex_gap = convex_gap.max((value - ((1.0 - w) * l0[i] + w * l1[i])).abs());
        }
    }
    if convex_gap > 1e-12 {
        failures.push(format!("convexity {convex_gap:.1e}"));
    }

    // Wronskian overlaps against direct quadrature, and orthonormality.
    let morse = MorseSystem::new(50.0).unwrap();
    let quad = Quadrature::with_abs_tol(1e-11);
    let mut wq_gap: f64 = 0.0;
    let mut ortho_gap: f64 = 0.0;
    for (sys, name) in [(&QhoSystem as &dyn BoundSystem, "qho"), (&morse as &dyn BoundSystem, "morse")] {
        for (k, l, x1, x2) in [(0, 3, -0.4, 1.2), (2, 7, 0.0, 2.5), (5, 6, -1.0, 0.3)] {
            let w = wronskian_overlap(sys, k, l, x1, x2).unwrap();
            let q = quad.integrate(|x| sys.psi(k, x) * sys.psi(l, x), x1, x2).unwrap().value;
            wq_gap = wq_gap.max((w - q).abs());
        }
        for m in 0..=20 {
            for n in m..=20 {
                let lo = sys.support(m).0.min(sys.support(n).0);
                let hi = sys.support(m).1.max(sys.support(n).1);
                let v = quad.integrate(|x| sys.psi(m, x) * sys.psi(n, x), lo, hi).unwrap().value;
                let target = if m == n { 1.0 } else { 0.0 };
                if (v - target).abs() > 1e-6 {
                    failures.push(format!("{name} <{m}|{n}> = {v:.2e}"));
                }
                ortho_gap = ortho_gap.max((v - target).abs());
            }
        }
        let full = partial_overlap(sys, 1, 4, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        wq_gap = wq_gap.max(full.abs());
    }
    if wq_gap > 1e-9 {
        failures.push(format!("wronskian vs quadrature {wq_gap:.1e}"));
    }

    let detail = format!(
        "moments {moment_gap:.1e}, sum L {sum_gap:.1e}, convexity {convex_gap:.1e}, wronskian {wq_gap:.1e}, orthonormality {ortho_gap:.1e} (tolerance for kernels {VIOLATION_TOLERANCE:.0e})"
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; failures: {}", failures.join(", ")))
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 15] = [
        ("three-term approximation", three_term),
        ("truncation errors", truncation_errors),
        ("overlap goldens", overlap_goldens),
        ("closed forms vs series", oracle_equivalence),
        ("parity flip at half period", parity_flip),
        ("LG3 for |1> and |0>", lg3_first_excited),
        ("LG4 for |1> and |0>", lg4_first_excited),
        ("single-time average", single_time_average),
        ("regime coverage", regime_coverage),
        ("ground-state region violation", region_violation),
        ("smoothing", smoothing),
        ("classicalization", classicalization),
        ("parity operator test", parity_test),
        ("Morse well", morse),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed.push(i + 1);
                ("FAIL", d)
            }
        };
        // Written to the raw handle so the report shows without --nocapture.
        let line = format!("criterion {:>2} {tag} {name}: {detail}\n", i + 1);
        std::io::stdout().lock().write_all(line.as_bytes()).expect("stdout is writable");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
