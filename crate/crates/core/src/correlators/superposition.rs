use core::f64::consts::FRAC_2_PI;

use super::exact::exact_qho_correlator;
use super::MomentData;
use crate::eigensystems::SuperpositionState;

/// `cos^2(theta/2) c0 + sin^2(theta/2) c1`: the cross terms of `sgn x`
/// between `|0>` and `|1>` cancel in the symmetrized correlator.
pub fn superposition_correlator(theta: f64, c0: f64, c1: f64) -> f64 {
    let (s, c) = (0.5 * theta).sin_cos();
    c * c * c0 + s * s * c1
}

/// `<Q(t)> = sqrt(2/pi) sin(theta) cos(phi + t)`.
pub fn superposition_mean(state: &SuperpositionState, t: f64) -> f64 {
    FRAC_2_PI.sqrt() * state.theta().sin() * (state.phi() + t).cos()
}

/// Moments at `(t1, t2)` with the closed-form `|0>` and `|1>` correlators.
pub fn superposition_moments(state: &SuperpositionState, t1: f64, t2: f64) -> MomentData {
    let tau = t2 - t1;
    let c0 = exact_qho_correlator(0, tau).expect("closed form exists for |0>");
    let c1 = exact_qho_correlator(1, tau).expect("closed form exists for |1>");
    MomentData::from_moments(
        t1,
        t2,
        superposition_mean(state, t1),
        superposition_mean(state, t2),
        superposition_correlator(state.theta(), c0, c1),
    )
}
