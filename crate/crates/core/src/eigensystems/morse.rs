use alloc::vec::Vec;

use super::BoundSystem;
use crate::quadrature::Quadrature;
use crate::special::{laguerre, ln_gamma};
use crate::{Error, Result};

/// Morse well `V(r) = (lambda^2/2)(e^{-2r} - 2e^{-r})` in the dimensionless
/// coordinate `r` (width `a = 1`, minimum at `r = 0`).
///
/// Eigenstates are `psi_n = N_n z^s e^{-z/2} L_n^(2s)(z)` with
/// `z = 2 lambda e^{-r}` and `s = lambda - n - 1/2`; energies
/// `eps_n = -(lambda - n - 1/2)^2 / 2`. The time variable is `omega_0 tau`,
/// so level `n` advances at `eps_n / lambda`.
///
/// `N_n` is obtained by quadrature when the system is built.
#[derive(Debug, Clone, PartialEq)]
pub struct MorseSystem {
    lambda: f64,
    states: Vec<MorseState>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct MorseState {
    s: f64,
    alpha: f64,
    log_norm: f64,
    support: (f64, f64),
}

// ln of the smallest |psi| we care to resolve.
const LN_NEGLIGIBLE: f64 = -36.0;

impl MorseSystem {
    /// Build the bound spectrum for well parameter `lambda > 1/2`.
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda <= 0.5 || !lambda.is_finite() {
            return Err(Error::invalid("lambda", "must be finite and > 1/2"));
        }
        let count = Self::bound_state_count(lambda);
        let quad = Quadrature::with_abs_tol(1e-13);
        let mut states = Vec::with_capacity(count);
        for n in 0..count {
            let s = lambda - n as f64 - 0.5;
            let alpha = 2.0 * s;
            let log_norm = numerical_log_norm(n, alpha, &quad)?;
            let support = state_support(lambda, n, s, alpha, log_norm);
            states.push(MorseState {
                s,
                alpha,
                log_norm,
                support,
            });
        }
        Ok(MorseSystem { lambda, states })
    }

    /// Number of `n >= 0` with `lambda - n - 1/2 > 0`.
    pub fn bound_state_count(lambda: f64) -> usize {
        let top = lambda - 0.5;
        if top <= 0.0 {
            0
        } else {
            top.ceil() as usize
        }
    }

    /// Well parameter.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `z = 2 lambda e^{-r}`.
    pub fn scaled_coordinate(&self, r: f64) -> f64 {
        2.0 * self.lambda * (-r).exp()
    }

    /// Dimensionless potential.
    pub fn potential(&self, r: f64) -> f64 {
        let e = (-r).exp();
        0.5 * self.lambda * self.lambda * (e * e - 2.0 * e)
    }

    /// `ln N_n` as computed by quadrature.
    pub fn log_norm(&self, n: usize) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.states[n].log_norm)
    }

    /// `ln N_n` from `N_n^2 = n! (2 lambda - 2n - 1) / Gamma(2 lambda - n)`.
    /// Reference only; evaluation uses [`log_norm`](Self::log_norm).
    pub fn closed_form_log_norm(&self, n: usize) -> f64 {
        let nf = n as f64;
        0.5 * (ln_gamma(nf + 1.0) + (2.0 * self.lambda - 2.0 * nf - 1.0).ln()
            - ln_gamma(2.0 * self.lambda - nf))
    }

    /// `psi_n(r)` with an index check.
    pub fn psi_checked(&self, n: usize, r: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.eval(n, r))
    }

    /// `psi_n'(r)` with an index check.
    pub fn psi_prime_checked(&self, n: usize, r: f64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.eval_prime(n, r))
    }

    fn ln_z(&self, r: f64) -> f64 {
        (2.0 * self.lambda).ln() - r
    }

    fn eval(&self, n: usize, r: f64) -> f64 {
        let st = &self.states[n];
        let ln_z = self.ln_z(r);
        let z = ln_z.exp();
        signed_exp(st.log_norm + st.s * ln_z - 0.5 * z, laguerre(n, st.alpha, z))
    }

    fn eval_prime(&self, n: usize, r: f64) -> f64 {
        // d/dr = -z d/dz and d/dz L_n^(a) = -L_{n-1}^(a+1):
        // psi' = -(s - z/2) psi + N z^{s+1} e^{-z/2} L_{n-1}^(a+1)(z).
        let st = &self.states[n];
        let ln_z = self.ln_z(r);
        let z = ln_z.exp();
        let psi = signed_exp(st.log_norm + st.s * ln_z - 0.5 * z, laguerre(n, st.alpha, z));
        let tail = if n == 0 {
            0.0
        } else {
            signed_exp(
                st.log_norm + (st.s + 1.0) * ln_z - 0.5 * z,
                laguerre(n - 1, st.alpha + 1.0, z),
            )
        };
        -(st.s - 0.5 * z) * psi + tail
    }
}

/// `factor * exp(log_mag)`, robust to overflow of either piece alone.
fn signed_exp(log_mag: f64, factor: f64) -> f64 {
    if factor == 0.0 || !factor.is_finite() && log_mag == f64::NEG_INFINITY {
        return 0.0;
    }
    let total = log_mag + factor.abs().ln();
    if total < -745.0 || total.is_nan() {
        0.0
    } else {
        factor.signum() * total.exp()
    }
}

/// `ln N_n` from `1 / N_n^2 = int_0^inf z^{alpha-1} e^{-z} L_n^(alpha)(z)^2 dz`.
fn numerical_log_norm(n: usize, alpha: f64, quad: &Quadrature) -> Result<f64> {
    let peak = (alpha - 1.0).max(0.0);
    let reference = if peak > 0.0 { peak * peak.ln() - peak } else { 0.0 };
    let nf = n as f64;
    let width = alpha + 2.0 * nf + 1.0;
    let z_max = 2.0 * width + 20.0 * width.sqrt() + 80.0;
    let integrand = |z: f64| {
        if z <= 0.0 {
            return if alpha == 1.0 { laguerre(n, alpha, 0.0).powi(2) } else { 0.0 };
        }
        let l = laguerre(n, alpha, z);
        if l == 0.0 {
            return 0.0;
        }
        ((alpha - 1.0) * z.ln() - z - reference + 2.0 * l.abs().ln()).exp()
    };
    let mut breaks = alloc::vec![0.0];
    for p in [peak, width, 2.0 * width] {
        if p > *breaks.last().unwrap() && p < z_max {
            breaks.push(p);
        }
    }
    breaks.push(z_max);
    let q = Quadrature {
        rel_tol: 1e-12,
        abs_tol: 0.0,
        ..*quad
    };
    let integral = q.integrate_with_breaks(integrand, &breaks)?.value;
    Ok(-0.5 * (reference + integral.ln()))
}

/// Interval in `r` outside which `|psi_n|` is below `e^{-36}`.
fn state_support(lambda: f64, n: usize, s: f64, alpha: f64, log_norm: f64) -> (f64, f64) {
    let nf = n as f64;
    // Large-z side: e^{-z/2} beats z^{s+n}; walk out until the envelope is
    // negligible. Small-z side: |psi| <= N z^s binom(n + alpha, n).
    let mut z_hi = 2.0 * (alpha + 2.0 * nf + 1.0);
    while log_norm + (s + nf) * z_hi.ln() - 0.5 * z_hi > LN_NEGLIGIBLE - 5.0 {
        z_hi *= 1.25;
    }
    let ln_binom = ln_gamma(nf + alpha + 1.0) - ln_gamma(nf + 1.0) - ln_gamma(alpha + 1.0);
    let ln_z_lo = (LN_NEGLIGIBLE - 5.0 - log_norm - ln_binom) / s;
    let ln_2l = (2.0 * lambda).ln();
    (ln_2l - z_hi.ln(), ln_2l - ln_z_lo.min(z_hi.ln() - 1.0))
}

impl BoundSystem for MorseSystem {
    fn energy(&self, n: usize) -> f64 {
        let s = self.lambda - n as f64 - 0.5;
        -0.5 * s * s
    }

    fn frequency(&self, n: usize) -> f64 {
        self.energy(n) / self.lambda
    }

    fn psi(&self, n: usize, x: f64) -> f64 {
        if n >= self.states.len() {
            return f64::NAN;
        }
        self.eval(n, x)
    }

    fn psi_prime(&self, n: usize, x: f64) -> f64 {
        if n >= self.states.len() {
            return f64::NAN;
        }
        self.eval_prime(n, x)
    }

    fn num_states(&self) -> Option<usize> {
        Some(self.states.len())
    }

    fn is_symmetric(&self) -> bool {
        false
    }

    fn support(&self, n: usize) -> (f64, f64) {
        self.states.get(n).map_or((0.0, 0.0), |st| st.support)
    }
}

/// Normalized Morse eigenfunction `psi_n(r)` for well parameter `lambda`.
/// Builds the spectrum on each call; hold a [`MorseSystem`] for repeated use.
pub fn morse_psi(lambda: f64, n: usize, r: f64) -> Result<f64> {
    MorseSystem::new(lambda)?.psi_checked(n, r)
}

/// Derivative of [`morse_psi`] with respect to `r`.
pub fn morse_psi_prime(lambda: f64, n: usize, r: f64) -> Result<f64> {
    MorseSystem::new(lambda)?.psi_prime_checked(n, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_sq(sys: &MorseSystem, n: usize) -> f64 {
        let (lo, hi) = sys.support(n);
        Quadrature::with_abs_tol(1e-12)
            .integrate_with_breaks(|r| sys.psi(n, r).powi(2), &[lo, 0.0, 1.0, hi])
            .unwrap()
            .value
    }

    #[test]
    fn bound_state_count() {
        assert_eq!(MorseSystem::bound_state_count(50.0), 50);
        assert_eq!(MorseSystem::bound_state_count(3.5), 3);
        assert_eq!(MorseSystem::bound_state_count(3.6), 4);
        assert_eq!(MorseSystem::bound_state_count(0.5), 0);
    }

    #[test]
    fn rejects_bad_lambda() {
        assert!(MorseSystem::new(0.4).is_err());
        assert!(MorseSystem::new(f64::NAN).is_err());
    }

    #[test]
    fn numerical_normalization_matches_square_root_form() {
        let sys = MorseSystem::new(50.0).unwrap();
        for n in [0usize, 1, 2, 10, 30, 48, 49] {
            let diff = sys.log_norm(n).unwrap() - sys.closed_form_log_norm(n);
            assert!(diff.abs() < 1e-10, "n={n}: {diff}");
        }
    }

    #[test]
    fn normalized_over_support() {
        let sys = MorseSystem::new(50.0).unwrap();
        for n in [0usize, 1, 5, 20, 49] {
            let v = norm_sq(&sys, n);
            assert!((v - 1.0).abs() < 1e-6, "n={n}: {v}");
        }
    }

    #[test]
    fn energies_increase() {
        let sys = MorseSystem::new(12.3).unwrap();
        let count = sys.num_states().unwrap();
        for n in 1..count {
            assert!(sys.energy(n) > sys.energy(n - 1));
        }
        assert!(sys.energy(count - 1) < 0.0);
    }

    #[test]
    fn index_out_of_range() {
        let sys = MorseSystem::new(3.2).unwrap();
        assert_eq!(
            sys.psi_checked(3, 0.0).unwrap_err(),
            Error::IndexOutOfRange { index: 3, count: 3 }
        );
        assert!(morse_psi(3.2, 2, 0.1).is_ok());
    }

    #[test]
    fn schrodinger_residual() {
        let sys = MorseSystem::new(50.0).unwrap();
        let h = 1e-4;
        for n in [0usize, 1, 3] {
            let eps = sys.energy(n);
            for &r in &[-0.15, -0.03, 0.0, 0.08, 0.2] {
                let f = |x| sys.psi(n, x);
                let d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
                let residual = d2 - 2.0 * (sys.potential(r) - eps) * f(r);
                // FD noise scales with |psi''| ~ lambda^2 here.
                let scale = d2.abs().max(1.0);
                assert!(residual.abs() < 1e-6 * scale, "n={n} r={r}: {residual}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let sys = MorseSystem::new(50.0).unwrap();
        let h = 1e-6;
        for n in [0usize, 1, 2, 7, 40] {
            for &r in &[-0.2, 0.0, 0.1, 0.5, 2.0] {
                let fd = (sys.psi(n, r + h) - sys.psi(n, r - h)) / (2.0 * h);
                let d = sys.psi_prime(n, r);
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0), "n={n} r={r}: {fd} vs {d}");
            }
        }
    }

    #[test]
    fn node_counts() {
        let sys = MorseSystem::new(50.0).unwrap();
        for (n, expected) in [(0usize, 0usize), (1, 1), (2, 2)] {
            let (lo, hi) = sys.support(n);
            let steps = 20_000;
            let mut sign_changes = 0;
            let mut last = sys.psi(n, lo);
            for i in 1..=steps {
                let r = lo + (hi - lo) * i as f64 / steps as f64;
                let v = sys.psi(n, r);
                // ignore the exponentially small tails
                if v.abs() > 1e-10 && last.abs() > 1e-10 && v.signum() != last.signum() {
                    sign_changes += 1;
                }
                if v.abs() > 1e-10 {
                    last = v;
                }
            }
            assert_eq!(sign_changes, expected, "n={n}");
        }
    }
}
