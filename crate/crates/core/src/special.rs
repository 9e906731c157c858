//! Orthogonal polynomial recurrences and small scalar helpers.
//!
//! Polynomials are always generated by their three-term recurrences; no
//! factorial-explicit formulas appear anywhere.

use alloc::vec::Vec;
use num_traits::Float;

/// `pi^(-1/4)`.
pub const PI_POW_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;

/// Physicists' Hermite polynomial `H_n(x)` by forward recurrence
/// `H_{k+1} = 2x H_k - 2k H_{k-1}`.
///
/// Supported for `n <= 200`; beyond that (or for large `|x|`) the raw values
/// overflow long before the normalized functions do, see
/// [`hermite_functions`].
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized oscillator eigenfunctions `psi_0(x) .. psi_{count-1}(x)`.
///
/// Uses the normalized recurrence
/// `psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}`,
/// which stays in range for any `k` as long as `exp(-x^2/2)` does not
/// underflow (`|x| < ~37`).
pub fn hermite_functions(x: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let p0 = PI_POW_NEG_QUARTER * (-0.5 * x * x).exp();
    out.push(p0);
    if count == 1 {
        return out;
    }
    out.push(core::f64::consts::SQRT_2 * x * p0);
    for k in 1..count - 1 {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Derivatives `psi_k'(x)` from a table of values, via
/// `psi_k' = sqrt(2k) psi_{k-1} - x psi_k`.
pub fn hermite_function_derivatives(x: f64, values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let lower = if k == 0 { 0.0 } else { (2.0 * k as f64).sqrt() * values[k - 1] };
            lower - x * p
        })
        .collect()
}

/// Generalized Laguerre polynomial `L_n^(alpha)(z)` by
/// `(k+1) L_{k+1} = (2k+1+alpha-z) L_k - (k+alpha) L_{k-1}`.
pub fn laguerre(n: usize, alpha: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Error function.
#[inline]
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Natural log of the gamma function.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
/// Returns `(argmin, min)`, the bracket shrunk below `tol`.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5.0.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // H_4 from its explicit series: sum_m (-1)^m 4! / (m! (4-2m)!) (2x)^(4-2m).
    fn hermite4_series(x: f64) -> f64 {
        let t = 2.0 * x;
        t.powi(4) - 12.0 * t.powi(2) + 12.0
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(hermite_eval(0, 1.7), 1.0);
        assert_eq!(hermite_eval(1, 0.5), 1.0);
        assert_eq!(hermite_eval(4, 0.0), 12.0);
        for &x in &[-1.3, 0.2, 2.5] {
            assert_relative_eq!(hermite_eval(4, x), hermite4_series(x), max_relative = 1e-13);
        }
    }

    #[test]
    fn hermite_high_order_finite() {
        assert!(hermite_eval(200, 1.0).is_finite());
    }

    #[test]
    fn hermite_functions_match_raw_polynomials() {
        let x = 0.83;
        let table = hermite_functions(x, 12);
        let mut norm = PI_POW_NEG_QUARTER * (-0.5 * x * x).exp();
        for (n, &v) in table.iter().enumerate() {
            if n > 0 {
                norm /= (2.0 * n as f64).sqrt();
            }
            assert_relative_eq!(v, norm * hermite_eval(n, x), max_relative = 1e-12);
        }
    }

    #[test]
    fn laguerre_low_orders() {
        let (a, z) = (2.5, 1.3);
        assert_eq!(laguerre(0, a, z), 1.0);
        assert_relative_eq!(laguerre(1, a, z), 1.0 + a - z);
        let l2 = 0.5 * (z * z - 2.0 * (a + 2.0) * z + (a + 1.0) * (a + 2.0));
        assert_relative_eq!(laguerre(2, a, z), l2, max_relative = 1e-14);
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, v) = golden_section_min(|x| (x - 1.25) * (x - 1.25) - 3.0, 0.0, 5.0, 1e-10);
        assert!((x - 1.25).abs() < 1e-7);
        assert!((v + 3.0).abs() < 1e-14);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.0, 1.0, 5);
        assert_eq!(v, alloc::vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }
}
