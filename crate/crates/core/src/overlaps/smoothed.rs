use alloc::vec::Vec;

use super::OverlapRow;
use crate::eigensystems::{qho_psi, BoundSystem, QhoSystem};
use crate::quadrature::Quadrature;
use crate::special::erf;
use crate::{Error, Result};

fn check_width(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("a", "smoothing width must be positive and finite"))
    }
}

fn breaks(a: f64, upper: f64) -> Vec<f64> {
    let mut pts = alloc::vec![0.0];
    for p in [a, 5.0 * a] {
        if p < upper && p > *pts.last().unwrap() {
            pts.push(p);
        }
    }
    pts.push(upper);
    pts
}

fn quad() -> Quadrature {
    Quadrature {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        max_panels: 4000,
    }
}

/// Oscillator overlap with the smoothed step `(1 + erf(x/a)) / 2`:
///
/// `J_kl(a) = delta_kl / 2 + [k + l odd] int_0^inf psi_k psi_l erf(x/a) dx`.
///
/// The half-line integral stops at the support of the lower of the two
/// states, where the product is below `1e-30`.
pub fn smoothed_overlap(k: usize, l: usize, a: f64) -> Result<f64> {
    check_width(a)?;
    if k == l {
        return Ok(0.5);
    }
    if (k + l).is_multiple_of(2) {
        return Ok(0.0);
    }
    let upper = QhoSystem.support(k.min(l)).1;
    Ok(quad()
        .integrate_with_breaks(|x| qho_psi(k, x) * qho_psi(l, x) * erf(x / a), &breaks(a, upper))?
        .value)
}

/// Row `J_{n0}(a) .. J_{nm}(a)` of smoothed overlaps, with the norm
/// `<n|P_a^2|n> = 1/4 + (1/2) int_0^inf psi_n^2 erf(x/a)^2 dx`.
pub fn smoothed_row(n: usize, a: f64, m: usize) -> Result<OverlapRow> {
    check_width(a)?;
    if m < n {
        return Err(Error::invalid("cutoff", "must be at least the state index"));
    }
    let values = (0..=m)
        .map(|k| smoothed_overlap(n, k, a))
        .collect::<Result<Vec<f64>>>()?;
    let upper = QhoSystem.support(n).1;
    let tail = quad()
        .integrate_with_breaks(|x| (qho_psi(n, x) * erf(x / a)).powi(2), &breaks(a, upper))?
        .value;
    OverlapRow::new(n, values, 0.25 + 0.5 * tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlaps::wronskian_overlap;

    #[test]
    fn rejects_nonpositive_width() {
        assert!(smoothed_overlap(1, 0, 0.0).is_err());
        assert!(smoothed_row(1, -1.0, 4).is_err());
    }

    #[test]
    fn diagonal_is_half() {
        for a in [1e-3, 0.5, 3.0] {
            assert_eq!(smoothed_overlap(4, 4, a).unwrap(), 0.5);
        }
    }

    #[test]
    fn sharp_limit() {
        for k in 0..=6usize {
            for l in 0..=6usize {
                let sharp = if k == l {
                    0.5
                } else {
                    wronskian_overlap(&QhoSystem, k, l, 0.0, f64::INFINITY).unwrap()
                };
                let v = smoothed_overlap(k, l, 1e-4).unwrap();
                assert!((v - sharp).abs() < 1e-3, "({k},{l}): {v} vs {sharp}");
            }
        }
    }

    #[test]
    fn unit_width_against_fine_grid() {
        // Composite Simpson on 2e5 panels, independent of the adaptive rule.
        let n = 200_000;
        let h = 12.0 / n as f64;
        let f = |x: f64| qho_psi(1, x) * qho_psi(0, x) * erf(x);
        let mut s = f(0.0) + f(12.0);
        for i in 1..n {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = s * h / 3.0;
        assert!((smoothed_overlap(1, 0, 1.0).unwrap() - oracle).abs() < 1e-10);
    }

    #[test]
    fn norm_bounds_row() {
        let row = smoothed_row(1, 0.5, 60).unwrap();
        assert!(row.norm() < 0.5 && row.norm() > 0.25);
        assert!(row.truncation_error() < 1e-3);
    }
}
