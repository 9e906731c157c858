//! Partial overlaps `J_kl(x1, x2) = int_{x1}^{x2} psi_k psi_l dx`.
//!
//! Off-diagonal overlaps never touch quadrature. From the Schrödinger
//! equation,
//!
//! ```text
//! J_kl(x1, x2) = [psi_k' psi_l - psi_l' psi_k]_{x1}^{x2} / (2 (eps_l - eps_k)),
//! ```
//!
//! so a whole row `J_n0 .. J_nm` over a region costs one table of
//! eigenfunction values per finite endpoint. Diagonal overlaps are
//! integrated with [`Quadrature`].
//!
//! Rows are the unit the correlator series consume: [`OverlapRow`] carries
//! the values together with the norm of the projected state, which is what
//! the truncation error is measured against.

mod region;
mod smoothed;

use alloc::vec::Vec;

pub use region::{Interval, Region};
pub use smoothed::{smoothed_overlap, smoothed_row};

use crate::eigensystems::BoundSystem;
use crate::quadrature::Quadrature;
use crate::{Error, Result};

/// Default series truncation target.
pub const DEFAULT_TRUNCATION_TARGET: f64 = 1e-3;
/// Default upper limit on the series cutoff.
pub const DEFAULT_MAX_CUTOFF: usize = 1 << 22;

fn diagonal_quadrature() -> Quadrature {
    Quadrature {
        abs_tol: 1e-13,
        rel_tol: 1e-13,
        max_panels: 4000,
    }
}

fn check_endpoints(x1: f64, x2: f64) -> Result<()> {
    if x1.is_nan() || x2.is_nan() {
        Err(Error::invalid("interval", "endpoints must not be NaN"))
    } else {
        Ok(())
    }
}

fn energy_gap<S: BoundSystem + ?Sized>(sys: &S, k: usize, l: usize) -> Result<f64> {
    let gap = sys.energy(l) - sys.energy(k);
    if gap == 0.0 {
        Err(Error::DegenerateSpectrum(k.min(l), k.max(l)))
    } else {
        Ok(gap)
    }
}

/// `psi_k'(x) psi_l(x) - psi_l'(x) psi_k(x)`, zero at infinite `x`.
fn wronskian_at<S: BoundSystem + ?Sized>(sys: &S, k: usize, l: usize, x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        sys.psi_prime(k, x) * sys.psi(l, x) - sys.psi_prime(l, x) * sys.psi(k, x)
    }
}

/// Off-diagonal partial overlap from boundary terms alone.
///
/// `x1 > x2` gives the negated overlap, as for any integral.
pub fn wronskian_overlap<S: BoundSystem + ?Sized>(
    sys: &S,
    k: usize,
    l: usize,
    x1: f64,
    x2: f64,
) -> Result<f64> {
    if k == l {
        return Err(Error::DegenerateIndex(k));
    }
    sys.check_index(k)?;
    sys.check_index(l)?;
    check_endpoints(x1, x2)?;
    if x1 == x2 {
        return Ok(0.0);
    }
    let gap = energy_gap(sys, k, l)?;
    Ok((wronskian_at(sys, k, l, x2) - wronskian_at(sys, k, l, x1)) / (2.0 * gap))
}

/// `int_{x1}^{x2} psi_k^2 dx` by adaptive quadrature over the part of the
/// interval inside the state's support.
///
/// Short cuts: the full line gives 1, and either half line of a symmetric
/// system gives exactly 1/2.
pub fn diagonal_overlap<S: BoundSystem + ?Sized>(sys: &S, k: usize, x1: f64, x2: f64) -> Result<f64> {
    sys.check_index(k)?;
    check_endpoints(x1, x2)?;
    if x1 > x2 {
        return diagonal_overlap(sys, k, x2, x1).map(|v| -v);
    }
    if x1 == x2 {
        return Ok(0.0);
    }
    if x1 == f64::NEG_INFINITY && x2 == f64::INFINITY {
        return Ok(1.0);
    }
    if sys.is_symmetric() && ((x1 == 0.0 && x2 == f64::INFINITY) || (x1 == f64::NEG_INFINITY && x2 == 0.0)) {
        return Ok(0.5);
    }
    let (lo_s, hi_s) = sys.support(k);
    let lo = x1.max(lo_s);
    let hi = x2.min(hi_s);
    if lo >= hi {
        return Ok(0.0);
    }
    let mut breaks = alloc::vec![lo];
    let mut interior = [0.0, sys.split_point()];
    interior.sort_by(f64::total_cmp);
    for p in interior {
        if p > *breaks.last().unwrap() && p < hi {
            breaks.push(p);
        }
    }
    breaks.push(hi);
    Ok(diagonal_quadrature()
        .integrate_with_breaks(|x| sys.psi(k, x).powi(2), &breaks)?
        .value)
}

/// `J_kl(x1, x2)`, dispatching to the Wronskian identity or quadrature.
pub fn partial_overlap<S: BoundSystem + ?Sized>(sys: &S, k: usize, l: usize, x1: f64, x2: f64) -> Result<f64> {
    if k == l {
        diagonal_overlap(sys, k, x1, x2)
    } else {
        wronskian_overlap(sys, k, l, x1, x2)
    }
}

/// `J_kl` over a region: the sum of its interval contributions.
pub fn region_overlap<S: BoundSystem + ?Sized>(sys: &S, k: usize, l: usize, region: &Region) -> Result<f64> {
    region
        .intervals()
        .iter()
        .try_fold(0.0, |acc, iv| Ok(acc + partial_overlap(sys, k, l, iv.lo(), iv.hi())?))
}

/// Compensated running sum of squares.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// One row `J_{n0} .. J_{nm}` of partial overlaps of state `n` with a
/// (generalized) projector `P`, plus `<n|P^2|n>`.
///
/// For a sharp projector `P^2 = P`, so the norm is `J_nn`. The truncation
/// error `<n|P^2|n> - sum_k J_nk^2` is the weight of `P|n>` outside the
/// first `m + 1` states.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRow {
    n: usize,
    values: Vec<f64>,
    norm: f64,
}

impl OverlapRow {
    /// Assemble a row. `values[n]` must exist.
    pub fn new(n: usize, values: Vec<f64>, norm: f64) -> Result<Self> {
        if n >= values.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                count: values.len(),
            });
        }
        Ok(OverlapRow { n, values, norm })
    }

    /// Row index.
    pub fn state(&self) -> usize {
        self.n
    }

    /// Largest column index.
    pub fn cutoff(&self) -> usize {
        self.values.len() - 1
    }

    /// `J_{n0} .. J_{nm}`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Diagonal entry `J_nn`.
    pub fn diagonal(&self) -> f64 {
        self.values[self.n]
    }

    /// `<n|P^2|n>`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `max(0, norm - sum_k J_nk^2)`.
    pub fn truncation_error(&self) -> f64 {
        let mut acc = KahanSum::default();
        for &v in &self.values {
            acc.add(v * v);
        }
        (self.norm - acc.sum).max(0.0)
    }

    /// Shortest prefix (still containing column `n`) whose truncation
    /// error is at most `target`; the whole row if none is.
    pub fn trimmed(mut self, target: f64) -> Self {
        let mut acc = KahanSum::default();
        for (k, &v) in self.values.iter().enumerate() {
            acc.add(v * v);
            if k >= self.n && self.norm - acc.sum <= target {
                self.values.truncate(k + 1);
                break;
            }
        }
        self
    }
}

/// How many terms of an eigenbasis series to keep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    /// Keep states `0..=m` (clamped to the bound spectrum).
    Fixed(usize),
    /// Smallest cutoff with truncation error below `target`, searched by
    /// quadrupling up to `max`.
    Adaptive {
        /// Truncation error target.
        target: f64,
        /// Largest admissible cutoff.
        max: usize,
    },
}

impl Default for Cutoff {
    fn default() -> Self {
        Cutoff::Adaptive {
            target: DEFAULT_TRUNCATION_TARGET,
            max: DEFAULT_MAX_CUTOFF,
        }
    }
}

impl Cutoff {
    /// Adaptive cutoff with the default cap.
    pub fn target(target: f64) -> Self {
        Cutoff::Adaptive {
            target,
            max: DEFAULT_MAX_CUTOFF,
        }
    }
}

fn clamp_cutoff<S: BoundSystem + ?Sized>(sys: &S, m: usize) -> usize {
    match sys.num_states() {
        Some(count) => m.min(count.saturating_sub(1)),
        None => m,
    }
}

/// `J_{nk}(region)` for `k = 0..=m` (clamped to the bound spectrum).
pub fn overlap_row<S: BoundSystem + ?Sized>(sys: &S, n: usize, region: &Region, m: usize) -> Result<OverlapRow> {
    sys.check_index(n)?;
    let m = clamp_cutoff(sys, m);
    if m < n {
        return Err(Error::invalid("cutoff", "must be at least the state index"));
    }
    let count = m + 1;
    let mut values = alloc::vec![0.0; count];
    for iv in region.intervals() {
        for (x, sign) in [(iv.hi(), 1.0), (iv.lo(), -1.0)] {
            if x.is_infinite() {
                continue;
            }
            let states = sys.states_at(x, count);
            let (pn, dn) = (states[n].psi, states[n].dpsi);
            for (w, s) in values.iter_mut().zip(&states) {
                *w += sign * (dn * s.psi - s.dpsi * pn);
            }
        }
    }
    let mut diag = 0.0;
    for iv in region.intervals() {
        diag += diagonal_overlap(sys, n, iv.lo(), iv.hi())?;
    }
    let eps_n = sys.energy(n);
    for (k, v) in values.iter_mut().enumerate() {
        if k == n {
            *v = diag;
        } else {
            let gap = sys.energy(k) - eps_n;
            if gap == 0.0 {
                return Err(Error::DegenerateSpectrum(k.min(n), k.max(n)));
            }
            *v /= 2.0 * gap;
        }
    }
    OverlapRow::new(n, values, diag)
}

/// Row with the cutoff chosen by `cutoff`.
pub fn select_row<S: BoundSystem + ?Sized>(sys: &S, n: usize, region: &Region, cutoff: Cutoff) -> Result<OverlapRow> {
    match cutoff {
        Cutoff::Fixed(m) => overlap_row(sys, n, region, m),
        Cutoff::Adaptive { target, max } => {
            if target.is_nan() || target <= 0.0 {
                return Err(Error::invalid("truncation", "target must be positive"));
            }
            let cap = clamp_cutoff(sys, max.max(n));
            let mut m = (2 * n + 64).min(cap);
            loop {
                let row = overlap_row(sys, n, region, m)?;
                if m >= cap || row.truncation_error() <= target {
                    return Ok(row.trimmed(target));
                }
                m = m.saturating_mul(4).min(cap);
            }
        }
    }
}

/// `Delta = J_nn - sum_{k <= m} J_nk^2` over `region`, clamped at zero.
pub fn truncation_error<S: BoundSystem + ?Sized>(sys: &S, n: usize, m: usize, region: &Region) -> Result<f64> {
    Ok(overlap_row(sys, n, region, m)?.truncation_error())
}

/// Dense symmetric matrix `J_kl(region)` for `k, l <= m`.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapTable {
    region: Region,
    size: usize,
    data: Vec<f64>,
}

impl OverlapTable {
    /// Build the table: Wronskian identity off the diagonal, quadrature on it.
    pub fn new<S: BoundSystem + ?Sized>(sys: &S, region: &Region, m: usize) -> Result<Self> {
        sys.check_index(m)?;
        let size = m + 1;
        let energies: Vec<f64> = (0..size).map(|k| sys.energy(k)).collect();
        let mut data = alloc::vec![0.0; size * size];
        for iv in region.intervals() {
            for (x, sign) in [(iv.hi(), 1.0), (iv.lo(), -1.0)] {
                if x.is_infinite() {
                    continue;
                }
                let st = sys.states_at(x, size);
                for k in 0..size {
                    for l in (k + 1)..size {
                        data[k * size + l] += sign * (st[k].dpsi * st[l].psi - st[l].dpsi * st[k].psi);
                    }
                }
            }
        }
        for k in 0..size {
            for l in (k + 1)..size {
                let gap = energies[l] - energies[k];
                if gap == 0.0 {
                    return Err(Error::DegenerateSpectrum(k, l));
                }
                let v = data[k * size + l] / (2.0 * gap);
                data[k * size + l] = v;
                data[l * size + k] = v;
            }
            let mut diag = 0.0;
            for iv in region.intervals() {
                diag += diagonal_overlap(sys, k, iv.lo(), iv.hi())?;
            }
            data[k * size + k] = diag;
        }
        Ok(OverlapTable {
            region: region.clone(),
            size,
            data,
        })
    }

    /// Region the overlaps are taken over.
    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Number of states (`m + 1`).
    pub fn size(&self) -> usize {
        self.size
    }

    /// `J_kl`; panics if either index is `>= size()`.
    pub fn get(&self, k: usize, l: usize) -> f64 {
        assert!(k < self.size && l < self.size, "overlap index out of range");
        self.data[k * self.size + l]
    }

    /// Row `J_k0 .. J_km`.
    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.size..(k + 1) * self.size]
    }

    /// `J_kk - sum_l J_kl^2`: the defect of `P^2 = P` in row `k`.
    pub fn truncation_error(&self, k: usize) -> f64 {
        let mut acc = KahanSum::default();
        for &v in self.row(k) {
            acc.add(v * v);
        }
        (self.get(k, k) - acc.sum).max(0.0)
    }
}
