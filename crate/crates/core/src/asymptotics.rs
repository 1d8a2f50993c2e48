//! Growth of `‖C̃_n‖_∞` in `n` and its log-log slope.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::specfun::{orthonormal_constant, GegenParams};

/// Samples per unit degree required by [`supnorm`].
pub const MIN_GRID_FACTOR: usize = 8;

const GOLDEN_TOL: f64 = 1e-10;
/// Local maxima of the sampled grid that get refined.
const REFINE_CANDIDATES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNormEntry {
    pub n: usize,
    pub sup_norm: f64,
    pub argmax_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupNormScan {
    pub params: GegenParams,
    pub entries: Vec<SupNormEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

/// `|C̃_n(t)|` without domain checks.
struct AbsPoly {
    params: GegenParams,
    n: usize,
    constant: f64,
}

impl AbsPoly {
    fn new(params: GegenParams, n: usize) -> Self {
        Self { params, n, constant: orthonormal_constant(params, n) }
    }

    fn eval(&self, t: f64) -> f64 {
        let s = 2.0 * t * t - 1.0;
        let k = self.n / 2;
        let (a, b, factor) = if self.n.is_multiple_of(2) {
            let (a, b) = self.params.even_jacobi();
            (a, b, 1.0)
        } else {
            let (a, b) = self.params.odd_jacobi();
            (a, b, t)
        };
        // t ∈ [-1, 1] holds for every caller.
        let p = crate::specfun::jacobi_eval(a, b, k, s).unwrap_or(f64::NAN);
        (self.constant * factor * p).abs()
    }
}

/// Maximizes `f` on `[lo, hi]` by golden-section search.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `max |C̃_n(t)|` over `[-1, 1]` and a maximizer `t ≥ 0`.
///
/// Samples a uniform grid, the Chebyshev points `cos(kπ/grid_size)` and
/// both endpoints, then refines the best local maxima by golden-section
/// search. The returned value is never below the best sample.
pub fn supnorm(params: GegenParams, n: usize, grid_size: usize) -> Result<(f64, f64)> {
    params.require_positive_mu()?;
    if grid_size < MIN_GRID_FACTOR * (n + 1) {
        return domain(format!(
            "grid_size must be at least {} for degree {n}, got {grid_size}",
            MIN_GRID_FACTOR * (n + 1)
        ));
    }
    let poly = AbsPoly::new(params, n);
    let g = grid_size as f64;
    let mut points: Vec<f64> = (0..=grid_size)
        .map(|i| -1.0 + 2.0 * i as f64 / g)
        .chain((0..=grid_size).map(|k| (std::f64::consts::PI * k as f64 / g).cos()))
        .map(|t: f64| t.clamp(-1.0, 1.0))
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let values: Vec<f64> = points.iter().map(|&t| poly.eval(t)).collect();

    let mut best_i = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best_i] {
            best_i = i;
        }
    }
    let mut best = (points[best_i], values[best_i]);

    let mut peaks: Vec<usize> = (0..values.len())
        .filter(|&i| {
            let left = i == 0 || values[i - 1] <= values[i];
            let right = i + 1 == values.len() || values[i + 1] <= values[i];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    for &i in peaks.iter().take(REFINE_CANDIDATES) {
        let lo = points[i.saturating_sub(1)];
        let hi = points[(i + 1).min(points.len() - 1)];
        if hi <= lo {
            continue;
        }
        let (t, v) = golden_max(|t| poly.eval(t), lo, hi);
        if v > best.1 {
            best = (t, v);
        }
    }
    if best.1.is_nan() {
        return Err(Error::Internal(format!("sup-norm scan of degree {n} produced NaN")));
    }
    Ok((best.1, best.0.abs()))
}

/// Scans every degree in `ladder` with `grid_factor · (n + 1)` samples each.
pub fn supnorm_scan(params: GegenParams, ladder: &[usize], grid_factor: usize) -> Result<SupNormScan> {
    let factor = grid_factor.max(MIN_GRID_FACTOR);
    let mut sorted = ladder.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let entries = sorted
        .par_iter()
        .map(|&n| {
            supnorm(params, n, factor * (n + 1)).map(|(sup_norm, argmax_t)| SupNormEntry { n, sup_norm, argmax_t })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SupNormScan { params, entries })
}

/// Degrees `round(start · 2^{k/2})` from `start` up to and including `end`.
pub fn geometric_ladder(start: usize, end: usize) -> Vec<usize> {
    if start == 0 || end < start {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let n = (start as f64 * 2f64.powf(k as f64 / 2.0)).round() as usize;
        if n > end {
            break;
        }
        if out.last() != Some(&n) {
            out.push(n);
        }
        k += 1;
    }
    if out.last() != Some(&end) {
        out.push(end);
    }
    out
}

/// Least-squares fit of `log sup_norm = slope · log n + intercept` over
/// entries with `n ≥ max(n_min, 1)`.
pub fn exponent_fit(scan: &SupNormScan, n_min: usize) -> Result<ExponentFit> {
    let pts: Vec<(f64, f64)> = scan
        .entries
        .iter()
        .filter(|e| e.n >= n_min.max(1))
        .map(|e| ((e.n as f64).ln(), e.sup_norm.ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::InsufficientData { needed: 5, got: pts.len() });
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum::<f64>() / m).sqrt();
    Ok(ExponentFit { slope, intercept, residual })
}

/// Least-squares fit with a common slope and a separate intercept for even
/// and odd `n`. When `μ > λ` the odd polynomials vanish at `t = 0` and their
/// sup norms carry a smaller constant, which biases the plain fit on ladders
/// that mix parities. `intercept` is the even-degree intercept. Falls back to
/// [`exponent_fit`] when only one parity is present.
pub fn exponent_fit_by_parity(scan: &SupNormScan, n_min: usize) -> Result<ExponentFit> {
    let pts: Vec<(usize, f64, f64)> = scan
        .entries
        .iter()
        .filter(|e| e.n >= n_min.max(1))
        .map(|e| (e.n % 2, (e.n as f64).ln(), e.sup_norm.ln()))
        .collect();
    if pts.len() < 5 {
        return Err(Error::InsufficientData { needed: 5, got: pts.len() });
    }
    let mut means = [(0.0, 0.0, 0usize); 2];
    for &(g, x, y) in &pts {
        means[g].0 += x;
        means[g].1 += y;
        means[g].2 += 1;
    }
    if means.iter().any(|m| m.2 < 2) {
        return exponent_fit(scan, n_min);
    }
    for m in means.iter_mut() {
        m.0 /= m.2 as f64;
        m.1 /= m.2 as f64;
    }
    let sxx: f64 = pts.iter().map(|&(g, x, _)| (x - means[g].0).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|&(g, x, y)| (x - means[g].0) * (y - means[g].1)).sum();
    let slope = sxy / sxx;
    let icept = [means[0].1 - slope * means[0].0, means[1].1 - slope * means[1].0];
    let m = pts.len() as f64;
    let residual = (pts.iter().map(|&(g, x, y)| (y - slope * x - icept[g]).powi(2)).sum::<f64>() / m).sqrt();
    Ok(ExponentFit { slope, intercept: icept[0], residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn degree_zero_and_one() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        let (v, _) = supnorm(p, 0, 8).unwrap();
        assert_relative_eq!(v, orthonormal_constant(p, 0), max_relative = 1e-14);
        let (v, t) = supnorm(p, 1, 16).unwrap();
        assert_relative_eq!(v, orthonormal_constant(p, 1), max_relative = 1e-14);
        assert_eq!(t, 1.0);
    }

    #[test]
    fn rejects_zero_mu_and_coarse_grid() {
        let p0 = GegenParams::new(1.0, 0.0).unwrap();
        assert!(supnorm(p0, 4, 100).is_err());
        let p = GegenParams::new(1.0, 0.5).unwrap();
        assert!(supnorm(p, 10, 80).is_err());
    }

    #[test]
    fn argmax_is_non_negative() {
        let p = GegenParams::new(0.5, 1.5).unwrap();
        for n in [6usize, 7, 20, 33] {
            let (_, t) = supnorm(p, n, 8 * (n + 1)).unwrap();
            assert!(t >= 0.0);
        }
    }

    #[test]
    fn ladder() {
        assert_eq!(geometric_ladder(32, 512), vec![32, 45, 64, 91, 128, 181, 256, 362, 512]);
        assert_eq!(geometric_ladder(5, 4), Vec::<usize>::new());
    }

    #[test]
    fn exact_power_law_fit() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        let entries = [10usize, 20, 40, 80, 160, 320]
            .iter()
            .map(|&n| SupNormEntry { n, sup_norm: 3.0 * (n as f64).powf(1.5), argmax_t: 1.0 })
            .collect();
        let fit = exponent_fit(&SupNormScan { params: p, entries }, 1).unwrap();
        assert_relative_eq!(fit.slope, 1.5, max_relative = 1e-12);
        assert_relative_eq!(fit.intercept, 3f64.ln(), max_relative = 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn parity_fit_removes_alternating_constant() {
        let p = GegenParams::new(0.5, 1.5).unwrap();
        let entries = [32usize, 45, 64, 91, 128, 181, 256, 362, 512]
            .iter()
            .map(|&n| {
                let c = if n % 2 == 0 { 0.5 } else { 0.18 };
                SupNormEntry { n, sup_norm: c * (n as f64).powf(1.5), argmax_t: 0.0 }
            })
            .collect();
        let scan = SupNormScan { params: p, entries };
        let plain = exponent_fit(&scan, 32).unwrap();
        let split = exponent_fit_by_parity(&scan, 32).unwrap();
        assert!(plain.slope > 1.55);
        assert_relative_eq!(split.slope, 1.5, max_relative = 1e-12);
        assert_relative_eq!(split.intercept, 0.5f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn too_few_points() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        let scan = supnorm_scan(p, &[2, 4, 8, 16], 8).unwrap();
        assert!(matches!(exponent_fit(&scan, 1), Err(Error::InsufficientData { needed: 5, got: 4 })));
    }
}
