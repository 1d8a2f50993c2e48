//! Gauss–Jacobi rules and the mapped rule for `v_{λ,μ}`.

use crate::error::{domain, Error, Result};
use crate::specfun::{beta_fn, GegenParams};

/// A node/weight rule with the weight function folded into the weights.
pub trait Rule {
    fn nodes(&self) -> &[f64];
    fn weights(&self) -> &[f64];

    /// Highest polynomial degree integrated exactly.
    fn exact_degree(&self) -> usize;

    /// `Σ wᵢ f(xᵢ)`.
    fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64
    where
        Self: Sized,
    {
        self.nodes()
            .iter()
            .zip(self.weights())
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    fn len(&self) -> usize {
        self.nodes().len()
    }

    fn is_empty(&self) -> bool {
        self.nodes().is_empty()
    }
}

/// Gauss–Jacobi rule for `(1-t)^α (1+t)^β` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    alpha: f64,
    beta: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Rule for QuadRule {
    fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn exact_degree(&self) -> usize {
        2 * self.nodes.len() - 1
    }
}

/// Symmetric rule integrating against `v_{λ,μ}(t) = |t|^{2μ}(1-t²)^{λ-1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedRule {
    params: GegenParams,
    half_points: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl MappedRule {
    pub fn params(&self) -> GegenParams {
        self.params
    }

    /// Number of Gauss–Jacobi points the rule was built from (half the node count).
    pub fn half_points(&self) -> usize {
        self.half_points
    }
}

impl Rule for MappedRule {
    fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn exact_degree(&self) -> usize {
        4 * self.half_points - 1
    }
}

/// `∫_{-1}^{1} (1-t)^α (1+t)^β dt = 2^{α+β+1} B(α+1, β+1)`.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    (alpha + beta + 1.0).exp2() * beta_fn(alpha + 1.0, beta + 1.0)
}

/// Recurrence coefficients of the orthonormal Jacobi polynomials: the
/// diagonal and off-diagonal of the symmetric Jacobi matrix.
fn jacobi_matrix(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let c = 2.0 * k as f64 + ab;
                (beta * beta - alpha * alpha) / (c * (c + 2.0))
            }
        })
        .collect();
    let mut off = vec![0.0; n];
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let b2 = if k == 1 {
            // (k+α+β)/(2k+α+β-1) cancels to 1 at k = 1.
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (c * c * (c + 1.0) * (c - 1.0))
        };
        off[k - 1] = b2.sqrt();
    }
    (diag, off)
}

/// Implicit QL on a symmetric tridiagonal matrix. `diag` receives the
/// eigenvalues; the returned vector holds the first component of each
/// normalized eigenvector. `off[i]` couples rows `i` and `i + 1`.
fn tridiagonal_eigen(diag: &mut [f64], off: &mut [f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut first = vec![0.0; n];
    if n == 0 {
        return Ok(first);
    }
    first[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Internal("tridiagonal QL failed to converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first[i + 1];
                first[i + 1] = s * first[i] + c * z;
                first[i] = c * first[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(first)
}

/// The `npoints`-point Gauss–Jacobi rule, computed by Golub–Welsch.
pub fn gauss_jacobi(alpha: f64, beta: f64, npoints: usize) -> Result<QuadRule> {
    if !(alpha > -1.0 && alpha.is_finite()) || !(beta > -1.0 && beta.is_finite()) {
        return domain(format!("Gauss–Jacobi parameters must be > -1, got alpha={alpha}, beta={beta}"));
    }
    if npoints == 0 {
        return domain("npoints must be positive");
    }
    let (mut diag, mut off) = jacobi_matrix(alpha, beta, npoints);
    let first = tridiagonal_eigen(&mut diag, &mut off)?;
    let mass = jacobi_mass(alpha, beta);
    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&first)
        .map(|(&x, &v)| (x, mass * v * v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in pairs.windows(2) {
        if w[1].0 - w[0].0 <= 1e-12 {
            return Err(Error::Internal(format!("duplicate Gauss nodes near {}", w[0].0)));
        }
    }
    if pairs.iter().any(|&(x, w)| !(x > -1.0 && x < 1.0) || !(w > 0.0)) {
        return Err(Error::Internal("Gauss rule produced a node outside (-1, 1) or a non-positive weight".into()));
    }
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadRule { alpha, beta, nodes, weights })
}

/// A `2·npoints`-node rule for `v_{λ,μ}`, exact through degree `4·npoints - 1`.
///
/// Folding `g(t) + g(-t)` onto `[0, 1]` and substituting `s = 2t² - 1` turns
/// the weight into `2^{-λ-μ-1} (1-s)^{λ-1/2} (1+s)^{μ-1/2}`. Each Jacobi node
/// `sᵢ` yields the pair `±√((1+sᵢ)/2)`.
pub fn v_rule(params: GegenParams, npoints: usize) -> Result<MappedRule> {
    if npoints == 0 {
        return domain("npoints must be positive");
    }
    let (alpha, beta) = params.even_jacobi();
    let base = gauss_jacobi(alpha, beta, npoints)?;
    let scale = (-(params.lambda() + params.mu() + 1.0)).exp2();
    let mut half: Vec<(f64, f64)> = base
        .nodes
        .iter()
        .zip(&base.weights)
        .map(|(&s, &w)| (((1.0 + s) * 0.5).sqrt(), w * scale))
        .collect();
    half.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut nodes = Vec::with_capacity(2 * npoints);
    let mut weights = Vec::with_capacity(2 * npoints);
    for &(t, w) in half.iter().rev() {
        nodes.push(-t);
        weights.push(w);
    }
    for &(t, w) in &half {
        nodes.push(t);
        weights.push(w);
    }
    Ok(MappedRule { params, half_points: npoints, nodes, weights })
}

/// Default rule size for expansions of degree `degree`.
pub fn default_npoints(degree: usize) -> usize {
    degree + 32
}
