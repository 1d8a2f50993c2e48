//! Jacobi and generalized Gegenbauer polynomials.
//!
//! Every Γ-ratio constant is formed as the exponential of a log-gamma
//! difference so that normalization constants stay finite for large degree.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{gauss_jacobi, Rule};

/// The parameter pair `(λ, μ)` of the weight `v_{λ,μ}(t) = |t|^{2μ}(1-t²)^{λ-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GegenParams {
    lambda: f64,
    mu: f64,
}

impl GegenParams {
    /// Requires `λ > -1/2` and `μ ≥ 0`.
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > -0.5) {
            return domain(format!("lambda must be finite and > -1/2, got {lambda}"));
        }
        if !(mu.is_finite() && mu >= 0.0) {
            return domain(format!("mu must be finite and >= 0, got {mu}"));
        }
        Ok(Self { lambda, mu })
    }

    /// Like [`GegenParams::new`] but additionally rejects `μ = 0`.
    pub fn with_positive_mu(lambda: f64, mu: f64) -> Result<Self> {
        let params = Self::new(lambda, mu)?;
        params.require_positive_mu()?;
        Ok(params)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `σ = max(λ, μ)`.
    pub fn sigma(&self) -> f64 {
        self.lambda.max(self.mu)
    }

    pub(crate) fn require_positive_mu(&self) -> Result<()> {
        if self.mu > 0.0 {
            Ok(())
        } else {
            domain(format!("operation requires mu > 0, got {}", self.mu))
        }
    }

    /// Jacobi parameters of the even-degree family, `(λ-1/2, μ-1/2)`.
    pub fn even_jacobi(&self) -> (f64, f64) {
        (self.lambda - 0.5, self.mu - 0.5)
    }

    /// Jacobi parameters of the odd-degree family, `(λ-1/2, μ+1/2)`.
    pub fn odd_jacobi(&self) -> (f64, f64) {
        (self.lambda - 0.5, self.mu + 0.5)
    }

    /// Evaluates the weight `v_{λ,μ}(t)`.
    pub fn weight(&self, t: f64) -> f64 {
        t.abs().powf(2.0 * self.mu) * (1.0 - t * t).powf(self.lambda - 0.5)
    }

    /// Total mass `∫ v_{λ,μ} = B(λ+1/2, μ+1/2)`.
    pub fn mass(&self) -> f64 {
        beta_fn(self.lambda + 0.5, self.mu + 0.5)
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("log_gamma requires finite x > 0, got {x}"));
    }
    Ok(libm::lgamma(x))
}

/// Unchecked `ln |Γ(x)|`, for internal callers whose arguments are known valid.
#[inline]
pub(crate) fn lgamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Euler beta function `B(a, b)` for `a, b > 0`.
pub(crate) fn beta_fn(a: f64, b: f64) -> f64 {
    (lgamma(a) + lgamma(b) - lgamma(a + b)).exp()
}

/// Rising factorial `(x)_n = x(x+1)⋯(x+n-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if x > 0.0 {
        let nf = n as f64;
        (lgamma(x + nf) - lgamma(x)).exp()
    } else {
        (0..n).map(|k| x + k as f64).product()
    }
}

fn check_jacobi_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha.is_finite()) || !(beta > -1.0 && beta.is_finite()) {
        return domain(format!("Jacobi parameters must be > -1, got alpha={alpha}, beta={beta}"));
    }
    Ok(())
}

fn check_interval(t: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&t) {
        Ok(())
    } else {
        domain(format!("evaluation point must lie in [-1, 1], got {t}"))
    }
}

/// Forward three-term recurrence for `P_n^{(α,β)}`. Calls `sink(k, P_k(t))` for
/// `k = 0..=n`. Arguments are assumed valid.
fn jacobi_recurrence(alpha: f64, beta: f64, n: usize, t: f64, mut sink: impl FnMut(usize, f64)) {
    let mut p_prev = 1.0;
    sink(0, p_prev);
    if n == 0 {
        return;
    }
    let ab = alpha + beta;
    let mut p_cur = 0.5 * (alpha - beta) + 0.5 * (ab + 2.0) * t;
    sink(1, p_cur);
    let a2b2 = alpha * alpha - beta * beta;
    for k in 1..n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let denom = 2.0 * (kf + 1.0) * (kf + ab + 1.0) * c;
        let a = (c + 1.0) * (c * (c + 2.0) * t + a2b2);
        let b = 2.0 * (kf + alpha) * (kf + beta) * (c + 2.0);
        let p_next = (a * p_cur - b * p_prev) / denom;
        p_prev = p_cur;
        p_cur = p_next;
        sink(k + 1, p_cur);
    }
}

fn jacobi_unchecked(alpha: f64, beta: f64, n: usize, t: f64) -> f64 {
    let mut out = 1.0;
    jacobi_recurrence(alpha, beta, n, t, |_, v| out = v);
    out
}

/// Evaluates the Jacobi polynomial `P_n^{(α,β)}(t)` on `[-1, 1]`.
pub fn jacobi_eval(alpha: f64, beta: f64, n: usize, t: f64) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    check_interval(t)?;
    Ok(jacobi_unchecked(alpha, beta, n, t))
}

/// Evaluates `P_0 .. P_n` at `t` in one pass.
pub fn jacobi_eval_all(alpha: f64, beta: f64, n: usize, t: f64) -> Result<Vec<f64>> {
    check_jacobi_params(alpha, beta)?;
    check_interval(t)?;
    let mut out = Vec::with_capacity(n + 1);
    jacobi_recurrence(alpha, beta, n, t, |_, v| out.push(v));
    Ok(out)
}

/// `∫ (P_n^{(α,β)})² (1-t)^α (1+t)^β dt`.
pub fn jacobi_norm_sq(alpha: f64, beta: f64, n: usize) -> Result<f64> {
    check_jacobi_params(alpha, beta)?;
    let nf = n as f64;
    let ab = alpha + beta;
    let log_num = (ab + 1.0) * std::f64::consts::LN_2 + lgamma(nf + alpha + 1.0) + lgamma(nf + beta + 1.0);
    // For n = 0 the factor (α+β+1) Γ(α+β+1) is folded into Γ(α+β+2), which
    // stays well defined when α+β+1 ≤ 0.
    let log_den = if n == 0 {
        lgamma(ab + 2.0)
    } else {
        (2.0 * nf + ab + 1.0).ln() + lgamma(nf + 1.0) + lgamma(nf + ab + 1.0)
    };
    Ok((log_num - log_den).exp())
}

/// The raw normalization `a_n^{(λ,μ)}`.
pub fn raw_constant(params: GegenParams, n: usize) -> f64 {
    let k = n / 2 + n % 2;
    let lm = params.lambda + params.mu;
    pochhammer(lm, k) / pochhammer(params.mu + 0.5, k)
}

/// The orthonormal constant `ã_n^{(λ,μ)}`.
pub fn orthonormal_constant(params: GegenParams, n: usize) -> f64 {
    let (lambda, mu) = (params.lambda, params.mu);
    let k = (n / 2) as f64;
    let lm = lambda + mu;
    let log_sq = if n.is_multiple_of(2) {
        // (2k+λ+μ) Γ(k+λ+μ) is rewritten as Γ(λ+μ+1) at k = 0, which keeps
        // the formula valid for λ+μ ≤ 0.
        let head = if n == 0 {
            lgamma(lm + 1.0)
        } else {
            (2.0 * k + lm).ln() + lgamma(k + lm)
        };
        head + lgamma(k + 1.0) - lgamma(k + lambda + 0.5) - lgamma(k + mu + 0.5)
    } else {
        (2.0 * k + lm + 1.0).ln() + lgamma(k + 1.0) + lgamma(k + lm + 1.0)
            - lgamma(k + lambda + 0.5)
            - lgamma(k + mu + 1.5)
    };
    (0.5 * log_sq).exp()
}

/// Evaluates the generalized Gegenbauer polynomial `C_n^{(λ,μ)}(t)`.
pub fn gegen_eval(params: GegenParams, n: usize, t: f64) -> Result<f64> {
    check_interval(t)?;
    let s = 2.0 * t * t - 1.0;
    let k = n / 2;
    let value = if n.is_multiple_of(2) {
        let (a, b) = params.even_jacobi();
        jacobi_unchecked(a, b, k, s)
    } else {
        let (a, b) = params.odd_jacobi();
        t * jacobi_unchecked(a, b, k, s)
    };
    Ok(raw_constant(params, n) * value)
}

/// Evaluates the orthonormal polynomial `C̃_n^{(λ,μ)}(t)`.
pub fn gegen_orthonormal_eval(params: GegenParams, n: usize, t: f64) -> Result<f64> {
    check_interval(t)?;
    let s = 2.0 * t * t - 1.0;
    let k = n / 2;
    let value = if n.is_multiple_of(2) {
        let (a, b) = params.even_jacobi();
        jacobi_unchecked(a, b, k, s)
    } else {
        let (a, b) = params.odd_jacobi();
        t * jacobi_unchecked(a, b, k, s)
    };
    Ok(orthonormal_constant(params, n) * value)
}

/// Orthonormal polynomials `C̃_0 .. C̃_N` with their constants precomputed.
///
/// Evaluating all degrees at one point costs two Jacobi recurrences of
/// length `N/2`.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    params: GegenParams,
    degree: usize,
    constants: Vec<f64>,
}

impl OrthonormalBasis {
    pub fn new(params: GegenParams, degree: usize) -> Self {
        let constants = (0..=degree).map(|n| orthonormal_constant(params, n)).collect();
        Self { params, degree, constants }
    }

    pub fn params(&self) -> GegenParams {
        self.params
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Fills `out[n] = C̃_n(t)` for `n = 0..=degree`. `t` must lie in `[-1, 1]`.
    pub fn eval_into(&self, t: f64, out: &mut Vec<f64>) {
        out.clear();
        out.resize(self.degree + 1, 0.0);
        let s = 2.0 * t * t - 1.0;
        let (a, b) = self.params.even_jacobi();
        jacobi_recurrence(a, b, self.degree / 2, s, |k, v| {
            out[2 * k] = self.constants[2 * k] * v;
        });
        if self.degree >= 1 {
            let (a, b) = self.params.odd_jacobi();
            jacobi_recurrence(a, b, (self.degree - 1) / 2, s, |k, v| {
                out[2 * k + 1] = self.constants[2 * k + 1] * t * v;
            });
        }
    }

    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        check_interval(t)?;
        let mut out = Vec::new();
        self.eval_into(t, &mut out);
        Ok(out)
    }
}

/// Absolute difference between `C_n^{(λ,μ)}(t)` and its integral
/// representation `c_μ ∫ C_n^{λ+μ}(tx)(1+x)(1-x²)^{μ-1} dx`, with the
/// integral evaluated by an `npoints`-point Gauss–Jacobi rule.
pub fn gegen_connection_residual(params: GegenParams, n: usize, t: f64, npoints: usize) -> Result<f64> {
    params.require_positive_mu()?;
    check_interval(t)?;
    if npoints == 0 {
        return domain("npoints must be positive");
    }
    let mu = params.mu;
    let classical = GegenParams::new(params.lambda + mu, 0.0)?;
    let rule = gauss_jacobi(mu - 1.0, mu - 1.0, npoints)?;
    let c_mu = 1.0 / beta_fn(0.5, mu);
    let integral = rule.integrate(|x| {
        // |t x| ≤ 1 on the rule's nodes, so evaluation cannot fail.
        gegen_eval(classical, n, t * x).unwrap_or(f64::NAN) * (1.0 + x)
    });
    let rhs = c_mu * integral;
    let lhs = gegen_eval(params, n, t)?;
    let residual = (rhs - lhs).abs();
    if residual.is_nan() {
        return Err(Error::Internal("connection integrand produced NaN".into()));
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.5723649429247001, max_relative = 1e-14);
        let fact9: f64 = (1..=9).map(|k| k as f64).product();
        assert_relative_eq!(log_gamma(10.0).unwrap(), fact9.ln(), max_relative = 1e-14);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn log_gamma_against_stirling_at_large_argument() {
        // Stirling series with four correction terms is accurate to ~1e-20 at x = 5000.
        let x: f64 = 5000.0;
        let stirling = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x.powi(3))
            + 1.0 / (1260.0 * x.powi(5));
        assert_relative_eq!(log_gamma(x).unwrap(), stirling, max_relative = 1e-14);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.5, 0), 1.0);
        assert_relative_eq!(pochhammer(1.0, 5), 120.0, max_relative = 1e-13);
        assert_relative_eq!(pochhammer(2.5, 3), 2.5 * 3.5 * 4.5, max_relative = 1e-13);
        assert_eq!(pochhammer(0.0, 3), 0.0);
        assert_relative_eq!(pochhammer(-0.5, 3), -0.5 * 0.5 * 1.5, max_relative = 1e-15);
    }

    #[test]
    fn jacobi_low_degree() {
        assert_eq!(jacobi_eval(0.3, -0.4, 0, 0.2).unwrap(), 1.0);
        assert_relative_eq!(jacobi_eval(0.0, 0.0, 1, 0.5).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(jacobi_eval(0.0, 0.0, 2, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert!(jacobi_eval(0.0, 0.0, 2, 1.5).is_err());
        assert!(jacobi_eval(-1.0, 0.0, 2, 0.5).is_err());
    }

    #[test]
    fn jacobi_endpoint_value() {
        // P_n^{(α,β)}(1) = (α+1)_n / n!
        for &(a, b) in &[(0.5, -0.25), (1.5, 0.5), (-0.5, 2.0)] {
            for n in [3usize, 17, 64] {
                let expect = pochhammer(a + 1.0, n) / pochhammer(1.0, n);
                assert_relative_eq!(jacobi_eval(a, b, n, 1.0).unwrap(), expect, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn legendre_closed_form() {
        let t: f64 = 0.3;
        let p3 = 0.5 * (5.0 * t.powi(3) - 3.0 * t);
        assert_relative_eq!(jacobi_eval(0.0, 0.0, 3, t).unwrap(), p3, max_relative = 1e-14);
    }

    #[test]
    fn norm_sq_values() {
        assert_relative_eq!(jacobi_norm_sq(0.0, 0.0, 0).unwrap(), 2.0, max_relative = 1e-14);
        assert_relative_eq!(jacobi_norm_sq(0.0, 0.0, 1).unwrap(), 2.0 / 3.0, max_relative = 1e-14);
        // α+β+1 = 0 at n = 0 still yields the Chebyshev mass π.
        assert_relative_eq!(jacobi_norm_sq(-0.5, -0.5, 0).unwrap(), std::f64::consts::PI, max_relative = 1e-14);
    }

    #[test]
    fn norm_sq_against_simpson_oracle() {
        // ∫(1-t)^{1/2}(1+t)^{-1/4} dt with t = -1 + u⁴ becomes ∫ 4u²·sqrt(2-u⁴) du
        // over [0, 2^{1/4}], which composite Simpson handles without singularity.
        let f = |u: f64| 4.0 * u * u * (2.0 - u.powi(4)).max(0.0).sqrt();
        let umax = 2f64.powf(0.25);
        let m = 200_000;
        let h = umax / m as f64;
        let mut s = f(0.0) + f(umax);
        for i in 1..m {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        let oracle = s * h / 3.0;
        assert_relative_eq!(jacobi_norm_sq(0.5, -0.25, 0).unwrap(), oracle, max_relative = 1e-8);
        let closed = 2f64.powf(1.25) * libm::tgamma(1.5) * libm::tgamma(0.75) / (1.25 * libm::tgamma(1.25));
        assert_relative_eq!(jacobi_norm_sq(0.5, -0.25, 0).unwrap(), closed, max_relative = 1e-13);
    }

    #[test]
    fn gegen_low_degrees() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        assert_eq!(gegen_eval(p, 0, 0.3).unwrap(), 1.0);
        assert_relative_eq!(gegen_eval(p, 1, 0.3).unwrap(), 1.5 * 0.3, max_relative = 1e-14);
        assert!(gegen_eval(p, 1, -1.01).is_err());
    }

    #[test]
    fn gegen_reduces_to_classical_at_mu_zero() {
        for &lambda in &[0.25, 1.0, 2.5] {
            let p = GegenParams::new(lambda, 0.0).unwrap();
            let (a, _) = p.even_jacobi();
            for n in 0..=32usize {
                let c = pochhammer(2.0 * lambda, n) / pochhammer(lambda + 0.5, n);
                for i in 0..=100 {
                    let t = -1.0 + 2.0 * i as f64 / 100.0;
                    let expect = c * jacobi_eval(a, a, n, t).unwrap();
                    let got = gegen_eval(p, n, t).unwrap();
                    let tol = 1e-10 * expect.abs().max(1e-2);
                    assert!((got - expect).abs() <= tol, "λ={lambda} n={n} t={t}: {got} vs {expect}");
                }
            }
        }
    }

    #[test]
    fn orthonormal_degree_zero_is_inverse_sqrt_mass() {
        for &(l, m) in &[(1.0, 0.5), (0.25, 2.0), (-0.25, 0.0), (2.5, 1.0)] {
            let p = GegenParams::new(l, m).unwrap();
            let v = gegen_orthonormal_eval(p, 0, 0.7).unwrap();
            assert_relative_eq!(v, p.mass().powf(-0.5), max_relative = 1e-13);
        }
    }

    #[test]
    fn orthonormal_parity() {
        let p = GegenParams::new(0.75, 1.25).unwrap();
        for n in 0..20 {
            for &t in &[0.1, 0.45, 0.9, 1.0] {
                let a = gegen_orthonormal_eval(p, n, t).unwrap();
                let b = gegen_orthonormal_eval(p, n, -t).unwrap();
                let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
                assert!((b - sign * a).abs() <= 1e-14 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn basis_matches_single_evaluations() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        let basis = OrthonormalBasis::new(p, 21);
        let vals = basis.eval(0.37).unwrap();
        for (n, v) in vals.iter().enumerate() {
            assert_relative_eq!(*v, gegen_orthonormal_eval(p, n, 0.37).unwrap(), max_relative = 1e-14);
        }
    }

    #[test]
    fn connection_residuals() {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        assert!(gegen_connection_residual(p, 0, 0.4, 1).unwrap() < 1e-14);
        assert!(gegen_connection_residual(p, 1, 0.4, 2).unwrap() < 1e-10);
        for n in 0..=10 {
            for i in 0..=20 {
                let t = -1.0 + 0.1 * i as f64;
                assert!(gegen_connection_residual(p, n, t, 64).unwrap() <= 1e-8);
            }
        }
        let p0 = GegenParams::new(1.0, 0.0).unwrap();
        assert!(matches!(gegen_connection_residual(p0, 2, 0.1, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn params_validation() {
        assert!(GegenParams::new(-0.5, 0.0).is_err());
        assert!(GegenParams::new(0.0, -0.1).is_err());
        assert!(GegenParams::with_positive_mu(1.0, 0.0).is_err());
        let p = GegenParams::new(0.3, 0.8).unwrap();
        assert_eq!(p.sigma(), 0.8);
    }
}
