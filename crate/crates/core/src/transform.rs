//! Generalized Gegenbauer expansions: coefficients, partial sums and
//! weighted `L_p(v_{λ,μ})` norms.
//!
//! Coefficients are computed by quadrature against the orthonormal system,
//! so polynomial inputs are reproduced exactly when the rule is large enough.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{MappedRule, Rule};
use crate::specfun::{GegenParams, OrthonormalBasis};

/// Points in the uniform part of the `p = ∞` fallback grid.
pub const SUP_GRID_POINTS: usize = 2049;

/// A finite coefficient vector `f̂_0 .. f̂_N` tied to `(λ, μ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    params: GegenParams,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    lambda: f64,
    mu: f64,
    degree: usize,
    coeffs: Vec<f64>,
}

impl Expansion {
    /// Requires at least one coefficient and all coefficients finite.
    pub fn new(params: GegenParams, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("an expansion needs at least one coefficient");
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return domain(format!("coefficient {i} is not finite"));
        }
        Ok(Self { params, coeffs })
    }

    /// The expansion of `C̃_m` truncated at degree `degree`.
    pub fn unit(params: GegenParams, m: usize, degree: usize) -> Result<Self> {
        if m > degree {
            return domain(format!("basis index {m} exceeds degree {degree}"));
        }
        let mut coeffs = vec![0.0; degree + 1];
        coeffs[m] = 1.0;
        Ok(Self { params, coeffs })
    }

    pub fn params(&self) -> GegenParams {
        self.params
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            params: self.params,
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    /// Unweighted `ℓ_p` norm of the coefficients; `p = ∞` gives the max.
    pub fn coeff_lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()));
        }
        self.coeffs.iter().map(|c| c.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }

    /// A reusable evaluator of the partial sum.
    pub fn synthesizer(&self) -> Synthesizer<'_> {
        Synthesizer {
            basis: OrthonormalBasis::new(self.params, self.degree()),
            coeffs: &self.coeffs,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ExpansionJson {
            lambda: self.params.lambda(),
            mu: self.params.mu(),
            degree: self.degree(),
            coeffs: self.coeffs.clone(),
        })
        .expect("expansion JSON is always representable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ExpansionJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Domain(format!("invalid expansion JSON: {e}")))?;
        if raw.coeffs.len() != raw.degree + 1 {
            return domain(format!(
                "expansion JSON has degree {} but {} coefficients",
                raw.degree,
                raw.coeffs.len()
            ));
        }
        Self::new(GegenParams::new(raw.lambda, raw.mu)?, raw.coeffs)
    }
}

/// Partial-sum evaluator holding the precomputed orthonormal basis.
#[derive(Debug, Clone)]
pub struct Synthesizer<'a> {
    basis: OrthonormalBasis,
    coeffs: &'a [f64],
}

impl Synthesizer<'_> {
    /// `Σ f̂_n C̃_n(t)`; `t` is clamped to `[-1, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        let mut buf = Vec::with_capacity(self.coeffs.len());
        self.basis.eval_into(t.clamp(-1.0, 1.0), &mut buf);
        buf.iter().zip(self.coeffs).map(|(b, c)| b * c).sum()
    }
}

fn check_rule(params: GegenParams, rule: &MappedRule) -> Result<()> {
    let rp = rule.params();
    if rp != params {
        return Err(Error::Mismatch {
            lambda: params.lambda(),
            mu: params.mu(),
            rule_lambda: rp.lambda(),
            rule_mu: rp.mu(),
        });
    }
    Ok(())
}

/// `f̂_n = ∫ f C̃_n v_{λ,μ}` for `n = 0..=degree`, by quadrature with `rule`.
pub fn analyze<F>(f: F, params: GegenParams, degree: usize, rule: &MappedRule) -> Result<Expansion>
where
    F: Fn(f64) -> f64,
{
    check_rule(params, rule)?;
    let basis = OrthonormalBasis::new(params, degree);
    let mut coeffs = vec![0.0; degree + 1];
    let mut buf = Vec::with_capacity(degree + 1);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let fx = w * f(x);
        if fx == 0.0 {
            continue;
        }
        basis.eval_into(x, &mut buf);
        for (c, b) in coeffs.iter_mut().zip(&buf) {
            *c += fx * b;
        }
    }
    Expansion::new(params, coeffs)
}

/// The partial sum `Σ f̂_n C̃_n(t)`.
pub fn synthesize(expansion: &Expansion, t: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return domain(format!("evaluation point must lie in [-1, 1], got {t}"));
    }
    Ok(expansion.synthesizer().eval(t))
}

/// Sample points used for the `p = ∞` norm besides the rule nodes: a uniform
/// grid and the Chebyshev extrema of the same size.
pub fn sup_fallback_grid() -> impl Iterator<Item = f64> {
    let m = (SUP_GRID_POINTS - 1) as f64;
    let uniform = (0..SUP_GRID_POINTS).map(move |i| -1.0 + 2.0 * i as f64 / m);
    let cheb = (0..SUP_GRID_POINTS).map(move |i| (std::f64::consts::PI * i as f64 / m).cos());
    uniform.chain(cheb)
}

/// `‖f‖_{L_p(v_{λ,μ})}`. Finite `p` uses the rule; `p = ∞` takes the max of
/// `|f|` over the rule nodes and [`sup_fallback_grid`].
pub fn lp_norm<F>(f: F, p: f64, params: GegenParams, rule: &MappedRule) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(p >= 1.0) {
        return domain(format!("p must be >= 1, got {p}"));
    }
    check_rule(params, rule)?;
    if p.is_infinite() {
        let max = rule
            .nodes()
            .iter()
            .copied()
            .chain(sup_fallback_grid())
            .fold(0.0f64, |m, t| m.max(f(t).abs()));
        return Ok(max);
    }
    let integral = rule.integrate(|t| f(t).abs().powf(p));
    Ok(integral.powf(1.0 / p))
}

/// `(‖f‖²_{L_2(v)}, Σ f̂_n²)`; equal up to rounding for polynomials of degree `≤ degree`.
pub fn parseval_check<F>(f: F, params: GegenParams, degree: usize, rule: &MappedRule) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let norm = lp_norm(&f, 2.0, params, rule)?;
    let expansion = analyze(&f, params, degree, rule)?;
    let rhs = expansion.coeffs().iter().map(|c| c * c).sum();
    Ok((norm * norm, rhs))
}
