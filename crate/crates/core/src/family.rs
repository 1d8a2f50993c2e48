//! Labelled test functions for sweeps and verification suites.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::specfun::{GegenParams, OrthonormalBasis};

/// A real function on `[-1, 1]` with a label for reports.
#[derive(Clone)]
pub struct TestFunction {
    label: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction").field("label", &self.label).finish()
    }
}

impl TestFunction {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// `t ↦ Σ cₙ C̃_n(t)`.
    pub fn from_coeffs(label: impl Into<String>, params: GegenParams, coeffs: Vec<f64>) -> Self {
        let basis = OrthonormalBasis::new(params, coeffs.len().saturating_sub(1));
        Self::new(label, move |t| {
            let mut buf = Vec::with_capacity(coeffs.len());
            basis.eval_into(t.clamp(-1.0, 1.0), &mut buf);
            buf.iter().zip(&coeffs).map(|(b, c)| b * c).sum()
        })
    }

    /// Polynomial in monomial form, `Σ aₖ tᵏ`, evaluated by Horner's rule.
    pub fn monomial_poly(label: impl Into<String>, coeffs: Vec<f64>) -> Self {
        Self::new(label, move |t| coeffs.iter().rev().fold(0.0, |acc, a| acc * t + a))
    }
}

/// The orthonormal polynomial `C̃_m`.
pub fn basis_member(params: GegenParams, m: usize) -> TestFunction {
    let mut coeffs = vec![0.0; m + 1];
    coeffs[m] = 1.0;
    TestFunction::from_coeffs(format!("basis:{m}"), params, coeffs)
}

/// Chebyshev polynomial `T_k(t) = cos(k arccos t)`.
pub fn chebyshev_member(k: usize) -> TestFunction {
    TestFunction::new(format!("chebyshev:{k}"), move |t: f64| {
        (k as f64 * t.clamp(-1.0, 1.0).acos()).cos()
    })
}

/// Deterministic seed for member `index` of a family drawn with `seed`.
fn member_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Expansion with coefficients `gₙ (n+1)^{-decay}`, `gₙ` uniform on `[-1, 1]`.
pub fn random_member(params: GegenParams, degree: usize, decay: f64, seed: u64) -> TestFunction {
    let mut rng = member_rng(seed, decay.to_bits());
    let coeffs = (0..=degree)
        .map(|n| rng.gen_range(-1.0..=1.0) * ((n + 1) as f64).powf(-decay))
        .collect();
    TestFunction::from_coeffs(format!("random:d={decay}"), params, coeffs)
}

/// Random polynomial of exactly `degree` in monomial form with coefficients
/// uniform on `[-1, 1]`.
pub fn random_monomial(degree: usize, rng: &mut impl Rng) -> TestFunction {
    let coeffs = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    TestFunction::monomial_poly(format!("monomial_random:{degree}"), coeffs)
}

/// The sweep family at degree `degree`: basis elements, random spectra with
/// decay `0`, `1` and `σ+1`, and Chebyshev polynomials.
pub fn canonical_family(params: GegenParams, degree: usize, seed: u64) -> Vec<TestFunction> {
    let mut indices = vec![0, 1, degree / 2, degree];
    indices.sort_unstable();
    indices.dedup();
    indices.retain(|&m| m <= degree);
    let mut out: Vec<TestFunction> = indices.into_iter().map(|m| basis_member(params, m)).collect();
    for decay in [0.0, 1.0, params.sigma() + 1.0] {
        out.push(random_member(params, degree, decay, seed));
    }
    let mut cheb = vec![degree / 2, degree];
    cheb.dedup();
    out.extend(cheb.into_iter().map(chebyshev_member));
    out
}

/// Parses a function spec: `basis:<m>`, `monomial:<k>`, `chebyshev:<k>`,
/// `random:d=<decay>`, `abs`, `exp`, or `canonical` (the whole family).
pub fn parse_function_spec(spec: &str, params: GegenParams, degree: usize, seed: u64) -> Result<Vec<TestFunction>> {
    let int_arg = |rest: &str| -> Result<usize> {
        rest.trim()
            .parse::<usize>()
            .map_err(|e| Error::Domain(format!("function spec {spec:?}: {e}")))
    };
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match kind {
        "canonical" => canonical_family(params, degree, seed),
        "basis" => vec![basis_member(params, int_arg(rest)?)],
        "chebyshev" => vec![chebyshev_member(int_arg(rest)?)],
        "monomial" => {
            let k = int_arg(rest)?;
            vec![TestFunction::new(format!("monomial:{k}"), move |t: f64| t.powi(k as i32))]
        }
        "random" => {
            let decay = rest
                .strip_prefix("d=")
                .ok_or_else(|| Error::Domain(format!("function spec {spec:?}: expected random:d=<decay>")))?
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("function spec {spec:?}: {e}")))?;
            vec![random_member(params, degree, decay, seed)]
        }
        "abs" => vec![TestFunction::new("abs", f64::abs)],
        "exp" => vec![TestFunction::new("exp", f64::exp)],
        other => return domain(format!("unknown function kind {other:?}")),
    })
}
