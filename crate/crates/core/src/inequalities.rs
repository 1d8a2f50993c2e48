//! Paley, Hausdorff–Young and Hausdorff–Young–Paley functionals.
//!
//! The inequalities bound a weighted coefficient sum by
//! `K · M_ω^e · ‖f‖_{L_p(v_{λ,μ})}` with constants `K` that have no known
//! closed form. The harness therefore evaluates both sides and reports the
//! raw ratio `LHS / (M_ω^e ‖f‖_p)` without ever asserting a value for `K`.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::family::TestFunction;
use crate::quadrature::{MappedRule, Rule};
use crate::specfun::GegenParams;
use crate::transform::{analyze, lp_norm, Expansion};

/// Relative slack allowed when checking `p ≤ s ≤ p'` and `q' ≤ r ≤ q`.
const RANGE_SLACK: f64 = 1e-12;

/// Conjugate exponent `p' = p / (p - 1)`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn in_range(x: f64, lo: f64, hi: f64) -> bool {
    x >= lo * (1.0 - RANGE_SLACK) && x <= hi * (1.0 + RANGE_SLACK)
}

fn check_p(p: f64) -> Result<()> {
    if p > 1.0 && p <= 2.0 {
        Ok(())
    } else {
        domain(format!("p must lie in (1, 2], got {p}"))
    }
}

fn check_s(p: f64, s: f64) -> Result<()> {
    let pc = conjugate(p);
    if in_range(s, p, pc) {
        Ok(())
    } else {
        domain(format!("s must lie in [p, p'] = [{p}, {pc}], got {s}"))
    }
}

/// A positive sequence `ω(n)` considered for `n ≤ truncation`.
#[derive(Clone)]
pub struct WeightSeq {
    label: String,
    truncation: usize,
    values: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl fmt::Debug for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSeq")
            .field("label", &self.label)
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl WeightSeq {
    pub fn new(
        label: impl Into<String>,
        truncation: usize,
        values: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            truncation,
            values: Arc::new(values),
        }
    }

    /// `ω(n) = (n+1)^{-a}`.
    pub fn power(a: f64, truncation: usize) -> Self {
        Self::new(format!("power:a={a}"), truncation, move |n| ((n + 1) as f64).powf(-a))
    }

    /// `ω(n) = c`.
    pub fn constant(c: f64, truncation: usize) -> Self {
        Self::new(format!("const:c={c}"), truncation, move |_| c)
    }

    /// An explicit table; the truncation is the last index of the table.
    pub fn table(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return domain("weight table is empty");
        }
        let truncation = values.len() - 1;
        let seq = Self::new(label, truncation, move |n| values.get(n).copied().unwrap_or(f64::NAN));
        seq.check_positive(truncation)?;
        Ok(seq)
    }

    /// Reads a table: one value per line, or the last field of CSV rows.
    /// A non-numeric first line is treated as a header.
    pub fn read_table(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read weight table {}: {e}", path.display())))?;
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let field = line.rsplit(',').next().unwrap_or(line).trim();
            match field.parse::<f64>() {
                Ok(v) => values.push(v),
                Err(_) if i == 0 => continue,
                Err(_) => return domain(format!("weight table line {}: cannot parse {field:?}", i + 1)),
            }
        }
        Self::table(format!("table:{}", path.display()), values)
    }

    /// Parses `power:a=<real>`, `const:c=<real>` or `table:<path>`.
    pub fn parse(spec: &str, truncation: usize) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("weight spec {spec:?} must look like kind:args")))?;
        let number = |key: &str| -> Result<f64> {
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| Error::Domain(format!("weight spec {spec:?}: expected {key}=<value>")))?;
            if k.trim() != key {
                return domain(format!("weight spec {spec:?}: expected key {key}, got {k}"));
            }
            v.trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("weight spec {spec:?}: {e}")))
        };
        let seq = match kind {
            "power" => Self::power(number("a")?, truncation),
            "const" => Self::constant(number("c")?, truncation),
            "table" => {
                let table = Self::read_table(Path::new(rest))?;
                if table.truncation < truncation {
                    table
                } else {
                    table.with_truncation(truncation)
                }
            }
            other => return domain(format!("unknown weight kind {other:?}")),
        };
        seq.check_positive(seq.truncation)?;
        Ok(seq)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn value(&self, n: usize) -> f64 {
        (self.values)(n)
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        Self {
            truncation,
            ..self.clone()
        }
    }

    /// `n ↦ c·ω(n)`.
    pub fn scaled(&self, c: f64) -> Self {
        let inner = self.values.clone();
        Self::new(format!("{}*{c}", self.label), self.truncation, move |n| c * inner(n))
    }

    fn check_positive(&self, upto: usize) -> Result<()> {
        for n in 0..=upto {
            let v = self.value(n);
            if !(v > 0.0 && v.is_finite()) {
                return domain(format!("weight {} is not positive at n = {n}: {v}", self.label));
            }
        }
        Ok(())
    }
}

/// Truncated `M_ω` and the threshold attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MOmegaResult {
    pub value: f64,
    pub argmax_t: f64,
    pub truncation: usize,
}

/// `max_t t · Σ_{n ≤ N, ω(n) ≥ t} (n+1)^{2σ}`.
///
/// Between consecutive values of `ω` the sum is constant and the product grows
/// with `t`, so the supremum over `t > 0` is attained at one of the `ω(n)`.
/// Ties resolve to the smallest threshold.
pub fn m_omega(w: &WeightSeq, params: GegenParams) -> Result<MOmegaResult> {
    let two_sigma = 2.0 * params.sigma();
    let mut pairs = Vec::with_capacity(w.truncation + 1);
    for n in 0..=w.truncation {
        let v = w.value(n);
        if !(v > 0.0 && v.is_finite()) {
            return domain(format!("weight {} is not positive at n = {n}: {v}", w.label));
        }
        pairs.push((v, ((n + 1) as f64).powf(two_sigma)));
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = f64::NEG_INFINITY;
    let mut argmax = f64::NAN;
    let mut cumulative = 0.0;
    let mut i = 0;
    while i < pairs.len() {
        let t = pairs[i].0;
        while i < pairs.len() && pairs[i].0 == t {
            cumulative += pairs[i].1;
            i += 1;
        }
        let value = t * cumulative;
        if value >= best {
            best = value;
            argmax = t;
        }
    }
    Ok(MOmegaResult {
        value: best,
        argmax_t: argmax,
        truncation: w.truncation,
    })
}

/// `M_ω` at truncation `N` and at `2N`.
pub fn m_omega_doubling(w: &WeightSeq, params: GegenParams) -> Result<(MOmegaResult, MOmegaResult)> {
    let base = m_omega(w, params)?;
    let doubled = m_omega(&w.with_truncation((2 * w.truncation).max(1)), params)?;
    Ok((base, doubled))
}

/// Both sides of the layer-cake identity
/// `Σ_{φ(n) ≤ A} φ(n)^γ ψ(n) = γ ∫_0^A t^{γ-1} Σ_{t ≤ φ(n) ≤ A} ψ(n) dt`.
///
/// The integrand is a step function in `t` with jumps at the distinct values
/// of `φ`, so the right side is summed piece by piece in closed form.
pub fn layer_cake_check(phi: &[f64], psi: &[f64], gamma: f64, a: f64) -> Result<(f64, f64)> {
    if phi.len() != psi.len() {
        return domain(format!("phi has {} entries but psi has {}", phi.len(), psi.len()));
    }
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return domain(format!("gamma must be >= 1, got {gamma}"));
    }
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("A must be > 0, got {a}"));
    }
    if let Some(n) = phi.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        return domain(format!("phi must be positive, phi({n}) = {}", phi[n]));
    }
    if let Some(n) = psi.iter().position(|&v| !(v >= 0.0 && v.is_finite())) {
        return domain(format!("psi must be non-negative, psi({n}) = {}", psi[n]));
    }

    let lhs: f64 = phi
        .iter()
        .zip(psi)
        .filter(|(&f, _)| f <= a)
        .map(|(&f, &g)| f.powf(gamma) * g)
        .sum();

    let mut level: Vec<(f64, f64)> = phi
        .iter()
        .zip(psi)
        .filter(|(&f, _)| f <= a)
        .map(|(&f, &g)| (f, g))
        .collect();
    level.sort_by(|x, y| x.0.total_cmp(&y.0));
    // tail[j] = Σ ψ over entries with φ ≥ j-th distinct value.
    let mut rhs = 0.0;
    let mut tail: f64 = level.iter().map(|x| x.1).sum();
    let mut prev = 0.0f64;
    let mut i = 0;
    while i < level.len() {
        let v = level[i].0;
        rhs += (v.powf(gamma) - prev.powf(gamma)) * tail;
        while i < level.len() && level[i].0 == v {
            tail -= level[i].1;
            i += 1;
        }
        prev = v;
    }
    Ok((lhs, rhs))
}

fn weighted_coeff_norm(
    expansion: &Expansion,
    coeff_exp: f64,
    omega_exp: f64,
    power: f64,
    w: Option<&WeightSeq>,
) -> f64 {
    let sigma = expansion.params().sigma();
    let sum: f64 = expansion
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let mut factor = ((n + 1) as f64).powf(coeff_exp * sigma);
            if let Some(w) = w {
                factor *= w.value(n).powf(omega_exp);
            }
            (factor * c.abs()).powf(power)
        })
        .sum();
    sum.powf(1.0 / power)
}

fn check_weight_covers(expansion: &Expansion, w: &WeightSeq) -> Result<()> {
    if expansion.degree() > w.truncation {
        return domain(format!(
            "expansion degree {} exceeds weight truncation {}",
            expansion.degree(),
            w.truncation
        ));
    }
    w.check_positive(expansion.degree())
}

/// Paley functional
/// `{Σ ((n+1)^{(1/p-1/p')σ} ω(n)^{1/p-1/p'} |f̂_n|)^p}^{1/p}`.
pub fn paley_lhs(expansion: &Expansion, p: f64, w: &WeightSeq) -> Result<f64> {
    check_p(p)?;
    check_weight_covers(expansion, w)?;
    let inv_p = 1.0 / p;
    let inv_pc = 1.0 - inv_p;
    Ok(weighted_coeff_norm(expansion, inv_p - inv_pc, inv_p - inv_pc, p, Some(w)))
}

/// Hausdorff–Young functional
/// `{Σ ((n+1)^{(1/p'-1/p)σ} |f̂_n|)^{p'}}^{1/p'}`.
pub fn hy_lhs(expansion: &Expansion, p: f64) -> Result<f64> {
    check_p(p)?;
    let inv_p = 1.0 / p;
    let inv_pc = 1.0 - inv_p;
    Ok(weighted_coeff_norm(expansion, inv_pc - inv_p, 0.0, conjugate(p), None))
}

/// Hausdorff–Young–Paley functional
/// `{Σ ((n+1)^{(2/s-1)σ} ω(n)^{1/s-1/p'} |f̂_n|)^s}^{1/s}` for `p ≤ s ≤ p'`.
pub fn hyp_lhs(expansion: &Expansion, p: f64, s: f64, w: &WeightSeq) -> Result<f64> {
    check_p(p)?;
    check_s(p, s)?;
    check_weight_covers(expansion, w)?;
    let inv_pc = 1.0 - 1.0 / p;
    let inv_s = 1.0 / s;
    Ok(weighted_coeff_norm(expansion, inv_s - (1.0 - inv_s), inv_s - inv_pc, s, Some(w)))
}

/// Exponent bookkeeping of the interpolation between the Hausdorff–Young
/// endpoint (`s = p'`, `t = 0`) and the Paley endpoint (`s = p`, `t = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterpolationPlan {
    pub p: f64,
    pub s: f64,
    pub t_param: f64,
    /// `1/p - 1/p'`, the `M_ω` exponent at the Paley endpoint.
    pub paley_exponent: f64,
    /// `1/p' - 1/p`, the coefficient exponent (per unit `σ`) at the
    /// Hausdorff–Young endpoint.
    pub hy_exponent: f64,
    /// `2/s - 1`; multiply by `σ` for the coefficient exponent.
    pub hyp_coeff_exponent: f64,
    /// `1/s - 1/p'`.
    pub omega_exponent: f64,
}

impl InterpolationPlan {
    /// `(2/s - 1)σ`.
    pub fn coeff_exponent(&self, sigma: f64) -> f64 {
        self.hyp_coeff_exponent * sigma
    }

    /// Interpolated constant `B^{1-t} A^t` from the Hausdorff–Young constant
    /// `b` and the Paley constant `a`.
    pub fn compose_constant(&self, b: f64, a: f64) -> f64 {
        b.powf(1.0 - self.t_param) * a.powf(self.t_param)
    }

    /// `|(1/p - 1/p') t - (1/s - 1/p')|`.
    pub fn identity_residual(&self) -> f64 {
        (self.paley_exponent * self.t_param - self.omega_exponent).abs()
    }
}

/// Solves `1/s = (1-t)/p' + t/p` for `t`. At `p = 2` the range collapses to
/// `s = 2` and `t` is taken as 0.
pub fn interpolation_plan(p: f64, s: f64) -> Result<InterpolationPlan> {
    check_p(p)?;
    check_s(p, s)?;
    let pc = conjugate(p);
    let inv_p = 1.0 / p;
    let inv_pc = 1.0 - inv_p;
    let inv_s = 1.0 / s;
    let snap = |x: f64, y: f64| (x - y).abs() <= 4.0 * f64::EPSILON * y;
    let t_param = if p == 2.0 || snap(s, pc) {
        0.0
    } else if snap(s, p) {
        1.0
    } else {
        ((inv_pc - inv_s) / (inv_pc - inv_p)).clamp(0.0, 1.0)
    };
    let plan = InterpolationPlan {
        p,
        s,
        t_param,
        paley_exponent: inv_p - inv_pc,
        hy_exponent: inv_pc - inv_p,
        hyp_coeff_exponent: inv_s - (1.0 - inv_s),
        omega_exponent: inv_s - inv_pc,
    };
    let residual = plan.identity_residual();
    if residual > 1e-14 {
        return Err(Error::Internal(format!(
            "interpolation identity violated by {residual:e} at p={p}, s={s}"
        )));
    }
    Ok(plan)
}

/// Which inequality a report row evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Paley,
    HausdorffYoung,
    Hyp,
}

impl Functional {
    pub fn name(&self) -> &'static str {
        match self {
            Functional::Paley => "paley",
            Functional::HausdorffYoung => "hausdorff_young",
            Functional::Hyp => "hyp",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "paley" => Ok(Functional::Paley),
            "hy" | "hausdorff_young" => Ok(Functional::HausdorffYoung),
            "hyp" => Ok(Functional::Hyp),
            other => domain(format!("unknown functional {other:?}")),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One evaluated `(functional, f, p, s)` combination.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub functional: Functional,
    pub label: String,
    pub p: f64,
    pub s: f64,
    #[serde(rename = "N")]
    pub degree: usize,
    pub lhs: f64,
    pub fnorm: f64,
    pub m_omega: f64,
    pub ratio: f64,
}

fn ratio(lhs: f64, m: f64, omega_exp: f64, fnorm: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else {
        lhs / (m.powf(omega_exp) * fnorm)
    }
}

/// Evaluates one report row for an already analysed function.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_functional(
    functional: Functional,
    label: &str,
    expansion: &Expansion,
    fnorm: f64,
    p: f64,
    s: Option<f64>,
    w: &WeightSeq,
    m: &MOmegaResult,
) -> Result<InequalityReport> {
    let inv_pc = 1.0 - 1.0 / p;
    let (s, lhs, omega_exp) = match functional {
        Functional::Paley => (p, paley_lhs(expansion, p, w)?, 1.0 / p - inv_pc),
        Functional::HausdorffYoung => (conjugate(p), hy_lhs(expansion, p)?, 0.0),
        Functional::Hyp => {
            let s = s.ok_or_else(|| Error::Domain("hyp functional needs s".into()))?;
            (s, hyp_lhs(expansion, p, s, w)?, 1.0 / s - inv_pc)
        }
    };
    Ok(InequalityReport {
        functional,
        label: label.to_string(),
        p,
        s,
        degree: expansion.degree(),
        lhs,
        fnorm,
        m_omega: m.value,
        ratio: ratio(lhs, m.value, omega_exp, fnorm),
    })
}

/// Evaluates every functional over `family × p_grid × functionals (× s_grid
/// for hyp)`. Rows come back in that lexicographic order whatever the
/// degree of parallelism.
#[allow(clippy::too_many_arguments)]
pub fn inequality_sweep(
    family: &[TestFunction],
    params: GegenParams,
    p_grid: &[f64],
    s_grid: &[f64],
    functionals: &[Functional],
    w: &WeightSeq,
    degree: usize,
    rule: &MappedRule,
) -> Result<Vec<InequalityReport>> {
    for &p in p_grid {
        check_p(p)?;
        if functionals.contains(&Functional::Hyp) {
            if s_grid.is_empty() {
                return domain("hyp sweep needs a non-empty s grid");
            }
            for &s in s_grid {
                check_s(p, s)?;
            }
        }
    }
    if degree > w.truncation {
        return domain(format!("degree {degree} exceeds weight truncation {}", w.truncation));
    }
    let m = m_omega(w, params)?;
    let rows: Vec<Vec<InequalityReport>> = family
        .par_iter()
        .map(|tf| -> Result<Vec<InequalityReport>> {
            let expansion = analyze(|t| tf.eval(t), params, degree, rule)?;
            let mut out = Vec::new();
            for &p in p_grid {
                let fnorm = lp_norm(|t| tf.eval(t), p, params, rule)?;
                for &functional in functionals {
                    if functional == Functional::Hyp {
                        for &s in s_grid {
                            out.push(evaluate_functional(functional, tf.label(), &expansion, fnorm, p, Some(s), w, &m)?);
                        }
                    } else {
                        out.push(evaluate_functional(functional, tf.label(), &expansion, fnorm, p, None, w, &m)?);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// `‖Φ_N - Φ_{N'}‖_{L_q}` for one consecutive pair of degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CauchyStep {
    pub from: usize,
    pub to: usize,
    pub diff: f64,
}

/// Outcome of [`synthesis_convergence_report`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub q: f64,
    pub r: f64,
    pub degrees: Vec<usize>,
    pub cauchy: Vec<CauchyStep>,
    /// `max_N max_{n ≤ N} |(Φ̂_N)_n - φ(n)|`.
    pub max_coeff_error: f64,
    /// `‖Φ_N‖_{L_q}` at the last degree.
    pub final_norm: f64,
    /// `{Σ ((n+1)^{(1-2/r)σ} ω(n)^{1/q-1/r} |φ(n)|)^{r'}}^{1/r'}` up to the last degree.
    pub weighted_sum: f64,
    pub m_omega: f64,
    /// `final_norm / (M_ω^{1/r-1/q} · weighted_sum)`.
    pub ratio: f64,
}

impl ConvergenceReport {
    /// Whether the Cauchy differences are strictly decreasing.
    pub fn cauchy_decreasing(&self) -> bool {
        self.cauchy.windows(2).all(|w| w[1].diff < w[0].diff)
    }
}

/// Builds the partial sums `Φ_N = Σ_{n ≤ N} φ(n) C̃_n` for each `N` in
/// `degrees` and measures their convergence in `L_q(v_{λ,μ})`.
#[allow(clippy::too_many_arguments)]
pub fn synthesis_convergence_report<F>(
    phi: F,
    q: f64,
    r: f64,
    w: &WeightSeq,
    degrees: &[usize],
    params: GegenParams,
    rule: &MappedRule,
) -> Result<ConvergenceReport>
where
    F: Fn(usize) -> f64,
{
    if !(q >= 2.0 && q.is_finite()) {
        return domain(format!("q must lie in [2, ∞), got {q}"));
    }
    let qc = conjugate(q);
    if !in_range(r, qc, q) {
        return domain(format!("r must lie in [q', q] = [{qc}, {q}], got {r}"));
    }
    if degrees.is_empty() || degrees.windows(2).any(|d| d[1] <= d[0]) {
        return domain("degrees must be non-empty and strictly increasing");
    }
    let top = *degrees.last().unwrap();
    if top > w.truncation {
        return domain(format!("degree {top} exceeds weight truncation {}", w.truncation));
    }
    if 2 * top > rule.exact_degree() {
        return domain(format!(
            "rule is exact to degree {} but recovering degree-{top} coefficients needs {}",
            rule.exact_degree(),
            2 * top
        ));
    }
    let values: Vec<f64> = (0..=top).map(&phi).collect();
    if let Some(n) = values.iter().position(|v| !(*v >= 0.0 && v.is_finite())) {
        return domain(format!("phi must be non-negative, phi({n}) = {}", values[n]));
    }

    let mut max_coeff_error = 0.0f64;
    for &n in degrees {
        let partial = Expansion::new(params, values[..=n].to_vec())?;
        let synth = partial.synthesizer();
        let recovered = analyze(|t| synth.eval(t), params, n, rule)?;
        for (a, b) in recovered.coeffs().iter().zip(&values) {
            max_coeff_error = max_coeff_error.max((a - b).abs());
        }
    }

    let mut cauchy = Vec::with_capacity(degrees.len().saturating_sub(1));
    for pair in degrees.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let mut coeffs = values[..=hi].to_vec();
        coeffs[..=lo].iter_mut().for_each(|c| *c = 0.0);
        let diff = Expansion::new(params, coeffs)?;
        let synth = diff.synthesizer();
        cauchy.push(CauchyStep {
            from: lo,
            to: hi,
            diff: lp_norm(|t| synth.eval(t), q, params, rule)?,
        });
    }

    let last = Expansion::new(params, values.clone())?;
    let synth = last.synthesizer();
    let final_norm = lp_norm(|t| synth.eval(t), q, params, rule)?;

    let sigma = params.sigma();
    let rc = conjugate(r);
    let inv_q = 1.0 / q;
    let inv_r = 1.0 / r;
    let weighted_sum = values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let factor = ((n + 1) as f64).powf((1.0 - 2.0 * inv_r) * sigma) * w.value(n).powf(inv_q - inv_r);
            (factor * v.abs()).powf(rc)
        })
        .sum::<f64>()
        .powf(1.0 / rc);
    let m = m_omega(w, params)?;
    Ok(ConvergenceReport {
        q,
        r,
        degrees: degrees.to_vec(),
        cauchy,
        max_coeff_error,
        final_norm,
        weighted_sum,
        m_omega: m.value,
        ratio: ratio(final_norm, m.value, inv_r - inv_q, weighted_sum),
    })
}
