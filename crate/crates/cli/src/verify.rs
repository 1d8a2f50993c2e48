//! Verification suites. Each produces records of `(check, value, tolerance)`
//! and passes when every value is within its tolerance.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gegen_core::asymptotics::{exponent_fit, supnorm_scan, MIN_GRID_FACTOR};
use gegen_core::family::{canonical_family, random_monomial};
use gegen_core::inequalities::{
    conjugate, hy_lhs, hyp_lhs, interpolation_plan, layer_cake_check, m_omega_doubling, paley_lhs,
    synthesis_convergence_report, WeightSeq,
};
use gegen_core::quadrature::{v_rule, Rule};
use gegen_core::report::fmt_real;
use gegen_core::specfun::{gegen_connection_residual, OrthonormalBasis};
use gegen_core::transform::{analyze, parseval_check, Expansion};
use gegen_core::{Error, GegenParams, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Parseval,
    Orthonormality,
    Connection,
    LayerCake,
    MOmega,
    Endpoints,
    Interpolation,
    Convergence,
    Supnorm,
}

pub struct Config {
    pub params: GegenParams,
    pub degree: usize,
    pub npoints: usize,
    pub seed: u64,
    pub p_grid: Vec<f64>,
    pub omega: WeightSeq,
    pub ladder: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub check: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Record {
    fn new(check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

pub fn describe(r: &Record) -> String {
    format!("{}: value {} exceeds tolerance {}", r.check, fmt_real(r.value), fmt_real(r.tolerance))
}

pub fn records_csv(records: &[Record]) -> String {
    let mut out = String::from("check,value,tolerance,pass\n");
    for r in records {
        out += &format!("{},{},{},{}\n", r.check, fmt_real(r.value), fmt_real(r.tolerance), r.pass);
    }
    out
}

pub fn records_json(records: &[Record]) -> String {
    serde_json::to_string_pretty(records).expect("serializable") + "\n"
}

pub fn run(suite: Suite, cfg: &Config) -> Result<Vec<Record>> {
    match suite {
        Suite::Parseval => parseval(cfg),
        Suite::Orthonormality => orthonormality(cfg),
        Suite::Connection => connection(cfg),
        Suite::LayerCake => layer_cake(cfg),
        Suite::MOmega => m_omega(cfg),
        Suite::Endpoints => endpoints(cfg),
        Suite::Interpolation => interpolation(cfg),
        Suite::Convergence => convergence(cfg),
        Suite::Supnorm => supnorm(cfg),
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(1.0)
}

fn parseval(cfg: &Config) -> Result<Vec<Record>> {
    let p = cfg.params;
    let rule = v_rule(p, cfg.npoints)?;
    let mut out = Vec::new();
    for f in canonical_family(p, cfg.degree, cfg.seed) {
        let (lhs, rhs) = parseval_check(|t| f.eval(t), p, cfg.degree, &rule)?;
        out.push(Record::new(format!("parseval {}", f.label()), rel_gap(lhs, rhs), 1e-10));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..10 {
        let f = random_monomial(rng.gen_range(0..=cfg.degree), &mut rng);
        let (lhs, rhs) = parseval_check(|t| f.eval(t), p, cfg.degree, &rule)?;
        out.push(Record::new(format!("parseval {} #{i}", f.label()), rel_gap(lhs, rhs), 1e-10));
    }
    Ok(out)
}

fn orthonormality(cfg: &Config) -> Result<Vec<Record>> {
    let n = cfg.degree;
    let rule = v_rule(cfg.params, cfg.npoints)?;
    let basis = OrthonormalBasis::new(cfg.params, n);
    let mut gram = vec![0.0; (n + 1) * (n + 1)];
    let mut buf = Vec::new();
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        basis.eval_into(x, &mut buf);
        for i in 0..=n {
            for j in 0..=n {
                gram[i * (n + 1) + j] += w * buf[i] * buf[j];
            }
        }
    }
    let (mut diag, mut off) = (0.0f64, 0.0f64);
    for i in 0..=n {
        for j in 0..=n {
            let g = gram[i * (n + 1) + j];
            if i == j {
                diag = diag.max((g - 1.0).abs());
            } else {
                off = off.max(g.abs());
            }
        }
    }
    Ok(vec![
        Record::new("gram max |diag - 1|", diag, 1e-10),
        Record::new("gram max |off-diag|", off, 1e-10),
    ])
}

fn connection(cfg: &Config) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for n in 0..=cfg.degree {
        let mut worst = 0.0f64;
        for i in 0..33 {
            let t = -1.0 + 2.0 * i as f64 / 32.0;
            worst = worst.max(gegen_connection_residual(cfg.params, n, t, cfg.npoints)?);
        }
        out.push(Record::new(format!("connection n={n}"), worst, 1e-8));
    }
    Ok(out)
}

fn layer_cake(cfg: &Config) -> Result<Vec<Record>> {
    let phi: Vec<f64> = (0..10).map(|n| (n + 1) as f64).collect();
    let (l, r) = layer_cake_check(&phi, &[1.0; 10], 2.0, 3.0)?;
    let mut out = vec![
        Record::new("worked instance |lhs - 14|", (l - 14.0).abs(), 0.0),
        Record::new("worked instance |rhs - 14|", (r - 14.0).abs(), 0.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..100 {
        let k = rng.gen_range(1..=50);
        let phi: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.01..5.0)).collect();
        let psi: Vec<f64> = (0..=k).map(|_| rng.gen_range(0.0..3.0)).collect();
        let gamma = rng.gen_range(1.0..=4.0);
        let a = rng.gen_range(0.05..5.5);
        let (lhs, rhs) = layer_cake_check(&phi, &psi, gamma, a)?;
        out.push(Record::new(format!("random instance {i}"), rel_gap(lhs, rhs), 1e-12));
    }
    Ok(out)
}

fn m_omega(cfg: &Config) -> Result<Vec<Record>> {
    let w = &cfg.omega;
    let sigma = cfg.params.sigma();
    let (base, doubled) = m_omega_doubling(w, cfg.params)?;
    let mut out = vec![Record::new(
        format!("{} doubling N_max {} -> {}", w.label(), base.truncation, doubled.truncation),
        rel_gap(doubled.value, base.value),
        1e-8,
    )];
    // A dense scan of t must never beat the threshold scan.
    let top = (0..=w.truncation()).map(|n| w.value(n)).fold(0.0f64, f64::max);
    let mut dense = 0.0f64;
    for i in 1..=10_000 {
        let t = top * i as f64 / 10_000.0;
        let mass: f64 = (0..=w.truncation())
            .filter(|&n| w.value(n) >= t)
            .map(|n| ((n + 1) as f64).powf(2.0 * sigma))
            .sum();
        dense = dense.max(t * mass);
    }
    out.push(Record::new(
        "dense scan excess over threshold scan",
        (dense - base.value).max(0.0) / base.value,
        1e-12,
    ));
    Ok(out)
}

fn random_expansion(p: GegenParams, degree: usize, rng: &mut ChaCha8Rng) -> Result<Expansion> {
    let coeffs = (0..=degree).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Expansion::new(p, coeffs)
}

fn endpoints(cfg: &Config) -> Result<Vec<Record>> {
    let p = cfg.params;
    let w = cfg.omega.with_truncation(cfg.omega.truncation().max(cfg.degree));
    let rule = v_rule(p, cfg.npoints)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut expansions = Vec::new();
    for f in canonical_family(p, cfg.degree, cfg.seed) {
        expansions.push((f.label().to_string(), analyze(|t| f.eval(t), p, cfg.degree, &rule)?));
    }
    for i in 0..10 {
        expansions.push((format!("coeffs #{i}"), random_expansion(p, cfg.degree, &mut rng)?));
    }
    let mut out = Vec::new();
    for &q in &cfg.p_grid {
        let qc = conjugate(q);
        let (mut lo, mut hi, mut two) = (0.0f64, 0.0f64, 0.0f64);
        for (_, e) in &expansions {
            let paley = paley_lhs(e, q, &w)?;
            let hy = hy_lhs(e, q)?;
            lo = lo.max((hyp_lhs(e, q, q, &w)? - paley).abs() / paley.max(f64::MIN_POSITIVE));
            hi = hi.max((hyp_lhs(e, q, qc, &w)? - hy).abs() / hy.max(f64::MIN_POSITIVE));
            if q == 2.0 {
                let l2 = e.coeff_lp_norm(2.0);
                for v in [paley, hy, hyp_lhs(e, 2.0, 2.0, &w)?] {
                    two = two.max((v - l2).abs() / l2.max(1.0));
                }
            }
        }
        out.push(Record::new(format!("p={q} hyp(s=p) vs paley"), lo, 1e-12));
        out.push(Record::new(format!("p={q} hyp(s=p') vs hy"), hi, 1e-12));
        if q == 2.0 {
            out.push(Record::new("p=2 collapse to l2 norm", two, 1e-10));
        }
    }
    Ok(out)
}

fn interpolation(_cfg: &Config) -> Result<Vec<Record>> {
    let plan = interpolation_plan(4.0 / 3.0, 2.0)?;
    let mut out = vec![Record::new("t(4/3, 2) - 1/2", (plan.t_param - 0.5).abs(), 1e-14)];
    let mut worst = 0.0f64;
    let mut endpoint = 0.0f64;
    for i in 0..20 {
        let p = 1.05 + 0.95 * i as f64 / 19.0;
        let pc = conjugate(p);
        endpoint = endpoint.max(interpolation_plan(p, pc)?.t_param.abs());
        if p < 2.0 {
            endpoint = endpoint.max((interpolation_plan(p, p)?.t_param - 1.0).abs());
        }
        for j in 0..20 {
            let s = p + (pc - p) * j as f64 / 19.0;
            worst = worst.max(interpolation_plan(p, s)?.identity_residual());
        }
    }
    out.push(Record::new("endpoint t values", endpoint, 0.0));
    out.push(Record::new("max identity residual", worst, 1e-14));
    Ok(out)
}

fn convergence(cfg: &Config) -> Result<Vec<Record>> {
    let p = cfg.params;
    let sigma = p.sigma();
    let mut degrees = Vec::new();
    let mut n = 4;
    while n < cfg.degree {
        degrees.push(n);
        n *= 2;
    }
    degrees.push(cfg.degree.max(1));
    let rule = v_rule(p, cfg.npoints)?;
    let w = cfg.omega.with_truncation(cfg.omega.truncation().max(cfg.degree));
    let mut out = Vec::new();
    for q in [2.0, 4.0] {
        let rep = synthesis_convergence_report(
            |n| ((n + 1) as f64).powf(-sigma - 2.0),
            q,
            conjugate(q),
            &w,
            &degrees,
            p,
            &rule,
        )?;
        out.push(Record::new(format!("q={q} recovered coefficient error"), rep.max_coeff_error, 1e-10));
        let increase = rep.cauchy.windows(2).map(|s| s[1].diff - s[0].diff).fold(f64::NEG_INFINITY, f64::max);
        if increase.is_finite() {
            out.push(Record::new(format!("q={q} Cauchy difference increase"), increase.max(0.0), 0.0));
        }
    }
    Ok(out)
}

fn supnorm(cfg: &Config) -> Result<Vec<Record>> {
    let p = GegenParams::with_positive_mu(cfg.params.lambda(), cfg.params.mu())?;
    let scan = supnorm_scan(p, &cfg.ladder, MIN_GRID_FACTOR)?;
    let n_min = cfg.ladder.first().copied().unwrap_or(0);
    let fit = exponent_fit(&scan, n_min).map_err(|e| match e {
        Error::InsufficientData { .. } => Error::Domain(format!("{e}; widen --nladder")),
        other => other,
    })?;
    Ok(vec![Record::new(
        format!("|slope - σ| (slope {:.4}, σ {})", fit.slope, p.sigma()),
        (fit.slope - p.sigma()).abs(),
        0.1,
    )])
}
