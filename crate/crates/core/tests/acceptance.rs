//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gegen_core::asymptotics::{exponent_fit, exponent_fit_by_parity, geometric_ladder, supnorm_scan};
use gegen_core::family::{canonical_family, random_monomial};
use gegen_core::inequalities::{
    conjugate, hy_lhs, hyp_lhs, inequality_sweep, interpolation_plan, layer_cake_check, m_omega, paley_lhs,
    synthesis_convergence_report, Functional, WeightSeq,
};
use gegen_core::quadrature::{default_npoints, v_rule, Rule};
use gegen_core::specfun::{gegen_connection_residual, OrthonormalBasis};
use gegen_core::transform::{parseval_check, Expansion};
use gegen_core::GegenParams;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: String) -> Outcome {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn params(l: f64, m: f64) -> GegenParams {
    GegenParams::new(l, m).unwrap()
}

fn ac1_orthonormality() -> Outcome {
    let start = Instant::now();
    let n = 32;
    let mut worst_off: f64 = 0.0;
    let mut worst_diag: f64 = 0.0;
    for (l, m) in [(1.0, 0.5), (0.25, 2.0), (2.5, 1.0)] {
        let p = params(l, m);
        let rule = v_rule(p, default_npoints(n)).unwrap();
        let basis = OrthonormalBasis::new(p, n);
        let mut gram = vec![vec![0.0; n + 1]; n + 1];
        let mut buf = Vec::new();
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            basis.eval_into(x, &mut buf);
            for i in 0..=n {
                for j in 0..=n {
                    gram[i][j] += w * buf[i] * buf[j];
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                if i == j {
                    worst_diag = worst_diag.max((gram[i][j] - 1.0).abs());
                } else {
                    worst_off = worst_off.max(gram[i][j].abs());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        worst_off <= 1e-10 && worst_diag <= 1e-10 && elapsed < Duration::from_secs(10),
        format!("max |off-diag| = {worst_off:.2e}, max |diag-1| = {worst_diag:.2e}, {elapsed:.2?}"),
    )
}

fn ac2_parseval() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let p = params(1.0, 0.5);
    let n = 32;
    let rule = v_rule(p, default_npoints(n)).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let degree = rng.gen_range(0..=n);
        let f = random_monomial(degree, &mut rng);
        let (lhs, rhs) = parseval_check(|t| f.eval(t), p, n, &rule).unwrap();
        worst = worst.max((lhs - rhs).abs() / lhs.max(1.0));
    }
    check(worst <= 1e-10, format!("max |lhs-rhs|/max(1,lhs) = {worst:.2e} over 50 polynomials"))
}

fn ac3_connection() -> Outcome {
    let mut worst: f64 = 0.0;
    for mu in [0.5, 1.5] {
        for lambda in [0.5, 2.0] {
            let p = params(lambda, mu);
            for n in 0..=10 {
                for i in 0..33 {
                    let t = -1.0 + 2.0 * i as f64 / 32.0;
                    worst = worst.max(gegen_connection_residual(p, n, t, 64).unwrap());
                }
            }
        }
    }
    check(worst <= 1e-8, format!("max residual = {worst:.2e}"))
}

fn ac4_layer_cake() -> Outcome {
    let phi: Vec<f64> = (0..10).map(|n| (n + 1) as f64).collect();
    let (l, r) = layer_cake_check(&phi, &[1.0; 10], 2.0, 3.0).unwrap();
    if l != 14.0 || r != 14.0 {
        return Err(format!("worked instance gave ({l}, {r}), expected (14, 14)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let k = rng.gen_range(1..=50);
        // Every other instance draws φ from a small lattice to force ties.
        let phi: Vec<f64> = (0..=k)
            .map(|_| {
                if i % 2 == 0 {
                    rng.gen_range(0.01..5.0)
                } else {
                    rng.gen_range(1..=6) as f64 * 0.5
                }
            })
            .collect();
        let psi: Vec<f64> = (0..=k).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.0..3.0) }).collect();
        let gamma = rng.gen_range(1.0..=4.0);
        let a = rng.gen_range(0.05..5.5);
        let (lhs, rhs) = layer_cake_check(&phi, &psi, gamma, a).unwrap();
        worst = worst.max((lhs - rhs).abs() / lhs.max(1.0));
    }
    check(worst <= 1e-12, format!("worked instance 14 = 14; max rel. error over 100 instances = {worst:.2e}"))
}

fn ac5_m_omega() -> Outcome {
    let p = params(1.0, 0.5);
    for n_max in (1..=256).chain([512, 1024, 2048]) {
        let r = m_omega(&WeightSeq::power(3.0, n_max), p).unwrap();
        if r.value != 1.0 || r.argmax_t != 1.0 {
            return Err(format!("N_max = {n_max}: M_ω = {} at t = {}", r.value, r.argmax_t));
        }
    }
    let a = m_omega(&WeightSeq::power(3.0, 1 << 10), p).unwrap().value;
    let b = m_omega(&WeightSeq::power(3.0, 1 << 11), p).unwrap().value;
    check(a == b, format!("M_ω = 1 at t = 1 for N_max ∈ 1..=256 and 2^9..2^11; doubling change = {}", b - a))
}

fn random_expansions(p: GegenParams, count: usize, seed: u64) -> Vec<Expansion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let degree = rng.gen_range(0..=48);
            let decay = [0.0, 1.0, 2.5][i % 3];
            let coeffs = (0..=degree)
                .map(|n| rng.gen_range(-1.0..=1.0) * ((n + 1) as f64).powf(-decay))
                .collect();
            Expansion::new(p, coeffs).unwrap()
        })
        .collect()
}

fn ac6_endpoints() -> Outcome {
    let p = params(1.0, 0.5);
    let w = WeightSeq::power(2.0 * p.sigma() + 1.0, 64);
    let mut worst: f64 = 0.0;
    for e in random_expansions(p, 20, 6) {
        for q in [1.25, 1.5, 1.75] {
            let a = hyp_lhs(&e, q, q, &w).unwrap();
            let b = paley_lhs(&e, q, &w).unwrap();
            let c = hyp_lhs(&e, q, conjugate(q), &w).unwrap();
            let d = hy_lhs(&e, q).unwrap();
            worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
            worst = worst.max((c - d).abs() / d.abs().max(f64::MIN_POSITIVE));
        }
    }
    check(worst <= 1e-12, format!("max relative endpoint gap = {worst:.2e}"))
}

fn ac7_interpolation() -> Outcome {
    let plan = interpolation_plan(4.0 / 3.0, 2.0).map_err(|e| e.to_string())?;
    if (plan.t_param - 0.5).abs() > 1e-14 {
        return Err(format!("p = 4/3, s = 2 gave t = {}", plan.t_param));
    }
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let p = 1.05 + 0.95 * i as f64 / 19.0;
        let pc = conjugate(p);
        let t0 = interpolation_plan(p, pc).unwrap().t_param;
        let t1 = interpolation_plan(p, p).unwrap().t_param;
        // At p = 2 the two endpoints coincide and t is 0 by convention.
        let t1_expect = if p == 2.0 { 0.0 } else { 1.0 };
        if t0 != 0.0 || t1 != t1_expect {
            return Err(format!("p = {p}: endpoint t values ({t0}, {t1})"));
        }
        for j in 0..20 {
            let s = p + (pc - p) * j as f64 / 19.0;
            let plan = interpolation_plan(p, s).map_err(|e| e.to_string())?;
            worst = worst.max(plan.identity_residual());
        }
    }
    check(worst <= 1e-14, format!("t(4/3, 2) = {}; endpoints exact; max identity residual = {worst:.2e}", plan.t_param))
}

fn ac8_slope() -> Outcome {
    let start = Instant::now();
    let ladder = geometric_ladder(32, 512);
    let mut msgs = Vec::new();
    let mut ok = true;
    for ((l, m), lo, hi) in [((1.0, 0.5), 0.9, 1.1), ((0.5, 1.5), 1.4, 1.6)] {
        let p = params(l, m);
        let scan = supnorm_scan(p, &ladder, 8).unwrap();
        let fit = exponent_fit(&scan, 32).unwrap();
        let split = exponent_fit_by_parity(&scan, 32).unwrap();
        let pass = fit.slope >= lo && fit.slope <= hi;
        ok &= pass;
        msgs.push(format!(
            "(λ={l}, μ={m}) OLS slope = {:.4} {} [{lo}, {hi}] (parity-offset slope {:.4})",
            fit.slope,
            if pass { "∈" } else { "∉" },
            split.slope
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    check(ok, format!("{}; {elapsed:.2?}", msgs.join("; ")))
}

fn ac9_convergence() -> Outcome {
    let degrees = [8, 16, 32, 64, 128];
    let mut msgs = Vec::new();
    let mut ok = true;
    for (l, m) in [(1.0, 0.5), (0.5, 1.5)] {
        let p = params(l, m);
        let sigma = p.sigma();
        let rule = v_rule(p, 160).unwrap();
        let w = WeightSeq::power(2.0 * sigma + 1.0, 256);
        for q in [2.0, 4.0] {
            let rep = synthesis_convergence_report(
                |n| ((n + 1) as f64).powf(-sigma - 2.0),
                q,
                conjugate(q),
                &w,
                &degrees,
                p,
                &rule,
            )
            .map_err(|e| e.to_string())?;
            let diffs: Vec<String> = rep.cauchy.iter().map(|c| format!("{:.2e}", c.diff)).collect();
            ok &= rep.cauchy_decreasing() && rep.max_coeff_error <= 1e-10;
            msgs.push(format!(
                "(λ={l}, μ={m}, q={q}) diffs [{}] coeff err {:.1e}",
                diffs.join(", "),
                rep.max_coeff_error
            ));
        }
    }
    check(ok, msgs.join("; "))
}

fn ac10_ratio_stability() -> Outcome {
    let mut msgs = Vec::new();
    let mut ok = true;
    for (l, m) in [(1.0, 0.5), (0.5, 1.5)] {
        let p = params(l, m);
        let w = WeightSeq::power(2.0 * p.sigma() + 1.0, 4096);
        // (functional, p, s) -> max ratio per N
        let mut maxima: BTreeMap<(String, u64, u64), Vec<f64>> = BTreeMap::new();
        let mut basis_worst: f64 = 0.0;
        for n in [8usize, 16, 32, 64] {
            let rule = v_rule(p, default_npoints(n)).unwrap();
            let family = canonical_family(p, n, 10);
            for q in [1.25, 1.5, 1.75, 2.0] {
                let qc = conjugate(q);
                let s_grid = [q, 0.5 * (q + qc), qc];
                let rows = inequality_sweep(
                    &family,
                    p,
                    &[q],
                    &s_grid,
                    &[Functional::Paley, Functional::HausdorffYoung, Functional::Hyp],
                    &w,
                    n,
                    &rule,
                )
                .map_err(|e| e.to_string())?;
                let mut per_key: BTreeMap<(String, u64, u64), f64> = BTreeMap::new();
                for r in &rows {
                    let key = (r.functional.name().to_string(), r.p.to_bits(), r.s.to_bits());
                    let e = per_key.entry(key).or_insert(0.0);
                    *e = e.max(r.ratio);
                    if q == 2.0 && r.label.starts_with("basis:") {
                        basis_worst = basis_worst.max((r.ratio - 1.0).abs());
                    }
                }
                for (k, v) in per_key {
                    maxima.entry(k).or_default().push(v);
                }
            }
        }
        let mut worst_spread: f64 = 1.0;
        for v in maxima.values() {
            let hi = v.iter().cloned().fold(f64::MIN, f64::max);
            let lo = v.iter().cloned().fold(f64::MAX, f64::min);
            worst_spread = worst_spread.max(hi / lo);
        }
        ok &= worst_spread < 2.0 && basis_worst <= 1e-10;
        msgs.push(format!(
            "(λ={l}, μ={m}) worst max-ratio spread across N = {worst_spread:.4}, basis |ratio-1| at p=2 = {basis_worst:.1e}"
        ));
    }
    check(ok, msgs.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 orthonormality (Gram = I, N = 32)", ac1_orthonormality),
        ("AC2 Parseval anchor (50 random polynomials)", ac2_parseval),
        ("AC3 connection integral residual", ac3_connection),
        ("AC4 layer-cake identity", ac4_layer_cake),
        ("AC5 M_ω anchor for ω(n) = (n+1)^-3, σ = 1", ac5_m_omega),
        ("AC6 endpoint coherence of the HYP functional", ac6_endpoints),
        ("AC7 interpolation bookkeeping", ac7_interpolation),
        ("AC8 sup-norm growth exponent", ac8_slope),
        ("AC9 synthesis convergence", ac9_convergence),
        ("AC10 ratio stability across N", ac10_ratio_stability),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                failures += 1;
                println!("[FAIL] {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
