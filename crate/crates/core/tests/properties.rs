use approx::assert_relative_eq;
use proptest::prelude::*;

use gegen_core::asymptotics::supnorm;
use gegen_core::inequalities::{
    conjugate, evaluate_functional, hy_lhs, hyp_lhs, interpolation_plan, m_omega, paley_lhs, Functional, WeightSeq,
};
use gegen_core::quadrature::{gauss_jacobi, v_rule, Rule};
use gegen_core::specfun::{log_gamma, pochhammer};
use gegen_core::transform::{analyze, lp_norm, Expansion};
use gegen_core::GegenParams;

fn params_strategy() -> impl Strategy<Value = GegenParams> {
    (-0.4f64..3.0, 0.05f64..3.0).prop_map(|(l, m)| GegenParams::new(l, m).unwrap())
}

fn coeffs_strategy(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_degree + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn synthesis_then_analysis_is_identity(p in params_strategy(), coeffs in coeffs_strategy(24)) {
        let e = Expansion::new(p, coeffs).unwrap();
        let rule = v_rule(p, e.degree() + 8).unwrap();
        let s = e.synthesizer();
        let back = analyze(|t| s.eval(t), p, e.degree(), &rule).unwrap();
        for (a, b) in back.coeffs().iter().zip(e.coeffs()) {
            prop_assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn analysis_is_linear(p in params_strategy(), a in -3.0f64..3.0, b in -3.0f64..3.0, k in 0usize..6) {
        let rule = v_rule(p, 24).unwrap();
        let f = |t: f64| t.exp();
        let g = |t: f64| (t * k as f64).cos();
        let ef = analyze(f, p, 12, &rule).unwrap();
        let eg = analyze(g, p, 12, &rule).unwrap();
        let efg = analyze(|t| a * f(t) + b * g(t), p, 12, &rule).unwrap();
        for n in 0..=12 {
            let expect = a * ef.coeffs()[n] + b * eg.coeffs()[n];
            prop_assert!((efg.coeffs()[n] - expect).abs() <= 1e-12 * (1.0 + expect.abs()));
        }
    }

    #[test]
    fn parity_separates_coefficients(p in params_strategy(), k in 0usize..10) {
        let rule = v_rule(p, 32).unwrap();
        let even = analyze(|t| (t * t * k as f64).cos(), p, 16, &rule).unwrap();
        let odd = analyze(|t| t * (1.0 + t * t).powi(k as i32), p, 16, &rule).unwrap();
        for n in 0..=16 {
            if n % 2 == 1 {
                prop_assert!(even.coeffs()[n].abs() <= 1e-12);
            } else {
                prop_assert!(odd.coeffs()[n].abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn coefficient_norms_decrease_in_p(coeffs in coeffs_strategy(30), p in 1.0f64..4.0, dp in 0.0f64..3.0) {
        let e = Expansion::new(GegenParams::new(1.0, 0.5).unwrap(), coeffs).unwrap();
        prop_assert!(e.coeff_lp_norm(p + dp) <= e.coeff_lp_norm(p) * (1.0 + 1e-14));
    }

    #[test]
    fn pochhammer_recurrence(x in 0.1f64..20.0, n in 0usize..40) {
        let lhs = pochhammer(x, n + 1);
        let rhs = pochhammer(x, n) * (x + n as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn log_gamma_recurrence(x in 0.5f64..50.0) {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn ratios_are_scale_invariant(coeffs in coeffs_strategy(16), c in prop_oneof![Just(2.0f64), Just(0.5), Just(-4.0)], q in 1.1f64..2.0) {
        let p = GegenParams::new(1.0, 0.5).unwrap();
        let e = Expansion::new(p, coeffs).unwrap();
        let rule = v_rule(p, 40).unwrap();
        let w = WeightSeq::power(3.0, 64);
        let m = m_omega(&w, p).unwrap();
        let scaled = e.scaled(c);
        let s1 = e.synthesizer();
        let s2 = scaled.synthesizer();
        let n1 = lp_norm(|t| s1.eval(t), q, p, &rule).unwrap();
        let n2 = lp_norm(|t| s2.eval(t), q, p, &rule).unwrap();
        let s = 0.5 * (q + conjugate(q));
        for (f, s) in [(Functional::Paley, None), (Functional::HausdorffYoung, None), (Functional::Hyp, Some(s))] {
            let a = evaluate_functional(f, "f", &e, n1, q, s, &w, &m).unwrap().ratio;
            let b = evaluate_functional(f, "cf", &scaled, n2, q, s, &w, &m).unwrap().ratio;
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{f:?}: {a} vs {b}");
        }
    }

    #[test]
    fn endpoint_coherence(coeffs in coeffs_strategy(40), q in 1.01f64..2.0) {
        let e = Expansion::new(GegenParams::new(0.5, 1.5).unwrap(), coeffs).unwrap();
        let w = WeightSeq::power(4.0, 64);
        let paley = paley_lhs(&e, q, &w).unwrap();
        let hy = hy_lhs(&e, q).unwrap();
        prop_assert!((hyp_lhs(&e, q, q, &w).unwrap() - paley).abs() <= 1e-12 * paley.max(1e-300));
        prop_assert!((hyp_lhs(&e, q, conjugate(q), &w).unwrap() - hy).abs() <= 1e-12 * hy.max(1e-300));
    }
}

#[test]
fn interpolation_identity_on_grid() {
    for i in 0..=40 {
        let p = 1.0 + 1e-3 + (1.0 - 1e-3) * i as f64 / 40.0;
        let pc = conjugate(p);
        for j in 0..=40 {
            let s = (p + (pc - p) * j as f64 / 40.0).clamp(p, pc);
            let plan = interpolation_plan(p, s).unwrap();
            assert!(plan.identity_residual() <= 1e-14, "p={p} s={s}");
            assert!((0.0..=1.0).contains(&plan.t_param));
        }
    }
}

#[test]
fn v_rule_matches_reference_rule() {
    // Degree-d polynomials integrated by the mapped rule and by a dense
    // Gauss-Jacobi rule on [-1, 1] for the weight with μ = 0.
    let p = GegenParams::new(1.25, 0.0).unwrap();
    let rule = v_rule(p, 10).unwrap();
    let reference = gauss_jacobi(0.75, 0.75, 60).unwrap();
    for d in 0..rule.exact_degree() {
        let a = rule.integrate(|t| t.powi(d as i32) * (1.0 + t));
        let b = reference.integrate(|t| t.powi(d as i32) * (1.0 + t));
        assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0), "d={d}: {a} vs {b}");
    }
}

#[test]
fn supnorm_is_stable_under_grid_doubling() {
    for (l, m) in [(1.0, 0.5), (0.5, 1.5), (2.0, 0.25)] {
        let p = GegenParams::new(l, m).unwrap();
        for n in [5usize, 32, 77, 128] {
            let (a, _) = supnorm(p, n, 8 * (n + 1)).unwrap();
            let (b, _) = supnorm(p, n, 16 * (n + 1)).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }
}

#[test]
fn supnorm_over_power_stays_bracketed() {
    for (l, m) in [(1.0, 0.5), (0.5, 1.5)] {
        let p = GegenParams::new(l, m).unwrap();
        let ratios: Vec<f64> = [32usize, 64, 128, 256, 512]
            .iter()
            .map(|&n| supnorm(p, n, 8 * (n + 1)).unwrap().0 / (n as f64).powf(p.sigma()))
            .collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        assert!(hi / lo <= 4.0, "({l}, {m}): {ratios:?}");
    }
}
