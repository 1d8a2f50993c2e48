//! CSV and JSON encodings of rules, expansions, inequality reports and scans.
//!
//! Reals are written with 17 significant digits so every cell parses back
//! to the same `f64`.

use std::fmt::Write as _;

use serde_json::json;

use crate::asymptotics::{ExponentFit, SupNormScan};
use crate::inequalities::InequalityReport;
use crate::quadrature::Rule;
use crate::transform::Expansion;

pub const RULE_HEADER: &str = "node,weight";
pub const EXPANSION_HEADER: &str = "n,coeff";
pub const REPORT_HEADER: &str = "functional,label,p,s,N,lhs,fnorm,m_omega,ratio";
pub const SCAN_HEADER: &str = "n,sup_norm,argmax_t";

/// A real with 17 significant digits in scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn rule_csv<R: Rule>(rule: &R) -> String {
    let mut out = String::from(RULE_HEADER);
    out.push('\n');
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        let _ = writeln!(out, "{},{}", fmt_real(*x), fmt_real(*w));
    }
    out
}

pub fn expansion_csv(expansion: &Expansion) -> String {
    let mut out = String::from(EXPANSION_HEADER);
    out.push('\n');
    for (n, c) in expansion.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{n},{}", fmt_real(*c));
    }
    out
}

pub fn expansion_json(expansion: &Expansion) -> String {
    let mut s = serde_json::to_string_pretty(&expansion.to_json()).expect("serializable");
    s.push('\n');
    s
}

pub fn report_csv_row(r: &InequalityReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.functional.name(),
        csv_field(&r.label),
        fmt_real(r.p),
        fmt_real(r.s),
        r.degree,
        fmt_real(r.lhs),
        fmt_real(r.fnorm),
        fmt_real(r.m_omega),
        fmt_real(r.ratio)
    )
}

pub fn reports_csv(reports: &[InequalityReport]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&report_csv_row(r));
        out.push('\n');
    }
    out
}

pub fn reports_json(reports: &[InequalityReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("serializable");
    s.push('\n');
    s
}

/// Scan rows followed by a one-line JSON footer with the fit.
pub fn scan_csv(scan: &SupNormScan, fit: Option<&ExponentFit>) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for e in &scan.entries {
        let _ = writeln!(out, "{},{},{}", e.n, fmt_real(e.sup_norm), fmt_real(e.argmax_t));
    }
    if let Some(fit) = fit {
        out.push_str(&fit_footer(fit, scan.params.sigma()).to_string());
        out.push('\n');
    }
    out
}

pub fn fit_footer(fit: &ExponentFit, sigma_expected: f64) -> serde_json::Value {
    json!({
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual": fit.residual,
        "sigma_expected": sigma_expected,
    })
}

pub fn scan_json(scan: &SupNormScan, fit: Option<&ExponentFit>) -> String {
    let mut v = json!({
        "lambda": scan.params.lambda(),
        "mu": scan.params.mu(),
        "entries": scan.entries,
    });
    if let Some(fit) = fit {
        v["fit"] = fit_footer(fit, scan.params.sigma());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
