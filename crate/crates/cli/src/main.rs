//! `gegen`: evaluation, quadrature, transforms, inequality sweeps and
//! verification suites for generalized Gegenbauer expansions.

mod plot;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gegen_core::asymptotics::{exponent_fit, supnorm_scan, geometric_ladder, MIN_GRID_FACTOR};
use gegen_core::family::parse_function_spec;
use gegen_core::inequalities::{inequality_sweep, Functional, WeightSeq};
use gegen_core::quadrature::{default_npoints, gauss_jacobi, v_rule};
use gegen_core::specfun::{gegen_eval, gegen_orthonormal_eval};
use gegen_core::transform::analyze;
use gegen_core::{report, Error, GegenParams};

#[derive(Parser)]
#[command(name = "gegen", version, about = "Generalized Gegenbauer expansions and inequality functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate C_n and the orthonormal C̃_n on a grid of points.
    Eval(EvalArgs),
    /// Print a quadrature rule as `node,weight`.
    Quad(QuadArgs),
    /// Expansion coefficients of a test function as `n,coeff`.
    Transform(TransformArgs),
    /// Run a verification suite; exits 1 if any record is out of tolerance.
    Verify(VerifyArgs),
    /// Evaluate inequality functionals over a family of functions.
    Sweep(SweepArgs),
    /// Sup norms of C̃_n along a degree ladder with a log-log slope fit.
    Supnorm(SupnormArgs),
    /// Render a CSV report as a static SVG line plot.
    Plot(plot::PlotArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// λ, must exceed -1/2.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    /// μ, must be non-negative.
    #[arg(long, default_value_t = 0.5)]
    mu: f64,
    /// Expansion degree N.
    #[arg(long, default_value_t = 16)]
    degree: usize,
    /// Half-rule size of the quadrature [default: degree + 32].
    #[arg(long)]
    npoints: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for randomized family members.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here (atomically) instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Common {
    fn params(&self) -> Result<GegenParams, Error> {
        GegenParams::new(self.lambda, self.mu)
    }

    fn npoints(&self) -> usize {
        self.npoints.unwrap_or_else(|| default_npoints(self.degree))
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    /// Polynomial index n.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Comma-separated points in [-1, 1] [default: 21 uniform points].
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    t: Vec<f64>,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum RuleKind {
    /// The symmetric rule for v_{λ,μ} on [-1, 1].
    #[default]
    V,
    /// Gauss–Jacobi for (1-x)^α (1+x)^β.
    Jacobi,
}

#[derive(Args)]
struct QuadArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = RuleKind::V)]
    kind: RuleKind,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    common: Common,
    /// Function spec: basis:<m>, chebyshev:<k>, monomial:<k>, random:d=<x>, abs, exp.
    #[arg(long, default_value = "abs")]
    function: String,
}

#[derive(Args)]
struct OmegaArgs {
    /// Weight sequence: power:a=<a>, const:c=<c> or table:<path> [default: power:a=2σ+1].
    #[arg(long)]
    omega: Option<String>,
    /// Truncation N_max of ω [default: max(1024, degree)].
    #[arg(long)]
    omega_truncation: Option<usize>,
}

impl OmegaArgs {
    fn weight(&self, params: GegenParams, degree: usize) -> Result<WeightSeq, Error> {
        let truncation = self.omega_truncation.unwrap_or(degree.max(1024));
        let spec = self
            .omega
            .clone()
            .unwrap_or_else(|| format!("power:a={}", 2.0 * params.sigma() + 1.0));
        WeightSeq::parse(&spec, truncation)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    omega: OmegaArgs,
    #[arg(long, value_enum)]
    suite: verify::Suite,
    /// p values for the endpoint suite.
    #[arg(long, value_delimiter = ',', default_value = "1.25,1.5,1.75,2")]
    p: Vec<f64>,
    /// Degree ladder `start:end` for the supnorm suite.
    #[arg(long, default_value = "32:512")]
    nladder: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionalArg {
    Paley,
    Hy,
    Hyp,
    All,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    omega: OmegaArgs,
    #[arg(long, value_enum, default_value_t = FunctionalArg::All)]
    functional: FunctionalArg,
    /// Comma-separated p values in (1, 2].
    #[arg(long, value_delimiter = ',', default_value = "1.5")]
    p: Vec<f64>,
    /// Comma-separated s values in [p, p'] for hyp [default: p, midpoint, p'].
    #[arg(long, value_delimiter = ',')]
    s: Vec<f64>,
    /// Function spec, or `canonical` for the standard family.
    #[arg(long, default_value = "canonical")]
    function: String,
}

#[derive(Args)]
struct SupnormArgs {
    #[command(flatten)]
    common: Common,
    /// Degree ladder `start:end`, stepping by √2.
    #[arg(long, default_value = "32:512")]
    nladder: String,
    /// Samples per unit degree.
    #[arg(long, default_value_t = MIN_GRID_FACTOR)]
    grid_factor: usize,
    /// Smallest degree entering the fit.
    #[arg(long, default_value_t = 32)]
    n_min: usize,
}

/// Failures mapped to exit codes: 2 for bad input, 1 otherwise.
enum Failure {
    Usage(String),
    Verification(String),
    Runtime(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Runtime(e.into()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type CmdResult = Result<(), Failure>;

/// Writes `body` to `path` via a temporary file in the same directory, or
/// to stdout.
fn emit(output: Option<&Path>, body: &str) -> CmdResult {
    match output {
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(body.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| Failure::Runtime(e.error.into()))?;
        }
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn parse_ladder(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("ladder must be start:end with 1 <= start <= end, got {spec:?}"));
    let (a, b) = spec.split_once(':').ok_or_else(bad)?;
    let start: usize = a.trim().parse().map_err(|_| bad())?;
    let end: usize = b.trim().parse().map_err(|_| bad())?;
    if start == 0 || end < start {
        return Err(bad());
    }
    Ok(geometric_ladder(start, end))
}

fn run_eval(args: EvalArgs) -> CmdResult {
    let params = args.common.params()?;
    let points = if args.t.is_empty() {
        (0..=20).map(|i| -1.0 + i as f64 / 10.0).collect()
    } else {
        args.t
    };
    let mut rows = Vec::with_capacity(points.len());
    for &t in &points {
        rows.push((t, gegen_eval(params, args.n, t)?, gegen_orthonormal_eval(params, args.n, t)?));
    }
    let body = match args.common.format {
        Format::Csv => {
            let mut out = String::from("t,value,orthonormal\n");
            for (t, c, o) in rows {
                out += &format!("{},{},{}\n", report::fmt_real(t), report::fmt_real(c), report::fmt_real(o));
            }
            out
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(t, c, o)| serde_json::json!({"t": t, "value": c, "orthonormal": o}))
                .collect();
            let doc = serde_json::json!({"lambda": params.lambda(), "mu": params.mu(), "n": args.n, "values": v});
            serde_json::to_string_pretty(&doc).map_err(anyhow::Error::from)? + "\n"
        }
    };
    emit(args.common.output.as_deref(), &body)
}

fn rule_json(nodes: &[f64], weights: &[f64], exact_degree: usize) -> Result<String, Failure> {
    let doc = serde_json::json!({"exact_degree": exact_degree, "nodes": nodes, "weights": weights});
    Ok(serde_json::to_string_pretty(&doc).map_err(anyhow::Error::from)? + "\n")
}

fn run_quad(args: QuadArgs) -> CmdResult {
    use gegen_core::quadrature::Rule;
    let npoints = args.common.npoints();
    let body = match args.kind {
        RuleKind::V => {
            let rule = v_rule(args.common.params()?, npoints)?;
            match args.common.format {
                Format::Csv => report::rule_csv(&rule),
                Format::Json => rule_json(rule.nodes(), rule.weights(), rule.exact_degree())?,
            }
        }
        RuleKind::Jacobi => {
            let rule = gauss_jacobi(args.alpha, args.beta, npoints)?;
            match args.common.format {
                Format::Csv => report::rule_csv(&rule),
                Format::Json => rule_json(rule.nodes(), rule.weights(), rule.exact_degree())?,
            }
        }
    };
    emit(args.common.output.as_deref(), &body)
}

fn run_transform(args: TransformArgs) -> CmdResult {
    let c = &args.common;
    let params = c.params()?;
    let family = parse_function_spec(&args.function, params, c.degree, c.seed)?;
    let [f] = family.as_slice() else {
        return Err(Failure::Usage("transform takes a single function, not a family".into()));
    };
    let rule = v_rule(params, c.npoints())?;
    let expansion = analyze(|t| f.eval(t), params, c.degree, &rule)?;
    let body = match c.format {
        Format::Csv => report::expansion_csv(&expansion),
        Format::Json => report::expansion_json(&expansion),
    };
    emit(c.output.as_deref(), &body)
}

fn run_sweep(args: SweepArgs) -> CmdResult {
    let c = &args.common;
    let params = c.params()?;
    let functionals = match args.functional {
        FunctionalArg::Paley => vec![Functional::Paley],
        FunctionalArg::Hy => vec![Functional::HausdorffYoung],
        FunctionalArg::Hyp => vec![Functional::Hyp],
        FunctionalArg::All => vec![Functional::Paley, Functional::HausdorffYoung, Functional::Hyp],
    };
    let w = args.omega.weight(params, c.degree)?;
    let family = parse_function_spec(&args.function, params, c.degree, c.seed)?;
    let rule = v_rule(params, c.npoints())?;
    let mut rows = Vec::new();
    // Each p gets its own default s grid when none is given.
    for &p in &args.p {
        let s_grid = if args.s.is_empty() {
            let pc = gegen_core::inequalities::conjugate(p);
            vec![p, 0.5 * (p + pc), pc]
        } else {
            args.s.clone()
        };
        rows.push(inequality_sweep(&family, params, &[p], &s_grid, &functionals, &w, c.degree, &rule)?);
    }
    // Restore family-major order across the per-p batches.
    let per_p: Vec<usize> = rows.iter().map(|r| r.len() / family.len().max(1)).collect();
    let mut ordered = Vec::new();
    for i in 0..family.len() {
        for (batch, &k) in rows.iter().zip(&per_p) {
            ordered.extend_from_slice(&batch[i * k..(i + 1) * k]);
        }
    }
    let body = match c.format {
        Format::Csv => report::reports_csv(&ordered),
        Format::Json => report::reports_json(&ordered),
    };
    emit(c.output.as_deref(), &body)
}

fn run_supnorm(args: SupnormArgs) -> CmdResult {
    let c = &args.common;
    let params = GegenParams::with_positive_mu(c.lambda, c.mu)?;
    let ladder = parse_ladder(&args.nladder)?;
    let scan = supnorm_scan(params, &ladder, args.grid_factor)?;
    let fit = exponent_fit(&scan, args.n_min).ok();
    let body = match c.format {
        Format::Csv => report::scan_csv(&scan, fit.as_ref()),
        Format::Json => report::scan_json(&scan, fit.as_ref()),
    };
    emit(c.output.as_deref(), &body)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("GEGEN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("GEGEN_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(e.into()))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Quad(a) => run_quad(a),
        Command::Transform(a) => run_transform(a),
        Command::Verify(a) => {
            let params = a.common.params()?;
            let w = a.omega.weight(params, a.common.degree)?;
            let ladder = parse_ladder(&a.nladder)?;
            let cfg = verify::Config {
                params,
                degree: a.common.degree,
                npoints: a.common.npoints(),
                seed: a.common.seed,
                p_grid: a.p,
                omega: w,
                ladder,
            };
            let records = verify::run(a.suite, &cfg)?;
            let body = match a.common.format {
                Format::Csv => verify::records_csv(&records),
                Format::Json => verify::records_json(&records),
            };
            emit(a.common.output.as_deref(), &body)?;
            match records.iter().find(|r| !r.pass) {
                Some(bad) => Err(Failure::Verification(verify::describe(bad))),
                None => Ok(()),
            }
        }
        Command::Sweep(a) => run_sweep(a),
        Command::Supnorm(a) => run_supnorm(a),
        Command::Plot(a) => {
            let svg = plot::render(&a).map_err(Failure::Usage)?;
            emit(Some(&a.output), &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
