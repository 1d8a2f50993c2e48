//! Static SVG line plots of CSV reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;

#[derive(Args)]
pub struct PlotArgs {
    /// CSV file produced by another subcommand.
    #[arg(long)]
    pub input: PathBuf,
    /// SVG file to write.
    #[arg(long, short)]
    pub output: PathBuf,
    /// Column for the horizontal axis.
    #[arg(long, default_value = "n")]
    pub x: String,
    /// Column(s) for the vertical axis.
    #[arg(long, value_delimiter = ',', default_value = "sup_norm")]
    pub y: Vec<String>,
    /// Logarithmic axes.
    #[arg(long)]
    pub log: bool,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn read_columns(args: &PlotArgs) -> Result<(Vec<f64>, Vec<Vec<f64>>), String> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| format!("{}: {e}", args.input.display()))?;
    // Drop JSON footers appended to scan reports.
    let table: String = text.lines().filter(|l| !l.starts_with('{')).map(|l| format!("{l}\n")).collect();
    let mut reader = csv::Reader::from_reader(table.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    let index = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| format!("column {name:?} not in {:?}", headers.iter().collect::<Vec<_>>()))
    };
    let xi = index(&args.x)?;
    let yi: Vec<usize> = args.y.iter().map(|y| index(y)).collect::<Result<_, _>>()?;
    let mut xs = Vec::new();
    let mut ys = vec![Vec::new(); yi.len()];
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let num = |i: usize| rec[i].trim().parse::<f64>().map_err(|e| format!("{:?}: {e}", &rec[i]));
        xs.push(num(xi)?);
        for (col, &i) in ys.iter_mut().zip(&yi) {
            col.push(num(i)?);
        }
    }
    if xs.is_empty() {
        return Err("no data rows".into());
    }
    Ok((xs, ys))
}

fn bounds(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

pub fn render(args: &PlotArgs) -> Result<String, String> {
    let (xs, ys) = read_columns(args)?;
    let tf = |v: f64| if args.log { v.log10() } else { v };
    if args.log && xs.iter().chain(ys.iter().flatten()).any(|&v| v <= 0.0) {
        return Err("log axes need positive data".into());
    }
    let (x0, x1) = bounds(xs.iter().map(|&v| tf(v)));
    let (y0, y1) = bounds(ys.iter().flatten().map(|&v| tf(v)));
    let px = |x: f64| MARGIN + (tf(x) - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (tf(y) - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(svg, r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#);
    let suffix = if args.log { " (log10)" } else { "" };
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{}{suffix}</text>"#, WIDTH / 2.0, HEIGHT - 16.0, args.x);
    let _ = writeln!(svg, r#"<text x="{l}" y="{}">[{:.3}, {:.3}]</text>"#, b + 16.0, x0, x1);
    let _ = writeln!(svg, r#"<text x="8" y="{}">[{:.3}, {:.3}]{suffix}</text>"#, t - 12.0, y0, y1);
    for (k, (col, name)) in ys.iter().zip(&args.y).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let points: Vec<String> = xs.iter().zip(col).map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, points.join(" "));
        for p in &points {
            let (cx, cy) = p.split_once(',').unwrap();
            let _ = writeln!(svg, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>"#);
        }
        let _ = writeln!(svg, r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#, r - 90.0, t + 16.0 * (k as f64 + 1.0));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
