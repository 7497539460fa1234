//! `bezeval`: evaluate, trace, subdivide, benchmark and flop-check Bézier
//! curves and surfaces.

mod file;
mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bezeval_core::baselines::{bernstein_sum_oracle, decasteljau, rational_decasteljau};
use bezeval_core::bench::{
    count_flops, expected_flops, run_benchmark, Algorithm, BenchConfig, CurveKind, Precision,
};
use bezeval_core::curve::{self, subdivide_left, Method};
use bezeval_core::surface::{
    eval_rect, eval_rect_with_trace, eval_tri, eval_tri_with_trace, rect_sum_oracle, tri_sum_oracle,
};
use bezeval_core::{CurveSpec, EvalError, EvalTrace, Point};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use file::Shape;

#[derive(Parser)]
#[command(name = "bezeval", version, about = "Linear-time Bézier curve and surface evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalAlgorithm {
    New,
    NewPlain,
    Decasteljau,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Polynomial,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Print the point at parameter `t` (curves) or `s t` (surfaces).
    #[command(allow_negative_numbers = true)]
    Eval {
        file: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<f64>,
        #[arg(long, value_enum, default_value = "new")]
        algorithm: EvalAlgorithm,
        #[arg(long)]
        subtraction_free: bool,
        /// Significant digits.
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=17))]
        precision: u32,
    },
    /// Print `k h_k Q_k` for every step of the recurrence.
    #[command(allow_negative_numbers = true)]
    Trace {
        file: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<f64>,
        /// Also draw the construction (planar curves only).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=17))]
        precision: u32,
    },
    /// Print the control points of the part of the curve over `[0, u]`.
    #[command(allow_negative_numbers = true)]
    Subdivide {
        file: PathBuf,
        u: f64,
        /// Write the result as a curve file instead.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(u32).range(1..=17))]
        precision: u32,
    },
    /// Time the new method against de Casteljau on random curves.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = BenchConfig::default().degrees)]
        degrees: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = BenchConfig::default().dims)]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_enum, default_values_t = [Kind::Polynomial, Kind::Rational])]
        kinds: Vec<Kind>,
        #[arg(long, default_value_t = BenchConfig::default().curves_per_cell)]
        curves: usize,
        #[arg(long, default_value_t = BenchConfig::default().eval_points)]
        points: usize,
        #[arg(long, default_value_t = BenchConfig::default().rng_seed)]
        seed: u64,
        /// Time in single precision.
        #[arg(long)]
        single: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare instrumented flop counts with the closed forms.
    Flops {
        #[arg(value_parser = parse_algorithm)]
        algorithm: Algorithm,
        n: usize,
        d: usize,
        #[arg(long, conflicts_with = "polynomial")]
        rational: bool,
        /// The default.
        #[arg(long)]
        polynomial: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: EvalError| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Verify(_) => 4,
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::ParameterOutOfDomain { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// `x` rounded to `digits` significant digits, printed in shortest form.
fn fmt_num(x: f64, digits: u32) -> String {
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1) as usize, x)
        .parse()
        .unwrap_or(x);
    let a = rounded.abs();
    if rounded == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{}", rounded + 0.0)
    } else {
        format!("{rounded:e}")
    }
}

fn fmt_coords(p: &[f64], digits: u32) -> String {
    p.iter().map(|&x| fmt_num(x, digits)).collect::<Vec<_>>().join(" ")
}

fn load(path: &Path) -> CliResult<Shape> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    file::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn curve_param(params: &[f64]) -> CliResult<f64> {
    match params {
        [t] => Ok(*t),
        _ => Err(CliError::Parse("a curve takes one parameter".into())),
    }
}

fn surface_params(params: &[f64]) -> CliResult<(f64, f64)> {
    match params {
        [s, t] => Ok((*s, *t)),
        _ => Err(CliError::Parse("a surface takes two parameters".into())),
    }
}

fn eval_curve(spec: &CurveSpec, t: f64, algorithm: EvalAlgorithm, subtraction_free: bool) -> CliResult<Point> {
    let p = match algorithm {
        EvalAlgorithm::New => curve::eval_with(spec, t, Method::Branched, subtraction_free)?,
        EvalAlgorithm::NewPlain => curve::eval_with(spec, t, Method::Plain, subtraction_free)?,
        EvalAlgorithm::Decasteljau if spec.is_rational() => rational_decasteljau(spec, t)?,
        EvalAlgorithm::Decasteljau => decasteljau(spec, t)?,
        EvalAlgorithm::Oracle => bernstein_sum_oracle(spec, t)?,
    };
    Ok(p)
}

fn cmd_eval(path: &Path, params: &[f64], algorithm: EvalAlgorithm, subtraction_free: bool, digits: u32) -> CliResult<String> {
    let shape = load(path)?;
    let surface_algorithm = |a| match a {
        EvalAlgorithm::New | EvalAlgorithm::Oracle if !subtraction_free => Ok(a),
        _ => Err(CliError::Parse("surfaces support --algorithm new or oracle only".into())),
    };
    let p = match &shape {
        Shape::Curve(c) => eval_curve(c, curve_param(params)?, algorithm, subtraction_free)?,
        Shape::Rect(r) => {
            let (s, t) = surface_params(params)?;
            match surface_algorithm(algorithm)? {
                EvalAlgorithm::Oracle => rect_sum_oracle(r, s, t)?,
                _ => eval_rect(r, s, t)?,
            }
        }
        Shape::Tri(tri) => {
            let (s, t) = surface_params(params)?;
            match surface_algorithm(algorithm)? {
                EvalAlgorithm::Oracle => tri_sum_oracle(tri, s, t)?,
                _ => eval_tri(tri, s, t)?,
            }
        }
    };
    Ok(format!("{}\n", fmt_coords(p.coords(), digits)))
}

fn trace_lines(trace: &EvalTrace<f64>, digits: u32) -> String {
    let mut s = String::new();
    for (k, (h, q)) in trace.h.iter().zip(&trace.q).enumerate() {
        s.push_str(&format!("{k} {} {}\n", fmt_num(*h, digits), fmt_coords(q.coords(), digits)));
    }
    s
}

fn cmd_trace(path: &Path, params: &[f64], svg_path: Option<&Path>, digits: u32) -> CliResult<String> {
    let shape = load(path)?;
    let trace = match &shape {
        Shape::Curve(c) => {
            let t = curve_param(params)?;
            if svg_path.is_some() && c.dim() != 2 {
                return Err(CliError::Domain(format!("--svg needs a planar curve, got d = {}", c.dim())));
            }
            let (_, trace) = curve::eval_with_trace(c, t)?;
            if let Some(out) = svg_path {
                write_out(out, &svg::render(c, t, &trace))?;
            }
            trace
        }
        Shape::Rect(_) | Shape::Tri(_) if svg_path.is_some() => {
            return Err(CliError::Domain("--svg needs a planar curve".into()));
        }
        Shape::Rect(r) => {
            let (s, t) = surface_params(params)?;
            eval_rect_with_trace(r, s, t)?.1
        }
        Shape::Tri(tri) => {
            let (s, t) = surface_params(params)?;
            eval_tri_with_trace(tri, s, t)?.1
        }
    };
    Ok(trace_lines(&trace, digits))
}

fn cmd_subdivide(path: &Path, u: f64, out: Option<&Path>, digits: u32) -> CliResult<String> {
    let Shape::Curve(spec) = load(path)? else {
        return Err(CliError::Parse("subdivide takes a curve file".into()));
    };
    let left = subdivide_left(&spec, u)?;
    if let Some(out) = out {
        write_out(out, &file::write(&Shape::Curve(left)))?;
        return Ok(String::new());
    }
    let pts: Vec<String> = left
        .control_points()
        .iter()
        .map(|p| {
            let c: Vec<String> = p.coords().iter().map(|&x| fmt_num(x, digits)).collect();
            format!("({})", c.join(","))
        })
        .collect();
    Ok(format!("{}\n", pts.join(" ")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    degrees: Vec<usize>,
    dims: Vec<usize>,
    kinds: &[Kind],
    curves: usize,
    points: usize,
    seed: u64,
    single: bool,
    format: Format,
    out: Option<&Path>,
) -> CliResult<String> {
    let config = BenchConfig {
        degrees,
        dims,
        kinds: kinds
            .iter()
            .map(|k| match k {
                Kind::Polynomial => CurveKind::Polynomial,
                Kind::Rational => CurveKind::Rational,
            })
            .collect(),
        curves_per_cell: curves,
        eval_points: points,
        rng_seed: seed,
        precision: if single { Precision::Single } else { Precision::Double },
        ..BenchConfig::default()
    };
    let report = run_benchmark(&config).map_err(|e| CliError::Parse(e.to_string()))?;
    for f in &report.failures {
        eprintln!("cell n={} d={} rational={} failed: {}", f.n, f.d, f.rational, f.message);
    }
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Md => report.to_markdown(),
    };
    match out {
        Some(p) => write_out(p, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

fn random_curve(n: usize, d: usize, rational: bool, rng: &mut ChaCha8Rng) -> CliResult<CurveSpec> {
    let points = (0..(n + 1) * d).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let weights = rational.then(|| (0..=n).map(|_| rng.gen_range(0.01..=1.0)).collect());
    Ok(CurveSpec::new(d, points, weights)?)
}

fn cmd_flops(algorithm: Algorithm, n: usize, d: usize, rational: bool, seed: u64) -> CliResult<String> {
    let algorithm = match (algorithm, rational) {
        (Algorithm::DeCasteljau, true) => Algorithm::RationalDeCasteljau,
        (Algorithm::RationalDeCasteljau, false) => Algorithm::DeCasteljau,
        (a, _) => a,
    };
    let expected = expected_flops(algorithm, n, d, rational)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_curve(n, d, rational, &mut rng)?;
    let t = loop {
        let t: f64 = rng.gen();
        if t > 0.0 {
            break t;
        }
    };
    let measured = count_flops(algorithm, &spec, t)?;
    let line = format!("expected {} measured {}", expected.total, measured.total);
    if measured.counts() == expected.counts() {
        Ok(format!("{line} OK\n"))
    } else {
        Err(CliError::Verify(format!(
            "{line} MISMATCH (add/sub {} vs {}, mult {} vs {}, div {} vs {})",
            expected.adds_subs, measured.adds_subs, expected.mults, measured.mults, expected.divs, measured.divs
        )))
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Eval { file, params, algorithm, subtraction_free, precision } => {
            cmd_eval(&file, &params, algorithm, subtraction_free, precision)
        }
        Command::Trace { file, params, svg, precision } => cmd_trace(&file, &params, svg.as_deref(), precision),
        Command::Subdivide { file, u, out, precision } => cmd_subdivide(&file, u, out.as_deref(), precision),
        Command::Bench { degrees, dims, kinds, curves, points, seed, single, format, out } => {
            cmd_bench(degrees, dims, &kinds, curves, points, seed, single, format, out.as_deref())
        }
        Command::Flops { algorithm, n, d, rational, polynomial: _, seed } => cmd_flops(algorithm, n, d, rational, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("bezeval: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
