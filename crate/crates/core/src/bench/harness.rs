use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines::{decasteljau_into, rational_decasteljau_into, Scratch};
use crate::bench::flops::Algorithm;
use crate::curve::{eval_branched_into, CurveSpec};
use crate::error::{EvalError, Result};
use crate::scalar::Scalar;

/// Scalar type used inside the timed region.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    Double,
    Single,
}

/// Polynomial or rational cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveKind {
    Polynomial,
    Rational,
}

impl CurveKind {
    pub fn is_rational(self) -> bool {
        self == CurveKind::Rational
    }

    fn baseline(self) -> Algorithm {
        match self {
            CurveKind::Polynomial => Algorithm::DeCasteljau,
            CurveKind::Rational => Algorithm::RationalDeCasteljau,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub degrees: Vec<usize>,
    pub dims: Vec<usize>,
    pub kinds: Vec<CurveKind>,
    pub curves_per_cell: usize,
    /// Number of parameters `t_i = i/(count-1)`; a single point means `t = 0.5`.
    pub eval_points: usize,
    pub rng_seed: u64,
    pub point_range: (f64, f64),
    pub weight_range: (f64, f64),
    pub precision: Precision,
}

impl Default for BenchConfig {
    /// Degrees 1..=6, 10, 15, 20 in two and three dimensions, 1000 curves per cell.
    fn default() -> Self {
        BenchConfig {
            degrees: vec![1, 2, 3, 4, 5, 6, 10, 15, 20],
            dims: vec![2, 3],
            kinds: vec![CurveKind::Polynomial, CurveKind::Rational],
            curves_per_cell: 1000,
            eval_points: 501,
            rng_seed: 2020,
            point_range: (-1.0, 1.0),
            weight_range: (0.01, 1.0),
            precision: Precision::Double,
        }
    }
}

impl BenchConfig {
    /// Full scale: 10000 curves per cell.
    pub fn full_scale() -> Self {
        BenchConfig {
            curves_per_cell: 10_000,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.curves_per_cell == 0 {
            return Err(EvalError::Empty);
        }
        if self.eval_points == 0 || self.degrees.is_empty() || self.dims.is_empty() || self.kinds.is_empty() {
            return Err(EvalError::Empty);
        }
        if self.dims.contains(&0) {
            return Err(EvalError::ZeroDimension);
        }
        let (plo, phi) = self.point_range;
        if !(plo.is_finite() && phi.is_finite() && plo <= phi) {
            return Err(EvalError::ParameterOutOfDomain { value: plo, domain: "finite point range lo <= hi" });
        }
        let (wlo, whi) = self.weight_range;
        if !(wlo > 0.0 && whi.is_finite() && wlo <= whi) {
            return Err(EvalError::ParameterOutOfDomain { value: wlo, domain: "positive weight range lo <= hi" });
        }
        Ok(())
    }

    /// The parameter grid of every cell.
    pub fn parameters(&self) -> Vec<f64> {
        match self.eval_points {
            0 => Vec::new(),
            1 => vec![0.5],
            m => (0..m).map(|i| i as f64 / (m - 1) as f64).collect(),
        }
    }

    fn cell_seed(&self, n: usize, d: usize, kind: CurveKind) -> u64 {
        self.rng_seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ ((n as u64) << 24)
            ^ ((d as u64) << 8)
            ^ kind.is_rational() as u64
    }
}

/// One timed (algorithm, n, d, kind) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub rational: bool,
    pub curves: usize,
    pub evals: usize,
    pub total_seconds: f64,
    pub mean_seconds: f64,
    /// Baseline time over this row's time; 1 for the baseline itself.
    pub ratio_vs_decasteljau: f64,
    /// Sum of every evaluated coordinate; independent of timing.
    pub checksum: f64,
}

/// A cell that could not be run.
#[derive(Clone, Debug, PartialEq)]
pub struct CellFailure {
    pub n: usize,
    pub d: usize,
    pub rational: bool,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<CellFailure>,
}

pub const CSV_HEADER: &str = "algorithm,n,d,rational,curves,evals,total_seconds,ratio_vs_decasteljau";

impl BenchReport {
    pub fn row(&self, algorithm: Algorithm, n: usize, d: usize, rational: bool) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.n == n && r.d == d && r.rational == rational)
    }

    /// Baseline time over new-method time for one cell.
    pub fn speedup(&self, n: usize, d: usize, rational: bool) -> Option<f64> {
        self.row(Algorithm::NewBranched, n, d, rational).map(|r| r.ratio_vs_decasteljau)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{:.6},{:.4}",
                r.algorithm, r.n, r.d, r.rational, r.curves, r.evals, r.total_seconds, r.ratio_vs_decasteljau
            );
        }
        s
    }

    /// One line per (n, d) with new/baseline seconds for each curve kind.
    pub fn to_markdown(&self) -> String {
        let mut shapes: Vec<(usize, usize)> = self.rows.iter().map(|r| (r.n, r.d)).collect();
        shapes.sort_unstable();
        shapes.dedup();
        let header = [
            "n",
            "d",
            "new (poly)",
            "de Casteljau (poly)",
            "ratio (poly)",
            "new (rational)",
            "de Casteljau (rational)",
            "ratio (rational)",
        ];
        let secs = |a, n, d, rat| self.row(a, n, d, rat).map_or("-".to_string(), |r| format!("{:.3}", r.total_seconds));
        let ratio = |n, d, rat| self.speedup(n, d, rat).map_or("-".to_string(), |x| format!("{x:.2}"));
        let body: Vec<Vec<String>> = shapes
            .iter()
            .map(|&(n, d)| {
                vec![
                    n.to_string(),
                    d.to_string(),
                    secs(Algorithm::NewBranched, n, d, false),
                    secs(Algorithm::DeCasteljau, n, d, false),
                    ratio(n, d, false),
                    secs(Algorithm::NewBranched, n, d, true),
                    secs(Algorithm::RationalDeCasteljau, n, d, true),
                    ratio(n, d, true),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| body.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
            .collect();
        let mut s = String::new();
        let line = |s: &mut String, cells: &[&str]| {
            s.push('|');
            for (c, w) in cells.iter().zip(&widths) {
                let _ = write!(s, " {c:>w$} |");
            }
            s.push('\n');
        };
        line(&mut s, &header);
        s.push('|');
        for w in &widths {
            let _ = write!(s, "{}:|", "-".repeat(w + 1));
        }
        s.push('\n');
        for r in &body {
            let cells: Vec<&str> = r.iter().map(String::as_str).collect();
            line(&mut s, &cells);
        }
        for f in &self.failures {
            let _ = writeln!(s, "\nfailed: n={} d={} rational={}: {}", f.n, f.d, f.rational, f.message);
        }
        s
    }
}

fn random_curves(
    config: &BenchConfig,
    n: usize,
    d: usize,
    kind: CurveKind,
) -> std::result::Result<Vec<CurveSpec<f64>>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.cell_seed(n, d, kind));
    let (plo, phi) = config.point_range;
    let (wlo, whi) = config.weight_range;
    let mut curves = Vec::new();
    curves
        .try_reserve_exact(config.curves_per_cell)
        .map_err(|e| format!("cannot allocate {} curves: {e}", config.curves_per_cell))?;
    for _ in 0..config.curves_per_cell {
        let len = (n + 1).checked_mul(d).ok_or("curve size overflows")?;
        let mut points = Vec::new();
        points.try_reserve_exact(len).map_err(|e| format!("cannot allocate control points: {e}"))?;
        points.extend((0..len).map(|_| rng.gen_range(plo..=phi)));
        let weights = kind.is_rational().then(|| (0..=n).map(|_| rng.gen_range(wlo..=whi)).collect());
        curves.push(CurveSpec::new(d, points, weights).map_err(|e| e.to_string())?);
    }
    Ok(curves)
}

fn sweep<S: Scalar>(algorithm: Algorithm, curves: &[CurveSpec<S>], ts: &[S], out: &mut [S], scratch: &mut Scratch<S>) -> f64 {
    let mut checksum = 0.0;
    for c in curves {
        for &t in ts {
            let res = match algorithm {
                Algorithm::DeCasteljau => decasteljau_into(c, t, scratch, out),
                Algorithm::RationalDeCasteljau => rational_decasteljau_into(c, t, scratch, out),
                _ => eval_branched_into(c, t, out),
            };
            res.expect("benchmark inputs are validated");
            black_box(&mut *out);
            checksum += out.iter().map(|x| x.to_f64()).sum::<f64>();
        }
    }
    checksum
}

fn time_algorithm<S: Scalar>(algorithm: Algorithm, curves: &[CurveSpec<S>], ts: &[S], d: usize) -> (f64, f64) {
    let mut out = vec![S::zero(); d];
    let mut scratch = Scratch::new();
    black_box(sweep(algorithm, curves, ts, &mut out, &mut scratch));
    let start = Instant::now();
    let checksum = sweep(algorithm, black_box(curves), ts, &mut out, &mut scratch);
    (start.elapsed().as_secs_f64(), black_box(checksum))
}

fn run_cell<S: Scalar>(config: &BenchConfig, curves: &[CurveSpec<S>], n: usize, d: usize, kind: CurveKind) -> Vec<BenchRow> {
    let ts: Vec<S> = config.parameters().into_iter().map(S::from_f64).collect();
    let evals = curves.len() * ts.len();
    let baseline = kind.baseline();
    let timed: Vec<(Algorithm, f64, f64)> = [Algorithm::NewBranched, baseline]
        .into_iter()
        .map(|a| {
            let (secs, sum) = time_algorithm(a, curves, &ts, d);
            (a, secs, sum)
        })
        .collect();
    let base_secs = timed[1].1;
    timed
        .into_iter()
        .map(|(algorithm, secs, checksum)| BenchRow {
            algorithm,
            n,
            d,
            rational: kind.is_rational(),
            curves: curves.len(),
            evals,
            total_seconds: secs,
            mean_seconds: if evals == 0 { 0.0 } else { secs / evals as f64 },
            ratio_vs_decasteljau: if algorithm == baseline {
                1.0
            } else if secs > 0.0 {
                base_secs / secs
            } else {
                f64::INFINITY
            },
            checksum,
        })
        .collect()
}

/// Times the branched new method against the matching de Casteljau baseline
/// on every (n, d, kind) cell of the configuration.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let mut report = BenchReport::default();
    for &kind in &config.kinds {
        for &d in &config.dims {
            for &n in &config.degrees {
                let curves = match random_curves(config, n, d, kind) {
                    Ok(c) => c,
                    Err(message) => {
                        report.failures.push(CellFailure { n, d, rational: kind.is_rational(), message });
                        continue;
                    }
                };
                let rows = match config.precision {
                    Precision::Double => run_cell(config, &curves, n, d, kind),
                    Precision::Single => {
                        let single: Vec<CurveSpec<f32>> = curves.iter().map(|c| c.map(|x| x as f32)).collect();
                        drop(curves);
                        run_cell(config, &single, n, d, kind)
                    }
                };
                report.rows.extend(rows);
            }
        }
    }
    Ok(report)
}
