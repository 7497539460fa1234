use std::fmt;
use std::str::FromStr;

use crate::baselines::{decasteljau_into, rational_decasteljau_into, Scratch};
use crate::bench::counter::{measure, Counted, FlopTally};
use crate::curve::{eval_batch, eval_with_into, CurveSpec, Method};
use crate::error::{EvalError, Result};

/// The curve evaluators whose costs are tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    NewBranched,
    NewPlain,
    DeCasteljau,
    RationalDeCasteljau,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::NewBranched,
        Algorithm::NewPlain,
        Algorithm::DeCasteljau,
        Algorithm::RationalDeCasteljau,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::NewBranched => "new_branched",
            Algorithm::NewPlain => "new_plain",
            Algorithm::DeCasteljau => "decasteljau",
            Algorithm::RationalDeCasteljau => "rational_decasteljau",
        }
    }

    /// Whether the algorithm is defined for rational (`true`) or polynomial
    /// (`false`) curves; `None` if it handles both.
    pub fn curve_kind(self) -> Option<bool> {
        match self {
            Algorithm::NewBranched | Algorithm::NewPlain => None,
            Algorithm::DeCasteljau => Some(false),
            Algorithm::RationalDeCasteljau => Some(true),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "new" | "new_branched" => Ok(Algorithm::NewBranched),
            "new_plain" => Ok(Algorithm::NewPlain),
            "decasteljau" | "de_casteljau" => Ok(Algorithm::DeCasteljau),
            "rational_decasteljau" | "rational_de_casteljau" => Ok(Algorithm::RationalDeCasteljau),
            _ => Err(EvalError::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Flop counts of one evaluation, by operation class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlopReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub rational: bool,
    pub adds_subs: u64,
    pub mults: u64,
    pub divs: u64,
    pub total: u64,
}

impl FlopReport {
    fn new(algorithm: Algorithm, n: usize, d: usize, rational: bool, adds_subs: u64, mults: u64, divs: u64) -> Self {
        FlopReport {
            algorithm,
            n,
            d,
            rational,
            adds_subs,
            mults,
            divs,
            total: adds_subs + mults + divs,
        }
    }

    fn from_tally(algorithm: Algorithm, n: usize, d: usize, rational: bool, t: FlopTally) -> Self {
        Self::new(algorithm, n, d, rational, t.adds_subs(), t.mults, t.divs)
    }

    /// Same counts, ignoring the shape labels.
    pub fn counts(&self) -> (u64, u64, u64, u64) {
        (self.adds_subs, self.mults, self.divs, self.total)
    }
}

fn check_kind(algorithm: Algorithm, rational: bool) -> Result<()> {
    match algorithm.curve_kind() {
        Some(false) if rational => Err(EvalError::WeightedInput),
        Some(true) if !rational => Err(EvalError::MissingWeights),
        _ => Ok(()),
    }
}

/// Closed-form flop counts for one evaluation of a degree-`n` curve in `E^d`.
///
/// | algorithm | add/sub | mult | div | total |
/// |---|---|---|---|---|
/// | new, branched | `(d+2)n+1` | `2(d+1)n` / `2(d+2)n` | `n+1` | `(3d+5)n+2` / `(3d+7)n+2` |
/// | new, plain | `(d+2)n+1` | `(2d+3)n` / `(2d+5)n` | `n` | `(3d+6)n+1` / `(3d+8)n+1` |
/// | de Casteljau | `dn(n+1)/2+1` | `dn(n+1)` | `0` | `3dn(n+1)/2+1` |
/// | rational de Casteljau | `(d+2)n(n+1)/2+1` | `(d+1)n(n+1)` | `n(n+1)/2` | `(3d+5)n(n+1)/2+1` |
///
/// (polynomial / rational where they differ).
pub fn expected_flops(algorithm: Algorithm, n: usize, d: usize, rational: bool) -> Result<FlopReport> {
    if d == 0 {
        return Err(EvalError::ZeroDimension);
    }
    check_kind(algorithm, rational)?;
    let (n64, d64) = (n as u64, d as u64);
    let tri = n64 * (n64 + 1) / 2;
    let (adds_subs, mults, divs) = match (algorithm, rational) {
        (Algorithm::NewBranched, false) => ((d64 + 2) * n64 + 1, 2 * (d64 + 1) * n64, n64 + 1),
        (Algorithm::NewBranched, true) => ((d64 + 2) * n64 + 1, 2 * (d64 + 2) * n64, n64 + 1),
        (Algorithm::NewPlain, false) => ((d64 + 2) * n64 + 1, (2 * d64 + 3) * n64, n64),
        (Algorithm::NewPlain, true) => ((d64 + 2) * n64 + 1, (2 * d64 + 5) * n64, n64),
        (Algorithm::DeCasteljau, _) => (d64 * tri + 1, 2 * d64 * tri, 0),
        (Algorithm::RationalDeCasteljau, _) => ((d64 + 2) * tri + 1, 2 * (d64 + 1) * tri, tri),
    };
    Ok(FlopReport::new(algorithm, n, d, rational, adds_subs, mults, divs))
}

/// Closed form for [`eval_batch`] over `m` polynomial curves: `(3dM+5)n+2`.
pub fn expected_batch_flops(n: usize, d: usize, m: usize) -> (u64, u64, u64, u64) {
    let (n, d, m) = (n as u64, d as u64, m as u64);
    let adds_subs = (d * m + 2) * n + 1;
    let mults = 2 * (d * m + 1) * n;
    let divs = n + 1;
    (adds_subs, mults, divs, adds_subs + mults + divs)
}

/// Runs one evaluation through the instrumented scalar and reports the
/// observed counts. The evaluators are the same generic code paths used for
/// timing, instantiated at [`Counted`].
pub fn count_flops(algorithm: Algorithm, spec: &CurveSpec<f64>, t: f64) -> Result<FlopReport> {
    let rational = spec.is_rational();
    check_kind(algorithm, rational)?;
    let lifted = spec.map(Counted);
    let t = Counted(t);
    let mut out = vec![Counted(0.0); spec.dim()];
    let mut scratch = Scratch::new();
    let (res, tally) = measure(|| match algorithm {
        Algorithm::NewBranched => eval_with_into(&lifted, t, Method::Branched, false, &mut out),
        Algorithm::NewPlain => eval_with_into(&lifted, t, Method::Plain, false, &mut out),
        Algorithm::DeCasteljau => decasteljau_into(&lifted, t, &mut scratch, &mut out),
        Algorithm::RationalDeCasteljau => rational_decasteljau_into(&lifted, t, &mut scratch, &mut out),
    });
    res?;
    Ok(FlopReport::from_tally(algorithm, spec.degree(), spec.dim(), rational, tally))
}

/// Observed `(add/sub, mult, div, total)` of one [`eval_batch`] call.
pub fn count_batch_flops(specs: &[CurveSpec<f64>], t: f64) -> Result<(u64, u64, u64, u64)> {
    let lifted: Vec<CurveSpec<Counted>> = specs.iter().map(|s| s.map(Counted)).collect();
    let (res, tally) = measure(|| eval_batch(&lifted, Counted(t)));
    res?;
    Ok((tally.adds_subs(), tally.mults, tally.divs, tally.total()))
}
