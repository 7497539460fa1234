//! Single-pass evaluation of a rational parametric object
//!
//! ```text
//! S_N(t) = sum_k w_k b_k(t) W_k / sum_k w_k b_k(t)
//! ```
//!
//! over any nonnegative partition-of-unity basis `b_k`. The running point
//! `Q_k` is always a convex combination of `Q_{k-1}` and `W_k`, with blending
//! factor `h_k = (1 + rho_k / h_{k-1})^{-1}` driven only by the consecutive
//! ratios `rho_k = w_{k-1} b_{k-1}(t) / (w_k b_k(t))`.
//!
//! Zero basis values are rejected here. Basis-specific callers (the Bernstein
//! curve and surface evaluators) resolve them before reaching this engine.

use crate::error::{EvalError, Result};
use crate::point::Point;
use crate::scalar::{positive_finite, Scalar};

/// The weighted basis values at one fixed parameter, either as absolute
/// values `w_k b_k(t)` or as the consecutive ratios `rho_1..rho_N`.
#[derive(Clone, Copy, Debug)]
pub enum WeightedBasisStream<'a, S> {
    /// `N + 1` values `w_k b_k(t)`.
    Values(&'a [S]),
    /// `N` ratios; entry `k - 1` holds `rho_k`.
    Ratios(&'a [S]),
}

impl<'a, S: Scalar> WeightedBasisStream<'a, S> {
    /// Number of basis terms, `N + 1`.
    pub fn len(&self) -> usize {
        match self {
            WeightedBasisStream::Values(v) => v.len(),
            WeightedBasisStream::Ratios(r) => r.len() + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        let vals = match self {
            WeightedBasisStream::Values(v) => *v,
            WeightedBasisStream::Ratios(r) => *r,
        };
        if let WeightedBasisStream::Values(v) = self {
            if v.is_empty() {
                return Err(EvalError::Empty);
            }
        }
        match vals.iter().position(|&x| !positive_finite(x)) {
            Some(index) => Err(EvalError::NonPositiveStream { index }),
            None => Ok(()),
        }
    }

    /// `rho_k` for `1 <= k <= N`.
    #[inline]
    pub fn ratio(&self, k: usize) -> S {
        match self {
            WeightedBasisStream::Values(v) => v[k - 1] / v[k],
            WeightedBasisStream::Ratios(r) => r[k - 1],
        }
    }

    /// The normalized values `w_k b_k / sum_j w_j b_j`.
    pub fn normalized(&self) -> Vec<S> {
        let raw: Vec<S> = match self {
            WeightedBasisStream::Values(v) => v.to_vec(),
            WeightedBasisStream::Ratios(r) => {
                let mut out = Vec::with_capacity(r.len() + 1);
                let mut cur = S::one();
                out.push(cur);
                for &rho in r.iter() {
                    cur = cur / rho;
                    out.push(cur);
                }
                out
            }
        };
        let total = raw.iter().fold(S::zero(), |acc, &x| acc + x);
        raw.into_iter().map(|x| x / total).collect()
    }
}

/// Blending factors `h_k`, the complements `1 - h_k` actually used, and the
/// running points `Q_k` of one evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalTrace<S = f64> {
    pub h: Vec<S>,
    pub complement: Vec<S>,
    pub q: Vec<Point<S>>,
}

impl<S: Scalar> EvalTrace<S> {
    pub fn with_capacity(len: usize) -> Self {
        EvalTrace {
            h: Vec::with_capacity(len),
            complement: Vec::with_capacity(len),
            q: Vec::with_capacity(len),
        }
    }

    /// Builds a trace from factors and points, taking `1 - h_k` as the
    /// complement.
    pub fn from_parts(h: Vec<S>, q: Vec<Point<S>>) -> Self {
        let complement = h.iter().map(|&x| S::one() - x).collect();
        EvalTrace { h, complement, q }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn last_point(&self) -> Option<&Point<S>> {
        self.q.last()
    }

    fn check(&self) -> Result<()> {
        if self.h.is_empty() {
            return Err(EvalError::MalformedTrace("empty"));
        }
        if self.h.len() != self.q.len() || self.h.len() != self.complement.len() {
            return Err(EvalError::MalformedTrace("length mismatch"));
        }
        Ok(())
    }
}

/// Observer of the blending steps. The no-op implementation keeps the fast
/// path at O(1) auxiliary memory.
pub(crate) trait Tracer<S> {
    fn record(&mut self, h: S, complement: S, q: &[S]);
}

pub(crate) struct NoTrace;

impl<S> Tracer<S> for NoTrace {
    #[inline(always)]
    fn record(&mut self, _: S, _: S, _: &[S]) {}
}

impl<S: Scalar> Tracer<S> for EvalTrace<S> {
    fn record(&mut self, h: S, complement: S, q: &[S]) {
        self.h.push(h);
        self.complement.push(complement);
        self.q.push(Point::from_slice(q));
    }
}

/// `q <- c q + h w`, the single point-blending step shared by every
/// evaluator in the crate.
#[inline(always)]
pub(crate) fn blend<S: Scalar>(q: &mut [S], complement: S, h: S, w: &[S]) {
    for (qi, &wi) in q.iter_mut().zip(w) {
        *qi = complement * *qi + h * wi;
    }
}

fn check_points<S: Scalar>(points: &[Point<S>]) -> Result<usize> {
    let first = points.first().ok_or(EvalError::Empty)?;
    let d = first.dim();
    if d == 0 {
        return Err(EvalError::ZeroDimension);
    }
    for (index, p) in points.iter().enumerate() {
        if p.dim() != d {
            return Err(EvalError::DimensionMismatch {
                index,
                expected: d,
                found: p.dim(),
            });
        }
    }
    Ok(d)
}

fn run<S: Scalar, T: Tracer<S>, const SUBTRACTION_FREE: bool>(
    stream: WeightedBasisStream<'_, S>,
    points: &[Point<S>],
    tracer: &mut T,
) -> Result<Point<S>> {
    check_points(points)?;
    if stream.len() != points.len() {
        return Err(EvalError::LengthMismatch {
            what: "basis values",
            expected: points.len(),
            found: stream.len(),
        });
    }
    stream.validate()?;

    let mut q = points[0].coords().to_vec();
    let mut h = S::one();
    tracer.record(h, S::zero(), &q);
    for (k, w) in points.iter().enumerate().skip(1) {
        let rho = stream.ratio(k);
        let h_prev = h;
        let a = rho / h_prev;
        let complement;
        if SUBTRACTION_FREE {
            h = S::one() / (S::one() + a);
            complement = if h == S::zero() { S::one() } else { (h / h_prev) * rho };
        } else if a > S::one() {
            h = S::one() / (S::one() + a);
            complement = S::one() - h;
        } else {
            // h >= 1/2: divide for the small complement instead
            complement = a / (S::one() + a);
            h = S::one() - complement;
        }
        blend(&mut q, complement, h, w.coords());
        tracer.record(h, complement, &q);
    }
    Ok(Point::new(q))
}

/// Evaluates the object and returns `Q_N` together with the full trace.
pub fn gen_eval<S: Scalar>(
    stream: WeightedBasisStream<'_, S>,
    points: &[Point<S>],
) -> Result<(Point<S>, EvalTrace<S>)> {
    let mut trace = EvalTrace::with_capacity(points.len());
    let p = run::<S, _, false>(stream, points, &mut trace)?;
    Ok((p, trace))
}

/// Trace-free variant of [`gen_eval`].
pub fn gen_eval_point<S: Scalar>(
    stream: WeightedBasisStream<'_, S>,
    points: &[Point<S>],
) -> Result<Point<S>> {
    run::<S, _, false>(stream, points, &mut NoTrace)
}

/// Like [`gen_eval`], but `1 - h_k` is formed as `(h_k / h_{k-1}) rho_k`,
/// never by subtraction, so every complement is nonnegative by construction.
pub fn gen_eval_subtraction_free<S: Scalar>(
    stream: WeightedBasisStream<'_, S>,
    points: &[Point<S>],
) -> Result<(Point<S>, EvalTrace<S>)> {
    let mut trace = EvalTrace::with_capacity(points.len());
    let p = run::<S, _, true>(stream, points, &mut trace)?;
    Ok((p, trace))
}

/// Unrolls the recurrence: `c_j = h_j * prod_{i > j} (1 - h_i)`, so that
/// `Q_N = sum_j c_j W_j` with `c_j >= 0` and `sum_j c_j = 1`.
pub fn barycentric_certificate<S: Scalar>(trace: &EvalTrace<S>) -> Result<Vec<S>> {
    trace.check()?;
    let n = trace.len();
    let mut coeffs = vec![S::zero(); n];
    let mut tail = S::one();
    for j in (0..n).rev() {
        coeffs[j] = trace.h[j] * tail;
        tail = tail * trace.complement[j];
    }
    Ok(coeffs)
}

/// Coefficients expressing `S_N(u)` as a combination of the trace points
/// `Q_0..Q_N` computed at `t`.
///
/// The coefficient of `Q_N` is `w_N b_N(u) / (h_N D(u))`; for `k < N` it is
/// `w_k b_k(u) / (h_k D(u)) * (1 - b_k(t) b_{k+1}(u) / (b_{k+1}(t) b_k(u)))`,
/// where `D(u) = sum_k w_k b_k(u)`. They always sum to one, and they are all
/// nonnegative when `b_k(t) / b_{k+1}(t) <= b_k(u) / b_{k+1}(u)` for every `k`.
pub fn hull_window_coefficients<S: Scalar>(
    trace: &EvalTrace<S>,
    stream_t: WeightedBasisStream<'_, S>,
    stream_u: WeightedBasisStream<'_, S>,
) -> Result<Vec<S>> {
    trace.check()?;
    let len = trace.len();
    for s in [&stream_t, &stream_u] {
        if s.len() != len {
            return Err(EvalError::LengthMismatch {
                what: "basis values",
                expected: len,
                found: s.len(),
            });
        }
        s.validate()?;
    }
    if let Some(index) = trace.h.iter().position(|&h| h == S::zero()) {
        return Err(EvalError::ZeroBlend { index });
    }

    let weights_u = stream_u.normalized();
    let mut coeffs = Vec::with_capacity(len);
    for k in 0..len {
        let base = weights_u[k] / trace.h[k];
        if k + 1 == len {
            coeffs.push(base);
            continue;
        }
        // written so that identical streams give exactly 1
        let cross = match (stream_t, stream_u) {
            (WeightedBasisStream::Values(vt), WeightedBasisStream::Values(vu)) => {
                (vt[k] * vu[k + 1]) / (vt[k + 1] * vu[k])
            }
            _ => stream_t.ratio(k + 1) / stream_u.ratio(k + 1),
        };
        coeffs.push(base * (S::one() - cross));
    }
    Ok(coeffs)
}
