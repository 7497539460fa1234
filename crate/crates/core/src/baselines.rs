//! Reference evaluators.
//!
//! The de Casteljau routines follow the classic in-place triangular scheme
//! with one row of `n + 1` working points, in exactly this loop order:
//!
//! ```text
//! for k in 1..=n { for i in 0..=n-k { Q_i <- (1-t) Q_i + t Q_{i+1} } }
//! ```
//!
//! costing `3dn(n+1)/2 + 1` flops, or `(3d+5)n(n+1)/2 + 1` for the rational
//! variant, which also blends a row of weights.
//!
//! [`bernstein_sum_oracle`] evaluates the defining Bernstein sum literally in
//! double-double arithmetic and rounds once at the end. It is the accuracy
//! reference for everything else in the crate.

use crate::curve::{BernsteinParam, CurveSpec};
use crate::dd::DoubleDouble;
use crate::error::{EvalError, Result};
use crate::point::Point;
use crate::scalar::Scalar;

/// Working storage for the de Casteljau evaluators, reusable across calls.
#[derive(Clone, Debug, Default)]
pub struct Scratch<S> {
    points: Vec<S>,
    weights: Vec<S>,
}

impl<S: Scalar> Scratch<S> {
    pub fn new() -> Self {
        Scratch {
            points: Vec::new(),
            weights: Vec::new(),
        }
    }
}

pub fn decasteljau<S: Scalar>(spec: &CurveSpec<S>, t: S) -> Result<Point<S>> {
    let mut out = vec![S::zero(); spec.dim()];
    decasteljau_into(spec, t, &mut Scratch::new(), &mut out)?;
    Ok(Point::new(out))
}

pub fn decasteljau_into<S: Scalar>(
    spec: &CurveSpec<S>,
    t: S,
    scratch: &mut Scratch<S>,
    out: &mut [S],
) -> Result<()> {
    if spec.is_rational() {
        return Err(EvalError::WeightedInput);
    }
    let t = BernsteinParam::new(t)?.get();
    check_out(spec, out)?;
    let n = spec.degree();
    let d = spec.dim();
    let t1 = S::one() - t;
    let q = &mut scratch.points;
    q.clear();
    q.extend_from_slice(spec.flat_points());
    for k in 1..=n {
        for i in 0..=n - k {
            let (lo, hi) = q.split_at_mut((i + 1) * d);
            let qi = &mut lo[i * d..];
            for (a, &b) in qi.iter_mut().zip(&hi[..d]) {
                *a = t1 * *a + t * b;
            }
        }
    }
    out.copy_from_slice(&q[..d]);
    Ok(())
}

pub fn rational_decasteljau<S: Scalar>(spec: &CurveSpec<S>, t: S) -> Result<Point<S>> {
    let mut out = vec![S::zero(); spec.dim()];
    rational_decasteljau_into(spec, t, &mut Scratch::new(), &mut out)?;
    Ok(Point::new(out))
}

pub fn rational_decasteljau_into<S: Scalar>(
    spec: &CurveSpec<S>,
    t: S,
    scratch: &mut Scratch<S>,
    out: &mut [S],
) -> Result<()> {
    let weights = spec.weights().ok_or(EvalError::MissingWeights)?;
    let t = BernsteinParam::new(t)?.get();
    check_out(spec, out)?;
    let n = spec.degree();
    let d = spec.dim();
    let t1 = S::one() - t;
    let Scratch { points: q, weights: w } = scratch;
    q.clear();
    q.extend_from_slice(spec.flat_points());
    w.clear();
    w.extend_from_slice(weights);
    for k in 1..=n {
        for i in 0..=n - k {
            let mut u = t1 * w[i];
            let mut v = t * w[i + 1];
            w[i] = u + v;
            u = u / w[i];
            v = S::one() - u;
            let (lo, hi) = q.split_at_mut((i + 1) * d);
            let qi = &mut lo[i * d..];
            for (a, &b) in qi.iter_mut().zip(&hi[..d]) {
                *a = u * *a + v * b;
            }
        }
    }
    out.copy_from_slice(&q[..d]);
    Ok(())
}

fn check_out<S: Scalar>(spec: &CurveSpec<S>, out: &[S]) -> Result<()> {
    if out.len() != spec.dim() {
        return Err(EvalError::DimensionMismatch {
            index: 0,
            expected: spec.dim(),
            found: out.len(),
        });
    }
    Ok(())
}

/// Row `n` of Pascal's triangle.
pub(crate) fn pascal_row<S: Scalar>(n: usize) -> Vec<S> {
    let mut row = vec![S::zero(); n + 1];
    row[0] = S::one();
    for r in 1..=n {
        for k in (1..=r).rev() {
            row[k] = row[k] + row[k - 1];
        }
    }
    row
}

/// Powers `x^0..=x^n` by repeated multiplication.
pub(crate) fn powers<S: Scalar>(x: S, n: usize) -> Vec<S> {
    let mut p = Vec::with_capacity(n + 1);
    let mut cur = S::one();
    p.push(cur);
    for _ in 0..n {
        cur = cur * x;
        p.push(cur);
    }
    p
}

/// The defining sum, evaluated term by term in the precision of `S`.
/// Polynomial curves skip the (identically one) denominator.
pub fn bernstein_sum<S: Scalar>(spec: &CurveSpec<S>, t: S) -> Point<S> {
    let n = spec.degree();
    let d = spec.dim();
    let binom = pascal_row::<S>(n);
    let tp = powers(t, n);
    let up = powers(S::one() - t, n);
    let mut num = vec![S::zero(); d];
    let mut den = S::zero();
    for k in 0..=n {
        let b = spec.weight(k) * binom[k] * tp[k] * up[n - k];
        den = den + b;
        for (acc, &w) in num.iter_mut().zip(spec.point(k)) {
            *acc = *acc + b * w;
        }
    }
    if spec.is_rational() {
        for acc in num.iter_mut() {
            *acc = *acc / den;
        }
    }
    Point::new(num)
}

/// [`bernstein_sum`] in double-double, rounded to `f64` once at the end.
pub fn bernstein_sum_oracle(spec: &CurveSpec<f64>, t: f64) -> Result<Point<f64>> {
    let t = BernsteinParam::new(t)?.get();
    Ok(bernstein_sum_oracle_dd(spec, t).to_f64())
}

/// Unrounded double-double result of the oracle.
pub fn bernstein_sum_oracle_dd(spec: &CurveSpec<f64>, t: f64) -> Point<DoubleDouble> {
    bernstein_sum(&spec.map(DoubleDouble::new), DoubleDouble::new(t))
}
