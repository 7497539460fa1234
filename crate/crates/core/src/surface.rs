//! Rational rectangular and triangular Bézier patches.
//!
//! Control points are visited row by row, turning each patch into a
//! one-dimensional sequence to which the generic single-pass scheme
//! applies. Inside a row the blending factor has the curve form; at the
//! first point of each row a transition factor links it to the last point
//! of the previous row.
//!
//! Parameters on the boundary of the domain are dispatched to the branched
//! curve evaluator on the corresponding boundary curve.

use crate::baselines::{pascal_row, powers};
use crate::curve::{eval_branched, split, CurveSpec};
use crate::dd::DoubleDouble;
use crate::error::{EvalError, Result};
use crate::generic::{blend, EvalTrace, NoTrace, Tracer};
use crate::point::Point;
use crate::scalar::{positive_finite, Scalar};

fn validate<S: Scalar>(dim: usize, count: usize, points: &[S], weights: Option<&[S]>) -> Result<()> {
    if dim == 0 {
        return Err(EvalError::ZeroDimension);
    }
    if points.len() != count * dim {
        return Err(EvalError::LengthMismatch {
            what: "coordinates",
            expected: count * dim,
            found: points.len(),
        });
    }
    if let Some(index) = points.iter().position(|c| !c.is_finite()) {
        return Err(EvalError::NonFinite { index });
    }
    if let Some(w) = weights {
        if w.len() != count {
            return Err(EvalError::LengthMismatch {
                what: "weights",
                expected: count,
                found: w.len(),
            });
        }
        if let Some(index) = w.iter().position(|&x| !positive_finite(x)) {
            return Err(EvalError::NonPositiveWeight { index });
        }
    }
    Ok(())
}

/// An `(m+1) x (n+1)` grid of control points `W_ij`, stored row-major
/// (`i` outer), with optional weights `w_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct RectSurfaceSpec<S = f64> {
    dim: usize,
    m: usize,
    n: usize,
    points: Vec<S>,
    weights: Option<Vec<S>>,
}

impl<S: Scalar> RectSurfaceSpec<S> {
    pub fn new(dim: usize, m: usize, n: usize, points: Vec<S>, weights: Option<Vec<S>>) -> Result<Self> {
        validate(dim, (m + 1) * (n + 1), &points, weights.as_deref())?;
        Ok(RectSurfaceSpec {
            dim,
            m,
            n,
            points,
            weights,
        })
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_rational(&self) -> bool {
        self.weights.is_some()
    }

    #[inline(always)]
    pub fn point(&self, i: usize, j: usize) -> &[S] {
        let k = i * (self.n + 1) + j;
        &self.points[k * self.dim..(k + 1) * self.dim]
    }

    #[inline(always)]
    pub fn weight(&self, i: usize, j: usize) -> S {
        self.weights
            .as_ref()
            .map_or(S::one(), |w| w[i * (self.n + 1) + j])
    }

    pub fn flat_points(&self) -> &[S] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[S]> {
        self.weights.as_deref()
    }

    /// Row `i` as a curve in `t`.
    pub fn row_curve(&self, i: usize) -> CurveSpec<S> {
        self.boundary_curve((0..=self.n).map(|j| (i, j)))
    }

    /// Column `j` as a curve in `s`.
    pub fn column_curve(&self, j: usize) -> CurveSpec<S> {
        self.boundary_curve((0..=self.m).map(|i| (i, j)))
    }

    fn boundary_curve(&self, idx: impl Iterator<Item = (usize, usize)> + Clone) -> CurveSpec<S> {
        let points = idx.clone().flat_map(|(i, j)| self.point(i, j).to_vec()).collect();
        let weights = self
            .weights
            .as_ref()
            .map(|_| idx.map(|(i, j)| self.weight(i, j)).collect());
        CurveSpec::new(self.dim, points, weights).expect("rows of a valid surface are valid curves")
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> RectSurfaceSpec<T> {
        RectSurfaceSpec {
            dim: self.dim,
            m: self.m,
            n: self.n,
            points: self.points.iter().map(|&c| f(c)).collect(),
            weights: self.weights.as_ref().map(|w| w.iter().map(|&x| f(x)).collect()),
        }
    }
}

/// Control points `V_ij`, `0 <= i + j <= n`, stored row by row (`i` outer,
/// row `i` holding `j = 0..=n-i`), with optional weights `v_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriSurfaceSpec<S = f64> {
    dim: usize,
    n: usize,
    points: Vec<S>,
    weights: Option<Vec<S>>,
}

/// Number of control points of a degree-`n` triangular patch.
pub fn tri_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

impl<S: Scalar> TriSurfaceSpec<S> {
    pub fn new(dim: usize, n: usize, points: Vec<S>, weights: Option<Vec<S>>) -> Result<Self> {
        validate(dim, tri_count(n), &points, weights.as_deref())?;
        Ok(TriSurfaceSpec {
            dim,
            n,
            points,
            weights,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_rational(&self) -> bool {
        self.weights.is_some()
    }

    #[inline(always)]
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) - i * i.saturating_sub(1) / 2 + j
    }

    #[inline(always)]
    pub fn point(&self, i: usize, j: usize) -> &[S] {
        let k = self.index(i, j);
        &self.points[k * self.dim..(k + 1) * self.dim]
    }

    #[inline(always)]
    pub fn weight(&self, i: usize, j: usize) -> S {
        self.weights.as_ref().map_or(S::one(), |w| w[self.index(i, j)])
    }

    pub fn flat_points(&self) -> &[S] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[S]> {
        self.weights.as_deref()
    }

    fn boundary_curve(&self, idx: impl Iterator<Item = (usize, usize)> + Clone) -> CurveSpec<S> {
        let points = idx.clone().flat_map(|(i, j)| self.point(i, j).to_vec()).collect();
        let weights = self
            .weights
            .as_ref()
            .map(|_| idx.map(|(i, j)| self.weight(i, j)).collect());
        CurveSpec::new(self.dim, points, weights).expect("edges of a valid surface are valid curves")
    }

    /// The edge `s = 0`, a curve in `t` through `V_00..V_0n`.
    pub fn edge_s0(&self) -> CurveSpec<S> {
        self.boundary_curve((0..=self.n).map(|j| (0, j)))
    }

    /// The edge `t = 0`, a curve in `s` through `V_00..V_n0`.
    pub fn edge_t0(&self) -> CurveSpec<S> {
        self.boundary_curve((0..=self.n).map(|i| (i, 0)))
    }

    /// The edge `1 - s - t = 0`, a curve in `s` through `V_0n..V_n0`.
    pub fn edge_r0(&self) -> CurveSpec<S> {
        let n = self.n;
        self.boundary_curve((0..=n).map(move |i| (i, n - i)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> TriSurfaceSpec<T> {
        TriSurfaceSpec {
            dim: self.dim,
            n: self.n,
            points: self.points.iter().map(|&c| f(c)).collect(),
            weights: self.weights.as_ref().map(|w| w.iter().map(|&x| f(x)).collect()),
        }
    }
}

/// `h = b / (a + b)`, i.e. `(1 + a / b)^{-1}` without dividing by `b`.
#[inline(always)]
fn step<S: Scalar, T: Tracer<S>>(a: S, b: S, q: &mut [S], w: &[S], tracer: &mut T) -> S {
    let (h, complement) = split(b, a);
    blend(q, complement, h, w);
    tracer.record(h, complement, q);
    h
}

fn rect_core<S: Scalar, T: Tracer<S>>(spec: &RectSurfaceSpec<S>, s: S, t: S, tracer: &mut T) -> Point<S> {
    let (m, n) = spec.degrees();
    let s1 = S::one() - s;
    let t1 = S::one() - t;
    // t^n and (1-t)^n enter only as a ratio; scale both by the larger one
    let (tn, t1n) = if t <= S::from_f64(0.5) {
        let r = t / t1;
        (powers(r, n)[n], S::one())
    } else {
        let r = t1 / t;
        (S::one(), powers(r, n)[n])
    };

    let mut q = spec.point(0, 0).to_vec();
    let mut h = S::one();
    tracer.record(h, S::zero(), &q);
    for i in 0..=m {
        if i > 0 {
            let a = S::from_usize(i) * spec.weight(i - 1, n) * s1 * tn;
            let b = S::from_usize(m - i + 1) * spec.weight(i, 0) * h * s * t1n;
            h = step(a, b, &mut q, spec.point(i, 0), tracer);
        }
        for j in 1..=n {
            let a = S::from_usize(j) * spec.weight(i, j - 1) * t1;
            let b = S::from_usize(n - j + 1) * spec.weight(i, j) * h * t;
            h = step(a, b, &mut q, spec.point(i, j), tracer);
        }
    }
    Point::new(q)
}

fn check_unit_square<S: Scalar>(s: S, t: S) -> Result<()> {
    for x in [s, t] {
        if !(x >= S::zero() && x <= S::one()) {
            return Err(EvalError::ParameterOutOfDomain {
                value: x.to_f64(),
                domain: "[0, 1]^2",
            });
        }
    }
    Ok(())
}

/// Evaluates a rectangular patch at `(s, t)` in `[0, 1]^2`.
pub fn eval_rect<S: Scalar>(spec: &RectSurfaceSpec<S>, s: S, t: S) -> Result<Point<S>> {
    check_unit_square(s, t)?;
    let (m, n) = spec.degrees();
    if s == S::zero() {
        return eval_branched(&spec.row_curve(0), t);
    }
    if s == S::one() {
        return eval_branched(&spec.row_curve(m), t);
    }
    if t == S::zero() {
        return eval_branched(&spec.column_curve(0), s);
    }
    if t == S::one() {
        return eval_branched(&spec.column_curve(n), s);
    }
    Ok(rect_core(spec, s, t, &mut NoTrace))
}

/// Interior evaluation recording every `h_ij` and `Q_ij` in row-by-row order.
pub fn eval_rect_with_trace<S: Scalar>(spec: &RectSurfaceSpec<S>, s: S, t: S) -> Result<(Point<S>, EvalTrace<S>)> {
    for x in [s, t] {
        if !(x > S::zero() && x < S::one()) {
            return Err(EvalError::ParameterOutOfDomain {
                value: x.to_f64(),
                domain: "(0, 1)^2",
            });
        }
    }
    let (m, n) = spec.degrees();
    let mut trace = EvalTrace::with_capacity((m + 1) * (n + 1));
    let p = rect_core(spec, s, t, &mut trace);
    Ok((p, trace))
}

fn tri_core<S: Scalar, T: Tracer<S>>(spec: &TriSurfaceSpec<S>, s: S, t: S, r: S, tracer: &mut T) -> Point<S> {
    let n = spec.degree();
    // t^{n-i+1} against s r^{n-i}, both divided by max(t, r)^{n-i}
    let big = if t >= r { t } else { r };
    let t_pow = powers(t / big, n);
    let r_pow = powers(r / big, n);

    let mut q = spec.point(0, 0).to_vec();
    let mut g = S::one();
    tracer.record(g, S::zero(), &q);
    for i in 0..=n {
        if i > 0 {
            let a = S::from_usize(i) * spec.weight(i - 1, n - i + 1) * t * t_pow[n - i];
            let b = S::from_usize(n - i + 1) * spec.weight(i, 0) * g * s * r_pow[n - i];
            g = step(a, b, &mut q, spec.point(i, 0), tracer);
        }
        for j in 1..=n - i {
            let a = S::from_usize(j) * spec.weight(i, j - 1) * r;
            let b = S::from_usize(n - i - j + 1) * spec.weight(i, j) * g * t;
            g = step(a, b, &mut q, spec.point(i, j), tracer);
        }
    }
    Point::new(q)
}

fn tri_domain<S: Scalar>(s: S, t: S) -> Result<S> {
    let r = S::one() - s - t;
    if s >= S::zero() && t >= S::zero() && r >= S::zero() {
        Ok(r)
    } else {
        Err(EvalError::ParameterOutOfDomain {
            value: if s >= S::zero() { t.to_f64() } else { s.to_f64() },
            domain: "the triangle s, t >= 0, s + t <= 1",
        })
    }
}

/// Evaluates a triangular patch at `(s, t)` with `s, t >= 0`, `s + t <= 1`.
pub fn eval_tri<S: Scalar>(spec: &TriSurfaceSpec<S>, s: S, t: S) -> Result<Point<S>> {
    let r = tri_domain(s, t)?;
    if s == S::zero() {
        return eval_branched(&spec.edge_s0(), t);
    }
    if t == S::zero() {
        return eval_branched(&spec.edge_t0(), s);
    }
    if r == S::zero() {
        return eval_branched(&spec.edge_r0(), s);
    }
    Ok(tri_core(spec, s, t, r, &mut NoTrace))
}

/// Interior evaluation recording every `g_ij` and `U_ij` in row-by-row order.
pub fn eval_tri_with_trace<S: Scalar>(spec: &TriSurfaceSpec<S>, s: S, t: S) -> Result<(Point<S>, EvalTrace<S>)> {
    let r = tri_domain(s, t)?;
    if !(s > S::zero() && t > S::zero() && r > S::zero()) {
        return Err(EvalError::ParameterOutOfDomain {
            value: s.to_f64(),
            domain: "the open triangle",
        });
    }
    let mut trace = EvalTrace::with_capacity(tri_count(spec.degree()));
    let p = tri_core(spec, s, t, r, &mut trace);
    Ok((p, trace))
}

/// Literal double sum `sum_ij w_ij W_ij B^m_i(s) B^n_j(t) / sum_ij w_ij B^m_i(s) B^n_j(t)`.
pub fn rect_sum<S: Scalar>(spec: &RectSurfaceSpec<S>, s: S, t: S) -> Point<S> {
    let (m, n) = spec.degrees();
    let (bm, bn) = (pascal_row::<S>(m), pascal_row::<S>(n));
    let (sp, s1p) = (powers(s, m), powers(S::one() - s, m));
    let (tp, t1p) = (powers(t, n), powers(S::one() - t, n));
    let mut num = vec![S::zero(); spec.dim()];
    let mut den = S::zero();
    for i in 0..=m {
        let bi = bm[i] * sp[i] * s1p[m - i];
        for j in 0..=n {
            let b = spec.weight(i, j) * bi * bn[j] * tp[j] * t1p[n - j];
            den = den + b;
            for (acc, &w) in num.iter_mut().zip(spec.point(i, j)) {
                *acc = *acc + b * w;
            }
        }
    }
    if spec.is_rational() {
        num.iter_mut().for_each(|x| *x = *x / den);
    }
    Point::new(num)
}

/// Literal triangular sum with `B^n_ij = n! / (i! j! (n-i-j)!) s^i t^j (1-s-t)^(n-i-j)`.
pub fn tri_sum<S: Scalar>(spec: &TriSurfaceSpec<S>, s: S, t: S) -> Point<S> {
    let n = spec.degree();
    let r = S::one() - s - t;
    let (sp, tp, rp) = (powers(s, n), powers(t, n), powers(r, n));
    let outer = pascal_row::<S>(n);
    let mut num = vec![S::zero(); spec.dim()];
    let mut den = S::zero();
    for i in 0..=n {
        let inner = pascal_row::<S>(n - i);
        for j in 0..=n - i {
            let coef = outer[i] * inner[j];
            let b = spec.weight(i, j) * coef * sp[i] * tp[j] * rp[n - i - j];
            den = den + b;
            for (acc, &w) in num.iter_mut().zip(spec.point(i, j)) {
                *acc = *acc + b * w;
            }
        }
    }
    if spec.is_rational() {
        num.iter_mut().for_each(|x| *x = *x / den);
    }
    Point::new(num)
}

/// [`rect_sum`] in double-double, rounded once.
pub fn rect_sum_oracle(spec: &RectSurfaceSpec<f64>, s: f64, t: f64) -> Result<Point<f64>> {
    check_unit_square(s, t)?;
    let p = rect_sum(&spec.map(DoubleDouble::new), DoubleDouble::new(s), DoubleDouble::new(t));
    Ok(p.to_f64())
}

/// [`tri_sum`] in double-double, rounded once. `1 - s - t` is formed in
/// double-double as well.
pub fn tri_sum_oracle(spec: &TriSurfaceSpec<f64>, s: f64, t: f64) -> Result<Point<f64>> {
    tri_domain(s, t)?;
    let p = tri_sum(&spec.map(DoubleDouble::new), DoubleDouble::new(s), DoubleDouble::new(t));
    Ok(p.to_f64())
}
