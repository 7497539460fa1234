//! Linear-time evaluation of polynomial and rational Bézier curves and
//! surfaces using only convex combinations of control points.
//!
//! The core idea: a point of any rational parametric object built on a
//! nonnegative partition-of-unity basis can be accumulated in a single pass,
//! `Q_k = (1 - h_k) Q_{k-1} + h_k W_k`, where the blending factors `h_k` lie
//! in `[0, 1]` and depend only on ratios of consecutive weighted basis values.
//!
//! Modules:
//! - [`generic`]: the basis-agnostic engine and its convex-hull certificates.
//! - [`curve`]: Bézier curve evaluation, batch evaluation, hull windows and
//!   left subdivision.
//! - [`baselines`]: de Casteljau evaluators and an extended-precision
//!   Bernstein-sum oracle.
//! - [`surface`]: rectangular and triangular rational Bézier patches.
//! - [`bench`]: exact flop accounting and the timing harness.

pub mod baselines;
pub mod bench;
pub mod curve;
pub mod dd;
mod error;
pub mod generic;
mod point;
pub mod scalar;
pub mod surface;

pub use crate::curve::{BernsteinParam, CurveSpec};
pub use crate::dd::DoubleDouble;
pub use crate::error::{EvalError, Result};
pub use crate::generic::{EvalTrace, WeightedBasisStream};
pub use crate::point::Point;
pub use crate::scalar::Scalar;
pub use crate::surface::{RectSurfaceSpec, TriSurfaceSpec};
