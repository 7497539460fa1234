use crate::curve::{eval_with_trace, CurveSpec};
use crate::error::{EvalError, Result};
use crate::scalar::Scalar;

/// Control points of the left part of a polynomial curve, the piece over
/// `[0, u]` reparameterized to `[0, 1]`.
///
/// Built from a single trace at `t = u`:
///
/// ```text
/// V_k = sum_{j<=k} h_j^{-1} (n-k)/(n-j) B^k_j(u) Q_j   (k < n),   V_n = Q_n
/// ```
///
/// The rows `B^k_j(u)` are generated incrementally, one row of scratch.
pub fn subdivide_left<S: Scalar>(spec: &CurveSpec<S>, u: S) -> Result<CurveSpec<S>> {
    if spec.is_rational() {
        return Err(EvalError::WeightedInput);
    }
    if !(u > S::zero() && u < S::one()) {
        return Err(EvalError::ParameterOutOfDomain {
            value: u.to_f64(),
            domain: "(0, 1)",
        });
    }
    let n = spec.degree();
    let d = spec.dim();
    let (_, trace) = eval_with_trace(spec, u)?;
    if let Some(index) = trace.h.iter().position(|&h| h == S::zero()) {
        return Err(EvalError::ZeroBlend { index });
    }

    let v = S::one() - u;
    let mut row = vec![S::zero(); n + 1];
    row[0] = S::one();
    let mut out = Vec::with_capacity((n + 1) * d);
    for k in 0..n {
        if k > 0 {
            for j in (1..=k).rev() {
                row[j] = v * row[j] + u * row[j - 1];
            }
            row[0] = v * row[0];
        }
        let mut acc = vec![S::zero(); d];
        for j in 0..=k {
            let c = S::from_usize(n - k) / S::from_usize(n - j) * row[j] / trace.h[j];
            for (a, &qj) in acc.iter_mut().zip(trace.q[j].coords()) {
                *a = *a + c * qj;
            }
        }
        out.extend(acc);
    }
    out.extend_from_slice(trace.q[n].coords());
    CurveSpec::new(d, out, None)
}
