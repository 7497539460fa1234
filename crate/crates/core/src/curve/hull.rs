use crate::curve::{eval_with_trace, weighted_bernstein, CurveSpec};
use crate::error::{EvalError, Result};
use crate::generic::{hull_window_coefficients, EvalTrace, WeightedBasisStream};
use crate::scalar::Scalar;

/// Decides whether `R_n(u)` lies in the convex hull of the trace points
/// `Q_0..Q_n` computed at `t`, which holds exactly when `u <= t`.
///
/// Returns the verdict together with the coefficients of `R_n(u)` in terms
/// of the `Q_k`. The verdict is `true` iff every coefficient is at least
/// `-8 u (n + 1)`, `u` being the unit roundoff.
pub fn hull_window_check<S: Scalar>(spec: &CurveSpec<S>, t: S, u: S) -> Result<(bool, Vec<S>)> {
    if !(t > S::zero() && t <= S::one()) {
        return Err(EvalError::ParameterOutOfDomain {
            value: t.to_f64(),
            domain: "(0, 1]",
        });
    }
    if !(u >= S::zero() && u <= S::one()) {
        return Err(EvalError::ParameterOutOfDomain {
            value: u.to_f64(),
            domain: "[0, 1]",
        });
    }
    let (_, trace) = eval_with_trace(spec, t)?;
    let interior = t < S::one() && u > S::zero() && u < S::one();
    let coeffs = if interior {
        let st = weighted_bernstein(spec, t);
        let su = weighted_bernstein(spec, u);
        hull_window_coefficients(
            &trace,
            WeightedBasisStream::Values(&st),
            WeightedBasisStream::Values(&su),
        )?
    } else {
        hull_window_closed_form(spec, &trace, t, u)?
    };
    let tol = 8.0 * S::unit_roundoff() * (spec.degree() + 1) as f64;
    let inside = coeffs.iter().all(|c| c.to_f64() >= -tol);
    Ok((inside, coeffs))
}

/// Bernstein-specific form of the window coefficients, finite for every
/// `t` in `(0, 1]` and `u` in `[0, 1]`:
///
/// ```text
/// c_k = w_k / (h_k D(u)) * C(n,k) u^k (1-u)^(n-k-1) * ((1-u) - u (1-t) / t)   (k < n)
/// c_n = w_n u^n / (h_n D(u))
/// ```
///
/// The basis ratio `B_k(t) B_{k+1}(u) / (B_{k+1}(t) B_k(u))` reduces to
/// `u (1-t) / (t (1-u))` for every `k`, and one factor `(1-u)` is cancelled
/// against `B_k(u)` so that `u = 1` needs no limit.
pub fn hull_window_closed_form<S: Scalar>(
    spec: &CurveSpec<S>,
    trace: &EvalTrace<S>,
    t: S,
    u: S,
) -> Result<Vec<S>> {
    let n = spec.degree();
    if trace.len() != n + 1 {
        return Err(EvalError::MalformedTrace("length differs from n + 1"));
    }
    if let Some(index) = trace.h.iter().position(|&h| h == S::zero()) {
        return Err(EvalError::ZeroBlend { index });
    }
    let v = S::one() - u;
    let mut u_pow = vec![S::one(); n + 1];
    let mut v_pow = vec![S::one(); n + 1];
    for k in 1..=n {
        u_pow[k] = u_pow[k - 1] * u;
        v_pow[k] = v_pow[k - 1] * v;
    }
    let factor = v - u * (S::one() - t) / t;
    let mut binom = S::one();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut denom = S::zero();
    for k in 0..=n {
        if k > 0 {
            binom = binom * S::from_usize(n + 1 - k) / S::from_usize(k);
        }
        let wk = spec.weight(k);
        denom = denom + wk * binom * u_pow[k] * v_pow[n - k];
        let c = if k < n {
            wk * binom * u_pow[k] * v_pow[n - k - 1] * factor
        } else {
            wk * u_pow[n]
        };
        coeffs.push(c / trace.h[k]);
    }
    Ok(coeffs.into_iter().map(|c| c / denom).collect())
}
