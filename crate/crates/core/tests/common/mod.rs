#![allow(dead_code)]

use bezeval_core::baselines::bernstein_sum_oracle;
use bezeval_core::surface::{rect_sum_oracle, tri_count, tri_sum_oracle};
use bezeval_core::{CurveSpec, DoubleDouble, RectSurfaceSpec, TriSurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Unit roundoff of `f64`.
pub const U: f64 = f64::EPSILON / 2.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coords(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn weights(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.gen_range(0.01..=1.0)).collect()
}

pub fn random_curve(rng: &mut ChaCha8Rng, n: usize, d: usize, rational: bool) -> CurveSpec {
    let points = coords(rng, (n + 1) * d);
    let w = rational.then(|| weights(rng, n + 1));
    CurveSpec::new(d, points, w).unwrap()
}

pub fn random_rect(rng: &mut ChaCha8Rng, m: usize, n: usize, d: usize, rational: bool) -> RectSurfaceSpec {
    let count = (m + 1) * (n + 1);
    let points = coords(rng, count * d);
    let w = rational.then(|| weights(rng, count));
    RectSurfaceSpec::new(d, m, n, points, w).unwrap()
}

pub fn random_tri(rng: &mut ChaCha8Rng, n: usize, d: usize, rational: bool) -> TriSurfaceSpec {
    let count = tri_count(n);
    let points = coords(rng, count * d);
    let w = rational.then(|| weights(rng, count));
    TriSurfaceSpec::new(d, n, points, w).unwrap()
}

/// Largest componentwise `|got - want| / scale`.
///
/// `scale` is the same convex combination applied to `|W|`, the natural
/// magnitude of a coordinate formed by positive blending. A coordinate
/// that cancels to nearly zero is judged against the size of the terms that
/// produced it instead of against itself.
pub fn scaled_error(got: &[f64], want: &[f64], scale: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want)
        .zip(scale)
        .map(|((&g, &w), &s)| {
            let diff = (g - w).abs();
            if diff == 0.0 {
                0.0
            } else if s > 0.0 {
                diff / s
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max)
}

/// Largest componentwise `|got - want| / |want|`.
pub fn relative_error(got: &[f64], want: &[f64]) -> f64 {
    scaled_error(got, want, &want.iter().map(|w| w.abs()).collect::<Vec<_>>())
}

/// Error of `got` against the extended-precision curve oracle.
pub fn curve_error(spec: &CurveSpec, t: f64, got: &[f64]) -> f64 {
    let want = bernstein_sum_oracle(spec, t).unwrap();
    let scale = bernstein_sum_oracle(&spec.map(f64::abs), t).unwrap();
    scaled_error(got, want.coords(), scale.coords())
}

pub fn rect_error(spec: &RectSurfaceSpec, s: f64, t: f64, got: &[f64]) -> f64 {
    let want = rect_sum_oracle(spec, s, t).unwrap();
    let scale = rect_sum_oracle(&spec.map(f64::abs), s, t).unwrap();
    scaled_error(got, want.coords(), scale.coords())
}

pub fn tri_error(spec: &TriSurfaceSpec, s: f64, t: f64, got: &[f64]) -> f64 {
    let want = tri_sum_oracle(spec, s, t).unwrap();
    let scale = tri_sum_oracle(&spec.map(f64::abs), s, t).unwrap();
    scaled_error(got, want.coords(), scale.coords())
}

/// A point of the open unit triangle `s, t > 0, s + t < 1`.
pub fn open_triangle(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let s: f64 = rng.gen_range(0.0..1.0);
        let t: f64 = rng.gen_range(0.0..1.0);
        if s > 0.0 && t > 0.0 && s + t < 1.0 && 1.0 - s - t > 0.0 {
            return (s, t);
        }
    }
}

/// A parameter of the open interval `(0, 1)`.
pub fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let t: f64 = rng.gen();
        if t > 0.0 {
            return t;
        }
    }
}

/// Left control points by classical de Casteljau subdivision in
/// double-double: `V_j` is the first point of level `j`. Also returns the
/// same construction applied to `|W|`.
pub fn decasteljau_left_dd(spec: &CurveSpec, u: f64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let run = |f: fn(f64) -> f64| {
        let n = spec.degree();
        let u = DoubleDouble::from(u);
        let v = DoubleDouble::ONE - u;
        let mut level: Vec<Vec<DoubleDouble>> = (0..=n)
            .map(|k| spec.point(k).iter().map(|&x| DoubleDouble::from(f(x))).collect())
            .collect();
        let mut left = vec![level[0].iter().map(|x| x.to_f64()).collect::<Vec<f64>>()];
        for j in 1..=n {
            for i in 0..=n - j {
                let next = level[i + 1].clone();
                for (a, b) in level[i].iter_mut().zip(next) {
                    *a = v * *a + u * b;
                }
            }
            left.push(level[0].iter().map(|x| x.to_f64()).collect());
        }
        left
    };
    (run(|x| x), run(f64::abs))
}
