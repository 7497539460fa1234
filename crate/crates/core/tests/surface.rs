mod common;

use bezeval_core::curve::eval_branched;
use bezeval_core::generic::{barycentric_certificate, gen_eval_point};
use bezeval_core::surface::{eval_rect, eval_rect_with_trace, eval_tri, eval_tri_with_trace};
use bezeval_core::{CurveSpec, Point, RectSurfaceSpec, WeightedBasisStream};
use common::{open_triangle, open_unit, random_rect, random_tri, rect_error, rng, scaled_error, tri_error, U};
use proptest::prelude::*;

fn bernstein(n: usize, k: usize, t: f64) -> f64 {
    let c = (0..k).fold(1.0, |c, i| c * (n - i) as f64 / (i + 1) as f64);
    c * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32)
}

/// Same sum visited column by column through the generic engine.
fn column_major(spec: &RectSurfaceSpec, s: f64, t: f64) -> Point {
    let (m, n) = spec.degrees();
    let mut values = Vec::new();
    let mut points = Vec::new();
    for j in 0..=n {
        for i in 0..=m {
            values.push(spec.weight(i, j) * bernstein(m, i, s) * bernstein(n, j, t));
            points.push(Point::from_slice(spec.point(i, j)));
        }
    }
    gen_eval_point(WeightedBasisStream::Values(&values), &points).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rect_matches_oracle(seed in any::<u64>(), m in 0usize..=8, n in 0usize..=8, d in 1usize..=4, rational in any::<bool>()) {
        let mut r = rng(seed);
        let spec = random_rect(&mut r, m, n, d, rational);
        let (s, t) = (open_unit(&mut r), open_unit(&mut r));
        let p = eval_rect(&spec, s, t).unwrap();
        prop_assert!(rect_error(&spec, s, t, p.coords()) <= 1e3 * U);
        let (q, trace) = eval_rect_with_trace(&spec, s, t).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(trace.h[0], 1.0);
        prop_assert!(trace.h.iter().all(|&h| (0.0..=1.0).contains(&h)));
        let c = barycentric_certificate(&trace).unwrap();
        prop_assert!(c.iter().all(|&x| x >= 0.0));
        let col = column_major(&spec, s, t);
        prop_assert!(rect_error(&spec, s, t, col.coords()) <= 1e3 * U);
    }

    #[test]
    fn rect_is_nested_curve_evaluation(seed in any::<u64>(), m in 0usize..=8, n in 0usize..=8, d in 1usize..=4) {
        let mut r = rng(seed);
        let spec = random_rect(&mut r, m, n, d, false);
        let (s, t) = (open_unit(&mut r), open_unit(&mut r));
        let rows: Vec<Point> = (0..=m).map(|i| eval_branched(&spec.row_curve(i), t).unwrap()).collect();
        let nested = eval_branched(&CurveSpec::polynomial(&rows).unwrap(), s).unwrap();
        let p = eval_rect(&spec, s, t).unwrap();
        let scale: Vec<f64> = {
            let abs = spec.map(f64::abs);
            let rows: Vec<Point> = (0..=m).map(|i| eval_branched(&abs.row_curve(i), t).unwrap()).collect();
            eval_branched(&CurveSpec::polynomial(&rows).unwrap(), s).unwrap().into_coords()
        };
        prop_assert!(scaled_error(p.coords(), nested.coords(), &scale) <= 1e3 * U);
    }

    #[test]
    fn rect_boundary_dispatch_is_exact(seed in any::<u64>(), m in 0usize..=8, n in 0usize..=8, rational in any::<bool>()) {
        let mut r = rng(seed);
        let spec = random_rect(&mut r, m, n, 2, rational);
        let x = open_unit(&mut r);
        prop_assert_eq!(eval_rect(&spec, 0.0, x).unwrap(), eval_branched(&spec.row_curve(0), x).unwrap());
        prop_assert_eq!(eval_rect(&spec, 1.0, x).unwrap(), eval_branched(&spec.row_curve(m), x).unwrap());
        prop_assert_eq!(eval_rect(&spec, x, 0.0).unwrap(), eval_branched(&spec.column_curve(0), x).unwrap());
        prop_assert_eq!(eval_rect(&spec, x, 1.0).unwrap(), eval_branched(&spec.column_curve(n), x).unwrap());
        for (s, t, i, j) in [(0.0, 0.0, 0, 0), (0.0, 1.0, 0, n), (1.0, 0.0, m, 0), (1.0, 1.0, m, n)] {
            prop_assert_eq!(eval_rect(&spec, s, t).unwrap().into_coords(), spec.point(i, j).to_vec());
        }
    }

    #[test]
    fn tri_matches_oracle(seed in any::<u64>(), n in 0usize..=10, d in 1usize..=4, rational in any::<bool>()) {
        let mut r = rng(seed);
        let spec = random_tri(&mut r, n, d, rational);
        let (s, t) = open_triangle(&mut r);
        let p = eval_tri(&spec, s, t).unwrap();
        prop_assert!(tri_error(&spec, s, t, p.coords()) <= 1e3 * U);
        let (q, trace) = eval_tri_with_trace(&spec, s, t).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert!(trace.h.iter().all(|&h| (0.0..=1.0).contains(&h)));
        let c = barycentric_certificate(&trace).unwrap();
        prop_assert!(c.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn tri_boundary_dispatch_is_exact(seed in any::<u64>(), n in 0usize..=10, rational in any::<bool>()) {
        let mut r = rng(seed);
        let spec = random_tri(&mut r, n, 3, rational);
        let x = open_unit(&mut r);
        prop_assert_eq!(eval_tri(&spec, 0.0, x).unwrap(), eval_branched(&spec.edge_s0(), x).unwrap());
        prop_assert_eq!(eval_tri(&spec, x, 0.0).unwrap(), eval_branched(&spec.edge_t0(), x).unwrap());
        prop_assert_eq!(eval_tri(&spec, x, 1.0 - x).unwrap(), eval_branched(&spec.edge_r0(), x).unwrap());
    }
}

#[test]
fn constant_patches_are_reproduced() {
    let p = [0.3, -1.25, 7.0];
    let rect = RectSurfaceSpec::new(3, 4, 3, p.repeat(20), Some((0..20).map(|k| 0.1 + k as f64 * 0.04).collect())).unwrap();
    for (s, t) in [(0.2, 0.9), (0.5, 0.5), (0.999, 0.001)] {
        let got = eval_rect(&rect, s, t).unwrap();
        assert!(common::relative_error(got.coords(), &p) <= 8.0 * U * 20.0);
    }
}
