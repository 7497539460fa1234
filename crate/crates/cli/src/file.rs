//! Plain-text control-net files.
//!
//! ```text
//! # comments run to end of line
//! curve 2 2 rational        # d n [rational]
//! 0 0 1                     # one point per line, weight last
//! 1 2 0.5
//! 2 0 1
//! ```
//!
//! `rectsurface d m n [rational]` lists `(m+1)(n+1)` points row by row
//! (`i` outer, `j` inner). `trisurface d n [rational]` lists rows
//! `i = 0..=n`, each holding points `j = 0..=n-i`.

use std::fmt::Write as _;

use bezeval_core::surface::tri_count;
use bezeval_core::{CurveSpec, RectSurfaceSpec, TriSurfaceSpec};

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Curve(CurveSpec),
    Rect(RectSurfaceSpec),
    Tri(TriSurfaceSpec),
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError {
        line,
        message: message.into(),
    }
}

fn parse_count(tok: Option<&str>, what: &str, line: usize) -> Result<usize, FileError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| err(line, format!("{what} must be a nonnegative integer, got {tok:?}")))
}

pub fn parse_scalar(tok: &str, line: usize) -> Result<f64, FileError> {
    let x: f64 = tok
        .parse()
        .map_err(|_| err(line, format!("not a number: {tok:?}")))?;
    if !x.is_finite() {
        return Err(err(line, format!("non-finite value: {tok:?}")));
    }
    Ok(x)
}

pub fn parse(text: &str) -> Result<Shape, FileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let mut toks = header.split_whitespace();
    let kind = toks.next().unwrap_or_default();
    let d = parse_count(toks.next(), "dimension", hline)?;
    let (m, n) = match kind {
        "rectsurface" => (
            parse_count(toks.next(), "degree m", hline)?,
            parse_count(toks.next(), "degree n", hline)?,
        ),
        "curve" | "trisurface" => (0, parse_count(toks.next(), "degree", hline)?),
        other => return Err(err(hline, format!("unknown kind {other:?}"))),
    };
    let rational = match toks.next() {
        None => false,
        Some("rational") => true,
        Some(other) => return Err(err(hline, format!("unexpected {other:?} in header"))),
    };
    if let Some(extra) = toks.next() {
        return Err(err(hline, format!("unexpected {extra:?} in header")));
    }
    if d == 0 {
        return Err(err(hline, "dimension must be at least 1"));
    }
    let count = match kind {
        "curve" => n.checked_add(1),
        "rectsurface" => m.checked_add(1).zip(n.checked_add(1)).and_then(|(a, b)| a.checked_mul(b)),
        _ => n.checked_add(1).and_then(|a| a.checked_mul(n.checked_add(2)?)).map(|x| x / 2),
    }
    .ok_or_else(|| err(hline, "degree too large"))?;

    let width = d + rational as usize;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut last = hline;
    for _ in 0..count {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| err(last, format!("expected {count} points")))?;
        last = ln;
        let vals = l
            .split_whitespace()
            .map(|t| parse_scalar(t, ln))
            .collect::<Result<Vec<_>, _>>()?;
        if vals.len() != width {
            return Err(err(ln, format!("expected {width} values, found {}", vals.len())));
        }
        points.extend_from_slice(&vals[..d]);
        if rational {
            weights.push(vals[d]);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing data after the last point"));
    }
    let weights = rational.then_some(weights);
    let shape = match kind {
        "curve" => CurveSpec::new(d, points, weights).map(Shape::Curve),
        "rectsurface" => RectSurfaceSpec::new(d, m, n, points, weights).map(Shape::Rect),
        _ => {
            debug_assert_eq!(count, tri_count(n));
            TriSurfaceSpec::new(d, n, points, weights).map(Shape::Tri)
        }
    };
    shape.map_err(|e| err(hline, e.to_string()))
}

fn push_rows(out: &mut String, d: usize, points: &[f64], weights: Option<&[f64]>) {
    for (k, p) in points.chunks(d).enumerate() {
        let mut cells: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        if let Some(w) = weights {
            cells.push(w[k].to_string());
        }
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

fn suffix(rational: bool) -> &'static str {
    if rational {
        " rational"
    } else {
        ""
    }
}

/// Canonical text; every scalar is written in shortest round-trip form.
pub fn write(shape: &Shape) -> String {
    let mut s = String::new();
    match shape {
        Shape::Curve(c) => {
            let _ = writeln!(s, "curve {} {}{}", c.dim(), c.degree(), suffix(c.is_rational()));
            push_rows(&mut s, c.dim(), c.flat_points(), c.weights());
        }
        Shape::Rect(r) => {
            let (m, n) = r.degrees();
            let _ = writeln!(s, "rectsurface {} {} {}{}", r.dim(), m, n, suffix(r.is_rational()));
            push_rows(&mut s, r.dim(), r.flat_points(), r.weights());
        }
        Shape::Tri(t) => {
            let _ = writeln!(s, "trisurface {} {}{}", t.dim(), t.degree(), suffix(t.is_rational()));
            push_rows(&mut s, t.dim(), t.flat_points(), t.weights());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_with_comments() {
        let text = "# quad\ncurve 2 2\n0 0\n1 2 # apex\n\n2 0\n";
        let Shape::Curve(c) = parse(text).unwrap() else { panic!() };
        assert_eq!(c.degree(), 2);
        assert_eq!(c.point(1), &[1.0, 2.0]);
        assert!(!c.is_rational());
    }

    #[test]
    fn rational_and_surfaces() {
        let Shape::Curve(c) = parse("curve 1 1 rational\n0 2\n1 0.5\n").unwrap() else { panic!() };
        assert_eq!(c.weights(), Some(&[2.0, 0.5][..]));
        let Shape::Rect(r) = parse("rectsurface 1 1 2\n0\n1\n2\n3\n4\n5\n").unwrap() else { panic!() };
        assert_eq!(r.point(1, 0), &[3.0]);
        let Shape::Tri(t) = parse("trisurface 1 1\n0\n1\n2\n").unwrap() else { panic!() };
        assert_eq!(t.point(1, 0), &[2.0]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "",
            "curve 2",
            "line 2 1\n0 0\n1 1\n",
            "curve 2 1\n0 0\n",
            "curve 2 1\n0 0\n1\n",
            "curve 2 1\n0 0\n1 NaN\n",
            "curve 2 1\n0 0\n1 inf\n",
            "curve 2 1\n0 0\n1 1\n2 2\n",
            "curve 1 1 rational\n0 1\n1 -1\n",
            "curve 0 1\n\n\n",
            "curve 2 1 weighted\n0 0\n1 1\n",
        ] {
            assert!(parse(bad).is_err(), "{bad:?}");
        }
        assert_eq!(parse("curve 1 1\n0\nx\n").unwrap_err().line, 3);
    }

    #[test]
    fn canonical_round_trip() {
        let text = "trisurface 2 2 rational\n0 0 1\n0.1 0.2 0.3\n1e-300 2 1\n3 3 2\n4 4 1\n5 5 0.25\n";
        let shape = parse(text).unwrap();
        assert_eq!(parse(&write(&shape)).unwrap(), shape);
    }

    fn finite() -> impl proptest::strategy::Strategy<Value = f64> {
        use proptest::prelude::*;
        prop_oneof![-1e3..1e3f64, any::<f64>().prop_filter("finite", |x| x.is_finite())]
    }

    proptest::proptest! {
        #[test]
        fn written_curves_reparse_identically(
            d in 1usize..5,
            n in 0usize..12,
            rational in proptest::bool::ANY,
            seed in proptest::collection::vec(finite(), 80),
            wseed in proptest::collection::vec(1e-3..1e3f64, 13),
        ) {
            let points = (0..(n + 1) * d).map(|i| seed[i % seed.len()]).collect();
            let weights = rational.then(|| wseed[..=n].to_vec());
            let shape = Shape::Curve(CurveSpec::new(d, points, weights).unwrap());
            proptest::prop_assert_eq!(parse(&write(&shape)).unwrap(), shape);
        }

        #[test]
        fn written_surfaces_reparse_identically(
            m in 0usize..5,
            n in 0usize..5,
            vals in proptest::collection::vec(finite(), 36),
        ) {
            let rect = RectSurfaceSpec::new(1, m, n, vals[..(m + 1) * (n + 1)].to_vec(), None).unwrap();
            let shape = Shape::Rect(rect);
            proptest::prop_assert_eq!(parse(&write(&shape)).unwrap(), shape);
            let tri = TriSurfaceSpec::new(2, n, vals[..2 * tri_count(n)].to_vec(), None).unwrap();
            let shape = Shape::Tri(tri);
            proptest::prop_assert_eq!(parse(&write(&shape)).unwrap(), shape);
        }
    }
}
