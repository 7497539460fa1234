use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bezeval_core::curve::{eval_branched, eval_with_trace};
use bezeval_core::CurveSpec;
use tempfile::TempDir;

const QUAD: &str = "curve 2 2\n0 0\n1 2\n2 0\n";

fn bezeval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bezeval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn floats(line: &str) -> Vec<f64> {
    line.split_whitespace().map(|x| x.parse().unwrap()).collect()
}

#[test]
fn eval_examples() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "quad.curve", QUAD);
    let o = bezeval(&["eval", &quad, "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 1\n");
    assert_eq!(stdout(&bezeval(&["eval", &quad, "0"])), "0 0\n");
    for alg in ["new", "new-plain", "decasteljau", "oracle"] {
        assert_eq!(stdout(&bezeval(&["eval", &quad, "0.5", "--algorithm", alg])), "1 1\n", "{alg}");
    }
    assert_eq!(stdout(&bezeval(&["eval", &quad, "0.5", "--subtraction-free"])), "1 1\n");
    let o = bezeval(&["eval", &quad, "1.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn eval_output_parses_back_exactly() {
    let dir = TempDir::new().unwrap();
    let text = "curve 3 4 rational\n0.1 -0.7 0.3 0.5\n1 0.25 -2 0.9\n0.3 0.3 0.3 0.01\n-1 1e-7 5 1\n2 2 2 0.3\n";
    let path = write(&dir, "c.curve", text);
    let spec = CurveSpec::new(
        3,
        vec![0.1, -0.7, 0.3, 1.0, 0.25, -2.0, 0.3, 0.3, 0.3, -1.0, 1e-7, 5.0, 2.0, 2.0, 2.0],
        Some(vec![0.5, 0.9, 0.01, 1.0, 0.3]),
    )
    .unwrap();
    for t in ["0.1", "0.37", "0.5", "0.93"] {
        let got = floats(&stdout(&bezeval(&["eval", &path, t])));
        let want = eval_branched(&spec, t.parse().unwrap()).unwrap();
        assert_eq!(got, want.coords(), "t = {t}");
    }
}

#[test]
fn surfaces() {
    let dir = TempDir::new().unwrap();
    let rect = write(&dir, "r.surf", "rectsurface 1 1 1\n0\n1\n2\n3\n");
    assert_eq!(stdout(&bezeval(&["eval", &rect, "0.5", "0.5"])), "1.5\n");
    assert_eq!(stdout(&bezeval(&["eval", &rect, "1", "0"])), "2\n");
    let tri = write(&dir, "t.surf", "trisurface 1 1\n0\n3\n6\n");
    let o = bezeval(&["eval", &tri, "0.25", "0.25", "--algorithm", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bezeval(&["eval", &tri, "0.8", "0.8"]).status.code(), Some(3));
    assert_eq!(bezeval(&["eval", &tri, "0.5"]).status.code(), Some(2));
    let o = bezeval(&["trace", &rect, "0.5", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.curve", "curve 2 1\n0 0\n1 nan\n");
    assert_eq!(bezeval(&["eval", &bad, "0.5"]).status.code(), Some(2));
    let missing = dir.path().join("missing.curve");
    assert_eq!(bezeval(&["eval", missing.to_str().unwrap(), "0.5"]).status.code(), Some(2));
    assert_eq!(bezeval(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn trace_text() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "quad.curve", QUAD);
    let out = stdout(&bezeval(&["trace", &quad, "0.5"]));
    let h: Vec<f64> = out.lines().map(|l| floats(l)[1]).collect();
    assert_eq!(h.len(), 3);
    assert_eq!(h[0], 1.0);
    assert!((h[1] - 2.0 / 3.0).abs() < 1e-15);
    assert!((h[2] - 0.25).abs() < 1e-15);

    let spec = CurveSpec::new(2, vec![0.0, 0.0, 1.0, 2.0, 2.0, 0.0], None).unwrap();
    let (_, trace) = eval_with_trace(&spec, 0.5).unwrap();
    for (k, line) in out.lines().enumerate() {
        let v = floats(line);
        assert_eq!(v[0], k as f64);
        assert_eq!(v[1], trace.h[k]);
        assert_eq!(&v[2..], trace.q[k].coords());
    }

    let end = stdout(&bezeval(&["trace", &quad, "1"]));
    let pts: Vec<Vec<f64>> = end.lines().map(|l| floats(l)[2..].to_vec()).collect();
    assert_eq!(pts, vec![vec![0.0, 0.0], vec![1.0, 2.0], vec![2.0, 0.0]]);
}

#[test]
fn trace_svg() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "quad.curve", QUAD);
    let svg = dir.path().join("out.svg");
    let o = bezeval(&["trace", &quad, "0.5", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let class = |c: &str| doc.descendants().filter(|n| n.attribute("class") == Some(c)).count();
    assert_eq!(class("q-node"), 3);
    assert_eq!(class("construction"), 2);
    assert_eq!(class("curve"), 1);
    let samples = doc
        .descendants()
        .find(|n| n.attribute("class") == Some("curve"))
        .and_then(|n| n.attribute("points"))
        .unwrap()
        .split_whitespace()
        .count();
    assert_eq!(samples, 256);

    let space = write(&dir, "space.curve", "curve 3 1\n0 0 0\n1 1 1\n");
    let svg3 = dir.path().join("bad.svg");
    let o = bezeval(&["trace", &space, "0.5", "--svg", svg3.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!Path::new(&svg3).exists());
}

#[test]
fn subdivide() {
    let dir = TempDir::new().unwrap();
    let quad = write(&dir, "quad.curve", QUAD);
    assert_eq!(stdout(&bezeval(&["subdivide", &quad, "0.5"])), "(0,0) (0.5,1) (1,1)\n");
    let out = dir.path().join("left.curve");
    let o = bezeval(&["subdivide", &quad, "0.5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap(), "curve 2 2\n0 0\n0.5 1\n1 1\n");
    assert_eq!(bezeval(&["subdivide", &quad, "1"]).status.code(), Some(3));
}

#[test]
fn flops() {
    let o = bezeval(&["flops", "new", "5", "2", "--polynomial"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "expected 57 measured 57 OK\n");
    assert_eq!(stdout(&bezeval(&["flops", "decasteljau", "5", "2"])), "expected 91 measured 91 OK\n");
    assert_eq!(
        stdout(&bezeval(&["flops", "decasteljau", "10", "3", "--rational"])),
        "expected 771 measured 771 OK\n"
    );
    for alg in ["new", "new-plain"] {
        for kind in ["--polynomial", "--rational"] {
            assert_eq!(bezeval(&["flops", alg, "7", "3", kind]).status.code(), Some(0));
        }
    }
    assert_eq!(bezeval(&["flops", "horner", "5", "2"]).status.code(), Some(2));
}

#[test]
fn bench_csv_and_markdown() {
    let o = bezeval(&["bench", "--degrees", "1", "--dims", "2", "--curves", "1", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "algorithm,n,d,rational,curves,evals,total_seconds,ratio_vs_decasteljau");
    assert!(lines[1..].iter().all(|l| l.split(',').nth(5) == Some("2")));

    let dir = TempDir::new().unwrap();
    let md = dir.path().join("t.md");
    let o = bezeval(&[
        "bench", "--degrees", "1,3", "--dims", "2", "--curves", "2", "--points", "3", "--format", "md", "--out",
        md.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let table = fs::read_to_string(&md).unwrap();
    assert_eq!(table.lines().count(), 4);
    assert!(table.starts_with("| n |"));
    assert_eq!(bezeval(&["bench", "--curves", "0"]).status.code(), Some(2));
}
