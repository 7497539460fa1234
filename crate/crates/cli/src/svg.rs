//! Plot of one evaluation: control polygon, curve, and the chain of
//! intermediate points with their construction segments.

use std::fmt::Write as _;

use bezeval_core::baselines::bernstein_sum_oracle;
use bezeval_core::{CurveSpec, EvalTrace};

const SAMPLES: usize = 256;
const WIDTH: f64 = 800.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[[f64; 2]]) -> Frame {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let span = if span > 0.0 { span } else { 1.0 };
        let margin = 0.05 * span;
        let inner_w = (hi[0] - lo[0]).max(span * 1e-3) + 2.0 * margin;
        let inner_h = (hi[1] - lo[1]).max(span * 1e-3) + 2.0 * margin;
        let scale = WIDTH / inner_w;
        Frame {
            min_x: lo[0] - margin,
            max_y: hi[1] + margin,
            scale,
            height: inner_h * scale,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.min_x) * self.scale, (self.max_y - p[1]) * self.scale)
    }
}

fn pair(p: &[f64]) -> [f64; 2] {
    [p[0], p[1]]
}

fn polyline(out: &mut String, frame: &Frame, class: &str, pts: &[[f64; 2]]) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, r#"  <polyline class="{class}" points="{}"/>"#, coords.join(" "));
}

fn circle(out: &mut String, frame: &Frame, class: &str, p: [f64; 2], r: f64, label: &str) {
    let (x, y) = frame.map(p);
    let _ = writeln!(out, r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}"><title>{label}</title></circle>"#);
}

/// Renders a planar curve and the trace of one evaluation.
/// The caller guarantees `spec.dim() == 2`.
pub fn render(spec: &CurveSpec, t: f64, trace: &EvalTrace<f64>) -> String {
    let n = spec.degree();
    let controls: Vec<[f64; 2]> = (0..=n).map(|k| pair(spec.point(k))).collect();
    let curve: Vec<[f64; 2]> = (0..SAMPLES)
        .map(|i| {
            let s = i as f64 / (SAMPLES - 1) as f64;
            let p = bernstein_sum_oracle(spec, s).expect("parameter in [0, 1]");
            pair(p.coords())
        })
        .collect();
    let nodes: Vec<[f64; 2]> = trace.q.iter().map(|q| pair(q.coords())).collect();
    let frame = Frame::fit(&controls);
    let stroke = 1.5;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = WIDTH,
        h = frame.height
    );
    let _ = writeln!(s, "  <title>evaluation at t = {t}</title>");
    let _ = writeln!(
        s,
        "  <style>\
         .control-polygon{{fill:none;stroke:#888;stroke-width:{stroke};stroke-dasharray:6 4}} \
         .curve{{fill:none;stroke:#1f4e9c;stroke-width:{w2}}} \
         .construction{{stroke:#c0392b;stroke-width:{stroke}}} \
         .control-point{{fill:#fff;stroke:#444;stroke-width:{stroke}}} \
         .q-node{{fill:#c0392b}}\
         </style>",
        w2 = 2.0 * stroke
    );
    polyline(&mut s, &frame, "control-polygon", &controls);
    polyline(&mut s, &frame, "curve", &curve);
    for k in 1..nodes.len() {
        let (x1, y1) = frame.map(nodes[k - 1]);
        let (x2, y2) = frame.map(controls[k]);
        let _ = writeln!(
            s,
            r#"  <line class="construction" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    for (k, &p) in controls.iter().enumerate() {
        circle(&mut s, &frame, "control-point", p, 5.0, &format!("W{k}"));
    }
    for (k, &p) in nodes.iter().enumerate() {
        circle(&mut s, &frame, "q-node", p, 4.0, &format!("Q{k}"));
    }
    s.push_str("</svg>\n");
    s
}
