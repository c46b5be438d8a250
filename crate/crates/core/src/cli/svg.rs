use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

use crate::complexes::GVector;
use crate::silting::{ConeAlgebra, FanReport};

const R: f64 = 200.0;

/// Unit direction of a ray in screen coordinates (y pointing down).
fn screen(g: GVector) -> (f64, f64) {
    let (x, y) = (g.0 as f64, g.1 as f64);
    let n = x.hypot(y);
    (x / n, -y / n)
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn angle(g: GVector) -> f64 {
    (g.1 as f64).atan2(g.0 as f64)
}

/// Counterclockwise angle from `a` to `b`, in `(0, 2π]`.
fn sweep(a: GVector, b: GVector) -> f64 {
    let mut d = angle(b) - angle(a);
    while d <= 0.0 {
        d += 2.0 * PI;
    }
    d
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn wedge(out: &mut String, a: GVector, b: GVector, fill: &str) {
    let (ax, ay) = screen(a);
    let (bx, by) = screen(b);
    let large = (sweep(a, b) > PI) as u8;
    let _ = writeln!(
        out,
        r#"  <path d="M 0 0 L {} {} A {R} {R} 0 {large} 0 {} {} Z" fill="{fill}" stroke="none"/>"#,
        num(R * ax),
        num(R * ay),
        num(R * bx),
        num(R * by)
    );
}

fn fill(a: Option<&ConeAlgebra>) -> &'static str {
    match a {
        Some(ConeAlgebra::Lambda { .. }) => "#dbe9f6",
        Some(ConeAlgebra::LambdaOp { .. }) => "#f6e3db",
        Some(ConeAlgebra::Delta { .. }) => "#e1f3d8",
        None => "#f2f2f2",
    }
}

/// Rays from the origin labelled by their complexes, cones labelled by the
/// derived equivalent algebra, and uncovered cones shaded gray.
pub fn render_fan_svg(f: &FanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-300 -300 600 600" width="600" height="600">"#
    );
    let _ = writeln!(out, "<!-- silting {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        "  <title>g-vector fan of Λ^{{{},{}}}, depth {}</title>",
        f.p, f.q, f.depth
    );
    for (a, b) in &f.gaps {
        wedge(&mut out, *a, *b, "#b4b4b4");
    }
    let mut rays: BTreeMap<GVector, String> = BTreeMap::new();
    for n in &f.nodes {
        wedge(&mut out, n.g[0], n.g[1], fill(n.algebra.as_ref()));
        for k in 0..2 {
            let name = n.names.as_ref().map(|v| v[k].clone()).unwrap_or_default();
            let label = if name.is_empty() {
                format!("({},{})", n.g[k].0, n.g[k].1)
            } else {
                format!("{name} ({},{})", n.g[k].0, n.g[k].1)
            };
            rays.entry(n.g[k]).or_insert(label);
        }
    }
    for n in &f.nodes {
        let Some(label) = &n.algebra_label else {
            continue;
        };
        let mid = angle(n.g[0]) + sweep(n.g[0], n.g[1]) / 2.0;
        let (x, y) = (0.62 * R * mid.cos(), -0.62 * R * mid.sin());
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="8" text-anchor="middle" class="cone">{}</text>"#,
            num(x),
            num(y),
            escape(label)
        );
    }
    for (g, label) in &rays {
        let (ux, uy) = screen(*g);
        let _ = writeln!(
            out,
            r#"  <line x1="0" y1="0" x2="{}" y2="{}" stroke="black" stroke-width="0.8"/>"#,
            num(R * ux),
            num(R * uy)
        );
        let anchor = if ux > 0.1 {
            "start"
        } else if ux < -0.1 {
            "end"
        } else {
            "middle"
        };
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="8" text-anchor="{anchor}" class="ray">{}</text>"#,
            num(1.06 * R * ux),
            num(1.06 * R * uy + 3.0),
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}
