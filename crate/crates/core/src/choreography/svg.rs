//! SVG rendering of a loop with body positions at `t = 0` and the arcs each
//! body travels over `[0, 1/2]`.

use std::fmt::Write;

use super::path::LoopPath;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;
const ARC_SAMPLES: usize = 64;

pub fn render_svg(path: &LoopPath) -> String {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in path.samples() {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let height = (hi_y - lo_y) * scale + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - lo_x) * scale;
    let py = |y: f64| MARGIN + (hi_y - y) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0}" height="{height:.0}" viewBox="0 0 {SIZE:.0} {height:.1}">"#
    );
    out.push_str(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
    );
    out.push('\n');
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="{0:.2}" x2="{SIZE:.0}" y2="{0:.2}" stroke="#bbb" stroke-dasharray="4 4"/>"##,
        py(0.0)
    );
    let curve: Vec<String> = path
        .samples()
        .iter()
        .map(|z| format!("{:.2},{:.2}", px(z.re), py(z.im)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="none" stroke="#888" stroke-width="1"/>"##,
        curve.join(" ")
    );
    for j in 0..path.bodies() {
        let arc: Vec<String> = (0..=ARC_SAMPLES)
            .map(|k| {
                let z = path.eval_strand(j, 0.5 * k as f64 / ARC_SAMPLES as f64);
                format!("{:.2},{:.2}", px(z.re), py(z.im))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2" marker-end="url(#arrow)"/>"#,
            arc.join(" ")
        );
        let z = path.eval_strand(j, 0.0);
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"/><text x="{:.2}" y="{:.2}" font-size="12">{j}</text>"#,
            px(z.re),
            py(z.im),
            px(z.re) + 6.0,
            py(z.im) - 6.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    #[test]
    fn renders_markers_for_each_body() {
        let p = LoopPath::from_fn(4, 32, |t| Complex64::from_polar(1.0, TAU * t / 4.0)).unwrap();
        let svg = render_svg(&p);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("marker-end").count(), 4);
    }
}
