//! Deterministic SVG pictures of embedded hexagons.
//!
//! Every curve is an exact circular arc or segment; coordinates are printed
//! with six decimals and elements are emitted in a fixed order.

use std::fmt::Write;

use hexstretch::hexagon::{EmbeddedHexagon, HexType};
use hexstretch::hyp::{DiscPoint, EuclidCurve};
use hexstretch::Result;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ShowFlags {
    #[serde(rename = "foliation_F")]
    pub foliation_f: bool,
    #[serde(rename = "foliation_G")]
    pub foliation_g: bool,
    pub tripod: bool,
    pub central_region: bool,
    pub labels: bool,
}

impl Default for ShowFlags {
    fn default() -> Self {
        ShowFlags { foliation_f: false, foliation_g: false, tripod: true, central_region: true, labels: false }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LeafCounts {
    #[serde(rename = "F")]
    pub f: usize,
    #[serde(rename = "G")]
    pub g: usize,
}

impl Default for LeafCounts {
    fn default() -> Self {
        LeafCounts { f: 7, g: 7 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderSpec {
    pub width_px: u32,
    pub show: ShowFlags,
    pub leaf_counts: LeafCounts,
    #[serde(rename = "overlay_K")]
    pub overlay_k: Option<f64>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { width_px: 512, show: ShowFlags::default(), leaf_counts: LeafCounts::default(), overlay_k: None }
    }
}

pub const MIN_WIDTH: u32 = 64;

const STYLE: &str = "\
.disc{fill:none;stroke:#444;stroke-width:1}\
.hexagon{fill:#dde6f0;stroke:none}\
.central{fill:#f3d9a4;fill-opacity:0.8;stroke:#b07a1a;stroke-width:0.8}\
.central.outside{fill:#f3d9a4;fill-opacity:0.35;stroke-dasharray:4 3}\
.leaf-f{fill:none;stroke:#3a7d44;stroke-width:0.6}\
.leaf-g{fill:none;stroke:#7d3a6b;stroke-width:0.6}\
.side{fill:none;stroke:#111;stroke-width:1.6}\
.side.short{stroke:#1f4e99}\
.tripod{stroke:#c0392b;stroke-width:1}\
.overlay{fill:none;stroke:#888;stroke-width:1;stroke-dasharray:6 3}\
text{font-family:sans-serif;font-size:12px}";

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Canvas {
    centre: f64,
    scale: f64,
    out: String,
}

impl Canvas {
    fn xy(&self, z: Complex64) -> (String, String) {
        (num(self.centre + self.scale * z.re), num(self.centre - self.scale * z.im))
    }

    /// Path data for `curve`, ending exactly at `to`.
    fn curve_data(&self, curve: &EuclidCurve, to: Complex64, start: bool) -> String {
        let mut d = String::new();
        let from = curve.point(0.0);
        if start {
            let (x, y) = self.xy(from);
            let _ = write!(d, "M {x} {y} ");
        }
        let (x, y) = self.xy(to);
        match *curve {
            EuclidCurve::Segment { .. } => {
                let _ = write!(d, "L {x} {y}");
            }
            EuclidCurve::Arc { radius, sweep, .. } => {
                let r = num(self.scale * radius);
                let large = (sweep.abs() > std::f64::consts::PI) as u8;
                // the y axis points down in SVG
                let flag = (sweep < 0.0) as u8;
                let _ = write!(d, "A {r} {r} 0 {large} {flag} {x} {y}");
            }
        }
        d
    }

    fn path(&mut self, class: &str, d: &str) {
        let _ = writeln!(self.out, r#"<path class="{class}" d="{d}"/>"#);
    }

    fn curve(&mut self, class: &str, a: DiscPoint, mid: DiscPoint, b: DiscPoint) {
        let c = EuclidCurve::through(a, mid, b);
        let d = self.curve_data(&c, b.as_complex(), true);
        self.path(class, &d);
    }

    fn text(&mut self, z: Complex64, label: &str) {
        let (x, y) = self.xy(z);
        let _ = writeln!(self.out, r#"<text x="{x}" y="{y}">{label}</text>"#);
    }
}

/// The six sides in counter-clockwise order, each as `(from, mid, to, long)`.
fn sides(e: &EmbeddedHexagon) -> Result<Vec<(DiscPoint, DiscPoint, DiscPoint, bool)>> {
    let mut out = Vec::with_capacity(6);
    for i in 0..3 {
        let (a, b) = e.long_edge(i);
        let [s0, s1] = e.corner_along[i];
        out.push((a, e.long_lines[i].from_fermi(0.5 * (s0 + s1), 0.0)?, b, true));
        // short edge t_{i+2} runs from B_i⁺ to B_{i+1}⁻
        let m = (i + 2) % 3;
        let (p, q) = e.short_edge(m);
        let line = &e.short_lines[m];
        let mid = line.from_fermi(0.5 * (line.fermi(p).along + line.fermi(q).along), 0.0)?;
        out.push((p, mid, q, false));
    }
    Ok(out)
}

fn side_class(long: bool) -> &'static str {
    if long {
        "side long"
    } else {
        "side short"
    }
}

/// Closed boundary of the central region: the three hypercycles at distance
/// `L_i` from the long-edge lines, between consecutive tripod feet.
fn central_region(e: &EmbeddedHexagon, canvas: &Canvas) -> Result<String> {
    let mut d = String::new();
    for i in 0..3 {
        let a = e.feet[(i + 1) % 3];
        let b = e.feet[(i + 2) % 3];
        let line = &e.long_lines[i];
        let (fa, fb) = (line.fermi(a), line.fermi(b));
        let mid = line.from_fermi(0.5 * (fa.along + fb.along), 0.5 * (fa.offset + fb.offset))?;
        let c = EuclidCurve::through(a, mid, b);
        d.push_str(&canvas.curve_data(&c, b.as_complex(), i == 0));
        d.push(' ');
    }
    d.push('Z');
    Ok(d)
}

pub fn render(e: &EmbeddedHexagon, spec: &RenderSpec, overlay: Option<&EmbeddedHexagon>) -> Result<String> {
    let w = spec.width_px as f64;
    let mut c = Canvas { centre: 0.5 * w, scale: 0.5 * w * 0.95, out: String::new() };
    let _ = writeln!(
        c.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        spec.width_px
    );
    let _ = writeln!(c.out, "<style>{STYLE}</style>");
    let (cx, _) = c.xy(Complex64::new(0.0, 0.0));
    let _ = writeln!(c.out, r#"<circle class="disc" cx="{cx}" cy="{cx}" r="{}"/>"#, num(c.scale));

    let own = sides(e)?;
    let mut fill = String::new();
    for (n, (a, mid, b, _)) in own.iter().enumerate() {
        fill.push_str(&c.curve_data(&EuclidCurve::through(*a, *mid, *b), b.as_complex(), n == 0));
        fill.push(' ');
    }
    fill.push('Z');
    let _ = writeln!(c.out, r#"<clipPath id="inside"><path d="{fill}"/></clipPath>"#);
    c.path("hexagon", &fill);

    if spec.show.central_region {
        let class = if e.shape.hex_type == HexType::TypeIII { "central outside" } else { "central" };
        let d = central_region(e, &c)?;
        c.path(class, &d);
    }

    // leaves are clipped to the hexagon; in Type III they run past it
    c.out.push_str("<g clip-path=\"url(#inside)\">\n");
    if spec.show.foliation_f {
        let n = spec.leaf_counts.f;
        for i in 0..3 {
            for j in 1..=n {
                let u = 2.0 * j as f64 / (n + 1) as f64;
                if u > 1.0 && !e.sector_is_full(i) {
                    continue;
                }
                if e.shape.ls[i].abs() <= hexstretch::hexagon::TYPE_TOL {
                    continue;
                }
                let pts: Result<Vec<DiscPoint>> = [0.0, 1.0, 2.0].iter().map(|&v| e.leaf_point(i, u, v)).collect();
                if let Ok(p) = pts {
                    if p[0] != p[2] {
                        c.curve("leaf-f", p[0], p[1], p[2]);
                    }
                }
            }
        }
    }

    if spec.show.foliation_g {
        let n = spec.leaf_counts.g;
        for i in 0..3 {
            if !e.sector_is_full(i) {
                continue;
            }
            for j in 1..=n {
                let v = 2.0 * j as f64 / (n + 1) as f64;
                let pts: Result<Vec<DiscPoint>> = [0.0, 0.5, 1.0].iter().map(|&u| e.leaf_point(i, u, v)).collect();
                if let Ok(p) = pts {
                    c.curve("leaf-g", p[0], p[1], p[2]);
                }
            }
        }
    }

    c.out.push_str("</g>\n");

    for (a, mid, b, long) in &own {
        c.curve(side_class(*long), *a, *mid, *b);
    }

    if spec.show.tripod {
        for foot in &e.feet {
            let (x, y) = c.xy(foot.as_complex());
            let _ = writeln!(c.out, r#"<line class="tripod" x1="{cx}" y1="{cx}" x2="{x}" y2="{y}"/>"#);
        }
    }

    if let Some(o) = overlay {
        for (a, mid, b, _) in sides(o)? {
            c.curve("overlay", a, mid, b);
        }
    }

    if spec.show.labels {
        c.text(Complex64::new(0.0, 0.0), "O");
        for (i, foot) in e.feet.iter().enumerate() {
            c.text(foot.as_complex() * 0.9, &format!("A{i}"));
        }
        for (n, (_, mid, _, long)) in own.iter().enumerate() {
            let name = if *long { format!("s{}", n / 2) } else { format!("t{}", (n / 2 + 2) % 3) };
            c.text(mid.as_complex() * 1.08, &name);
        }
    }

    c.out.push_str("</svg>\n");
    Ok(c.out)
}
