//! Deterministic SVG figures, selectable by name.
//!
//! Both components are drawn in their own chart coordinates with the y axis
//! flipped; the `Q-` panel is translated to the right of `Q+`. Floating point
//! appears only in the emitted coordinates, which are printed with four
//! decimals. Vertices also carry their exact coordinates as `data-x` and
//! `data-y` attributes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::flow::{trace, TraceResult};
use crate::linalg::RatVec2;
use crate::surface::{
    singularity_classes, triangulation, Component, CylinderDirection, EdgeKind, SurfaceHandle, SurfacePoint, VertexRef,
};

/// A straight-line trajectory to draw.
#[derive(Clone, Debug)]
pub struct GeodesicSpec {
    pub start: SurfacePoint,
    pub direction: RatVec2,
    pub max_crossings: usize,
}

#[derive(Clone, Debug)]
pub struct FigureOptions {
    pub window: usize,
    pub cylinders: CylinderDirection,
    pub geodesic: Option<GeodesicSpec>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions { window: 4, cylinders: CylinderDirection::SlopeOne, geodesic: None }
    }
}

pub trait Figure: Send + Sync {
    fn name(&self) -> &'static str;
    fn render(&self, h: &SurfaceHandle, opts: &FigureOptions) -> Result<String>;
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

fn pt(p: &RatVec2) -> (String, String) {
    (fmt_num(p.x.to_f64()), fmt_num(-p.y.to_f64()))
}

fn points_attr(ps: &[RatVec2]) -> String {
    ps.iter()
        .map(|p| {
            let (x, y) = pt(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn chart_point(h: &SurfaceHandle, component: Component, k: i64) -> RatVec2 {
    h.vertex_position(VertexRef::new(component, k))
}

/// Accumulates the two chart panels and writes the document.
struct Canvas {
    window: usize,
    shift: f64,
    extent: (f64, f64),
    plus: String,
    minus: String,
}

impl Canvas {
    fn new(h: &SurfaceHandle, window: usize) -> Self {
        let w = window as i64;
        h.ensure_window(window + 2);
        let (mut xmax, mut ymax) = (0f64, 0f64);
        for k in -w..=w + 1 {
            let p = h.vertex(k);
            xmax = xmax.max(p.x.to_f64().abs());
            ymax = ymax.max(p.y.to_f64().abs());
        }
        let gap = 0.25 * xmax.max(1.0);
        Canvas { window, shift: 2.0 * xmax + gap, extent: (xmax, ymax), plus: String::new(), minus: String::new() }
    }

    fn panel(&mut self, component: Component) -> &mut String {
        match component {
            Component::Plus => &mut self.plus,
            Component::Minus => &mut self.minus,
        }
    }

    fn finish(self, title: &str) -> String {
        let (xmax, ymax) = self.extent;
        let pad = 0.05 * (xmax + ymax).max(1.0);
        let minx = -xmax - pad;
        let width = self.shift + 2.0 * xmax + 2.0 * pad;
        let miny = -ymax - pad;
        let height = 2.0 * ymax + 2.0 * pad;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" data-window="{}">"#,
            fmt_num(minx),
            fmt_num(miny),
            fmt_num(width),
            fmt_num(height),
            self.window
        );
        let _ = writeln!(s, "<title>{title}</title>");
        let _ = writeln!(
            s,
            "<style>.region{{fill:#f4f4f4;stroke:none}} line,polyline,polygon{{vector-effect:non-scaling-stroke}} \
             .boundary{{stroke:#000;stroke-width:1.5}} .chord{{stroke:#888;stroke-dasharray:4 3}} \
             .diagonal{{stroke:#bbb;stroke-dasharray:1 3}} .geodesic{{fill:none;stroke:#c00;stroke-width:1.5}} \
             text{{font-size:{}px;font-family:sans-serif}}</style>",
            fmt_num(0.03 * (xmax + ymax).max(1.0))
        );
        let _ = writeln!(s, r#"<g id="plus">"#);
        s.push_str(&self.plus);
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r#"<g id="minus" transform="translate({},0)">"#, fmt_num(self.shift));
        s.push_str(&self.minus);
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, "</svg>");
        s
    }
}

/// Both components, truncated at the chord `s_{window+1}`.
fn draw_region(canvas: &mut Canvas, h: &SurfaceHandle) {
    let w = canvas.window as i64;
    for component in [Component::Plus, Component::Minus] {
        let region: Vec<RatVec2> = (-w..=w + 1).map(|k| chart_point(h, component, k)).collect();
        let _ = writeln!(canvas.panel(component), r#"<polygon class="region" points="{}"/>"#, points_attr(&region));
    }
}

/// Triangulation edges, boundary labels and vertices.
fn draw_surface(canvas: &mut Canvas, h: &SurfaceHandle) {
    let window = canvas.window;
    let w = window as i64;
    let edges = triangulation(h, window);
    let classes = singularity_classes(h, window.max(2));
    for component in [Component::Plus, Component::Minus] {
        let out = canvas.panel(component);
        for e in &edges {
            let glued_in = match e.label.kind {
                EdgeKind::Boundary => true,
                _ => e.label.endpoints().0.component == component,
            };
            if !glued_in {
                continue;
            }
            let (a, b) = e.label.endpoints_in(component);
            let (pa, pb) = (h.vertex_position(a), h.vertex_position(b));
            let ((x1, y1), (x2, y2)) = (pt(&pa), pt(&pb));
            let _ = writeln!(
                out,
                r#"<line class="{}" data-label="{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#,
                e.label.kind.name(),
                e.label
            );
            if e.label.kind == EdgeKind::Boundary {
                let mid = (&pa + &pb).scale(&crate::Rational::new(1, 2).expect("nonzero"));
                let (mx, my) = pt(&mid);
                let _ = writeln!(out, r#"<text x="{mx}" y="{my}">{}</text>"#, e.label);
            }
        }
        for k in -w..=w + 1 {
            let v = VertexRef::new(component, k);
            let p = h.vertex_position(v);
            let (x, y) = pt(&p);
            let class = classes.class_of(v).map(|c| c.to_string()).unwrap_or_else(|| "?".to_string());
            let _ = writeln!(
                out,
                r#"<circle class="vertex singular-{class}" data-k="{k}" data-component="{}" data-x="{}" data-y="{}" cx="{x}" cy="{y}" r="0.08"/>"#,
                component.symbol(),
                p.x,
                p.y
            );
        }
    }
}

fn draw_cylinders(canvas: &mut Canvas, h: &SurfaceHandle, direction: CylinderDirection) {
    let w = canvas.window as i64;
    let palette = ["#cfe2f3", "#fce5cd"];
    for component in [Component::Plus, Component::Minus] {
        let out = canvas.panel(component);
        for n in 1..=w {
            let ks = match direction {
                CylinderDirection::Horizontal => [1 - n, n - 1, n, -n],
                CylinderDirection::SlopeOne => [-n, 1 - n, n, n + 1],
            };
            let poly: Vec<RatVec2> = ks.iter().map(|k| chart_point(h, component, *k)).collect();
            let _ = writeln!(
                out,
                r#"<polygon class="cylinder {}" data-index="{n}" fill="{}" points="{}"/>"#,
                direction.name(),
                palette[(n as usize) % 2],
                points_attr(&poly)
            );
        }
    }
}

/// Chart polylines of a trace, one per consecutive run in the same chart.
pub fn trace_polylines(h: &SurfaceHandle, t: &TraceResult) -> Vec<(Component, Vec<RatVec2>)> {
    let mut out: Vec<(Component, Vec<RatVec2>)> = Vec::new();
    for (i, tri) in t.triangles.iter().enumerate() {
        let entry = if i == 0 {
            t.start.position.clone()
        } else {
            let prev = &t.crossings[i - 1];
            let label = t.code.symbols[i - 1];
            if label.is_boundary() {
                let g = h.gluing_offset(label.index);
                match t.triangles[i - 1].component {
                    Component::Plus => prev - &g,
                    Component::Minus => prev + &g,
                }
            } else {
                prev.clone()
            }
        };
        let exit = if i < t.crossings.len() { t.crossings[i].clone() } else { t.end.position.clone() };
        match out.last_mut() {
            Some((c, pts)) if *c == tri.component && pts.last() == Some(&entry) => {
                if pts.last() != Some(&exit) {
                    pts.push(exit);
                }
            }
            _ => {
                let mut pts = vec![entry];
                if pts[0] != exit {
                    pts.push(exit);
                }
                out.push((tri.component, pts));
            }
        }
    }
    out
}

struct SurfaceFigure;
struct CylindersFigure;
struct GeodesicFigure;

impl Figure for SurfaceFigure {
    fn name(&self) -> &'static str {
        "surface"
    }
    fn render(&self, h: &SurfaceHandle, opts: &FigureOptions) -> Result<String> {
        let mut canvas = Canvas::new(h, opts.window);
        draw_region(&mut canvas, h);
        draw_surface(&mut canvas, h);
        Ok(canvas.finish(&format!("S_c with c = {}, window {}", h.c(), opts.window)))
    }
}

impl Figure for CylindersFigure {
    fn name(&self) -> &'static str {
        "cylinders"
    }
    fn render(&self, h: &SurfaceHandle, opts: &FigureOptions) -> Result<String> {
        let mut canvas = Canvas::new(h, opts.window);
        draw_region(&mut canvas, h);
        draw_cylinders(&mut canvas, h, opts.cylinders);
        draw_surface(&mut canvas, h);
        Ok(canvas.finish(&format!("{} cylinders of S_c with c = {}", opts.cylinders.name(), h.c())))
    }
}

impl Figure for GeodesicFigure {
    fn name(&self) -> &'static str {
        "geodesic"
    }
    fn render(&self, h: &SurfaceHandle, opts: &FigureOptions) -> Result<String> {
        let spec = opts.geodesic.as_ref().ok_or_else(|| Error::Invalid("geodesic figure needs a start and direction".into()))?;
        let t = trace(h, &spec.start, &spec.direction, spec.max_crossings)?;
        let reach = t.triangles.iter().map(|tri| tri.n).max().unwrap_or(1);
        let mut canvas = Canvas::new(h, opts.window.max(reach + 1));
        draw_region(&mut canvas, h);
        draw_surface(&mut canvas, h);
        for (component, pts) in trace_polylines(h, &t) {
            let _ = writeln!(canvas.panel(component), r#"<polyline class="geodesic" points="{}"/>"#, points_attr(&pts));
        }
        let (x, y) = pt(&t.start.position);
        let _ = writeln!(canvas.panel(t.start.component), r##"<circle class="start" cx="{x}" cy="{y}" r="0.06" fill="#c00"/>"##);
        Ok(canvas.finish(&format!("trajectory on S_c with c = {}: {}", h.c(), t.code)))
    }
}

/// Figures registered by name.
pub struct FigureRegistry {
    figures: Vec<Box<dyn Figure>>,
}

impl Default for FigureRegistry {
    fn default() -> Self {
        let mut r = FigureRegistry { figures: Vec::new() };
        r.register(Box::new(SurfaceFigure));
        r.register(Box::new(CylindersFigure));
        r.register(Box::new(GeodesicFigure));
        r
    }
}

impl FigureRegistry {
    pub fn register(&mut self, figure: Box<dyn Figure>) {
        self.figures.retain(|f| f.name() != figure.name());
        self.figures.push(figure);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.figures.iter().map(|f| f.name()).collect()
    }

    pub fn render(&self, name: &str, h: &SurfaceHandle, opts: &FigureOptions) -> Result<String> {
        let fig = self
            .figures
            .iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::Unknown { kind: "figure", name: name.to_string() })?;
        fig.render(h, opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;
    use crate::Rational;

    #[test]
    fn deterministic_and_exact_vertices() {
        let h = build_surface(Rational::one(), 4).unwrap();
        let reg = FigureRegistry::default();
        let a = reg.render("surface", &h, &FigureOptions::default()).unwrap();
        let b = reg.render("surface", &build_surface(Rational::one(), 0).unwrap(), &FigureOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#"data-k="3" data-component="+" data-x="3" data-y="9""#));
        assert!(a.contains(r#"data-k="-2" data-component="-" data-x="2" data-y="-4""#));
    }

    #[test]
    fn geodesic_polylines_follow_code() {
        let h = build_surface(Rational::one(), 4).unwrap();
        let start = SurfacePoint::plus(RatVec2::new(Rational::new(1, 2).unwrap(), Rational::new(3, 4).unwrap()));
        let t = trace(&h, &start, &RatVec2::from_ints(0, 1), 4).unwrap();
        let lines = trace_polylines(&h, &t);
        // no boundary edge is crossed, so the whole path stays in Q+
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].1.first(), Some(&start.position));
        let opts = FigureOptions {
            geodesic: Some(GeodesicSpec { start, direction: RatVec2::from_ints(0, 1), max_crossings: 4 }),
            ..FigureOptions::default()
        };
        let svg = FigureRegistry::default().render("geodesic", &h, &opts).unwrap();
        assert_eq!(svg.matches("class=\"geodesic\"").count(), 1);
        assert!(FigureRegistry::default().render("geodesic", &h, &FigureOptions::default()).is_err());
    }

    #[test]
    fn unknown_figure() {
        let h = build_surface(Rational::one(), 1).unwrap();
        assert!(matches!(FigureRegistry::default().render("nope", &h, &FigureOptions::default()), Err(Error::Unknown { .. })));
    }
}
