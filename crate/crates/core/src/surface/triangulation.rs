//! Trapezoid triangulation, edge labels and singularity identification.
//!
//! Trapezoid `T_n = conv(P_{-n}, P_{1-n}, P_n, P_{n+1})` (`n >= 1`) sits between
//! the slope-one chords `s_n = P_{1-n} P_n` and `s_{n+1}`, with `s_1 = e_0`.
//! The diagonal `d_n = P_{1-n} P_{n+1}` splits it into
//!
//! * `Lower T_n = (P_{1-n}, P_n, P_{n+1})` with edges `s_n`, `e_n`, `d_n`
//! * `Upper T_n = (P_{1-n}, P_{n+1}, P_{-n})` with edges `d_n`, `s_{n+1}`, `e_{-n}`
//!
//! Vertices are listed counterclockwise and edge `i` joins vertex `i` to
//! vertex `i + 1`. The same scheme, rotated by a half turn, triangulates `Q-`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Component, SurfaceHandle, VertexRef};
use crate::error::{Error, Result};
use crate::linalg::{signed_area2, wedge, RatVec2};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Boundary,
    Chord,
    Diagonal,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Boundary => "boundary",
            EdgeKind::Chord => "chord",
            EdgeKind::Diagonal => "diagonal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeComponent {
    Plus,
    Minus,
    Glued,
}

impl EdgeComponent {
    pub fn symbol(self) -> &'static str {
        match self {
            EdgeComponent::Plus => "+",
            EdgeComponent::Minus => "-",
            EdgeComponent::Glued => "glued",
        }
    }
}

impl From<Component> for EdgeComponent {
    fn from(c: Component) -> Self {
        match c {
            Component::Plus => EdgeComponent::Plus,
            Component::Minus => EdgeComponent::Minus,
        }
    }
}

/// A saddle connection of the triangulation.
///
/// Boundary edges `e_k` are glued pairs and carry [`EdgeComponent::Glued`].
/// Chords `s_n` (`n >= 2`) and diagonals `d_n` (`n >= 1`) live in one chart.
/// Field order gives the stable sort order (kind, component, index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel {
    pub kind: EdgeKind,
    pub component: EdgeComponent,
    pub index: i64,
}

impl EdgeLabel {
    pub fn boundary(k: i64) -> Self {
        EdgeLabel { kind: EdgeKind::Boundary, component: EdgeComponent::Glued, index: k }
    }

    /// `s_n`; `s_1` is the boundary edge `e_0`.
    pub fn chord(n: usize, component: Component) -> Self {
        if n == 1 {
            return EdgeLabel::boundary(0);
        }
        EdgeLabel { kind: EdgeKind::Chord, component: component.into(), index: n as i64 }
    }

    pub fn diagonal(n: usize, component: Component) -> Self {
        EdgeLabel { kind: EdgeKind::Diagonal, component: component.into(), index: n as i64 }
    }

    pub fn is_boundary(&self) -> bool {
        self.kind == EdgeKind::Boundary
    }

    /// Endpoints of this edge as seen in chart `component`.
    pub fn endpoints_in(&self, component: Component) -> (VertexRef, VertexRef) {
        let n = self.index;
        let (a, b) = match self.kind {
            EdgeKind::Boundary => (n, n + 1),
            EdgeKind::Chord => (1 - n, n),
            EdgeKind::Diagonal => (1 - n, n + 1),
        };
        (VertexRef::new(component, a), VertexRef::new(component, b))
    }

    /// Endpoints in the edge's own chart (the `Q+` side for boundary edges).
    pub fn endpoints(&self) -> (VertexRef, VertexRef) {
        let comp = match self.component {
            EdgeComponent::Minus => Component::Minus,
            _ => Component::Plus,
        };
        self.endpoints_in(comp)
    }

    /// Triangle owning boundary edge `e_k` in the given chart.
    pub fn boundary_owner(k: i64, component: Component) -> TriangleId {
        if k >= 1 {
            TriangleId::new(component, k as usize, Half::Lower)
        } else if k == 0 {
            TriangleId::new(component, 1, Half::Lower)
        } else {
            TriangleId::new(component, k.unsigned_abs() as usize, Half::Upper)
        }
    }

    /// The two triangles sharing this edge. For a boundary edge the first
    /// lies in `Q+` and the second in `Q-`.
    pub fn triangles(&self) -> [TriangleId; 2] {
        match self.kind {
            EdgeKind::Boundary => [
                EdgeLabel::boundary_owner(self.index, Component::Plus),
                EdgeLabel::boundary_owner(self.index, Component::Minus),
            ],
            EdgeKind::Chord => {
                let comp = self.chart();
                let n = self.index as usize;
                [TriangleId::new(comp, n - 1, Half::Upper), TriangleId::new(comp, n, Half::Lower)]
            }
            EdgeKind::Diagonal => {
                let comp = self.chart();
                let n = self.index as usize;
                [TriangleId::new(comp, n, Half::Lower), TriangleId::new(comp, n, Half::Upper)]
            }
        }
    }

    fn chart(&self) -> Component {
        match self.component {
            EdgeComponent::Minus => Component::Minus,
            _ => Component::Plus,
        }
    }

    /// Largest trapezoid index touched by this edge.
    pub fn depth(&self) -> usize {
        match self.kind {
            EdgeKind::Boundary => self.index.unsigned_abs().max(1) as usize,
            EdgeKind::Chord => self.index as usize,
            EdgeKind::Diagonal => self.index as usize,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EdgeKind::Boundary => write!(f, "e{}", self.index),
            EdgeKind::Chord => write!(f, "s{}{}", self.index, self.component.symbol()),
            EdgeKind::Diagonal => write!(f, "d{}{}", self.index, self.component.symbol()),
        }
    }
}

impl FromStr for EdgeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseLabel(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        match head {
            'e' => {
                let k: i64 = rest.parse().map_err(|_| bad())?;
                Ok(EdgeLabel::boundary(k))
            }
            's' | 'd' => {
                let (num, comp) = if let Some(n) = rest.strip_suffix('+') {
                    (n, Component::Plus)
                } else if let Some(n) = rest.strip_suffix('-') {
                    (n, Component::Minus)
                } else {
                    return Err(bad());
                };
                if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                let n: usize = num.parse().map_err(|_| bad())?;
                match (head, n) {
                    ('s', n) if n >= 2 => Ok(EdgeLabel::chord(n, comp)),
                    ('d', n) if n >= 1 => Ok(EdgeLabel::diagonal(n, comp)),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

/// Serialized as `{"kind", "n", "component"}`.
impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EdgeLabel", 3)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("n", &self.index)?;
        st.serialize_field("component", self.component.symbol())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Lower,
    Upper,
}

/// One triangle of the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TriangleId {
    pub component: Component,
    pub n: usize,
    pub half: Half,
}

impl TriangleId {
    pub fn new(component: Component, n: usize, half: Half) -> Self {
        debug_assert!(n >= 1);
        TriangleId { component, n, half }
    }

    /// Counterclockwise vertex occurrences.
    pub fn vertices(&self) -> [VertexRef; 3] {
        let n = self.n as i64;
        let ks = match self.half {
            Half::Lower => [1 - n, n, n + 1],
            Half::Upper => [1 - n, n + 1, -n],
        };
        ks.map(|k| VertexRef::new(self.component, k))
    }

    /// Edge `i` joins vertex `i` to vertex `i + 1`.
    pub fn edges(&self) -> [EdgeLabel; 3] {
        let n = self.n;
        let comp = self.component;
        match self.half {
            Half::Lower => [EdgeLabel::chord(n, comp), EdgeLabel::boundary(n as i64), EdgeLabel::diagonal(n, comp)],
            Half::Upper => [
                EdgeLabel::diagonal(n, comp),
                EdgeLabel::chord(n + 1, comp),
                EdgeLabel::boundary(-(n as i64)),
            ],
        }
    }

    pub fn positions(&self, h: &SurfaceHandle) -> [RatVec2; 3] {
        self.vertices().map(|v| h.vertex_position(v))
    }

    /// Slot of `edge` among this triangle's edges.
    pub fn edge_slot(&self, edge: &EdgeLabel) -> Option<usize> {
        self.edges().iter().position(|e| e == edge)
    }

    /// Triangle on the other side of edge slot `i`. Crossing a boundary edge
    /// changes chart; the caller is responsible for the gluing translation.
    pub fn neighbor(&self, slot: usize) -> TriangleId {
        let edge = self.edges()[slot];
        if edge.is_boundary() {
            return EdgeLabel::boundary_owner(edge.index, self.component.other());
        }
        let [a, b] = edge.triangles();
        if a == *self {
            b
        } else {
            a
        }
    }

    /// Twice the area.
    pub fn area2(&self, h: &SurfaceHandle) -> Rational {
        signed_area2(&self.positions(h))
    }
}

impl fmt::Display for TriangleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = match self.half {
            Half::Lower => "L",
            Half::Upper => "U",
        };
        write!(f, "T{}{}{}", self.n, half, self.component.symbol())
    }
}

/// Triangles meeting a vertex occurrence.
pub fn incident_triangles(v: VertexRef) -> Vec<TriangleId> {
    let c = v.component;
    let k = v.k;
    let t = |n: i64, half| TriangleId::new(c, n as usize, half);
    match k {
        0 => vec![t(1, Half::Lower), t(1, Half::Upper)],
        1 => vec![t(1, Half::Lower)],
        k if k >= 2 => vec![t(k, Half::Lower), t(k - 1, Half::Lower), t(k - 1, Half::Upper)],
        k => vec![t(1 - k, Half::Lower), t(1 - k, Half::Upper), t(-k, Half::Upper)],
    }
}

/// All triangles of trapezoids `1..=window` in both charts.
pub fn triangles(window: usize) -> Vec<TriangleId> {
    let mut out = Vec::with_capacity(4 * window);
    for comp in [Component::Plus, Component::Minus] {
        for n in 1..=window {
            out.push(TriangleId::new(comp, n, Half::Lower));
            out.push(TriangleId::new(comp, n, Half::Upper));
        }
    }
    out
}

/// A labeled edge of the triangulation with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangulationEdge {
    pub label: EdgeLabel,
    pub endpoints: (VertexRef, VertexRef),
}

/// Edges of the triangulation of trapezoids `1..=window`, sorted by label.
///
/// Besides `e_k` (`|k| <= window`), `s_n` and `d_n`, the top chord
/// `s_{window+1}` is included since it bounds `Upper T_window`.
pub fn triangulation(h: &SurfaceHandle, window: usize) -> Vec<TriangulationEdge> {
    h.ensure_window(window + 1);
    let mut labels: Vec<EdgeLabel> = triangles(window).iter().flat_map(|t| t.edges()).collect();
    labels.sort();
    labels.dedup();
    labels.into_iter().map(|label| TriangulationEdge { label, endpoints: label.endpoints() }).collect()
}

/// Checks the triangulation of trapezoids `1..=window` geometrically: every
/// triangle is nondegenerate and counterclockwise, every chord has slope
/// one, and the triangles tile the window polygon of each chart.
pub fn validate_triangulation(h: &SurfaceHandle, window: usize) -> Result<()> {
    h.ensure_window(window + 1);
    let mut totals = [Rational::zero(), Rational::zero()];
    for t in triangles(window) {
        let a2 = t.area2(h);
        if !a2.is_positive() {
            return Err(Error::Invalid(format!("triangle {t} is degenerate or clockwise")));
        }
        let idx = (t.component == Component::Minus) as usize;
        totals[idx] += &a2;
    }
    for e in triangulation(h, window) {
        if e.label.kind == EdgeKind::Chord {
            let a = h.vertex_position(e.endpoints.0);
            let b = h.vertex_position(e.endpoints.1);
            let d = &b - &a;
            if d.x != d.y || d.x.is_zero() {
                return Err(Error::Invalid(format!("chord {} is not slope one", e.label)));
            }
        }
    }
    let w = window as i64;
    for (i, comp) in [Component::Plus, Component::Minus].into_iter().enumerate() {
        let poly: Vec<RatVec2> = (-w..=w + 1).map(|k| h.vertex_position(VertexRef::new(comp, k))).collect();
        if signed_area2(&poly) != totals[i] {
            return Err(Error::Invalid(format!("triangles do not tile the {} window", comp.name())));
        }
    }
    // interiors of triangles sharing an interior edge lie on opposite sides
    for t in triangles(window) {
        for slot in 0..3 {
            let e = t.edges()[slot];
            if e.is_boundary() {
                continue;
            }
            let nb = t.neighbor(slot);
            if nb.n > window {
                continue;
            }
            let (a, b) = e.endpoints_in(t.component);
            let pa = h.vertex_position(a);
            let pb = h.vertex_position(b);
            let apex = |tri: &TriangleId| {
                let v = tri.vertices().into_iter().find(|v| *v != a && *v != b).expect("apex");
                wedge(&(&pb - &pa), &(&h.vertex_position(v) - &pa)).signum()
            };
            if apex(&t) * apex(&nb) != -1 {
                return Err(Error::Invalid(format!("triangles {t} and {nb} overlap across {e}")));
            }
        }
    }
    Ok(())
}

/// Partition of vertex occurrences into singular points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityMap {
    pub window: usize,
    pub classes: Vec<Vec<VertexRef>>,
}

impl SingularityMap {
    pub fn class_of(&self, v: VertexRef) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    pub fn same_point(&self, a: VertexRef, b: VertexRef) -> Option<bool> {
        Some(self.class_of(a)? == self.class_of(b)?)
    }
}

/// Union-find over the gluings of the boundary edges `e_k`, `|k| <= window`,
/// acting on the vertex occurrences `P_j^{+/-}`, `-window <= j <= window + 1`.
///
/// Each gluing is applied geometrically: the endpoints of `e_k` are pushed
/// through the gluing translation and looked up among the `Q-` vertices.
pub fn singularity_classes(h: &SurfaceHandle, window: usize) -> SingularityMap {
    let w = window as i64;
    h.ensure_window(window + 1);
    let refs: Vec<VertexRef> = [Component::Plus, Component::Minus]
        .into_iter()
        .flat_map(|c| (-w..=w + 1).map(move |k| VertexRef::new(c, k)))
        .collect();
    let index: HashMap<VertexRef, usize> = refs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let minus_at: HashMap<RatVec2, VertexRef> = (-w..=w + 1)
        .map(|k| {
            let v = VertexRef::minus(k);
            (h.vertex_position(v), v)
        })
        .collect();

    let mut parent: Vec<usize> = (0..refs.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for k in -w..=w {
        let g = h.gluing_transfer(k);
        for j in [k, k + 1] {
            let image = g.apply(&h.vertex(j));
            let target = minus_at[&image];
            let a = find(&mut parent, index[&VertexRef::plus(j)]);
            let b = find(&mut parent, index[&target]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut groups: Vec<(usize, Vec<VertexRef>)> = Vec::new();
    for (i, v) in refs.iter().enumerate() {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(*v),
            None => groups.push((root, vec![*v])),
        }
    }
    let mut classes: Vec<Vec<VertexRef>> = groups.into_iter().map(|(_, mut g)| {
        g.sort();
        g
    }).collect();
    // the class of P_0^+ first
    classes.sort_by_key(|c| !c.contains(&VertexRef::plus(0)));
    SingularityMap { window, classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn first_trapezoid_at_c_one() {
        let h = build_surface(Rational::one(), 3).unwrap();
        let lower = TriangleId::new(Component::Plus, 1, Half::Lower);
        let upper = TriangleId::new(Component::Plus, 1, Half::Upper);
        let pos = |t: TriangleId| t.positions(&h).to_vec();
        assert_eq!(pos(lower), vec![RatVec2::from_ints(0, 0), RatVec2::from_ints(1, 1), RatVec2::from_ints(2, 4)]);
        assert_eq!(pos(upper), vec![RatVec2::from_ints(0, 0), RatVec2::from_ints(2, 4), RatVec2::from_ints(-1, 1)]);
        let edges: Vec<String> = triangulation(&h, 2).iter().map(|e| e.label.to_string()).collect();
        for want in ["e0", "d1+", "s2+", "d1-", "s3-", "e-2"] {
            assert!(edges.contains(&want.to_string()), "{want} missing from {edges:?}");
        }
        let d1 = EdgeLabel::diagonal(1, Component::Plus).endpoints();
        assert_eq!((d1.0.k, d1.1.k), (0, 2));
        let s2 = EdgeLabel::chord(2, Component::Plus).endpoints();
        assert_eq!((s2.0.k, s2.1.k), (-1, 2));
    }

    #[test]
    fn edge_counts() {
        let h = build_surface(Rational::one(), 0).unwrap();
        let w = 4usize;
        let edges = triangulation(&h, w);
        let count = |k: EdgeKind| edges.iter().filter(|e| e.label.kind == k).count();
        assert_eq!(count(EdgeKind::Boundary), 2 * w + 1);
        assert_eq!(count(EdgeKind::Chord), 2 * w);
        assert_eq!(count(EdgeKind::Diagonal), 2 * w);
        let mut sorted = edges.clone();
        sorted.sort_by_key(|e| e.label);
        assert_eq!(sorted, edges);
    }

    #[test]
    fn valid_for_several_parameters() {
        for c in [Rational::one(), q(5, 4), Rational::from_int(2), q(7, 3), Rational::from_int(11)] {
            let h = build_surface(c.clone(), 0).unwrap();
            validate_triangulation(&h, 8).unwrap_or_else(|e| panic!("c={c}: {e}"));
        }
    }

    #[test]
    fn neighbors_are_symmetric() {
        for t in triangles(6) {
            for slot in 0..3 {
                let e = t.edges()[slot];
                let nb = t.neighbor(slot);
                let back = nb.edge_slot(&e).expect("shared edge");
                assert_eq!(nb.neighbor(back), t);
                if !e.is_boundary() {
                    assert_eq!(nb.component, t.component);
                } else {
                    assert_ne!(nb.component, t.component);
                }
            }
        }
    }

    #[test]
    fn incidence_matches_triangle_vertices() {
        let tris = triangles(10);
        for comp in [Component::Plus, Component::Minus] {
            for k in -8i64..=9 {
                let v = VertexRef::new(comp, k);
                let mut want: Vec<_> = tris.iter().filter(|t| t.vertices().contains(&v)).copied().collect();
                let mut got = incident_triangles(v);
                want.sort();
                got.sort();
                assert_eq!(got, want, "vertex {v}");
            }
        }
    }

    #[test]
    fn label_strings_round_trip() {
        for s in ["e3", "e-1", "e0", "s2+", "d1-", "s10-"] {
            assert_eq!(s.parse::<EdgeLabel>().unwrap().to_string(), s);
        }
        for bad in ["", "x1", "s1+", "d0+", "s2", "e", "d+", "s-2+"] {
            assert!(bad.parse::<EdgeLabel>().is_err(), "{bad}");
        }
        let j = serde_json::to_string(&EdgeLabel::chord(2, Component::Minus)).unwrap();
        assert_eq!(j, r#"{"kind":"chord","n":2,"component":"-"}"#);
    }

    #[test]
    fn two_singularities() {
        let h = build_surface(Rational::one(), 0).unwrap();
        for w in [2usize, 5, 9] {
            let m = singularity_classes(&h, w);
            assert_eq!(m.classes.len(), 2, "window {w}");
        }
        assert!(singularity_classes(&h, 1).classes.len() <= 2);
        let m = singularity_classes(&h, 5);
        assert_eq!(m.same_point(VertexRef::plus(0), VertexRef::minus(0)), Some(false));
        assert_eq!(m.same_point(VertexRef::plus(0), VertexRef::minus(1)), Some(true));
        assert_eq!(m.same_point(VertexRef::plus(2), VertexRef::plus(-4)), Some(true));
        assert_eq!(m.same_point(VertexRef::plus(1), VertexRef::plus(2)), Some(false));
    }
}
