//! Straight-line flow on `S_c` and symbolic coding.
//!
//! A trajectory is followed triangle by triangle. In each triangle the exit
//! edge is found from the signs of `wedge(u, V_i - p)` at the three vertices;
//! only the exit edge is intersected. A zero sign at a vertex ahead of the
//! point is an exact singularity hit. Crossing a boundary edge `e_k` moves the
//! point to the other chart with the gluing translation.
//!
//! Time is measured in units of the (unnormalized) direction vector, so a
//! trajectory reaching time `t` has holonomy `t u`.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{wedge, RatVec2};
use crate::rational::Rational;
use crate::surface::{
    incident_triangles, singularity_classes, Component, CylinderDirection, EdgeComponent, EdgeLabel, Half,
    SurfaceHandle, SurfacePoint, TriangleId, VertexRef, DEFAULT_WINDOW_CAP,
};

/// A finite window of a symbolic code. Symbol `anchor` is the first edge
/// crossed at or after the start.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Code {
    pub symbols: Vec<EdgeLabel>,
    pub anchor: usize,
}

impl Code {
    pub fn new(symbols: Vec<EdgeLabel>) -> Self {
        Code { symbols, anchor: 0 }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.symbols.iter().map(|s| s.to_string()).collect()
    }

    /// Parses a whitespace or comma separated label list.
    pub fn parse(s: &str) -> Result<Code> {
        let symbols = s
            .split(|ch: char| ch.is_whitespace() || ch == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<EdgeLabel>>>()?;
        Ok(Code::new(symbols))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels().join(", "))
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.symbols.iter().map(|s| s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    CrossingBudgetExhausted,
    HitSingularity { vertex: VertexRef, time: Rational },
    LeftWindow,
}

impl Terminal {
    pub fn kind(&self) -> &'static str {
        match self {
            Terminal::CrossingBudgetExhausted => "crossing-budget-exhausted",
            Terminal::HitSingularity { .. } => "hit-singularity",
            Terminal::LeftWindow => "left-window",
        }
    }

    pub fn hit(&self) -> Option<VertexRef> {
        match self {
            Terminal::HitSingularity { vertex, .. } => Some(*vertex),
            _ => None,
        }
    }
}

impl Serialize for Terminal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Terminal::HitSingularity { vertex, time } => {
                let mut st = serializer.serialize_struct("Terminal", 3)?;
                st.serialize_field("kind", self.kind())?;
                st.serialize_field("vertex", vertex)?;
                st.serialize_field("time", time)?;
                st.end()
            }
            _ => {
                let mut st = serializer.serialize_struct("Terminal", 1)?;
                st.serialize_field("kind", self.kind())?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceResult {
    pub code: Code,
    pub terminal: Terminal,
    /// `triangles[i]` is the triangle left when crossing `code.symbols[i]`;
    /// the last entry is the triangle holding `end`.
    pub triangles: Vec<TriangleId>,
    pub start: SurfacePoint,
    pub end: SurfacePoint,
    /// `crossings[i]` is where `code.symbols[i]` is crossed, in the chart of
    /// `triangles[i]` (before any gluing).
    #[serde(skip)]
    pub crossings: Vec<RatVec2>,
    pub time: Rational,
    pub holonomy: RatVec2,
}

/// Result of point location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Interior(TriangleId),
    Edge { label: EdgeLabel, triangles: Vec<TriangleId> },
    Vertex { vertex: VertexRef, triangles: Vec<TriangleId> },
}

impl Location {
    pub fn triangles(&self) -> Vec<TriangleId> {
        match self {
            Location::Interior(t) => vec![*t],
            Location::Edge { triangles, .. } | Location::Vertex { triangles, .. } => triangles.clone(),
        }
    }
}

fn mirror_triangle(t: TriangleId) -> TriangleId {
    TriangleId::new(t.component.other(), t.n, t.half)
}

fn mirror_label(l: EdgeLabel) -> EdgeLabel {
    let component = match l.component {
        EdgeComponent::Plus => EdgeComponent::Minus,
        EdgeComponent::Minus => EdgeComponent::Plus,
        EdgeComponent::Glued => EdgeComponent::Glued,
    };
    EdgeLabel { component, ..l }
}

/// Locates a chart point. Interior points give one triangle; points on an
/// edge or at a vertex give every triangle containing them.
pub fn locate(h: &SurfaceHandle, p: &SurfacePoint) -> Result<Location> {
    locate_capped(h, p, DEFAULT_WINDOW_CAP)
}

pub fn locate_capped(h: &SurfaceHandle, p: &SurfacePoint, cap: usize) -> Result<Location> {
    if p.component == Component::Minus {
        let mirrored = SurfacePoint::plus(-&p.position);
        return Ok(match locate_capped(h, &mirrored, cap)? {
            Location::Interior(t) => Location::Interior(mirror_triangle(t)),
            Location::Edge { label, triangles } => Location::Edge {
                label: mirror_label(label),
                triangles: triangles.into_iter().map(mirror_triangle).collect(),
            },
            Location::Vertex { vertex, triangles } => Location::Vertex {
                vertex: VertexRef::minus(vertex.k),
                triangles: triangles.into_iter().map(mirror_triangle).collect(),
            },
        });
    }
    let q = &p.position;
    let level = &q.y - &q.x;
    if level.is_negative() {
        return Err(Error::OutsideComponent("plus"));
    }
    // trapezoid n with chord levels l_n <= level < l_{n+1}
    let mut n = 1usize;
    loop {
        if n > cap {
            return Err(Error::LeftWindow { cap });
        }
        if level < h.chord_level(n + 1) {
            break;
        }
        n += 1;
    }
    let mut candidates = vec![TriangleId::new(Component::Plus, n, Half::Lower), TriangleId::new(Component::Plus, n, Half::Upper)];
    if n >= 2 && level == h.chord_level(n) {
        candidates.push(TriangleId::new(Component::Plus, n - 1, Half::Lower));
        candidates.push(TriangleId::new(Component::Plus, n - 1, Half::Upper));
    }
    let mut containing = Vec::new();
    let mut zero_slots = Vec::new();
    for t in candidates {
        let vs = t.positions(h);
        let signs: Vec<i32> = (0..3).map(|i| wedge(&(&vs[(i + 1) % 3] - &vs[i]), &(q - &vs[i])).signum()).collect();
        if signs.iter().all(|s| *s >= 0) {
            containing.push(t);
            zero_slots.push(signs.iter().enumerate().filter(|(_, s)| **s == 0).map(|(i, _)| i).collect::<Vec<_>>());
        }
    }
    if containing.is_empty() {
        return Err(Error::OutsideComponent("plus"));
    }
    for (t, zeros) in containing.iter().zip(&zero_slots) {
        if zeros.len() >= 2 {
            // two edges meet at a vertex
            let slot = if zeros.contains(&0) && zeros.contains(&2) { 0 } else { zeros[0] + 1 };
            let vertex = t.vertices()[slot % 3];
            return Ok(Location::Vertex { vertex, triangles: incident_triangles(vertex) });
        }
    }
    if let Some(zeros) = zero_slots.iter().zip(&containing).find(|(z, _)| !z.is_empty()) {
        let label = zeros.1.edges()[zeros.0[0]];
        return Ok(Location::Edge { label, triangles: containing });
    }
    Ok(Location::Interior(containing[0]))
}

/// Chart position after crossing boundary edge `e_k` out of `from`.
fn glue(h: &SurfaceHandle, k: i64, from: Component, p: &RatVec2) -> RatVec2 {
    let g = h.gluing_offset(k);
    match from {
        Component::Plus => p - &g,
        Component::Minus => p + &g,
    }
}

enum Step {
    Hit(VertexRef, Rational),
    Exit(usize, Rational),
}

/// Next event for a ray from `p` (inside `tri` or on its entry edge).
fn step(h: &SurfaceHandle, tri: &TriangleId, p: &RatVec2, u: &RatVec2) -> Result<Step> {
    let vs = tri.positions(h);
    let rel: Vec<RatVec2> = vs.iter().map(|v| v - p).collect();
    let s: Vec<i32> = rel.iter().map(|r| wedge(u, r).signum()).collect();
    let norm = u.norm_sq();
    for i in 0..3 {
        if s[i] == 0 && u.dot(&rel[i]).is_positive() {
            let t = u.dot(&rel[i]).checked_div(&norm)?;
            return Ok(Step::Hit(tri.vertices()[i], t));
        }
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        if s[i] < 0 && s[j] > 0 {
            let e = &vs[j] - &vs[i];
            let t = wedge(&rel[i], &e).checked_div(&wedge(u, &e))?;
            return Ok(Step::Exit(i, t));
        }
    }
    Err(Error::Invalid(format!("no exit from {tri} at {p} in direction {u}")))
}

struct Walker<'a> {
    h: &'a SurfaceHandle,
    u: RatVec2,
    max_crossings: usize,
    cap: usize,
    symbols: Vec<EdgeLabel>,
    triangles: Vec<TriangleId>,
    crossings: Vec<RatVec2>,
    start: SurfacePoint,
    tri: TriangleId,
    p: RatVec2,
    time: Rational,
}

impl Walker<'_> {
    fn finish(self, terminal: Terminal) -> TraceResult {
        let holonomy = self.u.scale(&self.time);
        let mut triangles = self.triangles;
        triangles.push(self.tri);
        TraceResult {
            code: Code::new(self.symbols),
            terminal,
            triangles,
            start: self.start,
            end: SurfacePoint::new(self.tri.component, self.p),
            crossings: self.crossings,
            time: self.time,
            holonomy,
        }
    }

    /// Crosses edge slot `slot` of the current triangle at the current point.
    fn cross(&mut self, slot: usize) -> bool {
        let label = self.tri.edges()[slot];
        let next = self.tri.neighbor(slot);
        if next.n > self.cap {
            return false;
        }
        self.crossings.push(self.p.clone());
        if label.is_boundary() {
            self.p = glue(self.h, label.index, self.tri.component, &self.p);
        }
        self.symbols.push(label);
        self.triangles.push(self.tri);
        self.tri = next;
        true
    }

    fn run(mut self) -> Result<TraceResult> {
        loop {
            match step(self.h, &self.tri, &self.p, &self.u)? {
                Step::Hit(vertex, t) => {
                    self.time += &t;
                    self.p = self.h.vertex_position(vertex);
                    let time = self.time.clone();
                    return Ok(self.finish(Terminal::HitSingularity { vertex, time }));
                }
                Step::Exit(slot, t) => {
                    if self.symbols.len() >= self.max_crossings {
                        return Ok(self.finish(Terminal::CrossingBudgetExhausted));
                    }
                    let advanced = &self.p + &self.u.scale(&t);
                    let old = std::mem::replace(&mut self.p, advanced);
                    self.time += &t;
                    if !self.cross(slot) {
                        self.p = old;
                        self.time -= &t;
                        return Ok(self.finish(Terminal::LeftWindow));
                    }
                }
            }
        }
    }
}

/// Traces from a chart point until `max_crossings` edges are crossed, a
/// singularity is hit, or the trajectory passes trapezoid [`DEFAULT_WINDOW_CAP`].
pub fn trace(h: &SurfaceHandle, start: &SurfacePoint, direction: &RatVec2, max_crossings: usize) -> Result<TraceResult> {
    trace_capped(h, start, direction, max_crossings, DEFAULT_WINDOW_CAP)
}

pub fn trace_capped(
    h: &SurfaceHandle,
    start: &SurfacePoint,
    direction: &RatVec2,
    max_crossings: usize,
    cap: usize,
) -> Result<TraceResult> {
    if direction.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let u = direction.clone();
    let mut w = Walker {
        h,
        u: u.clone(),
        max_crossings,
        cap,
        symbols: Vec::new(),
        triangles: Vec::new(),
        crossings: Vec::new(),
        start: start.clone(),
        tri: TriangleId::new(start.component, 1, Half::Lower),
        p: start.position.clone(),
        time: Rational::zero(),
    };
    match locate_capped(h, start, cap)? {
        Location::Vertex { .. } => return Err(Error::StartAtVertex),
        Location::Interior(t) => w.tri = t,
        Location::Edge { label, triangles } => {
            // the triangle ahead; if the edge is the chart boundary and the
            // direction points out, the triangle ahead is across the gluing
            let mut ahead = None;
            for t in &triangles {
                let slot = t.edge_slot(&label).expect("edge of containing triangle");
                let vs = t.positions(h);
                let e = &vs[(slot + 1) % 3] - &vs[slot];
                match wedge(&e, &u).signum() {
                    1 => ahead = Some((*t, slot, false)),
                    0 => {
                        // running along the edge: the endpoint ahead is hit
                        let end = if e.dot(&u).is_positive() { (slot + 1) % 3 } else { slot };
                        let vertex = t.vertices()[end];
                        w.tri = *t;
                        let rel = &vs[end] - &start.position;
                        let time = u.dot(&rel).checked_div(&u.norm_sq())?;
                        w.time = time.clone();
                        w.p = vs[end].clone();
                        return Ok(w.finish(Terminal::HitSingularity { vertex, time }));
                    }
                    _ => {
                        if ahead.is_none() && label.is_boundary() && triangles.len() == 1 {
                            ahead = Some((*t, slot, true));
                        }
                    }
                }
            }
            let (t, slot, outward) = ahead.ok_or_else(|| Error::Invalid(format!("no triangle ahead on {label}")))?;
            if outward {
                w.tri = t;
                if !w.cross(slot) {
                    return Ok(w.finish(Terminal::LeftWindow));
                }
            } else {
                w.symbols.push(label);
                w.triangles.push(t.neighbor(slot));
                w.crossings.push(start.position.clone());
                w.tri = t;
            }
        }
    }
    w.run()
}

/// Whether `u` points into the closed sector of `tri` at vertex slot `j`.
/// Returns `Some(true)` for the open sector, `Some(false)` on a side.
fn sector_membership(h: &SurfaceHandle, tri: &TriangleId, j: usize, u: &RatVec2) -> Option<bool> {
    let vs = tri.positions(h);
    let a = &vs[(j + 1) % 3] - &vs[j];
    let b = &vs[(j + 2) % 3] - &vs[j];
    let sa = wedge(&a, u).signum();
    let sb = wedge(u, &b).signum();
    if sa < 0 || sb < 0 {
        return None;
    }
    if sa == 0 && !a.dot(u).is_positive() || sb == 0 && !b.dot(u).is_positive() {
        return None;
    }
    Some(sa > 0 && sb > 0)
}

/// Triangles at `origin` whose closed sector contains `u`.
pub fn sectors_containing(h: &SurfaceHandle, origin: VertexRef, u: &RatVec2) -> Vec<(TriangleId, bool)> {
    incident_triangles(origin)
        .into_iter()
        .filter_map(|t| {
            let j = t.vertices().iter().position(|v| *v == origin).expect("incident");
            sector_membership(h, &t, j, u).map(|open| (t, open))
        })
        .collect()
}

/// Traces a trajectory leaving a singular point.
///
/// `sector` picks the incident triangle the direction enters; by default
/// the first incident triangle whose closed sector contains the direction.
pub fn separatrix(
    h: &SurfaceHandle,
    origin: VertexRef,
    direction: &RatVec2,
    sector: Option<TriangleId>,
    max_crossings: usize,
) -> Result<TraceResult> {
    separatrix_capped(h, origin, direction, sector, max_crossings, DEFAULT_WINDOW_CAP)
}

pub fn separatrix_capped(
    h: &SurfaceHandle,
    origin: VertexRef,
    direction: &RatVec2,
    sector: Option<TriangleId>,
    max_crossings: usize,
    cap: usize,
) -> Result<TraceResult> {
    if direction.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let u = direction.clone();
    let tri = match sector {
        Some(t) => {
            let j = t.vertices().iter().position(|v| *v == origin).ok_or(Error::NotInSector)?;
            sector_membership(h, &t, j, &u).ok_or(Error::NotInSector)?;
            t
        }
        None => sectors_containing(h, origin, &u).first().map(|(t, _)| *t).ok_or(Error::NotInSector)?,
    };
    let w = Walker {
        h,
        u,
        max_crossings,
        cap,
        symbols: Vec::new(),
        triangles: Vec::new(),
        crossings: Vec::new(),
        start: SurfacePoint::new(origin.component, h.vertex_position(origin)),
        tri,
        p: h.vertex_position(origin),
        time: Rational::zero(),
    };
    w.run()
}

/// A saddle connection found by a separatrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaddleConnection {
    /// Singular point index: 0 for the point of `P_0^+`, 1 for the other.
    pub start: usize,
    pub end: usize,
    pub origin: VertexRef,
    pub terminus: VertexRef,
    pub holonomy: RatVec2,
    pub code: Code,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaddleBudget {
    pub max_crossings: usize,
    /// Separatrices start at `P_k^{+/-}` with `|k| <= vertex_radius`.
    pub vertex_radius: usize,
    pub cap: usize,
}

impl Default for SaddleBudget {
    fn default() -> Self {
        SaddleBudget { max_crossings: 500, vertex_radius: 2, cap: DEFAULT_WINDOW_CAP }
    }
}

/// Saddle connections in direction `±u` found from the window vertices.
pub fn find_saddle_connections(h: &SurfaceHandle, direction: &RatVec2, budget: SaddleBudget) -> Result<Vec<SaddleConnection>> {
    if direction.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let r = budget.vertex_radius as i64;
    let mut jobs = Vec::new();
    for comp in [Component::Plus, Component::Minus] {
        for k in -r..=r {
            let v = VertexRef::new(comp, k);
            for u in [direction.clone(), -direction] {
                for (t, _) in sectors_containing(h, v, &u) {
                    jobs.push((v, u.clone(), t));
                }
            }
        }
    }
    let hits: Vec<(VertexRef, TraceResult)> = jobs
        .par_iter()
        .map(|(v, u, t)| separatrix_capped(h, *v, u, Some(*t), budget.max_crossings, budget.cap).map(|res| (*v, res)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, res)| res.terminal.hit().is_some())
        .collect();
    let reach = hits
        .iter()
        .map(|(v, res)| v.k.unsigned_abs().max(res.terminal.hit().expect("hit").k.unsigned_abs()))
        .max()
        .unwrap_or(1) as usize;
    let classes = singularity_classes(h, reach.max(2) + 1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (v, res) in hits {
        let terminus = res.terminal.hit().expect("hit");
        let start = classes.class_of(v).ok_or_else(|| Error::Invalid(format!("{v} outside class window")))?;
        let end = classes.class_of(terminus).ok_or_else(|| Error::Invalid(format!("{terminus} outside class window")))?;
        if seen.insert((start, res.holonomy.clone())) {
            out.push(SaddleConnection { start, end, origin: v, terminus, holonomy: res.holonomy, code: res.code });
        }
    }
    out.sort_by(|a, b| (a.start, &a.holonomy.x, &a.holonomy.y).cmp(&(b.start, &b.holonomy.x, &b.holonomy.y)));
    Ok(out)
}

/// A point on the core curve of cylinder `n`: the midpoint of the `Q+`
/// boundary edge `e_{-n}`, which lies halfway across the cylinder.
/// The edge crosses both cylinder families between the same boundary
/// levels, so the point serves either direction.
pub fn core_curve_start(h: &SurfaceHandle, _direction: CylinderDirection, n: usize) -> SurfacePoint {
    let n = n.max(1) as i64;
    let (a, b) = (h.vertex(-n), h.vertex(1 - n));
    let half = Rational::new(1, 2).expect("nonzero");
    SurfacePoint::plus((&a + &b).scale(&half))
}

/// Smallest `p` such that the code is `p`-periodic over its whole length.
pub fn code_period(code: &Code) -> Option<usize> {
    let s = &code.symbols;
    (1..=s.len() / 2).find(|&p| (p..s.len()).all(|i| s[i] == s[i - p]))
}
