//! Developments of coded trajectories into the plane.
//!
//! A code and a start triangle determine a chain of triangles `D_0..D_K`, each
//! sharing edge `s_j` with its predecessor. Laying the chain out with the
//! chart translations gives the development. From it we compute the region
//! `V` swept by straight lines crossing every `s_j`, certify that the chain
//! tiles `V` without overlap, and compute the cone of directions realizing
//! the code. Codes traced on one surface can then be transported by label to
//! another surface and tested there.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{self, Code, Terminal, TraceResult};
use crate::group::{phi_pair, GroupWord};
use crate::linalg::{signed_area2, wedge, RatVec2};
use crate::rational::Rational;
use crate::surface::{
    build_surface, incident_triangles, triangulation, Component, CylinderDirection, EdgeLabel, SurfaceHandle,
    SurfacePoint, TriangleId, VertexRef,
};

/// Developed shared edge `s_j`. Seen from the direction of travel, `top` is
/// on the left and `bottom` on the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DevSegment {
    pub label: EdgeLabel,
    pub bottom: RatVec2,
    pub top: RatVec2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Development {
    pub code: Code,
    pub chain: Vec<TriangleId>,
    /// Developed vertices, counterclockwise.
    pub triangles: Vec<[RatVec2; 3]>,
    /// Chart-to-plane translation of each chain triangle.
    pub offsets: Vec<RatVec2>,
    pub segments: Vec<DevSegment>,
    /// Direction of the reference trajectory, if known.
    pub reference: Option<RatVec2>,
    /// Developed start point of the reference trajectory, if known.
    pub start_point: Option<RatVec2>,
}

/// Lays out the chain of `code` starting in `start`.
pub fn develop(h: &SurfaceHandle, start: TriangleId, code: &Code) -> Result<Development> {
    let mut chain = vec![start];
    let mut offsets = vec![RatVec2::zero()];
    let mut triangles = vec![start.positions(h)];
    let mut segments = Vec::with_capacity(code.len());
    let mut tri = start;
    let mut offset = RatVec2::zero();
    for (index, label) in code.symbols.iter().enumerate() {
        let malformed = || Error::MalformedCode { index, label: label.to_string() };
        let slot = tri.edge_slot(label).ok_or_else(malformed)?;
        if index > 0 && code.symbols[index - 1] == *label {
            return Err(malformed());
        }
        let dev = triangles.last().expect("nonempty");
        segments.push(DevSegment { label: *label, bottom: dev[slot].clone(), top: dev[(slot + 1) % 3].clone() });
        if label.is_boundary() {
            let g = h.gluing_offset(label.index);
            offset = match tri.component {
                Component::Plus => &offset + &g,
                Component::Minus => &offset - &g,
            };
        }
        tri = tri.neighbor(slot);
        let pos = tri.positions(h).map(|p| &p + &offset);
        chain.push(tri);
        offsets.push(offset.clone());
        triangles.push(pos);
    }
    Ok(Development { code: code.clone(), chain, triangles, offsets, segments, reference: None, start_point: None })
}

/// Development of a traced trajectory, carrying its direction and start.
pub fn develop_trace(h: &SurfaceHandle, trace: &TraceResult, start: &SurfacePoint, direction: &RatVec2) -> Result<Development> {
    let mut dev = develop(h, trace.triangles[0], &trace.code)?;
    dev.reference = Some(direction.clone());
    dev.start_point = Some(start.position.clone());
    Ok(dev)
}

impl Development {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Plane position of chart point `p` of chain triangle `i`.
    pub fn develop_point(&self, i: usize, p: &RatVec2) -> RatVec2 {
        p + &self.offsets[i]
    }
}

/// Coordinates in which direction `u` is the positive x-axis:
/// `(u.p / |u|^2, u ^ p)`. The map has determinant one.
#[derive(Clone, Debug)]
pub struct Transverse {
    u: RatVec2,
    norm: Rational,
}

impl Transverse {
    pub fn new(u: &RatVec2) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Transverse { u: u.clone(), norm: u.norm_sq() })
    }

    pub fn apply(&self, p: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.u.dot(p) / &self.norm, wedge(&self.u, p))
    }

    pub fn height(&self, p: &RatVec2) -> Rational {
        wedge(&self.u, p)
    }
}

fn clip_below(poly: &[RatVec2], level: &Rational, keep_above: bool) -> Vec<RatVec2> {
    let inside = |p: &RatVec2| if keep_above { &p.y >= level } else { &p.y <= level };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        let (ia, ib) = (inside(a), inside(b));
        if ia {
            out.push(a.clone());
        }
        if ia != ib {
            let t = (level - &a.y) / (&b.y - &a.y);
            out.push(a + &(b - a).scale(&t));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Convex hull, counterclockwise, without collinear points.
pub fn convex_hull(points: &[RatVec2]) -> Vec<RatVec2> {
    let mut pts: Vec<RatVec2> = points.to_vec();
    pts.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &RatVec2, a: &RatVec2, b: &RatVec2| wedge(&(a - o), &(b - o));
    let mut lower: Vec<RatVec2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatVec2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn is_strictly_convex(poly: &[RatVec2]) -> bool {
    let n = poly.len();
    n >= 3
        && (0..n).all(|i| {
            let a = &poly[i];
            let b = &poly[(i + 1) % n];
            let c = &poly[(i + 2) % n];
            wedge(&(b - a), &(c - b)).is_positive()
        })
}

/// Interiors of two convex counterclockwise polygons are disjoint iff some
/// edge normal separates them.
fn interiors_disjoint(p: &[RatVec2], q: &[RatVec2]) -> bool {
    for (a, b) in [(p, q), (q, p)] {
        for i in 0..a.len() {
            let e = &a[(i + 1) % a.len()] - &a[i];
            // outward normal of a ccw edge
            let n = RatVec2::new(e.y.clone(), -&e.x);
            let max_a = a.iter().map(|v| v.dot(&n)).max().expect("nonempty");
            let min_b = b.iter().map(|v| v.dot(&n)).min().expect("nonempty");
            if max_a <= min_b {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VCertificate {
    /// Sum of piece areas (doubled).
    pub pieces_area2: Rational,
    /// Area of the convex hull of all pieces (doubled).
    pub hull_area2: Rational,
    pub convex: bool,
    pub disjoint_interiors: bool,
    /// The crossing chords `s_j` cut the strip in left-to-right order.
    pub chords_ordered: bool,
    /// The reference line lies strictly inside the strip.
    pub contains_reference: Option<bool>,
}

impl VCertificate {
    pub fn holds(&self) -> bool {
        self.convex
            && self.disjoint_interiors
            && self.chords_ordered
            && self.pieces_area2 == self.hull_area2
            && self.contains_reference != Some(false)
    }
}

/// `V = {p in U : height(p) in I}` in transverse coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionV {
    pub interval: (Rational, Rational),
    pub polygon: Vec<RatVec2>,
    pub pieces: Vec<Vec<RatVec2>>,
    pub certificate: VCertificate,
}

pub fn region_v(dev: &Development) -> Result<RegionV> {
    let u = dev.reference.as_ref().ok_or(Error::NoReferenceDirection)?;
    let tr = Transverse::new(u)?;
    let tris: Vec<Vec<RatVec2>> = dev.triangles.iter().map(|t| t.iter().map(|p| tr.apply(p)).collect()).collect();
    let range = |pts: &[RatVec2]| {
        let lo = pts.iter().map(|p| p.y.clone()).min().expect("nonempty");
        let hi = pts.iter().map(|p| p.y.clone()).max().expect("nonempty");
        (lo, hi)
    };
    // each I_j is the height range of s_j
    let (lo, hi) = if dev.segments.is_empty() {
        range(&tris[0])
    } else {
        let ranges: Vec<(Rational, Rational)> = dev
            .segments
            .iter()
            .map(|s| {
                let (a, b) = (tr.height(&s.bottom), tr.height(&s.top));
                (a.clone().min(b.clone()), a.max(b))
            })
            .collect();
        (
            ranges.iter().map(|r| r.0.clone()).max().expect("nonempty"),
            ranges.iter().map(|r| r.1.clone()).min().expect("nonempty"),
        )
    };
    if lo >= hi {
        return Err(Error::DegenerateInterval { lo: lo.to_string(), hi: hi.to_string() });
    }
    let pieces: Vec<Vec<RatVec2>> = tris
        .iter()
        .map(|t| clip_below(&clip_below(t, &lo, true), &hi, false))
        .collect();
    let all: Vec<RatVec2> = pieces.iter().flatten().cloned().collect();
    let polygon = convex_hull(&all);
    let pieces_area2 = pieces.iter().map(|p| signed_area2(p)).fold(Rational::zero(), |a, b| a + b);
    let hull_area2 = signed_area2(&polygon);
    let convex = is_strictly_convex(&polygon);

    // chord order: where each s_j meets the bottom and top of the strip
    let at_level = |a: &RatVec2, b: &RatVec2, y: &Rational| {
        let t = (y - &a.y) / (&b.y - &a.y);
        &a.x + &(&(&b.x - &a.x) * &t)
    };
    let chords: Vec<(Rational, Rational)> = dev
        .segments
        .iter()
        .map(|s| {
            let (a, b) = (tr.apply(&s.bottom), tr.apply(&s.top));
            (at_level(&a, &b, &lo), at_level(&a, &b, &hi))
        })
        .collect();
    let chords_ordered = chords.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && (w[0].0 < w[1].0 || w[0].1 < w[1].1));

    let boxes: Vec<(Rational, Rational)> = pieces
        .iter()
        .map(|p| {
            (
                p.iter().map(|v| v.x.clone()).min().expect("nonempty"),
                p.iter().map(|v| v.x.clone()).max().expect("nonempty"),
            )
        })
        .collect();
    let mut disjoint_interiors = true;
    'outer: for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if boxes[i].1 <= boxes[j].0 || boxes[j].1 <= boxes[i].0 {
                continue;
            }
            if !interiors_disjoint(&pieces[i], &pieces[j]) {
                disjoint_interiors = false;
                break 'outer;
            }
        }
    }
    let contains_reference = dev.start_point.as_ref().map(|p| {
        let y = tr.height(p);
        lo < y && y < hi
    });
    Ok(RegionV {
        interval: (lo, hi),
        polygon,
        pieces,
        certificate: VCertificate { pieces_area2, hull_area2, convex, disjoint_interiors, chords_ordered, contains_reference },
    })
}

/// Open cone of directions `v` for which some line in direction `v`
/// crosses every `s_j` from its right endpoint side to its left one, i.e.
/// `wedge(v, T_k - B_j) > 0` for all `j, k`. `lower` and `upper` are its
/// bounding rays, counterclockwise; `None` means unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityCone {
    pub lower: Option<RatVec2>,
    pub upper: Option<RatVec2>,
    pub nonempty: bool,
    pub closed_lower: bool,
    pub closed_upper: bool,
}

impl FeasibilityCone {
    pub fn contains(&self, v: &RatVec2) -> bool {
        if !self.nonempty {
            return false;
        }
        match (&self.lower, &self.upper) {
            (Some(lo), Some(up)) => wedge(lo, v).is_positive() && wedge(v, up).is_positive(),
            _ => !v.is_zero(),
        }
    }

    fn empty() -> Self {
        FeasibilityCone { lower: None, upper: None, nonempty: false, closed_lower: false, closed_upper: false }
    }
}

pub fn feasibility_cone(dev: &Development) -> FeasibilityCone {
    if dev.segments.is_empty() {
        return FeasibilityCone { lower: None, upper: None, nonempty: true, closed_lower: false, closed_upper: false };
    }
    let tops = convex_hull(&dev.segments.iter().map(|s| s.top.clone()).collect::<Vec<_>>());
    let bottoms = convex_hull(&dev.segments.iter().map(|s| s.bottom.clone()).collect::<Vec<_>>());
    let diffs: Vec<RatVec2> = tops.iter().flat_map(|t| bottoms.iter().map(move |b| t - b)).collect();
    if diffs.iter().any(|d| d.is_zero()) {
        return FeasibilityCone::empty();
    }
    // angular extremes, valid when all differences fit in an open half-plane
    let mut cw = diffs[0].clone();
    let mut ccw = diffs[0].clone();
    for d in &diffs[1..] {
        if wedge(&cw, d).is_negative() {
            cw = d.clone();
        }
        if wedge(&ccw, d).is_positive() {
            ccw = d.clone();
        }
    }
    let spread = wedge(&cw, &ccw);
    let narrow = spread.is_positive() || (spread.is_zero() && cw.dot(&ccw).is_positive());
    let inside = diffs.iter().all(|d| !wedge(&cw, d).is_negative() && !wedge(d, &ccw).is_negative());
    if !narrow || !inside {
        return FeasibilityCone::empty();
    }
    FeasibilityCone { lower: Some(-&ccw), upper: Some(cw), nonempty: true, closed_lower: false, closed_upper: false }
}

/// Holonomy of a triangulation edge, oriented as in its own chart.
pub fn label_holonomy(h: &SurfaceHandle, label: &EdgeLabel) -> RatVec2 {
    let (a, b) = label.endpoints();
    &h.vertex_position(b) - &h.vertex_position(a)
}

/// Wedge-sign agreement of edge holonomies on `S_c` and `S_1` over every
/// pair of triangulation labels in the window. Returns the disagreeing pairs.
pub fn sign_preservation(c: &Rational, window: usize) -> Result<Vec<(EdgeLabel, EdgeLabel)>> {
    let hc = build_surface(c.clone(), window + 1)?;
    let h1 = build_surface(Rational::one(), window + 1)?;
    let labels: Vec<EdgeLabel> = triangulation(&hc, window).into_iter().map(|e| e.label).collect();
    let hol_c: Vec<RatVec2> = labels.iter().map(|l| label_holonomy(&hc, l)).collect();
    let hol_1: Vec<RatVec2> = labels.iter().map(|l| label_holonomy(&h1, l)).collect();
    let mut bad = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if wedge(&hol_c[i], &hol_c[j]).signum() != wedge(&hol_1[i], &hol_1[j]).signum() {
                bad.push((labels[i], labels[j]));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossSurfaceReport {
    pub code: Code,
    pub c: Rational,
    pub c_prime: Rational,
    pub feasible: bool,
    pub cone: FeasibilityCone,
    pub common_prefix: Option<usize>,
    /// Set when the chain could not be built on the target surface.
    pub malformed: Option<String>,
}

/// Rebuilds the chain of `code` on `S_{c'}` by labels and tests its cone.
pub fn cross_surface_check(code: &Code, start: TriangleId, c: &Rational, c_prime: &Rational) -> Result<CrossSurfaceReport> {
    let target = build_surface(c_prime.clone(), 2)?;
    cross_surface_check_on(code, start, c, &target)
}

pub fn cross_surface_check_on(code: &Code, start: TriangleId, c: &Rational, target: &SurfaceHandle) -> Result<CrossSurfaceReport> {
    let (cone, malformed) = match develop(target, start, code) {
        Ok(dev) => (feasibility_cone(&dev), None),
        Err(e @ Error::MalformedCode { .. }) => (FeasibilityCone::empty(), Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(CrossSurfaceReport {
        code: code.clone(),
        c: c.clone(),
        c_prime: target.c().clone(),
        feasible: cone.nonempty,
        cone,
        common_prefix: None,
        malformed,
    })
}

/// Where the compared trajectories start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StartSpec {
    /// Separatrix from a vertex occurrence into the sector of a triangle.
    Separatrix { origin: VertexRef, sector: TriangleId },
    /// Midpoint of the core-curve start edge of cylinder `n`.
    CoreCurve { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionalComparison {
    pub start: StartSpec,
    pub u_c: RatVec2,
    pub u_1: RatVec2,
    pub code_c: Code,
    pub code_1: Code,
    pub terminal_c: String,
    pub terminal_1: String,
    pub common_prefix: usize,
    pub agree: bool,
    /// Start triangle of both traces.
    pub first_triangle: TriangleId,
}

fn terminal_label(t: &Terminal) -> String {
    match t {
        Terminal::HitSingularity { vertex, .. } => format!("hit {vertex}"),
        other => other.kind().to_string(),
    }
}

fn compare_traces(start: StartSpec, u_c: RatVec2, u_1: RatVec2, a: TraceResult, b: TraceResult) -> DirectionalComparison {
    let common_prefix = a.code.symbols.iter().zip(&b.code.symbols).take_while(|(x, y)| x == y).count();
    let terminal_c = terminal_label(&a.terminal);
    let terminal_1 = terminal_label(&b.terminal);
    let agree = a.code == b.code && terminal_c == terminal_1;
    DirectionalComparison {
        start,
        u_c,
        u_1,
        first_triangle: a.triangles[0],
        code_c: a.code,
        code_1: b.code,
        terminal_c,
        terminal_1,
        common_prefix,
        agree,
    }
}

/// Traces from the same labeled start in direction `u_c` on `S_c` and `u_1`
/// on `S_1`, where `(u_c, u_1) = phi_pair(word, base, c)`.
pub fn directional_code_compare(
    word: &GroupWord,
    base: CylinderDirection,
    c: &Rational,
    start: StartSpec,
    max_crossings: usize,
) -> Result<DirectionalComparison> {
    let hc = build_surface(c.clone(), 2)?;
    let h1 = build_surface(Rational::one(), 2)?;
    compare_on(&hc, &h1, word, base, start, max_crossings)
}

fn compare_on(
    hc: &SurfaceHandle,
    h1: &SurfaceHandle,
    word: &GroupWord,
    base: CylinderDirection,
    start: StartSpec,
    max_crossings: usize,
) -> Result<DirectionalComparison> {
    let (u_c, u_1) = phi_pair(word, &base.vector(), hc.c())?;
    let (a, b) = match start {
        StartSpec::Separatrix { origin, sector } => (
            flow::separatrix(hc, origin, &u_c, Some(sector), max_crossings)?,
            flow::separatrix(h1, origin, &u_1, Some(sector), max_crossings)?,
        ),
        StartSpec::CoreCurve { n } => (
            flow::trace(hc, &flow::core_curve_start(hc, base, n), &u_c, max_crossings)?,
            flow::trace(h1, &flow::core_curve_start(h1, base, n), &u_1, max_crossings)?,
        ),
    };
    Ok(compare_traces(start, u_c, u_1, a, b))
}

/// Every separatrix start at `P_k^{+/-}`, `|k| <= radius`, whose sector
/// contains `u_c`. A sector containing `u_c` but not `u_1` (or vice versa)
/// is itself a disagreement and reported in the second list.
pub fn matching_separatrix_starts(
    hc: &SurfaceHandle,
    h1: &SurfaceHandle,
    u_c: &RatVec2,
    u_1: &RatVec2,
    radius: usize,
) -> (Vec<StartSpec>, Vec<StartSpec>) {
    let r = radius as i64;
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for comp in [Component::Plus, Component::Minus] {
        for k in -r..=r {
            let origin = VertexRef::new(comp, k);
            let in_c: Vec<_> = flow::sectors_containing(hc, origin, u_c);
            let in_1: Vec<_> = flow::sectors_containing(h1, origin, u_1);
            for t in incident_triangles(origin) {
                let a = in_c.iter().find(|(x, _)| *x == t).map(|(_, open)| *open);
                let b = in_1.iter().find(|(x, _)| *x == t).map(|(_, open)| *open);
                let spec = StartSpec::Separatrix { origin, sector: t };
                match (a, b) {
                    (None, None) => {}
                    (x, y) if x == y => ok.push(spec),
                    _ => bad.push(spec),
                }
            }
        }
    }
    (ok, bad)
}

/// Outcome of comparing one `(word, base, c)` triple from every start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordComparison {
    pub word: GroupWord,
    pub base: CylinderDirection,
    pub c: Rational,
    pub comparisons: Vec<DirectionalComparison>,
    pub sector_mismatches: Vec<StartSpec>,
    /// Codes of `S_c` that failed the cone test on `S_1`, and vice versa.
    pub infeasible_transports: Vec<CrossSurfaceReport>,
}

impl WordComparison {
    pub fn agree(&self) -> bool {
        self.sector_mismatches.is_empty()
            && self.infeasible_transports.is_empty()
            && self.comparisons.iter().all(|c| c.agree)
    }

    /// Shortest failing comparison, for reporting.
    pub fn witness(&self) -> Option<&DirectionalComparison> {
        self.comparisons.iter().filter(|c| !c.agree).min_by_key(|c| c.common_prefix)
    }
}

/// Runs [`directional_code_compare`] from all label-matched separatrix
/// starts near the origin (and the core curve of cylinder 1 when the
/// direction is the base direction itself), then transports every code
/// to the other surface with [`cross_surface_check_on`].
pub fn compare_word(
    hc: &SurfaceHandle,
    h1: &SurfaceHandle,
    word: &GroupWord,
    base: CylinderDirection,
    max_crossings: usize,
    radius: usize,
) -> Result<WordComparison> {
    let (u_c, u_1) = phi_pair(word, &base.vector(), hc.c())?;
    let (mut starts, sector_mismatches) = matching_separatrix_starts(hc, h1, &u_c, &u_1, radius);
    if u_c.same_ray(&base.vector()) || (-&u_c).same_ray(&base.vector()) {
        starts.push(StartSpec::CoreCurve { n: 1 });
    }
    let comparisons = starts
        .par_iter()
        .map(|s| compare_on(hc, h1, word, base, *s, max_crossings))
        .collect::<Result<Vec<_>>>()?;
    let mut infeasible_transports = Vec::new();
    for cmp in &comparisons {
        for (code, from, to) in [(&cmp.code_c, hc, h1), (&cmp.code_1, h1, hc)] {
            let rep = cross_surface_check_on(code, cmp.first_triangle, from.c(), to)?;
            if !rep.feasible {
                infeasible_transports.push(rep);
            }
        }
    }
    Ok(WordComparison { word: word.clone(), base, c: hc.c().clone(), comparisons, sector_mismatches, infeasible_transports })
}

/// Classification of a single-symbol mutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MutantOutcome {
    /// The chain cannot be built from the mutated labels.
    Malformed,
    /// The chain develops but no direction realizes it.
    EmptyCone,
    /// Realizable: a counterexample to the expectation.
    Feasible,
}

/// Replaces interior symbol `index` by the third edge of its triangle.
pub fn mutate(trace: &TraceResult, index: usize) -> Option<Code> {
    let syms = &trace.code.symbols;
    if index == 0 || index + 1 >= syms.len() {
        return None;
    }
    let tri = trace.triangles[index];
    let third = tri.edges().into_iter().find(|e| *e != syms[index] && *e != syms[index - 1])?;
    let mut out = syms.clone();
    out[index] = third;
    Some(Code::new(out))
}

pub fn classify_mutant(h: &SurfaceHandle, start: TriangleId, code: &Code) -> Result<MutantOutcome> {
    match develop(h, start, code) {
        Ok(dev) => Ok(if feasibility_cone(&dev).nonempty { MutantOutcome::Feasible } else { MutantOutcome::EmptyCone }),
        Err(Error::MalformedCode { .. }) => Ok(MutantOutcome::Malformed),
        Err(e) => Err(e),
    }
}
