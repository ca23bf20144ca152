//! Lazy exact model of the surface `S_c`.
//!
//! `S_c` is built from two infinite convex regions. `Q+` is the convex hull of
//! the orbit `P_k = T_c^k(0,0)` of the affine map
//! `T_c(x, y) = (c x + (c-1) y + 1, (c+1) x + c y + 1)`, and `Q-` is `Q+`
//! rotated by a half turn. Each boundary edge `e_k = P_k P_{k+1}` of `Q+` is
//! glued by translation to its parallel partner in `Q-`.
//!
//! The two regions are kept as separate charts tagged [`Component::Plus`] and
//! [`Component::Minus`]; a point of `Q-` is stored in `Q-`'s own coordinates.
//! Vertices are materialized on demand and memoized behind a lock, so a
//! handle can be shared between threads.

mod cylinder;
mod triangulation;

use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{wedge, AffineMap, RatMat2, RatVec2};
use crate::rational::Rational;

pub use cylinder::{cylinders, smallest_cylinder_signature, Cylinder, CylinderDirection};
pub use triangulation::{
    incident_triangles, singularity_classes, triangles, triangulation, validate_triangulation, EdgeComponent,
    EdgeKind, EdgeLabel, Half, SingularityMap, TriangleId, TriangulationEdge,
};

/// Hard cap on the trapezoid index any computation may reach.
pub const DEFAULT_WINDOW_CAP: usize = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Component {
    pub fn other(self) -> Component {
        match self {
            Component::Plus => Component::Minus,
            Component::Minus => Component::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Component::Plus => "+",
            Component::Minus => "-",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Component::Plus => "plus",
            Component::Minus => "minus",
        }
    }

    pub fn parse(s: &str) -> Result<Component> {
        match s {
            "+" | "plus" | "Plus" => Ok(Component::Plus),
            "-" | "minus" | "Minus" => Ok(Component::Minus),
            other => Err(Error::Unknown { kind: "component", name: other.to_string() }),
        }
    }
}

/// A vertex occurrence `P_k` in one of the two charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexRef {
    pub component: Component,
    pub k: i64,
}

impl VertexRef {
    pub fn new(component: Component, k: i64) -> Self {
        VertexRef { component, k }
    }

    pub fn plus(k: i64) -> Self {
        VertexRef::new(Component::Plus, k)
    }

    pub fn minus(k: i64) -> Self {
        VertexRef::new(Component::Minus, k)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}{}", self.k, self.component.symbol())
    }
}

/// A point in one of the two charts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub component: Component,
    pub position: RatVec2,
}

impl SurfacePoint {
    pub fn new(component: Component, position: RatVec2) -> Self {
        SurfacePoint { component, position }
    }

    pub fn plus(position: RatVec2) -> Self {
        SurfacePoint::new(Component::Plus, position)
    }

    pub fn minus(position: RatVec2) -> Self {
        SurfacePoint::new(Component::Minus, position)
    }
}

#[derive(Debug)]
struct VertexCache {
    /// `forward[i] = P_i`
    forward: Vec<RatVec2>,
    /// `backward[i] = P_{-i}`
    backward: Vec<RatVec2>,
}

/// Lazily materialized `S_c`.
#[derive(Debug)]
pub struct SurfaceHandle {
    c: Rational,
    t_map: AffineMap,
    t_inv: AffineMap,
    cache: RwLock<VertexCache>,
}

impl SurfaceHandle {
    pub fn new(c: Rational) -> Result<Self> {
        build_surface(c, 0)
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// The affine map `T_c`.
    pub fn t_map(&self) -> &AffineMap {
        &self.t_map
    }

    /// `U(x, y) = (-c x + (c-1) y + 1, -(c+1) x + c y + 1)`, swapping `P_i` and `P_{1-i}`.
    pub fn u_map(&self) -> AffineMap {
        let c = &self.c;
        let one = Rational::one();
        AffineMap::new(
            RatMat2::new(-c, c - &one, -(c + &one), c.clone()),
            RatVec2::new(one.clone(), one),
        )
    }

    /// Reflection `(x, y) -> (-x, y)`.
    pub fn reflection() -> AffineMap {
        AffineMap::new(RatMat2::from_ints(-1, 0, 0, 1), RatVec2::zero())
    }

    /// Largest `K` with every `P_k`, `|k| <= K`, materialized.
    pub fn window(&self) -> usize {
        let cache = self.cache.read().expect("vertex cache poisoned");
        cache.forward.len().min(cache.backward.len()) - 1
    }

    /// Materialize every `P_k` with `|k| <= radius`.
    pub fn ensure_window(&self, radius: usize) {
        if self.window() >= radius {
            return;
        }
        let mut cache = self.cache.write().expect("vertex cache poisoned");
        while cache.forward.len() <= radius {
            let next = self.t_map.apply(cache.forward.last().expect("seeded"));
            cache.forward.push(next);
        }
        while cache.backward.len() <= radius {
            let next = self.t_inv.apply(cache.backward.last().expect("seeded"));
            cache.backward.push(next);
        }
    }

    /// `P_k` in the `Q+` chart.
    pub fn vertex(&self, k: i64) -> RatVec2 {
        let idx = k.unsigned_abs() as usize;
        {
            let cache = self.cache.read().expect("vertex cache poisoned");
            let side = if k >= 0 { &cache.forward } else { &cache.backward };
            if let Some(p) = side.get(idx) {
                return p.clone();
            }
        }
        self.ensure_window(idx);
        let cache = self.cache.read().expect("vertex cache poisoned");
        if k >= 0 {
            cache.forward[idx].clone()
        } else {
            cache.backward[idx].clone()
        }
    }

    /// Position of a vertex occurrence in its own chart (`-P_k` for `Q-`).
    pub fn vertex_position(&self, v: VertexRef) -> RatVec2 {
        let p = self.vertex(v.k);
        match v.component {
            Component::Plus => p,
            Component::Minus => -p,
        }
    }

    /// Materialized vertices `P_k`, `|k| <= radius`, in increasing `k`.
    pub fn vertices(&self, radius: usize) -> Vec<(i64, RatVec2)> {
        self.ensure_window(radius);
        let r = radius as i64;
        (-r..=r).map(|k| (k, self.vertex(k))).collect()
    }

    /// `P_k + P_{k+1}`: the translation carrying the `Q-` edge onto `e_k`.
    pub fn gluing_offset(&self, k: i64) -> RatVec2 {
        &self.vertex(k) + &self.vertex(k + 1)
    }

    /// Translation carrying boundary edge `e_k` of `Q+` onto its partner in
    /// `Q-`. `P_k` goes to `-P_{k+1}` and `P_{k+1}` to `-P_k`.
    pub fn gluing_transfer(&self, k: i64) -> AffineMap {
        AffineMap::translation(-self.gluing_offset(k))
    }

    /// Slope-one level `y - x` of chord `s_n = P_{1-n} P_n` (`s_1 = e_0`).
    pub fn chord_level(&self, n: usize) -> Rational {
        let p = self.vertex(n as i64);
        &p.y - &p.x
    }

    /// Weak containment of a chart point in the region spanned by
    /// trapezoids `1..=window`.
    pub fn contains(&self, p: &SurfacePoint, window: usize) -> bool {
        let q = match p.component {
            Component::Plus => p.position.clone(),
            Component::Minus => -&p.position,
        };
        let w = window as i64;
        self.ensure_window(window + 1);
        // inside every boundary edge e_k (left-turning chain) and below chord s_{W+1}
        for k in -w..=w {
            let a = self.vertex(k);
            let b = self.vertex(k + 1);
            if wedge(&(&b - &a), &(&q - &a)).is_negative() {
                return false;
            }
        }
        let top = self.chord_level(window + 1);
        &q.y - &q.x <= top
    }
}

/// Build `S_c` with `P_k` materialized for `|k| <= initial_window`.
pub fn build_surface(c: Rational, initial_window: usize) -> Result<SurfaceHandle> {
    if c < Rational::one() {
        return Err(Error::ParameterBelowOne(c));
    }
    let one = Rational::one();
    let t_map = AffineMap::new(
        RatMat2::new(c.clone(), &c - &one, &c + &one, c.clone()),
        RatVec2::new(one.clone(), one),
    );
    let t_inv = t_map.inverse()?;
    let handle = SurfaceHandle {
        c,
        t_map,
        t_inv,
        cache: RwLock::new(VertexCache { forward: vec![RatVec2::zero()], backward: vec![RatVec2::zero()] }),
    };
    handle.ensure_window(initial_window);
    Ok(handle)
}

/// `P_k` of `h`.
pub fn vertex(h: &SurfaceHandle, k: i64) -> RatVec2 {
    h.vertex(k)
}

/// See [`SurfaceHandle::gluing_transfer`].
pub fn gluing_transfer(h: &SurfaceHandle, k: i64) -> AffineMap {
    h.gluing_transfer(k)
}

/// Everything materialized in a window, in a serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub c: Rational,
    pub window: usize,
    /// `(k, P_k)` for `-window <= k <= window + 1`; `Q-` holds `-P_k`.
    pub vertices: Vec<(i64, RatVec2)>,
    /// Sorted by `(kind, component, index)`.
    pub edges: Vec<TriangulationEdge>,
    pub singularities: SingularityMap,
}

pub fn summarize(h: &SurfaceHandle, window: usize) -> SurfaceSummary {
    let w = window as i64;
    h.ensure_window(window + 1);
    SurfaceSummary {
        c: h.c().clone(),
        window,
        vertices: (-w..=w + 1).map(|k| (k, h.vertex(k))).collect(),
        edges: triangulation(h, window),
        singularities: singularity_classes(h, window.max(2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> RatVec2 {
        RatVec2::new(x, y)
    }

    /// Oracle: the orbit satisfies `P_{k+1} = 2c P_k - P_{k-1} + (0, 2)`,
    /// seeded by `P_0 = (0,0)`, `P_1 = (1,1)`.
    fn recurrence_oracle(c: &Rational, n: usize) -> Vec<RatVec2> {
        let mut out = vec![RatVec2::zero(), RatVec2::from_ints(1, 1)];
        let two_c = c * &Rational::from_int(2);
        while out.len() <= n {
            let l = out.len();
            let next = pt(
                &two_c * &out[l - 1].x - &out[l - 2].x,
                &two_c * &out[l - 1].y - &out[l - 2].y + Rational::from_int(2),
            );
            out.push(next);
        }
        out
    }

    #[test]
    fn parabola_at_c_one() {
        let h = build_surface(Rational::one(), 3).unwrap();
        let vs: Vec<_> = h.vertices(3).into_iter().map(|(_, p)| p).collect();
        let expect: Vec<_> = (-3..=3).map(|n| RatVec2::from_ints(n, n * n)).collect();
        assert_eq!(vs, expect);
        assert_eq!(h.vertex(4), RatVec2::from_ints(4, 16));
    }

    #[test]
    fn window_zero_is_seed_only() {
        let h = build_surface(Rational::one(), 0).unwrap();
        assert_eq!(h.window(), 0);
        assert_eq!(h.vertices(0), vec![(0, RatVec2::zero())]);
    }

    #[test]
    fn c_five_quarters_matches_recurrence() {
        let c = q(5, 4);
        let h = build_surface(c.clone(), 2).unwrap();
        assert_eq!(h.vertex(2), pt(q(5, 2), q(9, 2)));
        assert_eq!(h.vertex(-2), pt(q(-5, 2), q(9, 2)));
        // frozen from the recurrence oracle
        assert_eq!(h.vertex(3), pt(q(21, 4), q(49, 4)));
        let oracle = recurrence_oracle(&c, 12);
        for (k, p) in oracle.iter().enumerate() {
            assert_eq!(&h.vertex(k as i64), p, "k={k}");
        }
    }

    #[test]
    fn rejects_c_below_one() {
        assert!(matches!(build_surface(q(1, 2), 1), Err(Error::ParameterBelowOne(_))));
        assert!(build_surface(Rational::one(), 1).is_ok());
    }

    #[test]
    fn t_map_examples() {
        let h1 = build_surface(Rational::one(), 0).unwrap();
        assert_eq!(h1.t_map().apply(&RatVec2::zero()), RatVec2::from_ints(1, 1));
        let h = build_surface(q(5, 4), 0).unwrap();
        assert_eq!(h.t_map().apply(&RatVec2::from_ints(1, 1)), pt(q(5, 2), q(9, 2)));
    }

    #[test]
    fn gluing_transfer_examples() {
        let h = build_surface(Rational::one(), 2).unwrap();
        let g0 = h.gluing_transfer(0);
        assert_eq!(g0.translation, RatVec2::from_ints(-1, -1));
        assert_eq!(g0.apply(&RatVec2::from_ints(1, 1)), RatVec2::zero());
        assert_eq!(h.gluing_transfer(-1).translation, RatVec2::from_ints(1, -1));
        for k in -3..3 {
            let g = h.gluing_transfer(k);
            assert_eq!(g.apply(&h.vertex(k)), -h.vertex(k + 1));
            assert_eq!(g.apply(&h.vertex(k + 1)), -h.vertex(k));
            assert_eq!(g.inverse().unwrap().compose(&g), AffineMap::identity());
        }
    }

    #[test]
    fn symmetries_and_convexity() {
        for c in [Rational::one(), q(5, 4), Rational::from_int(2), q(7, 3)] {
            let h = build_surface(c, 12).unwrap();
            let u = h.u_map();
            let r = SurfaceHandle::reflection();
            for k in -12i64..=12 {
                assert_eq!(h.vertex(-k), r.apply(&h.vertex(k)));
                if (1 - k).abs() <= 12 {
                    assert_eq!(u.apply(&h.vertex(k)), h.vertex(1 - k));
                }
            }
            for k in -12i64..=10 {
                let a = h.vertex(k);
                let b = h.vertex(k + 1);
                let c = h.vertex(k + 2);
                assert!(wedge(&(&b - &a), &(&c - &b)).is_positive());
            }
            for k in 1..=12 {
                assert!(h.vertex(k).x > h.vertex(k - 1).x);
            }
        }
    }

    #[test]
    fn containment() {
        let h = build_surface(Rational::one(), 4).unwrap();
        assert!(h.contains(&SurfacePoint::plus(pt(q(1, 2), q(3, 4))), 2));
        assert!(!h.contains(&SurfacePoint::plus(pt(q(1, 2), q(1, 4))), 2));
        assert!(h.contains(&SurfacePoint::minus(pt(q(-1, 2), q(-3, 4))), 2));
        assert!(h.contains(&SurfacePoint::plus(RatVec2::zero()), 1));
    }

    #[test]
    fn concurrent_extension() {
        let h = std::sync::Arc::new(build_surface(q(5, 4), 0).unwrap());
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let h = h.clone();
                std::thread::spawn(move || (0..30).for_each(|k| drop(h.vertex((k * (t + 1)) % 40 - 20))))
            })
            .collect();
        for j in handles {
            j.join().unwrap();
        }
        let oracle = recurrence_oracle(h.c(), 20);
        for k in 0..=20 {
            assert_eq!(h.vertex(k), oracle[k as usize]);
            assert_eq!(h.vertex(-k), oracle[k as usize].reflect_vertical_axis());
        }
    }
}
