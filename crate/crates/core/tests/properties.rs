use proptest::prelude::*;

use infsurf::flow::{locate, trace, Location, Terminal};
use infsurf::group::{classify_direction, realize, reduce_direction};
use infsurf::surface::{
    build_surface, cylinders, Component, CylinderDirection, EdgeLabel, Half, SurfaceHandle, SurfacePoint, TriangleId,
};
use infsurf::unfolding::{develop_trace, feasibility_cone};
use infsurf::{RatVec2, Rational};

fn param() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(a, b)| {
        let r = Rational::new(a, b).unwrap();
        if r < Rational::one() {
            &r + &Rational::one()
        } else {
            r
        }
    })
}

fn interior_point(h: &SurfaceHandle, tri: TriangleId, w: [i64; 3]) -> SurfacePoint {
    let total = Rational::from_int(w.iter().sum());
    let mut p = RatVec2::zero();
    for (v, wi) in tri.positions(h).iter().zip(w) {
        p = &p + &v.scale(&Rational::from_int(wi).checked_div(&total).unwrap());
    }
    SurfacePoint::new(tri.component, p)
}

fn triangle() -> impl Strategy<Value = TriangleId> {
    (any::<bool>(), 1usize..=4, any::<bool>()).prop_map(|(plus, n, lower)| {
        TriangleId::new(
            if plus { Component::Plus } else { Component::Minus },
            n,
            if lower { Half::Lower } else { Half::Upper },
        )
    })
}

fn direction() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, -9i64..=9).prop_filter("nonzero", |d| *d != (0, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moduli_constant_for_any_parameter(c in param(), n in 1usize..30) {
        let h = build_surface(c.clone(), 0).unwrap();
        let horiz = cylinders(&h, CylinderDirection::Horizontal, n).unwrap();
        prop_assert!(horiz.iter().all(|cyl| cyl.modulus == Rational::new(1, 2).unwrap()));
        let want = (&(&Rational::from_int(2) * &c) + &Rational::from_int(2)).recip().unwrap();
        let slope = cylinders(&h, CylinderDirection::SlopeOne, n).unwrap();
        prop_assert!(slope.iter().all(|cyl| cyl.modulus == want));
    }

    #[test]
    fn gluing_matches_boundary_edges(c in param(), k in -20i64..20) {
        let h = build_surface(c, 0).unwrap();
        let label = EdgeLabel::boundary(k);
        let (a, b) = label.endpoints_in(Component::Plus);
        let (a2, b2) = label.endpoints_in(Component::Minus);
        let g = h.gluing_transfer(k);
        // translation carries the Q+ copy onto the Q- copy, reversing it
        prop_assert_eq!(g.apply(&h.vertex_position(a)), h.vertex_position(b2));
        prop_assert_eq!(g.apply(&h.vertex_position(b)), h.vertex_position(a2));
    }

    #[test]
    fn interior_points_locate_in_their_triangle(c in param(), tri in triangle(), w in [1i64..9, 1i64..9, 1i64..9]) {
        let h = build_surface(c, 6).unwrap();
        let p = interior_point(&h, tri, w);
        prop_assert_eq!(locate(&h, &p).unwrap(), Location::Interior(tri));
    }

    #[test]
    fn reversed_trace_reverses_code(
        c in param(),
        tri in triangle(),
        w in [1i64..9, 1i64..9, 1i64..9],
        (p, q) in direction(),
        len in 5usize..40,
    ) {
        let h = build_surface(c, 6).unwrap();
        let start = interior_point(&h, tri, w);
        let u = RatVec2::from_ints(p, q);
        let fwd = trace(&h, &start, &u, len).unwrap();
        prop_assume!(fwd.terminal == Terminal::CrossingBudgetExhausted);
        let back = trace(&h, &fwd.end, &(-&u), len).unwrap();
        let mut rev = fwd.code.symbols.clone();
        rev.reverse();
        prop_assert_eq!(back.code.symbols, rev);
        // the backward run stops where the forward run crossed its first
        // edge, so the two holonomies sum to the start's distance from it
        let first = fwd.crossings[0].clone();
        prop_assert_eq!(&fwd.holonomy + &back.holonomy, &first - &start.position);
    }

    #[test]
    fn development_is_consistent(c in param(), tri in triangle(), w in [1i64..9, 1i64..9, 1i64..9], (p, q) in direction()) {
        let h = build_surface(c, 6).unwrap();
        let start = interior_point(&h, tri, w);
        let u = RatVec2::from_ints(p, q);
        let res = trace(&h, &start, &u, 30).unwrap();
        prop_assume!(res.terminal == Terminal::CrossingBudgetExhausted);
        let dev = develop_trace(&h, &res, &start, &u).unwrap();
        let end = dev.develop_point(dev.chain.len() - 1, &res.end.position);
        prop_assert_eq!(&end - &start.position, res.holonomy.clone());
        prop_assert!(feasibility_cone(&dev).contains(&u));
        prop_assert!(!feasibility_cone(&dev).contains(&(-&u)));
    }

    #[test]
    fn reduction_is_exact_and_class_preserving(p in -40i64..40, q in -40i64..40) {
        prop_assume!((p, q) != (0, 0) && Rational::gcd_i64(p, q) == 1);
        let r = reduce_direction(p, q).unwrap();
        let m = realize(&r.word, &Rational::one()).unwrap().matrix;
        prop_assert_eq!(m.apply(&RatVec2::from_ints(r.base.0, r.base.1)), RatVec2::from_ints(p, q));
        prop_assert_eq!(classify_direction(p, q).unwrap().base(), r.base);
    }
}

#[test]
fn singular_points_split_by_parity() {
    use infsurf::surface::{singularity_classes, VertexRef};
    for c in [Rational::one(), Rational::new(5, 4).unwrap(), Rational::new(7, 3).unwrap()] {
        let h = build_surface(c, 8).unwrap();
        let map = singularity_classes(&h, 6);
        assert_eq!(map.classes.len(), 2);
        for k in -6i64..=7 {
            // P_k^+ with k even and P_k^- with k odd sit at the point of P_0^+
            let want = if k % 2 == 0 { 0 } else { 1 };
            assert_eq!(map.class_of(VertexRef::plus(k)), Some(want), "P_{k}+");
            assert_eq!(map.class_of(VertexRef::minus(k)), Some(1 - want), "P_{k}-");
        }
    }
}
