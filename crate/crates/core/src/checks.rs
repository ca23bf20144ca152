//! Named verification checks, selectable at run time.
//!
//! Each check implements [`Check`] and is registered by name in a
//! [`CheckRegistry`]. `run("all", ..)` executes every registered check in
//! parallel; any other suite name selects a single check.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    enumerate_words, parabolic_d, parabolic_e, realize, verify_parabolic, verify_relations, Symbol,
};
use crate::linalg::{wedge, RatMat2};
use crate::rational::Rational;
use crate::surface::{
    build_surface, cylinders, singularity_classes, smallest_cylinder_signature, triangles, triangulation,
    validate_triangulation, CylinderDirection, SurfaceHandle, VertexRef,
};
use crate::unfolding::sign_preservation;

/// Parameters shared by all checks.
#[derive(Clone, Debug)]
pub struct CheckContext {
    pub c: Rational,
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// The statement this check certifies.
    pub certifies: String,
    pub pass: bool,
    pub details: Vec<String>,
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn certifies(&self) -> &'static str;
    /// Returns the failures found; empty means pass.
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>>;
}

struct Relations;
struct Moduli;
struct Parabolic;
struct Symmetry;
struct Singularities;
struct Congruence;
struct Faithfulness;
struct TriangulationInvariance;
struct CylinderSignature;
struct SignPreservation;

impl Check for Relations {
    fn name(&self) -> &'static str {
        "relations"
    }
    fn certifies(&self) -> &'static str {
        "A, B, C are involutions, D = BA, E = (-I)CB, and every word has determinant +1 or -1"
    }
    fn run(&self, _h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let mut fails: Vec<String> =
            verify_relations(&ctx.c)?.into_iter().filter(|r| !r.pass).map(|r| format!("{} fails", r.relation)).collect();
        let one = Rational::one();
        let minus_one = -&one;
        for w in enumerate_words(&[Symbol::A, Symbol::B, Symbol::C, Symbol::NegI], 4, false) {
            let det = realize(&w, &ctx.c)?.matrix.det();
            if det != one && det != minus_one {
                fails.push(format!("det {w} = {det}"));
            }
        }
        Ok(fails)
    }
}

impl Check for Moduli {
    fn name(&self) -> &'static str {
        "moduli"
    }
    fn certifies(&self) -> &'static str {
        "every horizontal cylinder has modulus 1/2 and every slope-one cylinder has modulus 1/(2c+2)"
    }
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let half = Rational::new(1, 2)?;
        let slope = (&(&Rational::from_int(2) * &ctx.c) + &Rational::from_int(2)).recip()?;
        let mut fails = Vec::new();
        for (dir, want) in [(CylinderDirection::Horizontal, half), (CylinderDirection::SlopeOne, slope)] {
            for cyl in cylinders(h, dir, ctx.window)? {
                if cyl.modulus != want {
                    fails.push(format!("{} cylinder {} has modulus {}", dir.name(), cyl.index, cyl.modulus));
                }
            }
        }
        Ok(fails)
    }
}

impl Check for Parabolic {
    fn name(&self) -> &'static str {
        "parabolic"
    }
    fn certifies(&self) -> &'static str {
        "the horizontal shear by 2 and the slope-one shear by 2c+2 are single right Dehn twists with derivatives D and E_c"
    }
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let mut fails = Vec::new();
        let m_s = &(&Rational::from_int(2) * &ctx.c) + &Rational::from_int(2);
        let cases = [
            (CylinderDirection::Horizontal, Rational::from_int(2), parabolic_d()),
            (CylinderDirection::SlopeOne, m_s, parabolic_e(&ctx.c)),
        ];
        for (dir, m, want) in cases {
            let cert = verify_parabolic(h, dir, &m, ctx.window)?;
            if !cert.certified {
                fails.push(format!("{} shear by {m} not certified", dir.name()));
            }
            if cert.derivative != want {
                fails.push(format!("{} derivative {} != {}", dir.name(), cert.derivative, want));
            }
        }
        Ok(fails)
    }
}

impl Check for Symmetry {
    fn name(&self) -> &'static str {
        "symmetry"
    }
    fn certifies(&self) -> &'static str {
        "r(P_k) = P_-k, U(P_k) = P_1-k, and the vertices are in convex position"
    }
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let w = ctx.window as i64;
        h.ensure_window(ctx.window + 2);
        let r = SurfaceHandle::reflection();
        let u = h.u_map();
        let mut fails = Vec::new();
        for k in -w..=w {
            if h.vertex(-k) != r.apply(&h.vertex(k)) {
                fails.push(format!("reflection fails at k = {k}"));
            }
            if u.apply(&h.vertex(k)) != h.vertex(1 - k) {
                fails.push(format!("U fails at k = {k}"));
            }
            let (a, b, c) = (h.vertex(k), h.vertex(k + 1), h.vertex(k + 2));
            if !wedge(&(&b - &a), &(&c - &b)).is_positive() {
                fails.push(format!("convexity fails at k = {k}"));
            }
        }
        Ok(fails)
    }
}

impl Check for Singularities {
    fn name(&self) -> &'static str {
        "singularities"
    }
    fn certifies(&self) -> &'static str {
        "the gluings identify all vertices into exactly two cone singularities"
    }
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let map = singularity_classes(h, ctx.window.max(2));
        let mut fails = Vec::new();
        if map.classes.len() != 2 {
            fails.push(format!("{} classes", map.classes.len()));
        }
        if map.same_point(VertexRef::plus(0), VertexRef::minus(0)) != Some(false) {
            fails.push("P0+ and P0- are identified".to_string());
        }
        Ok(fails)
    }
}

impl Check for Congruence {
    fn name(&self) -> &'static str {
        "congruence"
    }
    fn certifies(&self) -> &'static str {
        "at c = 1 every orientation-preserving word of length <= 6 is the identity mod 2"
    }
    fn run(&self, _h: &SurfaceHandle, _ctx: &CheckContext) -> Result<Vec<String>> {
        let one = Rational::one();
        let mut fails = Vec::new();
        for w in enumerate_words(&[Symbol::A, Symbol::B, Symbol::C, Symbol::NegI], 6, false) {
            let m = realize(&w, &one)?.matrix;
            if m.det() == one && m.mod2() != Some([1, 0, 0, 1]) {
                fails.push(format!("{w} = {m} is not the identity mod 2"));
            }
        }
        Ok(fails)
    }
}

impl Check for Faithfulness {
    fn name(&self) -> &'static str {
        "faithfulness"
    }
    fn certifies(&self) -> &'static str {
        "no nonempty freely reduced word of length <= 8 in A, B, C realizes to +I or -I"
    }
    fn run(&self, _h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let id = RatMat2::identity();
        let neg = RatMat2::neg_identity();
        let words = enumerate_words(&[Symbol::A, Symbol::B, Symbol::C], 8, true);
        let mut fails = Vec::new();
        for w in words {
            let m = realize(&w, &ctx.c)?.matrix;
            if m == id || m == neg {
                fails.push(format!("{w} realizes to {m}"));
            }
        }
        Ok(fails)
    }
}

impl Check for TriangulationInvariance {
    fn name(&self) -> &'static str {
        "triangulation"
    }
    fn certifies(&self) -> &'static str {
        "the labeled trapezoid triangulation is a valid triangulation of S_c with the same incidences as on S_1"
    }
    fn run(&self, h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        let mut fails = Vec::new();
        if let Err(e) = validate_triangulation(h, ctx.window) {
            fails.push(e.to_string());
        }
        let h1 = build_surface(Rational::one(), 0)?;
        if triangulation(h, ctx.window) != triangulation(&h1, ctx.window) {
            fails.push("edge incidences differ from S_1".to_string());
        }
        // orientation of every triangle agrees with S_1
        for t in triangles(ctx.window) {
            if t.area2(h).signum() != t.area2(&h1).signum() {
                fails.push(format!("{t} flips orientation"));
            }
        }
        Ok(fails)
    }
}

impl Check for CylinderSignature {
    fn name(&self) -> &'static str {
        "cylinder-signature"
    }
    fn certifies(&self) -> &'static str {
        "the smallest horizontal cylinder has two boundary cone points and the smallest slope-one cylinder has four"
    }
    fn run(&self, h: &SurfaceHandle, _ctx: &CheckContext) -> Result<Vec<String>> {
        let mut fails = Vec::new();
        let (_, hp) = smallest_cylinder_signature(h, CylinderDirection::Horizontal)?;
        let (_, sp) = smallest_cylinder_signature(h, CylinderDirection::SlopeOne)?;
        if hp != 2 {
            fails.push(format!("horizontal: {hp} cone points"));
        }
        if sp != 4 {
            fails.push(format!("slope-one: {sp} cone points"));
        }
        Ok(fails)
    }
}

impl Check for SignPreservation {
    fn name(&self) -> &'static str {
        "sign-preservation"
    }
    fn certifies(&self) -> &'static str {
        "wedge signs between triangulation saddle connections agree on S_c and S_1"
    }
    fn run(&self, _h: &SurfaceHandle, ctx: &CheckContext) -> Result<Vec<String>> {
        Ok(sign_preservation(&ctx.c, ctx.window.min(8))?
            .into_iter()
            .map(|(a, b)| format!("sign of {a} ^ {b} differs"))
            .collect())
    }
}

/// Checks registered by name.
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl Default for CheckRegistry {
    fn default() -> Self {
        let mut r = CheckRegistry::empty();
        r.register(Box::new(Relations));
        r.register(Box::new(Moduli));
        r.register(Box::new(Parabolic));
        r.register(Box::new(Symmetry));
        r.register(Box::new(Singularities));
        r.register(Box::new(Congruence));
        r.register(Box::new(Faithfulness));
        r.register(Box::new(TriangulationInvariance));
        r.register(Box::new(CylinderSignature));
        r.register(Box::new(SignPreservation));
        r
    }
}

impl CheckRegistry {
    pub fn empty() -> Self {
        CheckRegistry { checks: Vec::new() }
    }

    /// Adds a check, replacing any check with the same name.
    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    /// Runs `suite` (`"all"` or a check name) on `S_c`.
    pub fn run(&self, suite: &str, ctx: &CheckContext) -> Result<Vec<CheckReport>> {
        let selected: Vec<&dyn Check> = if suite == "all" {
            self.checks.iter().map(|c| c.as_ref()).collect()
        } else {
            vec![self.get(suite).ok_or_else(|| Error::Unknown { kind: "check", name: suite.to_string() })?]
        };
        let h = build_surface(ctx.c.clone(), ctx.window + 2)?;
        selected
            .par_iter()
            .map(|check| {
                let details = check.run(&h, ctx)?;
                Ok(CheckReport {
                    name: check.name().to_string(),
                    certifies: check.certifies().to_string(),
                    pass: details.is_empty(),
                    details,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct AlwaysFails;

    impl Check for AlwaysFails {
        fn name(&self) -> &'static str {
            "always-fails"
        }
        fn certifies(&self) -> &'static str {
            "nothing"
        }
        fn run(&self, _h: &SurfaceHandle, _ctx: &CheckContext) -> Result<Vec<String>> {
            Ok(vec!["failed".to_string()])
        }
    }

    #[test]
    fn all_checks_pass() {
        let reg = CheckRegistry::default();
        for c in [Rational::one(), Rational::new(5, 4).unwrap()] {
            let reports = reg.run("all", &CheckContext { c, window: 10 }).unwrap();
            assert_eq!(reports.len(), reg.names().len());
            for r in reports {
                assert!(r.pass, "{}: {:?}", r.name, r.details);
            }
        }
    }

    #[test]
    fn selection_and_registration() {
        let mut reg = CheckRegistry::default();
        let ctx = CheckContext { c: Rational::one(), window: 4 };
        assert_eq!(reg.run("moduli", &ctx).unwrap().len(), 1);
        assert!(matches!(reg.run("nope", &ctx), Err(Error::Unknown { .. })));
        reg.register(Box::new(AlwaysFails));
        let r = reg.run("always-fails", &ctx).unwrap();
        assert!(!r[0].pass);
        let n = reg.names().len();
        reg.register(Box::new(AlwaysFails));
        assert_eq!(reg.names().len(), n);
    }
}
