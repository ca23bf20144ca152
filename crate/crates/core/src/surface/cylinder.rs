//! Horizontal and slope-one cylinder decompositions.
//!
//! Horizontal cylinder `n` is the strip `y_{n-1} <= y <= y_n` of `Q+` together
//! with its half-turn image in `Q-`. Slope-one cylinder `n` is the trapezoid
//! `T_n` together with its image. Areas come from the shoelace formula on the
//! `Q+` piece; circumferences are sums of boundary saddle connections. Only
//! squared circumferences are stored so everything stays rational.

use serde::Serialize;

use super::SurfaceHandle;
use crate::error::{Error, Result};
use crate::linalg::{signed_area2, RatVec2};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CylinderDirection {
    Horizontal,
    SlopeOne,
}

impl CylinderDirection {
    pub fn name(self) -> &'static str {
        match self {
            CylinderDirection::Horizontal => "horizontal",
            CylinderDirection::SlopeOne => "slope-one",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "horizontal" | "h" => Ok(CylinderDirection::Horizontal),
            "slope-one" | "slope_one" | "s" => Ok(CylinderDirection::SlopeOne),
            other => Err(Error::Unknown { kind: "cylinder direction", name: other.to_string() }),
        }
    }

    /// Primitive holonomy direction of the core curves.
    pub fn vector(self) -> RatVec2 {
        match self {
            CylinderDirection::Horizontal => RatVec2::from_ints(1, 0),
            CylinderDirection::SlopeOne => RatVec2::from_ints(1, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub direction: CylinderDirection,
    pub index: usize,
    pub circumference_sq: Rational,
    pub area: Rational,
    pub modulus: Rational,
    /// Singular points met by the two boundary circles, counted with
    /// multiplicity along each circle.
    pub boundary_cone_points: usize,
}

fn horizontal(h: &SurfaceHandle, n: usize) -> Result<Cylinder> {
    let n = n as i64;
    let lo = h.vertex(n - 1);
    let hi = h.vertex(n);
    // Q+ piece: strip between e_{n-1} and e_{-n}
    let piece = [h.vertex(1 - n), lo.clone(), hi.clone(), h.vertex(-n)];
    // twice the Q+ area is the full area
    let area = signed_area2(&piece);
    let two = Rational::from_int(2);
    let circumference = &(&two * &lo.x) + &(&two * &hi.x);
    let circumference_sq = &circumference * &circumference;
    let modulus = area.checked_div(&circumference_sq)?;
    // bottom circle: segment of length 2 x_{n-1} in Q+ and 2 x_n in Q-;
    // top circle the other way round
    let pieces = [&lo.x, &hi.x, &hi.x, &lo.x].iter().filter(|x| x.is_positive()).count();
    Ok(Cylinder {
        direction: CylinderDirection::Horizontal,
        index: n as usize,
        circumference_sq,
        area,
        modulus,
        boundary_cone_points: pieces,
    })
}

fn slope_one(h: &SurfaceHandle, n: usize) -> Result<Cylinder> {
    let n = n as i64;
    let quad = [h.vertex(-n), h.vertex(1 - n), h.vertex(n), h.vertex(n + 1)];
    let area = signed_area2(&[quad[1].clone(), quad[2].clone(), quad[3].clone(), quad[0].clone()]);
    // chord s_m has x-extent x_m - x_{1-m} and length sqrt(2) times that
    let extent = |a: &RatVec2, b: &RatVec2| -> Result<Rational> {
        let d = b - a;
        if d.x != d.y || !d.x.is_positive() {
            return Err(Error::Invalid(format!("chord {a} -> {b} is not slope one")));
        }
        Ok(d.x)
    };
    let lower = extent(&quad[1], &quad[2])?;
    let upper = extent(&quad[0], &quad[3])?;
    let sum = &lower + &upper;
    let circumference_sq = &Rational::from_int(2) * &(&sum * &sum);
    let modulus = area.checked_div(&circumference_sq)?;
    // each circle is one chord in Q+ followed by one in Q-
    let pieces = [&lower, &upper, &upper, &lower].iter().filter(|x| x.is_positive()).count();
    Ok(Cylinder {
        direction: CylinderDirection::SlopeOne,
        index: n as usize,
        circumference_sq,
        area,
        modulus,
        boundary_cone_points: pieces,
    })
}

/// Cylinders `1..=count` in the given direction.
pub fn cylinders(h: &SurfaceHandle, direction: CylinderDirection, count: usize) -> Result<Vec<Cylinder>> {
    h.ensure_window(count + 1);
    (1..=count)
        .map(|n| match direction {
            CylinderDirection::Horizontal => horizontal(h, n),
            CylinderDirection::SlopeOne => slope_one(h, n),
        })
        .collect()
}

/// Area and boundary cone-point count of the smallest-area cylinder.
///
/// Areas grow with `n`; this is checked on the first few cylinders and an
/// error is returned if the minimum is not unique.
pub fn smallest_cylinder_signature(h: &SurfaceHandle, direction: CylinderDirection) -> Result<(Rational, usize)> {
    let cyls = cylinders(h, direction, 8)?;
    for w in cyls.windows(2) {
        if w[1].area <= w[0].area {
            return Err(Error::Invalid(format!(
                "{} cylinder areas are not increasing at n = {}",
                direction.name(),
                w[1].index
            )));
        }
    }
    let first = &cyls[0];
    Ok((first.area.clone(), first.boundary_cone_points))
}
