//! Planar vectors, 2x2 matrices and affine maps over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RatVec2 {
    pub x: Rational,
    pub y: Rational,
}

impl RatVec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        RatVec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RatVec2::new(x.into(), y.into())
    }

    pub fn zero() -> Self {
        RatVec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &Rational) -> RatVec2 {
        RatVec2::new(&self.x * s, &self.y * s)
    }

    pub fn dot(&self, other: &RatVec2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> RatVec2 {
        RatVec2::new(-&self.y, self.x.clone())
    }

    /// `(x, y) -> (-x, y)`, the reflection in the vertical axis.
    pub fn reflect_vertical_axis(&self) -> RatVec2 {
        RatVec2::new(-&self.x, self.y.clone())
    }

    /// Integer coordinates, if both are integral and fit in i64.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.x.to_i64()?, self.y.to_i64()?))
    }

    /// True when `other` is a positive multiple of `self`.
    pub fn same_ray(&self, other: &RatVec2) -> bool {
        wedge(self, other).is_zero() && self.dot(other).is_positive()
    }
}

impl fmt::Debug for RatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for RatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&RatVec2> for &RatVec2 {
    type Output = RatVec2;
    fn add(self, rhs: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&RatVec2> for &RatVec2 {
    type Output = RatVec2;
    fn sub(self, rhs: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add for RatVec2 {
    type Output = RatVec2;
    fn add(self, rhs: RatVec2) -> RatVec2 {
        &self + &rhs
    }
}

impl Sub for RatVec2 {
    type Output = RatVec2;
    fn sub(self, rhs: RatVec2) -> RatVec2 {
        &self - &rhs
    }
}

impl Neg for &RatVec2 {
    type Output = RatVec2;
    fn neg(self) -> RatVec2 {
        RatVec2::new(-&self.x, -&self.y)
    }
}

impl Neg for RatVec2 {
    type Output = RatVec2;
    fn neg(self) -> RatVec2 {
        -&self
    }
}

/// `u.x * v.y - u.y * v.x`.
pub fn wedge(u: &RatVec2, v: &RatVec2) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl RatMat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        RatMat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        RatMat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        RatMat2::from_ints(1, 0, 0, 1)
    }

    pub fn neg_identity() -> Self {
        RatMat2::from_ints(-1, 0, 0, -1)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    pub fn apply(&self, v: &RatVec2) -> RatVec2 {
        RatVec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn inverse(&self) -> Result<RatMat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let inv = det.recip()?;
        Ok(RatMat2::new(
            &self.d * &inv,
            -(&self.b * &inv),
            -(&self.c * &inv),
            &self.a * &inv,
        ))
    }

    pub fn scale(&self, s: &Rational) -> RatMat2 {
        RatMat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    /// Outer product `u v^T`.
    pub fn outer(u: &RatVec2, v: &RatVec2) -> RatMat2 {
        RatMat2::new(&u.x * &v.x, &u.x * &v.y, &u.y * &v.x, &u.y * &v.y)
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|e| e.is_integer())
    }

    /// Entries reduced mod 2, for integral matrices.
    pub fn mod2(&self) -> Option<[u8; 4]> {
        let mut out = [0u8; 4];
        for (slot, e) in out.iter_mut().zip(self.entries()) {
            if !e.is_integer() {
                return None;
            }
            let two = num_bigint::BigInt::from(2);
            let m = ((e.numer() % &two) + &two) % &two;
            *slot = if m == num_bigint::BigInt::from(0) { 0 } else { 1 };
        }
        Some(out)
    }
}

impl fmt::Debug for RatMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for RatMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mul<&RatMat2> for &RatMat2 {
    type Output = RatMat2;
    fn mul(self, o: &RatMat2) -> RatMat2 {
        RatMat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for RatMat2 {
    type Output = RatMat2;
    fn mul(self, o: RatMat2) -> RatMat2 {
        &self * &o
    }
}

impl Add<&RatMat2> for &RatMat2 {
    type Output = RatMat2;
    fn add(self, o: &RatMat2) -> RatMat2 {
        RatMat2::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }
}

impl Neg for &RatMat2 {
    type Output = RatMat2;
    fn neg(self) -> RatMat2 {
        self.scale(&Rational::from_int(-1))
    }
}

/// `p -> linear * p + translation`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: RatMat2,
    pub translation: RatVec2,
}

impl AffineMap {
    pub fn new(linear: RatMat2, translation: RatVec2) -> Self {
        AffineMap { linear, translation }
    }

    pub fn identity() -> Self {
        AffineMap::new(RatMat2::identity(), RatVec2::zero())
    }

    pub fn translation(t: RatVec2) -> Self {
        AffineMap::new(RatMat2::identity(), t)
    }

    pub fn apply(&self, p: &RatVec2) -> RatVec2 {
        &self.linear.apply(p) + &self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap::new(
            &self.linear * &other.linear,
            &self.linear.apply(&other.translation) + &self.translation,
        )
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let t = -&inv.apply(&self.translation);
        Ok(AffineMap::new(inv, t))
    }
}

/// Apply an affine map to a point.
pub fn apply_affine(m: &AffineMap, p: &RatVec2) -> RatVec2 {
    m.apply(p)
}

/// Twice the signed area of a polygon (counterclockwise positive).
pub fn signed_area2(poly: &[RatVec2]) -> Rational {
    let n = poly.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        acc += &wedge(&poly[i], &poly[(i + 1) % n]);
    }
    acc
}
