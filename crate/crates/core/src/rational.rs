//! Arbitrary-precision rationals.
//!
//! Thin newtype over [`num_rational::BigRational`]. Values are always kept in
//! lowest terms with a positive denominator, so structural equality is
//! numerical equality. Serialization uses the string forms `"p/q"` or `"p"`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Lossy conversion, only for rendering.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Rational) -> Rational {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rational) -> Rational {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact reduction of an integer pair by its gcd, used for primitive vectors.
    pub fn gcd_i64(a: i64, b: i64) -> i64 {
        a.gcd(&b)
    }
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign_of(r: &Rational) -> i32 {
    r.signum()
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let valid = |x: &str| {
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num) || !valid(den) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

// Division by zero panics here; fallible callers use `checked_div`.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalizes_on_construction() {
        assert_eq!(r(6, -4), r(-3, 2));
        assert_eq!(r(6, -4).denom(), &BigInt::from(2));
        assert_eq!(r(0, 7), Rational::zero());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(r(5, 4).to_string(), "5/4");
        assert_eq!(r(8, 4).to_string(), "2");
        assert_eq!(r(-1, 3).to_string(), "-1/3");
        assert_eq!("5/4".parse::<Rational>().unwrap(), r(5, 4));
        assert_eq!(" -10/4 ".parse::<Rational>().unwrap(), r(-5, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), r(7, 1));
        for bad in ["", "1/", "/2", "a/b", "1.5", "1/2/3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} parsed");
        }
        assert_eq!("1/0".parse::<Rational>(), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert_eq!(r(1, 2).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert!(Rational::new(1, 0).is_err());
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign_of(&r(3, 7)), 1);
        assert_eq!(sign_of(&Rational::zero()), 0);
        assert_eq!(sign_of(&r(-2, 1)), -1);
    }

    #[test]
    fn serde_string_form() {
        let v = serde_json::to_string(&r(-9, 6)).unwrap();
        assert_eq!(v, "\"-3/2\"");
        let back: Rational = serde_json::from_str(&v).unwrap();
        assert_eq!(back, r(-3, 2));
    }

    proptest! {
        #[test]
        fn add_then_sub_round_trips(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = r(a, b);
            let y = r(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            // lowest terms, positive denominator
            prop_assert!(x.denom() > &BigInt::from(0));
            prop_assert!(x.numer().gcd(x.denom()) == BigInt::from(1) || x.is_zero());
        }

        #[test]
        fn string_form_round_trips(a in any::<i64>(), b in 1i64..i64::MAX) {
            let x = r(a, b);
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
