//! Exact integer and rational arithmetic for plane lattice geometry.
//!
//! Integers are [`BigInt`] and rationals are [`BigRational`], which is kept
//! in lowest terms with a positive denominator. On top of those this module
//! provides plane vectors with rational coordinates, 2x2 integer matrices and
//! affine lattice maps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Greatest integer `<= q`.
pub fn rat_floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Least integer `>= q`.
pub fn rat_ceil(q: &Rational) -> BigInt {
    -(-q.numer()).div_floor(q.denom())
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// JSON number when the value fits in `i64`, decimal string otherwise.
pub fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

/// Serde adapter that writes rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

/// A point or vector of the plane with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rational,
    pub y: Rational,
}

impl Vec2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Vec2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vec2::new(rat_int(x), rat_int(y))
    }

    pub fn from_big(x: BigInt, y: BigInt) -> Self {
        Vec2::new(Rational::from_integer(x), Rational::from_integer(y))
    }

    pub fn zero() -> Self {
        Vec2::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn dot(&self, other: &Vec2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-&self.y, self.x.clone())
    }

    pub fn scale(&self, k: &Rational) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        lcm(self.x.denom(), self.y.denom())
    }

    /// Integer coordinates; errors if either coordinate is fractional.
    pub fn to_ints(&self) -> Result<(BigInt, BigInt)> {
        if !self.is_integral() {
            return Err(Error::NotIntegral(self.to_string()));
        }
        Ok((self.x.to_integer(), self.y.to_integer()))
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_to_string(&self.x), rat_to_string(&self.y))
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Mul<&Vec2> for &Rational {
    type Output = Vec2;
    fn mul(self, rhs: &Vec2) -> Vec2 {
        rhs.scale(self)
    }
}

impl Serialize for Vec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&rat_to_string(&self.x))?;
        seq.serialize_element(&rat_to_string(&self.y))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Accept both "p/q" strings and bare JSON integers.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Str(String),
            Int(i64),
        }
        let [x, y]: [Coord; 2] = Deserialize::deserialize(d)?;
        let conv = |c: Coord| match c {
            Coord::Str(s) => parse_rational(&s).map_err(de::Error::custom),
            Coord::Int(n) => Ok(rat_int(n)),
        };
        Ok(Vec2::new(conv(x)?, conv(y)?))
    }
}

/// Determinant of the matrix with columns `u` and `v`.
pub fn det2(u: &Vec2, v: &Vec2) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

/// Divides an integer vector by the gcd of its components.
pub fn primitive(v: &Vec2) -> Result<Vec2> {
    let (x, y) = v.to_ints()?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = x.gcd(&y);
    Ok(Vec2::from_big(x / &g, y / &g))
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction.
pub fn primitive_direction(v: &Vec2) -> Result<Vec2> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let d = Rational::from_integer(v.denominator());
    primitive(&v.scale(&d))
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A 2x2 integer matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        IntMat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        IntMat2::new(1, 0, 0, 1)
    }

    /// Constructs a matrix and asserts `|det| = 1`.
    pub fn unimodular(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = IntMat2::new(a, b, c, d);
        if m.is_unimodular() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(m.det().to_string()))
        }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        let r = |v: &BigInt| Rational::from_integer(v.clone());
        Vec2::new(
            r(&self.a) * &p.x + r(&self.b) * &p.y,
            r(&self.c) * &p.x + r(&self.d) * &p.y,
        )
    }

    pub fn mul(&self, rhs: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<IntMat2> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        // det = +-1, so dividing by det is multiplying by det.
        Ok(IntMat2 {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }

    pub fn transpose(&self) -> IntMat2 {
        IntMat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }
}

/// `p -> linear * p + translate` with unimodular linear part and integer
/// translation, i.e. an automorphism of the integer lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: IntMat2,
    pub translate: Vec2,
}

impl AffineMap {
    pub fn new(linear: IntMat2, translate: Vec2) -> Result<Self> {
        if !linear.is_unimodular() {
            return Err(Error::NotUnimodular(linear.det().to_string()));
        }
        if !translate.is_integral() {
            return Err(Error::NotIntegral(translate.to_string()));
        }
        Ok(AffineMap { linear, translate })
    }

    pub fn linear(linear: IntMat2) -> Result<Self> {
        AffineMap::new(linear, Vec2::zero())
    }

    pub fn translation(translate: Vec2) -> Result<Self> {
        AffineMap::new(IntMat2::identity(), translate)
    }

    pub fn apply(&self, p: &Vec2) -> Vec2 {
        &self.linear.apply(p) + &self.translate
    }
}
