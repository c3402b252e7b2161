//! Explicit polygon families.
//!
//! Every generator returns a canonical [`RationalPolygon`]; none of them
//! assumes the resulting lattice-point profile, which is always established
//! by counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rational, Vec2};
use crate::polygon::RationalPolygon;
use crate::vieta::VietaSolution;

/// Vertex lists of the sixteen reflexive polygons.
const REFLEXIVE: [&[(i64, i64)]; 16] = [
    &[(-1, -1), (2, -1), (-1, 2)],
    &[(-1, -1), (2, -1), (0, 1), (-1, 0)],
    &[(-1, -1), (2, -1), (1, 1)],
    &[(-1, -1), (1, -1), (1, 0), (0, 1)],
    &[(-1, 0), (0, -1), (1, 0), (0, 1)],
    &[(-1, 0), (0, -1), (1, -1), (1, 0), (0, 1), (-1, 1)],
    &[(-1, 0), (0, -1), (1, -1), (1, 0), (0, 1)],
    &[(-1, -1), (0, -1), (1, 0), (1, 1), (-1, 1)],
    &[(-1, -1), (1, -1), (1, 1), (0, 1)],
    &[(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 0)],
    &[(-1, -1), (1, -1), (1, 1), (-1, 1)],
    &[(-1, -1), (1, 0), (0, 1)],
    &[(-1, 1), (1, 1), (0, -1)],
    &[(-1, 0), (0, -1), (1, -1), (0, 1)],
    &[(-1, -1), (2, -1), (0, 1), (-1, 1)],
    &[(-2, 1), (2, 1), (0, -1)],
];

pub const REFLEXIVE_COUNT: usize = REFLEXIVE.len();

fn ints(pts: &[(i64, i64)]) -> Vec<Vec2> {
    pts.iter().map(|&(x, y)| Vec2::from_ints(x, y)).collect()
}

fn point(x: Rational, y: Rational) -> Vec2 {
    Vec2::new(x, y)
}

fn r(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

fn z(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Lattice points strictly inside an integral polygon.
pub fn interior_lattice_points(p: &RationalPolygon) -> Vec<Vec2> {
    let vs = p.vertices();
    let lo_x = vs.iter().map(|v| v.x.floor().to_integer()).min().expect("nonempty");
    let hi_x = vs.iter().map(|v| v.x.ceil().to_integer()).max().expect("nonempty");
    let lo_y = vs.iter().map(|v| v.y.floor().to_integer()).min().expect("nonempty");
    let hi_y = vs.iter().map(|v| v.y.ceil().to_integer()).max().expect("nonempty");
    let mut out = Vec::new();
    let mut x = lo_x;
    while x <= hi_x {
        let mut y = lo_y.clone();
        while y <= hi_y {
            let q = Vec2::from_big(x.clone(), y.clone());
            if p.contains_in_interior(&q) {
                out.push(q);
            }
            y += 1u32;
        }
        x += 1u32;
    }
    out
}

/// Entry `index` of the reflexive catalog, translated so that its interior
/// lattice point is the origin.
pub fn reflexive_polygon(index: usize) -> Result<RationalPolygon> {
    let pts = REFLEXIVE
        .get(index)
        .ok_or_else(|| Error::OutOfRange(format!("reflexive index {index} must satisfy 0 ≤ index ≤ 15")))?;
    let p = RationalPolygon::hull(&ints(pts))?;
    let inner = interior_lattice_points(&p);
    if inner.len() != 1 {
        return Err(Error::Internal(format!("reflexive entry {index} has {} interior points", inner.len())));
    }
    Ok(p.translate(&-&inner[0]))
}

pub fn reflexive_catalog() -> Vec<RationalPolygon> {
    (0..REFLEXIVE_COUNT).map(|k| reflexive_polygon(k).expect("catalog entries are valid")).collect()
}

fn check_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        Err(Error::OutOfRange(format!("{name} = 0 violates {name} ≥ 1")))
    } else {
        Ok(())
    }
}

/// Triangle with `i` interior lattice points and a single boundary point.
pub fn example_pip_b1(i: u64) -> Result<RationalPolygon> {
    check_positive("i", i)?;
    let d = 2 * i + 1;
    RationalPolygon::hull(&[
        point(z(i), z(0)),
        point(r(-(2 * i as i64), d), r(2 * i - 1, d)),
        point(r(-1, d), r(-(2 * i as i64 - 1), d)),
    ])
}

/// Triangle with `i` interior lattice points and two boundary points.
pub fn example_pip_b2(i: u64) -> Result<RationalPolygon> {
    check_positive("i", i)?;
    RationalPolygon::hull(&[point(z(i), z(0)), point(z(-1), r(i, i + 1)), point(z(-1), r(-(i as i64), i + 1))])
}

/// The triangle `{⟨u_k, ·⟩ <= 1}` with normals `(y, (y+z)/x)`, `(−x, −1)`,
/// `(0, −1)` attached to a solution with `x | y` and `x | z`.
pub fn t_xyz(s: &VietaSolution) -> Result<RationalPolygon> {
    let (x, y, zz) = (&s.x, &s.y, &s.z);
    if !y.is_multiple_of(x) || !zz.is_multiple_of(x) {
        return Err(Error::NotConstructible(format!("{x} must divide both {y} and {zz} for ({x}, {y}, {zz})")));
    }
    let sum = x + y + zz;
    RationalPolygon::hull(&[
        point(-r(sum.clone(), x * zz), r(x + y, zz.clone())),
        point(z(0), z(-1)),
        point(r(sum, x * y), z(-1)),
    ])
}

/// `F_0 = 0, F_1 = 1, ...`
pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// conv{(−3F_{2j−1}/F_{2j+1}, 3F_{2j−1}/F_{2j+1} − 1), (0, −1), (3F_{2j+1}/F_{2j−1}, −1)}.
pub fn fibonacci_triangle(j: u64) -> Result<RationalPolygon> {
    check_positive("j", j)?;
    let (f1, f3) = (fibonacci(2 * j - 1), fibonacci(2 * j + 1));
    let q = r(3u32 * &f1, f3.clone());
    RationalPolygon::hull(&[
        point(-q.clone(), &q - Rational::one()),
        point(z(0), z(-1)),
        point(r(3u32 * &f3, f1), z(-1)),
    ])
}

/// Whether an integral polygon with `i >= 1` interior and `b` boundary lattice
/// points exists: `i = 1` and `3 <= b <= 9`, or `i >= 2` and `3 <= b <= 2i + 6`.
pub fn scott_admissible(i: u64, b: u64) -> bool {
    match i {
        0 => false,
        1 => (3..=9).contains(&b),
        _ => b >= 3 && b <= 2 * i + 6,
    }
}

/// An integral polygon with profile `(i, b)`.
///
/// * `b = 3`: conv{(0,0), (1,0), (2, 2i+1)}.
/// * `(i, b) = (1, 9)`: conv{(−1,−1), (2,−1), (−1,2)}.
/// * otherwise three rows: `y = 0` from `x = 0` to `x = i+1`, and rows
///   `y = ±1` of lengths `⌈(b−4)/2⌉` and `⌊(b−4)/2⌋` starting at `x = 0`.
pub fn scott_grid_polygon(i: u64, b: u64) -> Result<RationalPolygon> {
    if !scott_admissible(i, b) {
        let bound = if i == 1 { "3 ≤ b ≤ 9".to_string() } else { "3 ≤ b ≤ 2i + 6".to_string() };
        return Err(Error::OutOfRange(format!("(i, b) = ({i}, {b}) violates i ≥ 1 and {bound}")));
    }
    let i_ = i as i64;
    let pts = if b == 3 {
        vec![(0, 0), (1, 0), (2, 2 * i_ + 1)]
    } else if i == 1 && b == 9 {
        vec![(-1, -1), (2, -1), (-1, 2)]
    } else {
        let m = b as i64 - 4;
        let (top, bottom) = ((m + 1) / 2, m / 2);
        vec![(0, 0), (i_ + 1, 0), (0, 1), (top, 1), (0, -1), (bottom, -1)]
    };
    RationalPolygon::hull(&ints(&pts))
}

/// Denominators with an explicit family `P^d_{i,b}`.
pub const PIP_DENOMINATORS: [u64; 3] = [3, 4, 10];

/// Largest admissible `b` for `P^d_{i,b}`.
pub fn construct_pip_max_b(d: u64, i: u64) -> Result<u64> {
    match d {
        3 => Ok(3 * i + 5),
        4 => Ok(4 * i + 4),
        10 => Ok(5 * i + 4),
        _ => Err(Error::OutOfRange(format!("denominator {d} must be one of 3, 4, 10"))),
    }
}

fn bound_text(d: u64) -> &'static str {
    match d {
        3 => "b ≤ 3i + 5",
        4 => "b ≤ 4i + 4",
        _ => "b ≤ 5i + 4",
    }
}

/// Convex hull of the point list defining `P^d_{i,b}`; points that fall on
/// an edge are absorbed by the hull.
pub fn construct_pip(d: u64, i: u64, b: u64) -> Result<RationalPolygon> {
    let max_b = construct_pip_max_b(d, i)?;
    check_positive("i", i)?;
    if b < 2 {
        return Err(Error::OutOfRange(format!("b = {b} violates 2 ≤ b")));
    }
    if b > max_b {
        return Err(Error::OutOfRange(format!("b = {b} violates {} (i = {i}, d = {d})", bound_text(d))));
    }
    let (i, b) = (i as i64, b as i64);
    let pts = match d {
        3 => vec![
            point(z(i), z(0)),
            point(z(0), r(1, 3)),
            point(z(-2), z(-1)),
            point(z(b - 4), z(-1)),
            point(z(i) + r(2 * (b - 5), 3), r(-2, 3)),
        ],
        4 => vec![
            point(z(i), z(0)),
            point(z(0), r(1, 4)),
            point(z(-1), r(-1, 2)),
            point(z(-1), z(-1)),
            point(z(b - 3), z(-1)),
            point(z(i) + r(3 * (b - 4), 4), r(-3, 4)),
        ],
        _ => vec![
            point(z(i), z(0)),
            point(z(0), r(1, 5)),
            point(r(-3, 2), z(-1)),
            point(z(b - 3), z(-1)),
            point(z(i) + r(4 * (b - 4), 5), r(-4, 5)),
        ],
    };
    RationalPolygon::hull(&pts)
}

/// A named member of one of the families above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionSpec {
    Reflexive(usize),
    ExampleB1(u64),
    ExampleB2(u64),
    TXyz(BigInt, BigInt, BigInt),
    Fibonacci(u64),
    ScottGrid(u64, u64),
    Denominator { d: u64, i: u64, b: u64 },
}

pub const FAMILY_TAGS: [&str; 9] =
    ["reflexive", "example-b1", "example-b2", "t-xyz", "fibonacci", "scott-grid", "p3", "p4", "p10"];

impl ConstructionSpec {
    /// Builds a spec from a family tag and its integer parameters.
    pub fn parse(tag: &str, params: &[i64]) -> Result<Self> {
        let want = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::Parse(format!("family {tag} takes {n} parameter(s), got {}", params.len())))
            }
        };
        let nonneg = |v: i64| -> Result<u64> {
            u64::try_from(v).map_err(|_| Error::OutOfRange(format!("parameter {v} must be nonnegative")))
        };
        Ok(match tag {
            "reflexive" => {
                want(1)?;
                ConstructionSpec::Reflexive(nonneg(params[0])? as usize)
            }
            "example-b1" => {
                want(1)?;
                ConstructionSpec::ExampleB1(nonneg(params[0])?)
            }
            "example-b2" => {
                want(1)?;
                ConstructionSpec::ExampleB2(nonneg(params[0])?)
            }
            "t-xyz" => {
                want(3)?;
                ConstructionSpec::TXyz(params[0].into(), params[1].into(), params[2].into())
            }
            "fibonacci" => {
                want(1)?;
                ConstructionSpec::Fibonacci(nonneg(params[0])?)
            }
            "scott-grid" => {
                want(2)?;
                ConstructionSpec::ScottGrid(nonneg(params[0])?, nonneg(params[1])?)
            }
            "p3" | "p4" | "p10" => {
                want(2)?;
                let d = tag[1..].parse().expect("tag digits");
                ConstructionSpec::Denominator { d, i: nonneg(params[0])?, b: nonneg(params[1])? }
            }
            _ => return Err(Error::Parse(format!("unknown family {tag:?}; expected one of {}", FAMILY_TAGS.join(", ")))),
        })
    }

    pub fn build(&self) -> Result<RationalPolygon> {
        match self {
            ConstructionSpec::Reflexive(k) => reflexive_polygon(*k),
            ConstructionSpec::ExampleB1(i) => example_pip_b1(*i),
            ConstructionSpec::ExampleB2(i) => example_pip_b2(*i),
            ConstructionSpec::TXyz(x, y, zz) => {
                if !x.is_positive() || !y.is_positive() || !zz.is_positive() {
                    return Err(Error::NonPositive);
                }
                t_xyz(&VietaSolution::new(x.clone(), y.clone(), zz.clone())?)
            }
            ConstructionSpec::Fibonacci(j) => fibonacci_triangle(*j),
            ConstructionSpec::ScottGrid(i, b) => scott_grid_polygon(*i, *b),
            ConstructionSpec::Denominator { d, i, b } => construct_pip(*d, *i, *b),
        }
    }

    /// The `(i, b)` profile the family is meant to have, when it is fixed by
    /// the parameters.
    pub fn advertised_profile(&self) -> Option<(u64, u64)> {
        match self {
            ConstructionSpec::Reflexive(_) | ConstructionSpec::TXyz(..) => None,
            ConstructionSpec::ExampleB1(i) => Some((*i, 1)),
            ConstructionSpec::ExampleB2(i) => Some((*i, 2)),
            ConstructionSpec::Fibonacci(_) => Some((1, 9)),
            ConstructionSpec::ScottGrid(i, b) | ConstructionSpec::Denominator { i, b, .. } => Some((*i, *b)),
        }
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Reflexive(k) => write!(f, "reflexive-{k}"),
            ConstructionSpec::ExampleB1(i) => write!(f, "example-b1-{i}"),
            ConstructionSpec::ExampleB2(i) => write!(f, "example-b2-{i}"),
            ConstructionSpec::TXyz(x, y, zz) => write!(f, "t-xyz-{x}-{y}-{zz}"),
            ConstructionSpec::Fibonacci(j) => write!(f, "fibonacci-{j}"),
            ConstructionSpec::ScottGrid(i, b) => write!(f, "scott-grid-{i}-{b}"),
            ConstructionSpec::Denominator { d, i, b } => write!(f, "p{d}-{i}-{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_boundary, count_interior};
    use crate::exact::rat;

    fn profile(p: &RationalPolygon) -> (BigInt, BigInt) {
        (count_interior(p, 1), count_boundary(p, 1))
    }

    fn ib(i: i64, b: i64) -> (BigInt, BigInt) {
        (BigInt::from(i), BigInt::from(b))
    }

    #[test]
    fn reflexive_entries_are_centred() {
        let cat = reflexive_catalog();
        assert_eq!(cat.len(), 16);
        for p in &cat {
            assert_eq!(interior_lattice_points(p), vec![Vec2::zero()]);
        }
        assert!(reflexive_polygon(16).is_err());
    }

    #[test]
    fn example_families() {
        let p = example_pip_b1(2).unwrap();
        assert_eq!(
            p,
            RationalPolygon::hull(&[
                Vec2::from_ints(2, 0),
                Vec2::new(rat(-4, 5), rat(3, 5)),
                Vec2::new(rat(-1, 5), rat(-3, 5))
            ])
            .unwrap()
        );
        assert_eq!(profile(&p), ib(2, 1));
        assert_eq!(profile(&example_pip_b2(2).unwrap()), ib(2, 2));
        assert!(example_pip_b1(0).is_err());
    }

    #[test]
    fn t_xyz_triangles() {
        let t = t_xyz(&VietaSolution::new(1, 1, 1).unwrap()).unwrap();
        assert_eq!(t, RationalPolygon::hull(&ints(&[(-3, 2), (0, -1), (3, -1)])).unwrap());
        assert_eq!(profile(&t_xyz(&VietaSolution::new(3, 6, 9).unwrap()).unwrap()), ib(1, 2));
        let e = t_xyz(&VietaSolution::new(4, 5, 81).unwrap()).unwrap_err();
        assert!(e.to_string().starts_with("NotConstructible"));
    }

    #[test]
    fn fibonacci_numbers_and_triangle() {
        let f: Vec<BigInt> = (0..10).map(fibonacci).collect();
        assert_eq!(f, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34].map(BigInt::from).to_vec());
        let t1 = fibonacci_triangle(1).unwrap();
        assert_eq!(t1.denominator(), &BigInt::from(2));
        assert_eq!(profile(&t1), ib(1, 9));
    }

    #[test]
    fn scott_family() {
        assert!(!scott_admissible(1, 2) && !scott_admissible(5, 1) && !scott_admissible(2, 11));
        for i in 1..=5u64 {
            for b in 0..=2 * i + 8 {
                match scott_grid_polygon(i, b) {
                    Ok(p) => {
                        assert!(p.is_integral());
                        assert_eq!(profile(&p), ib(i as i64, b as i64), "({i}, {b})");
                    }
                    Err(_) => assert!(!scott_admissible(i, b)),
                }
            }
        }
    }

    #[test]
    fn denominator_constructions() {
        let p = construct_pip(3, 3, 14).unwrap();
        assert_eq!(profile(&p), ib(3, 14));
        assert_eq!(p.denominator(), &BigInt::from(3));
        let e = construct_pip(10, 2, 15).unwrap_err();
        assert!(e.to_string().contains("b ≤ 5i + 4"), "{e}");
        assert!(construct_pip(5, 2, 4).is_err());
    }

    #[test]
    fn spec_parsing() {
        let s = ConstructionSpec::parse("p10", &[2, 14]).unwrap();
        assert_eq!(s, ConstructionSpec::Denominator { d: 10, i: 2, b: 14 });
        assert_eq!(s.advertised_profile(), Some((2, 14)));
        assert!(ConstructionSpec::parse("p7", &[1, 1]).is_err());
        assert!(ConstructionSpec::parse("t-xyz", &[1, 1]).is_err());
        assert_eq!(s.to_string(), "p10-2-14");
    }
}
