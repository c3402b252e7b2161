//! Reference computations that share no code with the library's algorithms.
#![allow(dead_code)]

use lattice_pip::exact::{AffineMap, IntMat2};
use lattice_pip::{Rational, RationalPolygon, Vec2};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Lattice-point counts of `tP` by testing every point of the bounding box
/// against the integer inequalities `od·<u, p> <= t·on`.
pub fn brute_counts(p: &RationalPolygon, t: i64) -> (i64, i64) {
    let vs = p.vertices();
    let n = vs.len();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let (a, b) = (&vs[k], &vs[(k + 1) % n]);
        // Outer normal of a counterclockwise edge, cleared of denominators.
        let nx = &b.y - &a.y;
        let ny = &a.x - &b.x;
        let den = nx.denom().lcm(ny.denom());
        let (mut ux, mut uy) = ((nx * Rational::from_integer(den.clone())).to_integer(), (ny * Rational::from_integer(den)).to_integer());
        let g = ux.gcd(&uy);
        ux /= &g;
        uy /= &g;
        let rhs = Rational::from_integer(ux.clone()) * &a.x + Rational::from_integer(uy.clone()) * &a.y;
        rows.push((
            ux.to_i128().unwrap(),
            uy.to_i128().unwrap(),
            rhs.numer().to_i128().unwrap(),
            rhs.denom().to_i128().unwrap(),
        ));
    }
    let t_r = Rational::from_integer(BigInt::from(t));
    let fl = |q: &Rational| (q * &t_r).floor().to_integer().to_i64().unwrap();
    let cl = |q: &Rational| (q * &t_r).ceil().to_integer().to_i64().unwrap();
    let x_lo = vs.iter().map(|v| fl(&v.x)).min().unwrap();
    let x_hi = vs.iter().map(|v| cl(&v.x)).max().unwrap();
    let y_lo = vs.iter().map(|v| fl(&v.y)).min().unwrap();
    let y_hi = vs.iter().map(|v| cl(&v.y)).max().unwrap();
    let t = t as i128;
    let (mut total, mut boundary) = (0, 0);
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            let mut inside = true;
            let mut on_edge = false;
            for &(ux, uy, on, od) in &rows {
                let lhs = od * (ux * x as i128 + uy * y as i128);
                let rhs = t * on;
                if lhs > rhs {
                    inside = false;
                    break;
                }
                on_edge |= lhs == rhs;
            }
            if inside {
                total += 1;
                boundary += on_edge as i64;
            }
        }
    }
    (total, boundary)
}

/// `(interior, boundary)` of `P` itself.
pub fn brute_profile(p: &RationalPolygon) -> (i64, i64) {
    let (total, boundary) = brute_counts(p, 1);
    (total - boundary, boundary)
}

/// Twice the shoelace area.
pub fn twice_area(vs: &[Vec2]) -> Rational {
    let n = vs.len();
    (0..n)
        .map(|k| {
            let (a, b) = (&vs[k], &vs[(k + 1) % n]);
            &a.x * &b.y - &a.y * &b.x
        })
        .sum()
}

/// Reduced solutions of `(x+y+z)² = bxyz` by direct search.
///
/// A reduced solution has `x <= y <= z <= x + y`, so `bxy² <= bxyz =
/// (x+y+z)² <= 16y²` gives `x <= 16/b`; writing `z = y + w` with `0 <= w <= x`,
/// `y` divides `(x + y + z)²` and hence `(x + w)²`, so `y <= 4x²`.
pub fn brute_reduced() -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for x in 1..=16u64 {
        for y in x..=4 * x * x {
            for z in y..=x + y {
                let s = x + y + z;
                let p = x * y * z;
                if (s * s) % p == 0 {
                    out.push([s * s / p, x, y, z]);
                }
            }
        }
    }
    out.sort();
    out
}

/// Fibonacci numbers by the defining recurrence, in `u128`.
pub fn fib_u128(n: usize) -> u128 {
    let mut f = vec![0u128, 1];
    while f.len() <= n {
        let k = f.len();
        f.push(f[k - 1] + f[k - 2]);
    }
    f[n]
}

/// `(y_j, z_j)` of the middle-jump chain, computed in `i128`.
pub fn chain(b: i128, x: i128, y0: i128, z0: i128, depth: usize) -> Vec<(i128, i128)> {
    let mut out = vec![(y0, z0)];
    let (mut y, mut z) = (y0, z0);
    for _ in 0..depth {
        let next = b * x * z - 2 * (x + z) - y;
        y = z;
        z = next;
        out.push((y, z));
    }
    out
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn pt(x: (i64, i64), y: (i64, i64)) -> Vec2 {
    Vec2::new(q(x.0, x.1), q(y.0, y.1))
}

/// Hulls of 3 to 7 random points with coordinates `a/d`, `|a| <= coord`,
/// `1 <= d <= max_den`.
pub fn rational_polygon(coord: i64, max_den: i64) -> impl Strategy<Value = RationalPolygon> {
    prop::collection::vec(((-coord..=coord, 1..=max_den), (-coord..=coord, 1..=max_den)), 3..8).prop_filter_map(
        "degenerate",
        |pts| RationalPolygon::hull(&pts.into_iter().map(|(x, y)| pt(x, y)).collect::<Vec<_>>()).ok(),
    )
}

pub fn integral_polygon(coord: i64) -> impl Strategy<Value = RationalPolygon> {
    prop::collection::vec((-coord..=coord, -coord..=coord), 3..9).prop_filter_map("degenerate", |pts| {
        RationalPolygon::hull(&pts.into_iter().map(|(x, y)| Vec2::from_ints(x, y)).collect::<Vec<_>>()).ok()
    })
}

/// Products of shears, a swap and a reflection, followed by a translation.
pub fn unimodular() -> impl Strategy<Value = AffineMap> {
    (prop::collection::vec((0u8..4, -2i64..=2), 1..6), -3i64..=3, -3i64..=3).prop_map(|(steps, dx, dy)| {
        let mut m = IntMat2::identity();
        for (kind, k) in steps {
            let step = match kind {
                0 => IntMat2::new(1, k, 0, 1),
                1 => IntMat2::new(1, 0, k, 1),
                2 => IntMat2::new(0, 1, 1, 0),
                _ => IntMat2::new(-1, 0, 0, 1),
            };
            m = step.mul(&m);
        }
        AffineMap::new(m, Vec2::from_ints(dx, dy)).unwrap()
    })
}
