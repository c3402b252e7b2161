//! Static SVG pictures of a polygon on the integer lattice.
//!
//! All coordinates are integers: one lattice unit is `den(P) · k` SVG units,
//! so every rational vertex lands on an integer position. The y axis is
//! flipped so that up is up.

use std::fmt::Write;

use lattice_pip::exact::{rat_ceil, rat_floor};
use lattice_pip::{RationalPolygon, Vec2};
use num_bigint::BigInt;

/// Smallest lattice spacing in SVG units.
const MIN_UNIT: u32 = 40;

pub fn polygon_svg(p: &RationalPolygon) -> String {
    let den = p.denominator().clone();
    let k = (BigInt::from(MIN_UNIT) + &den - 1u32) / &den;
    let unit = &den * &k;
    let px = |q: &lattice_pip::Rational| (q * lattice_pip::Rational::from_integer(unit.clone())).to_integer();

    let vs = p.vertices();
    let x_lo = vs.iter().map(|v| rat_floor(&v.x)).min().expect("nonempty") - 1u32;
    let x_hi = vs.iter().map(|v| rat_ceil(&v.x)).max().expect("nonempty") + 1u32;
    let y_lo = vs.iter().map(|v| rat_floor(&v.y)).min().expect("nonempty") - 1u32;
    let y_hi = vs.iter().map(|v| rat_ceil(&v.y)).max().expect("nonempty") + 1u32;

    let left = &x_lo * &unit;
    let top = -(&y_hi * &unit);
    let width = (&x_hi - &x_lo) * &unit;
    let height = (&y_hi - &y_lo) * &unit;
    let dot = (&unit / 10u32).max(BigInt::from(2));
    let stroke = (&unit / 40u32).max(BigInt::from(1));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{left} {top} {width} {height}" width="{}" height="{}">"#,
        (&x_hi - &x_lo) * MIN_UNIT,
        (&y_hi - &y_lo) * MIN_UNIT
    );
    let _ = writeln!(out, r##"  <g stroke="#d0d0d0" stroke-width="{stroke}">"##);
    let mut x = x_lo.clone();
    while x <= x_hi {
        let sx = &x * &unit;
        let _ = writeln!(out, r#"    <line x1="{sx}" y1="{top}" x2="{sx}" y2="{}"/>"#, &top + &height);
        x += 1u32;
    }
    let mut y = y_lo.clone();
    while y <= y_hi {
        let sy = -(&y * &unit);
        let _ = writeln!(out, r#"    <line x1="{left}" y1="{sy}" x2="{}" y2="{sy}"/>"#, &left + &width);
        y += 1u32;
    }
    let _ = writeln!(out, "  </g>");

    let points: Vec<String> = vs.iter().map(|v| format!("{},{}", px(&v.x), -px(&v.y))).collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#9ecae1" fill-opacity="0.6" stroke="#08519c" stroke-width="{}"/>"##,
        points.join(" "),
        &stroke * 2u32
    );

    let mut x = x_lo.clone();
    while x <= x_hi {
        let mut y = y_lo.clone();
        while y <= y_hi {
            let q = Vec2::from_big(x.clone(), y.clone());
            let (cx, cy) = (&x * &unit, -(&y * &unit));
            let (r, fill) = if p.contains_in_interior(&q) {
                (dot.clone(), "#000000")
            } else if p.contains(&q) {
                (&dot * 3u32 / 2u32, "#e6550d")
            } else {
                (&dot / 2u32, "#969696")
            };
            let _ = writeln!(out, r#"  <circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>"#);
            y += 1u32;
        }
        x += 1u32;
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_pip::exact::rat;

    #[test]
    fn integer_coordinates_only() {
        let p = RationalPolygon::hull(&[
            Vec2::from_ints(2, 0),
            Vec2::new(rat(-4, 5), rat(3, 5)),
            Vec2::new(rat(-1, 5), rat(-3, 5)),
        ])
        .unwrap();
        let s = polygon_svg(&p);
        assert!(s.starts_with("<?xml"));
        assert!(s.contains(r#"points="-32,-24 -8,24 80,0""#), "{s}");
        for attr in ["x1", "y1", "x2", "y2", "cx", "cy", "r", "points", "viewBox", "stroke-width"] {
            let key = format!(" {attr}=\"");
            for chunk in s.split(key.as_str()).skip(1) {
                let value = &chunk[..chunk.find('"').unwrap()];
                for n in value.split([' ', ',']) {
                    assert!(n.parse::<i64>().is_ok(), "{attr}={value}");
                }
            }
        }
        assert_eq!(s.matches("#e6550d").count(), 1);
        assert_eq!(s.matches(r##"fill="#000000""##).count(), 2);
    }
}
