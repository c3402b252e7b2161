//! Convex polygons with rational vertices.
//!
//! A [`RationalPolygon`] is always stored in canonical form: strictly convex,
//! counterclockwise, starting at the lexicographically least vertex. Two
//! polygons are equal exactly when they are the same point set.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det2, ext_gcd, lcm, primitive_direction, AffineMap, Rational, Vec2};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<Vec2>,
    area: Rational,
    denominator: BigInt,
}

/// A closed edge together with its supporting line `<normal, a> = offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub start: Vec2,
    pub end: Vec2,
    /// Primitive outer normal; integer components.
    pub normal: Vec2,
    pub offset: Rational,
}

impl Edge {
    /// Primitive lattice vector pointing from `start` to `end`.
    pub fn direction(&self) -> Vec2 {
        self.normal.perp()
    }

    /// Length measured in units of the primitive lattice vector along the edge.
    pub fn lattice_length(&self) -> Rational {
        let v = &self.end - &self.start;
        let d = self.direction();
        if !d.x.is_zero() {
            v.x / d.x
        } else {
            v.y / d.y
        }
    }

    /// Whether the affine span of the edge contains a lattice point.
    pub fn is_reticular(&self) -> bool {
        self.offset.is_integer()
    }

    /// An integer vector `w` with `<w, direction> = 1`. Together with the normal
    /// it gives lattice coordinates along the supporting line.
    pub fn along_coordinate(&self) -> Vec2 {
        let d = self.direction();
        let (dx, dy) = d.to_ints().expect("primitive direction is integral");
        let (g, s, t) = ext_gcd(&dx, &dy);
        debug_assert!(g.is_one());
        Vec2::from_big(s, t)
    }
}

/// Lattice distance from the supporting line of `edge` to `p`.
pub fn lattice_distance(edge: &Edge, p: &Vec2) -> Rational {
    (edge.normal.dot(p) - &edge.offset).abs()
}

fn cross(o: &Vec2, a: &Vec2, b: &Vec2) -> Rational {
    det2(&(a - o), &(b - o))
}

impl RationalPolygon {
    /// Convex hull of a point set. Interior and edge-interior points are
    /// dropped; the result is in canonical order.
    pub fn hull(points: &[Vec2]) -> Result<Self> {
        let mut pts: Vec<Vec2> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegenerateHull);
        }
        // Andrew's monotone chain; `<= 0` drops collinear points.
        let mut hull: Vec<Vec2> = Vec::with_capacity(2 * pts.len());
        for p in pts.iter() {
            while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        let lower_len = hull.len() + 1;
        for p in pts.iter().rev().skip(1) {
            while hull.len() >= lower_len && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
        if hull.len() < 3 {
            return Err(Error::DegenerateHull);
        }
        Ok(Self::from_canonical(hull))
    }

    fn from_canonical(vertices: Vec<Vec2>) -> Self {
        let n = vertices.len();
        let mut twice_area = Rational::zero();
        for i in 0..n {
            twice_area += det2(&vertices[i], &vertices[(i + 1) % n]);
        }
        let denominator = vertices.iter().fold(BigInt::one(), |acc, v| lcm(&acc, &v.denominator()));
        RationalPolygon { vertices, area: twice_area / Rational::from_integer(BigInt::from(2)), denominator }
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> &Rational {
        &self.area
    }

    /// Least positive `k` such that `k * P` has integer vertices.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// Edges in counterclockwise order; edge `i` runs from vertex `i` to
    /// vertex `i + 1`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let start = self.vertices[i].clone();
                let end = self.vertices[(i + 1) % n].clone();
                let d = &end - &start;
                // Clockwise quarter turn of a counterclockwise edge points outward.
                let outward = Vec2::new(d.y.clone(), -d.x);
                let normal = primitive_direction(&outward).expect("edge has positive length");
                let offset = normal.dot(&start);
                Edge { start, end, normal, offset }
            })
            .collect()
    }

    pub fn normals_and_offsets(&self) -> (Vec<Vec2>, Vec<Rational>) {
        self.edges().into_iter().map(|e| (e.normal, e.offset)).unzip()
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Vec2) -> bool {
        self.edges().iter().all(|e| e.normal.dot(p) <= e.offset)
    }

    pub fn contains_in_interior(&self, p: &Vec2) -> bool {
        self.edges().iter().all(|e| e.normal.dot(p) < e.offset)
    }

    /// The polar dual `conv{ u_F / ldist(F) }`.
    pub fn dual(&self) -> Result<Self> {
        let edges = self.edges();
        if edges.iter().any(|e| !e.offset.is_positive()) {
            return Err(Error::OriginNotInterior);
        }
        let pts: Vec<Vec2> = edges.iter().map(|e| e.normal.scale(&e.offset.recip())).collect();
        Self::hull(&pts)
    }

    pub fn apply_map(&self, m: &AffineMap) -> Result<Self> {
        if !m.linear.is_unimodular() {
            return Err(Error::NotUnimodular(m.linear.det().to_string()));
        }
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| m.apply(v)).collect();
        Self::hull(&pts)
    }

    pub fn translate(&self, by: &Vec2) -> Self {
        let pts: Vec<Vec2> = self.vertices.iter().map(|v| v + by).collect();
        Self::from_canonical(pts)
    }

    /// The dilate `t * P` for a positive integer `t`.
    pub fn dilate(&self, t: &BigInt) -> Self {
        assert!(t.is_positive(), "dilation factor must be positive");
        let k = Rational::from_integer(t.clone());
        Self::from_canonical(self.vertices.iter().map(|v| v.scale(&k)).collect())
    }

    pub fn to_json(&self) -> PolygonJson {
        PolygonJson { vertices: self.vertices.clone() }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: PolygonJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::hull(&raw.vertices)
    }
}

/// Wire format `{"vertices": [["p/q", "r/s"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<Vec2>,
}

fn check_ccw(normals: &[Vec2], offsets: &[Rational]) -> Result<usize> {
    let n = normals.len();
    if n != offsets.len() {
        return Err(Error::LengthMismatch { normals: n, offsets: offsets.len() });
    }
    if n < 3 {
        return Err(Error::DegenerateHull);
    }
    for i in 0..n {
        if !det2(&normals[i], &normals[(i + 1) % n]).is_positive() {
            return Err(Error::NotConvexOrder(i, (i + 1) % n));
        }
    }
    Ok(n)
}

/// The scalar `L_i` with `v_{i,i+1} - v_{i-1,i} = L_i * perp(u_i)` for the
/// polygon `{ <u_j, a> <= alpha_j }` whose normals are listed counterclockwise.
fn edge_coefficient(normals: &[Vec2], offsets: &[Rational], i: usize) -> Result<Rational> {
    let n = check_ccw(normals, offsets)?;
    let i = i % n;
    let prev = (i + n - 1) % n;
    let next = (i + 1) % n;
    let d_prev_i = det2(&normals[prev], &normals[i]);
    let d_i_next = det2(&normals[i], &normals[next]);
    let d_prev_next = det2(&normals[prev], &normals[next]);
    let num = &offsets[prev] * &d_i_next - &offsets[i] * &d_prev_next + &offsets[next] * &d_prev_i;
    Ok(num / (d_prev_i * d_i_next))
}

/// Edge vector of edge `i` computed from the normals and offsets alone.
///
/// Edge `i` has normal `normals[i]` and runs counterclockwise, so the result
/// equals `end - start` of `edges()[i]` for the polygon these data describe.
pub fn edge_vector_formula(normals: &[Vec2], offsets: &[Rational], i: usize) -> Result<Vec2> {
    let coef = edge_coefficient(normals, offsets, i)?;
    Ok(normals[i % normals.len()].perp().scale(&coef))
}

/// Lattice length of edge `i` from normals and offsets; normals must be
/// primitive.
pub fn edge_lattice_length_formula(normals: &[Vec2], offsets: &[Rational], i: usize) -> Result<Rational> {
    edge_coefficient(normals, offsets, i)
}

/// Triangle specialisation: with `u` the normal of edge `i` and `v`, `w` the
/// next two normals counterclockwise, `x = det(v,w)`, `y = det(w,u)`,
/// `z = det(u,v)`, the lattice length is `(alpha x + beta y + gamma z) / (xyz) * x`.
pub fn triangle_lattice_length_formula(normals: &[Vec2], offsets: &[Rational], i: usize) -> Result<Rational> {
    if normals.len() != 3 {
        return Err(Error::NotATriangle(normals.len()));
    }
    check_ccw(normals, offsets)?;
    let (iu, iv, iw) = (i % 3, (i + 1) % 3, (i + 2) % 3);
    let (u, v, w) = (&normals[iu], &normals[iv], &normals[iw]);
    let x = det2(v, w);
    let y = det2(w, u);
    let z = det2(u, v);
    let num = &offsets[iu] * &x + &offsets[iv] * &y + &offsets[iw] * &z;
    Ok(num / (&x * &y * &z) * x)
}

/// Sorted triple of determinants of consecutive primitive outer normals.
/// Invariant under lattice automorphisms and translations.
pub fn triangle_invariant(t: &RationalPolygon) -> Result<[BigInt; 3]> {
    if t.len() != 3 {
        return Err(Error::NotATriangle(t.len()));
    }
    let normals: Vec<Vec2> = t.edges().into_iter().map(|e| e.normal).collect();
    let mut out = Vec::with_capacity(3);
    for k in 0..3 {
        let d = det2(&normals[(k + 1) % 3], &normals[(k + 2) % 3]);
        if !d.is_positive() {
            return Err(Error::Internal(format!("non-positive normal determinant {d}")));
        }
        out.push(d.to_integer());
    }
    out.sort();
    let [a, b, c]: [BigInt; 3] = out.try_into().expect("three entries");
    Ok([a, b, c])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_int, IntMat2};

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::from_ints(x, y)
    }

    fn unit_square() -> RationalPolygon {
        RationalPolygon::hull(&[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]).unwrap()
    }

    fn t111() -> RationalPolygon {
        RationalPolygon::hull(&[v(-3, 2), v(0, -1), v(3, -1)]).unwrap()
    }

    #[test]
    fn hull_absorbs_interior_points() {
        let p = RationalPolygon::hull(&[v(0, 0), v(1, 0), v(0, 1), Vec2::new(rat(1, 4), rat(1, 4))]).unwrap();
        assert_eq!(p.vertices(), &[v(0, 0), v(1, 0), v(0, 1)]);
    }

    #[test]
    fn hull_rejects_collinear() {
        assert_eq!(RationalPolygon::hull(&[v(0, 0), v(1, 1), v(2, 2)]), Err(Error::DegenerateHull));
        assert_eq!(RationalPolygon::hull(&[v(0, 0), v(0, 0), v(1, 1)]), Err(Error::DegenerateHull));
    }

    #[test]
    fn hull_absorbs_point_on_edge() {
        // (1, 0) and (3, -2/3) both lie on the segment from (0, 1/3) to (4, -1).
        let i = 1;
        let b = 8;
        let pts = [
            v(i, 0),
            Vec2::new(rat_int(0), rat(1, 3)),
            v(-2, -1),
            v(b - 4, -1),
            Vec2::new(rat_int(i) + rat(2, 3) * rat_int(b - 5), rat(-2, 3)),
        ];
        let p = RationalPolygon::hull(&pts).unwrap();
        assert_eq!(p.len(), 3);
        assert!(!p.vertices().contains(&pts[0]));
        assert!(!p.vertices().contains(&pts[4]));
    }

    #[test]
    fn canonical_start_and_orientation() {
        let p = RationalPolygon::hull(&[v(1, 1), v(0, 1), v(1, 0), v(0, 0)]).unwrap();
        assert_eq!(p.vertices(), &[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]);
        assert_eq!(p.area(), &rat_int(1));
    }

    #[test]
    fn square_edges() {
        let edges = unit_square().edges();
        let normals: Vec<Vec2> = edges.iter().map(|e| e.normal.clone()).collect();
        let offsets: Vec<Rational> = edges.iter().map(|e| e.offset.clone()).collect();
        assert_eq!(normals, vec![v(0, -1), v(1, 0), v(0, 1), v(-1, 0)]);
        assert_eq!(offsets, vec![rat_int(0), rat_int(1), rat_int(1), rat_int(0)]);
    }

    #[test]
    fn t111_edges() {
        let edges = t111().edges();
        let pairs: Vec<(Vec2, Rational)> = edges.iter().map(|e| (e.normal.clone(), e.offset.clone())).collect();
        assert_eq!(
            pairs,
            vec![(v(-1, -1), rat_int(1)), (v(0, -1), rat_int(1)), (v(1, 2), rat_int(1))]
        );
        for e in &edges {
            assert_eq!(lattice_distance(e, &Vec2::zero()), rat_int(1));
            assert_eq!(e.lattice_length(), rat_int(3));
        }
    }

    #[test]
    fn four_gon_offsets() {
        let p = RationalPolygon::hull(&[
            v(1, 0),
            Vec2::new(rat_int(0), rat(2, 3)),
            v(-1, 0),
            Vec2::new(rat_int(0), rat(-2, 3)),
        ])
        .unwrap();
        for e in p.edges() {
            assert_eq!(e.offset, rat_int(2));
            assert_eq!(e.normal.x.abs(), rat_int(2));
            assert_eq!(e.normal.y.abs(), rat_int(3));
            assert_eq!(lattice_distance(&e, &Vec2::zero()), rat_int(2));
        }
    }

    #[test]
    fn areas_and_denominators() {
        assert_eq!(unit_square().area(), &rat_int(1));
        assert_eq!(unit_square().denominator(), &int(1));
        assert_eq!(t111().area(), &rat(9, 2));
        let t1 = RationalPolygon::hull(&[Vec2::new(rat(-3, 2), rat(1, 2)), v(0, -1), v(6, -1)]).unwrap();
        assert_eq!(t1.denominator(), &int(2));
    }

    #[test]
    fn unit_square_edge_distance_from_origin() {
        let e = &unit_square().edges()[1];
        assert_eq!(lattice_distance(e, &Vec2::zero()), rat_int(1));
    }

    #[test]
    fn duals() {
        let sq = RationalPolygon::hull(&[v(1, 1), v(-1, 1), v(-1, -1), v(1, -1)]).unwrap();
        let diamond = RationalPolygon::hull(&[v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]).unwrap();
        assert_eq!(sq.dual().unwrap(), diamond);
        assert_eq!(diamond.dual().unwrap(), sq);
        let expected = RationalPolygon::hull(&[v(1, 2), v(-1, -1), v(0, -1)]).unwrap();
        assert_eq!(t111().dual().unwrap(), expected);
        assert_eq!(t111().dual().unwrap().dual().unwrap(), t111());
        assert_eq!(unit_square().dual(), Err(Error::OriginNotInterior));
    }

    #[test]
    fn maps() {
        let shear = AffineMap::linear(IntMat2::new(1, 0, 1, 1)).unwrap();
        let img = unit_square().apply_map(&shear).unwrap();
        assert_eq!(img.vertices(), &[v(0, 0), v(1, 1), v(1, 2), v(0, 1)]);
        let id = AffineMap::linear(IntMat2::identity()).unwrap();
        assert_eq!(t111().apply_map(&id).unwrap(), t111());
        let bad = AffineMap { linear: IntMat2::new(2, 0, 0, 1), translate: Vec2::zero() };
        assert!(matches!(unit_square().apply_map(&bad), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn edge_vector_examples() {
        let sq = RationalPolygon::hull(&[v(1, 1), v(-1, 1), v(-1, -1), v(1, -1)]).unwrap();
        let (normals, offsets) = sq.normals_and_offsets();
        for (i, e) in sq.edges().iter().enumerate() {
            let ev = edge_vector_formula(&normals, &offsets, i).unwrap();
            assert_eq!(ev, &e.end - &e.start);
            assert_eq!(ev.dot(&ev), rat_int(4));
            assert_eq!(edge_lattice_length_formula(&normals, &offsets, i).unwrap(), rat_int(2));
        }
        // Bottom edge of T_111 from (0,-1) to (3,-1).
        let (normals, offsets) = t111().normals_and_offsets();
        assert_eq!(edge_vector_formula(&normals, &offsets, 1).unwrap(), v(3, 0));
        for i in 0..3 {
            assert_eq!(triangle_lattice_length_formula(&normals, &offsets, i).unwrap(), rat_int(3));
        }
        let (n1, o1) = unit_square().normals_and_offsets();
        assert_eq!(edge_lattice_length_formula(&n1, &o1, 2).unwrap(), rat_int(1));
    }

    #[test]
    fn edge_formula_rejects_bad_order() {
        let normals = vec![v(0, -1), v(-1, 0), v(1, 0), v(0, 1)];
        let offsets = vec![rat_int(1); 4];
        assert!(matches!(edge_vector_formula(&normals, &offsets, 0), Err(Error::NotConvexOrder(..))));
        assert!(matches!(
            edge_vector_formula(&normals[..3], &offsets, 0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn invariants_of_examples() {
        assert_eq!(triangle_invariant(&t111()).unwrap(), [int(1), int(1), int(1)]);
        let t1 = RationalPolygon::hull(&[Vec2::new(rat(-3, 2), rat(1, 2)), v(0, -1), v(6, -1)]).unwrap();
        assert_eq!(triangle_invariant(&t1).unwrap(), [int(1), int(1), int(4)]);
        assert_eq!(triangle_invariant(&unit_square()), Err(Error::NotATriangle(4)));
    }

    #[test]
    fn json_roundtrip() {
        let p = t111();
        let s = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(s, r#"{"vertices":[["-3","2"],["0","-1"],["3","-1"]]}"#);
        assert_eq!(RationalPolygon::from_json_str(&s).unwrap(), p);
        assert!(RationalPolygon::from_json_str("").is_err());
    }
}
