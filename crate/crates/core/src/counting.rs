//! Exact lattice-point counts of dilates `tP`.
//!
//! [`LatticeCounter`] precomputes the supporting lines of a polygon and then
//! answers `|tP ∩ Z²|` for any `t` in `O(edges · log)` integer operations:
//! the count is split into integer columns, and each column's contribution
//! from an edge is `floor((t·α − δ·u₁·x) / (δ·|u₂|))`, which is summed over a
//! whole column range with a Euclid-style floor sum. Sums are done in `i128`
//! when they fit and fall back to `BigInt` otherwise.
//!
//! [`count_total_by_columns`] and [`count_boundary_by_columns`] are the
//! straightforward column scans over every integer `x`; they serve as the
//! reference the fast path is checked against.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::exact::{bigint_json, det2, ext_gcd, primitive_direction, rat_ceil, rat_floor, Rational, Vec2};
use crate::polygon::RationalPolygon;

/// Lattice-point counts of one dilate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub t: u64,
    pub total: BigInt,
    pub boundary: BigInt,
    pub interior: BigInt,
}

impl Serialize for CountReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CountReport", 4)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("total", &bigint_json(&self.total))?;
        st.serialize_field("boundary", &bigint_json(&self.boundary))?;
        st.serialize_field("interior", &bigint_json(&self.interior))?;
        st.end()
    }
}

/// Σ_{i=0}^{n-1} floor((a·i + b) / m) for `n >= 0`, `m > 0`.
pub fn floor_sum(n: &BigInt, m: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(m.is_positive() && !n.is_negative());
    let mut ans = BigInt::zero();
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    if n.is_zero() {
        return ans;
    }
    let tri = |n: &BigInt| n * (n - 1u32) / 2u32;
    if a.is_negative() || a >= m {
        let (q, r) = a.div_mod_floor(&m);
        ans += tri(&n) * q;
        a = r;
    }
    if b.is_negative() || b >= m {
        let (q, r) = b.div_mod_floor(&m);
        ans += &n * q;
        b = r;
    }
    loop {
        if a >= m {
            ans += tri(&n) * (&a / &m);
            a %= &m;
        }
        if b >= m {
            ans += &n * (&b / &m);
            b %= &m;
        }
        let y_max = &a * &n + &b;
        if y_max < m {
            break;
        }
        n = &y_max / &m;
        b = &y_max % &m;
        std::mem::swap(&mut m, &mut a);
    }
    ans
}

/// `i128` version of [`floor_sum`]; `None` on overflow.
pub fn floor_sum_i128(mut n: i128, mut m: i128, mut a: i128, mut b: i128) -> Option<i128> {
    debug_assert!(m > 0 && n >= 0);
    let mut ans: i128 = 0;
    if n == 0 {
        return Some(0);
    }
    let tri = |n: i128| n.checked_mul(n - 1).map(|v| v / 2);
    if a < 0 || a >= m {
        let q = a.div_euclid(m);
        ans = ans.checked_add(tri(n)?.checked_mul(q)?)?;
        a = a.rem_euclid(m);
    }
    if b < 0 || b >= m {
        let q = b.div_euclid(m);
        ans = ans.checked_add(n.checked_mul(q)?)?;
        b = b.rem_euclid(m);
    }
    loop {
        if a >= m {
            ans = ans.checked_add(tri(n)?.checked_mul(a / m)?)?;
            a %= m;
        }
        if b >= m {
            ans = ans.checked_add(n.checked_mul(b / m)?)?;
            b %= m;
        }
        let y_max = a.checked_mul(n)?.checked_add(b)?;
        if y_max < m {
            break;
        }
        n = y_max / m;
        b = y_max % m;
        std::mem::swap(&mut m, &mut a);
    }
    Some(ans)
}

/// A rational stored as integer numerator over positive denominator.
#[derive(Debug, Clone)]
struct Frac {
    num: BigInt,
    den: BigInt,
}

impl Frac {
    fn of(q: &Rational) -> Self {
        Frac { num: q.numer().clone(), den: q.denom().clone() }
    }

    fn floor_times(&self, t: &BigInt) -> BigInt {
        (&self.num * t).div_floor(&self.den)
    }

    fn ceil_times(&self, t: &BigInt) -> BigInt {
        -(-(&self.num * t)).div_floor(&self.den)
    }
}

#[derive(Debug, Clone, Copy)]
struct SmallFrac {
    num: i128,
    den: i128,
}

impl SmallFrac {
    fn of(f: &Frac) -> Option<Self> {
        Some(SmallFrac { num: f.num.to_i128()?, den: f.den.to_i128()? })
    }

    fn floor_times(&self, t: i128) -> Option<i128> {
        Some(self.num.checked_mul(t)?.div_euclid(self.den))
    }

    fn ceil_times(&self, t: i128) -> Option<i128> {
        Some(-(self.num.checked_mul(t)?.checked_neg()?.div_euclid(self.den)))
    }
}

#[derive(Debug, Clone)]
struct EdgeData {
    /// Column range in units of `t`: `[ceil(t·lo), ceil(t·hi) - 1]`.
    lo: Frac,
    hi: Frac,
    vertical: bool,
    /// offset = alpha_num / alpha_den, normal = (u1, u2).
    alpha_num: BigInt,
    alpha_den: BigInt,
    u1: BigInt,
    u2_abs: BigInt,
    /// Lattice coordinate along the line at the two endpoints (scaled by t).
    w_lo: Frac,
    w_hi: Frac,
}

#[derive(Debug, Clone, Copy)]
struct SmallEdge {
    lo: SmallFrac,
    hi: SmallFrac,
    alpha_num: i128,
    m: i128,
    a_coef: i128,
}

/// Precomputed line data for repeated counting on dilates of one polygon.
#[derive(Debug, Clone)]
pub struct LatticeCounter {
    edges: Vec<EdgeData>,
    small: Option<Vec<SmallEdge>>,
    x_min: Frac,
    x_max: Frac,
    right_y_lo: Frac,
    right_y_hi: Frac,
    small_ends: Option<[SmallFrac; 4]>,
    vertex_dens: Vec<BigInt>,
}

impl LatticeCounter {
    pub fn new(p: &RationalPolygon) -> Self {
        let verts = p.vertices();
        let mut edges = Vec::with_capacity(verts.len());
        for e in p.edges() {
            let (u1, u2) = e.normal.to_ints().expect("normals are integral");
            let w = e.along_coordinate();
            let (ws, we) = (w.dot(&e.start), w.dot(&e.end));
            let (w_lo, w_hi) = if ws <= we { (ws, we) } else { (we, ws) };
            let (lo, hi) = if e.start.x <= e.end.x {
                (e.start.x.clone(), e.end.x.clone())
            } else {
                (e.end.x.clone(), e.start.x.clone())
            };
            edges.push(EdgeData {
                lo: Frac::of(&lo),
                hi: Frac::of(&hi),
                vertical: u2.is_zero(),
                alpha_num: e.offset.numer().clone(),
                alpha_den: e.offset.denom().clone(),
                u1,
                u2_abs: u2.abs(),
                w_lo: Frac::of(&w_lo),
                w_hi: Frac::of(&w_hi),
            });
        }
        let x_min = verts.iter().map(|v| &v.x).min().expect("nonempty").clone();
        let x_max = verts.iter().map(|v| &v.x).max().expect("nonempty").clone();
        let right: Vec<&Vec2> = verts.iter().filter(|v| v.x == x_max).collect();
        let right_y_lo = right.iter().map(|v| &v.y).min().expect("nonempty").clone();
        let right_y_hi = right.iter().map(|v| &v.y).max().expect("nonempty").clone();

        let mut counter = LatticeCounter {
            edges,
            small: None,
            x_min: Frac::of(&x_min),
            x_max: Frac::of(&x_max),
            right_y_lo: Frac::of(&right_y_lo),
            right_y_hi: Frac::of(&right_y_hi),
            small_ends: None,
            vertex_dens: verts.iter().map(|v| v.denominator()).collect(),
        };
        counter.small = counter
            .edges
            .iter()
            .filter(|e| !e.vertical)
            .map(|e| {
                Some(SmallEdge {
                    lo: SmallFrac::of(&e.lo)?,
                    hi: SmallFrac::of(&e.hi)?,
                    alpha_num: e.alpha_num.to_i128()?,
                    m: (&e.alpha_den * &e.u2_abs).to_i128()?,
                    a_coef: (-(&e.alpha_den * &e.u1)).to_i128()?,
                })
            })
            .collect();
        counter.small_ends = (|| {
            Some([
                SmallFrac::of(&counter.x_min)?,
                SmallFrac::of(&counter.x_max)?,
                SmallFrac::of(&counter.right_y_lo)?,
                SmallFrac::of(&counter.right_y_hi)?,
            ])
        })();
        counter
    }

    /// `|tP ∩ Z²|`.
    pub fn total(&self, t: u64) -> BigInt {
        assert!(t >= 1, "dilation factor must be at least 1");
        if let Some(v) = self.total_small(t as i128) {
            return BigInt::from(v);
        }
        self.total_big(&BigInt::from(t))
    }

    fn total_small(&self, t: i128) -> Option<i128> {
        let edges = self.small.as_ref()?;
        let [x_min, x_max, y_lo, y_hi] = self.small_ends?;
        let first = x_min.ceil_times(t)?;
        let past = x_max.ceil_times(t)?;
        let mut acc = past.checked_sub(first)?;
        if x_max.num.checked_mul(t)? % x_max.den == 0 {
            let top = y_hi.floor_times(t)?;
            let bottom = y_lo.ceil_times(t)?;
            acc = acc.checked_add(top - bottom + 1)?;
        }
        for e in edges {
            let lo = e.lo.ceil_times(t)?;
            let n = e.hi.ceil_times(t)?.checked_sub(lo)?;
            if n <= 0 {
                continue;
            }
            let b = e.alpha_num.checked_mul(t)?.checked_add(e.a_coef.checked_mul(lo)?)?;
            acc = acc.checked_add(floor_sum_i128(n, e.m, e.a_coef, b)?)?;
        }
        Some(acc)
    }

    fn total_big(&self, t: &BigInt) -> BigInt {
        let first = self.x_min.ceil_times(t);
        let past = self.x_max.ceil_times(t);
        let mut acc = &past - &first;
        if (&self.x_max.num * t).is_multiple_of(&self.x_max.den) {
            acc += self.right_y_hi.floor_times(t) - self.right_y_lo.ceil_times(t) + 1u32;
        }
        for e in self.edges.iter().filter(|e| !e.vertical) {
            let lo = e.lo.ceil_times(t);
            let n = e.hi.ceil_times(t) - &lo;
            if !n.is_positive() {
                continue;
            }
            let m = &e.alpha_den * &e.u2_abs;
            let a = -(&e.alpha_den * &e.u1);
            let b = &e.alpha_num * t + &a * &lo;
            acc += floor_sum(&n, &m, &a, &b);
        }
        acc
    }

    /// Lattice points on the boundary of `tP`.
    pub fn boundary(&self, t: u64) -> BigInt {
        assert!(t >= 1, "dilation factor must be at least 1");
        let t = BigInt::from(t);
        let mut acc = BigInt::zero();
        for e in &self.edges {
            if !(&e.alpha_num * &t).is_multiple_of(&e.alpha_den) {
                continue;
            }
            let k = e.w_hi.floor_times(&t) - e.w_lo.ceil_times(&t) + 1u32;
            if k.is_positive() {
                acc += k;
            }
        }
        let lattice_vertices = self.vertex_dens.iter().filter(|d| t.is_multiple_of(d)).count();
        acc - BigInt::from(lattice_vertices)
    }

    pub fn interior(&self, t: u64) -> BigInt {
        self.total(t) - self.boundary(t)
    }

    pub fn report(&self, t: u64) -> CountReport {
        let total = self.total(t);
        let boundary = self.boundary(t);
        let interior = &total - &boundary;
        CountReport { t, total, boundary, interior }
    }
}

pub fn count_total(p: &RationalPolygon, t: u64) -> BigInt {
    LatticeCounter::new(p).total(t)
}

pub fn count_boundary(p: &RationalPolygon, t: u64) -> BigInt {
    LatticeCounter::new(p).boundary(t)
}

pub fn count_interior(p: &RationalPolygon, t: u64) -> BigInt {
    LatticeCounter::new(p).interior(t)
}

pub fn count_report(p: &RationalPolygon, t: u64) -> CountReport {
    LatticeCounter::new(p).report(t)
}

/// Lattice points on the closed segment `[a, b]`.
pub fn segment_lattice_points(a: &Vec2, b: &Vec2) -> BigInt {
    if a == b {
        return if a.is_integral() { BigInt::one() } else { BigInt::zero() };
    }
    let d = primitive_direction(&(b - a)).expect("distinct endpoints");
    let normal = Vec2::new(d.y.clone(), -d.x.clone());
    if !normal.dot(a).is_integer() {
        return BigInt::zero();
    }
    let (dx, dy) = d.to_ints().expect("integral direction");
    let (_, s, t) = ext_gcd(&dx, &dy);
    let w = Vec2::from_big(s, t);
    let (wa, wb) = (w.dot(a), w.dot(b));
    let (lo, hi) = if wa <= wb { (wa, wb) } else { (wb, wa) };
    let k = rat_floor(&hi) - rat_ceil(&lo) + 1u32;
    if k.is_negative() {
        BigInt::zero()
    } else {
        k
    }
}

/// y-range of the vertical slice of `p` at abscissa `x`, if nonempty.
fn slice_at(p: &RationalPolygon, x: &Rational) -> Option<(Rational, Rational)> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut push = |y: Rational| {
        if lo.as_ref().is_none_or(|l| &y < l) {
            lo = Some(y.clone());
        }
        if hi.as_ref().is_none_or(|h| &y > h) {
            hi = Some(y);
        }
    };
    for e in p.edges() {
        let (a, b) = (&e.start, &e.end);
        if a.x == b.x {
            if &a.x == x {
                push(a.y.clone());
                push(b.y.clone());
            }
            continue;
        }
        let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
        if &l.x <= x && x <= &r.x {
            let y = &l.y + (&r.y - &l.y) * (x - &l.x) / (&r.x - &l.x);
            push(y);
        }
    }
    Some((lo?, hi?))
}

/// Reference count of `|tP ∩ Z²|` by scanning every integer column.
pub fn count_total_by_columns(p: &RationalPolygon, t: u64) -> BigInt {
    let q = p.dilate(&BigInt::from(t));
    let x_min = q.vertices().iter().map(|v| &v.x).min().expect("nonempty");
    let x_max = q.vertices().iter().map(|v| &v.x).max().expect("nonempty");
    let mut x = rat_ceil(x_min);
    let last = rat_floor(x_max);
    let mut acc = BigInt::zero();
    while x <= last {
        if let Some((lo, hi)) = slice_at(&q, &Rational::from_integer(x.clone())) {
            let k = rat_floor(&hi) - rat_ceil(&lo) + 1u32;
            if k.is_positive() {
                acc += k;
            }
        }
        x += 1u32;
    }
    acc
}

/// Reference boundary count of `tP`, enumerating integer columns per edge.
pub fn count_boundary_by_columns(p: &RationalPolygon, t: u64) -> BigInt {
    let q = p.dilate(&BigInt::from(t));
    let mut acc = BigInt::zero();
    for e in q.edges() {
        let (a, b) = (&e.start, &e.end);
        if a.x == b.x {
            if a.x.is_integer() {
                let (lo, hi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                let k = rat_floor(hi) - rat_ceil(lo) + 1u32;
                if k.is_positive() {
                    acc += k;
                }
            }
            continue;
        }
        let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
        let mut x = rat_ceil(&l.x);
        let last = rat_floor(&r.x);
        while x <= last {
            let xr = Rational::from_integer(x.clone());
            let y = &l.y + (&r.y - &l.y) * (&xr - &l.x) / (&r.x - &l.x);
            if y.is_integer() {
                acc += 1u32;
            }
            x += 1u32;
        }
    }
    let lattice_vertices = q.vertices().iter().filter(|v| v.is_integral()).count();
    acc - BigInt::from(lattice_vertices)
}

/// Width of the dilate `tP` in the x-direction.
pub fn dilated_width(p: &RationalPolygon, t: u64) -> Rational {
    let x_min = p.vertices().iter().map(|v| &v.x).min().expect("nonempty");
    let x_max = p.vertices().iter().map(|v| &v.x).max().expect("nonempty");
    (x_max - x_min) * Rational::from_integer(BigInt::from(t))
}

// Shoelace area of the integer polygon `den · P`; used to confirm the area
// scaling invariant.
pub fn scaled_integer_area(p: &RationalPolygon) -> Rational {
    let q = p.dilate(p.denominator());
    let n = q.len();
    let mut twice = Rational::zero();
    for i in 0..n {
        twice += det2(&q.vertices()[i], &q.vertices()[(i + 1) % n]);
    }
    twice / Rational::from_integer(BigInt::from(2))
}
