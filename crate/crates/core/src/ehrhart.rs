//! Ehrhart quasipolynomials of rational polygons.
//!
//! The Ehrhart function `t ↦ |tP ∩ Z²|` of a rational polygon is a quadratic
//! quasipolynomial whose period divides `den(P)`. It is reconstructed here by
//! exact interpolation on each residue class, validated at one extra point,
//! and then inspected for polynomiality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::counting::LatticeCounter;
use crate::error::{Error, Result};
use crate::exact::{bigint_json, rat_to_string, Rational};
use crate::polygon::RationalPolygon;

/// Coefficients `(c0, c1, c2)` of `c0 + c1·t + c2·t²`.
pub type Coeffs = [Rational; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    coeffs: Vec<Coeffs>,
}

impl QuasiPolynomial {
    pub fn new(coeffs: Vec<Coeffs>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Internal("quasipolynomial needs at least one residue".into()));
        }
        Ok(QuasiPolynomial { period: coeffs.len() as u64, coeffs })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn coeffs(&self, residue: u64) -> &Coeffs {
        &self.coeffs[residue as usize]
    }

    pub fn residues(&self) -> impl Iterator<Item = (u64, &Coeffs)> {
        self.coeffs.iter().enumerate().map(|(r, c)| (r as u64, c))
    }

    /// Value at an arbitrary integer `t`, using the residue of `t` mod the period.
    pub fn eval(&self, t: &BigInt) -> Rational {
        let r = t.mod_floor(&BigInt::from(self.period)).to_usize().expect("residue fits");
        let [c0, c1, c2] = &self.coeffs[r];
        let t = Rational::from_integer(t.clone());
        c0 + c1 * &t + c2 * &t * &t
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(|c| c == &self.coeffs[0])
    }

    /// The same function with the smallest period dividing the current one.
    pub fn collapsed(&self) -> QuasiPolynomial {
        let n = self.period;
        for p in (1..=n).filter(|p| n.is_multiple_of(*p)) {
            let periodic = (0..n as usize).all(|r| self.coeffs[r] == self.coeffs[r % p as usize]);
            if periodic {
                return QuasiPolynomial { period: p, coeffs: self.coeffs[..p as usize].to_vec() };
            }
        }
        unreachable!("the full period always qualifies")
    }

    /// Two residues whose coefficient triples differ, if any.
    pub fn differing_residues(&self) -> Option<(u64, u64)> {
        let r = self.coeffs.iter().position(|c| c != &self.coeffs[0])?;
        Some((0, r as u64))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (r, [c0, c1, c2]) in self.residues() {
            m.insert(r.to_string(), json!([rat_to_string(c0), rat_to_string(c1), rat_to_string(c2)]));
        }
        json!({ "period": self.period, "coeffs": Value::Object(m) })
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, [c0, c1, c2]) in self.residues() {
            if self.period > 1 {
                write!(f, "t ≡ {r} (mod {}): ", self.period)?;
            }
            writeln!(f, "{}·t² + {}·t + {}", rat_to_string(c2), rat_to_string(c1), rat_to_string(c0))?;
        }
        Ok(())
    }
}

/// Quadratic through `(t0, f0), (t0+d, f1), (t0+2d, f2)`.
fn interpolate(t0: u64, d: u64, f: [&BigInt; 3]) -> Coeffs {
    let r = |v: &BigInt| Rational::from_integer(v.clone());
    let (t0, d) = (Rational::from_integer(t0.into()), Rational::from_integer(d.into()));
    let two = Rational::from_integer(BigInt::from(2));
    let d1 = r(f[1]) - r(f[0]);
    let d2 = r(f[2]) - &two * r(f[1]) + r(f[0]);
    let c2 = &d2 / (&two * &d * &d);
    let c1 = (&d1 - &c2 * (&two * &t0 * &d + &d * &d)) / &d;
    let c0 = r(f[0]) - &c1 * &t0 - &c2 * &t0 * &t0;
    [c0, c1, c2]
}

/// Period `den(P)`; per residue, the quadratic through three exact counts,
/// checked against a fourth.
pub fn reconstruct_quasipolynomial(p: &RationalPolygon) -> Result<QuasiPolynomial> {
    reconstruct_with(p, &LatticeCounter::new(p))
}

fn reconstruct_with(p: &RationalPolygon, counter: &LatticeCounter) -> Result<QuasiPolynomial> {
    let d = p
        .denominator()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("denominator {} is too large to sample", p.denominator())))?;
    let coeffs: Vec<Coeffs> = (0..d)
        .into_par_iter()
        .map(|r| {
            let t0 = if r == 0 { d } else { r };
            let f: Vec<BigInt> = (0..4).map(|k| counter.total(t0 + k * d)).collect();
            let c = interpolate(t0, d, [&f[0], &f[1], &f[2]]);
            let t3 = Rational::from_integer(BigInt::from(t0 + 3 * d));
            let predicted = &c[0] + &c[1] * &t3 + &c[2] * &t3 * &t3;
            if predicted != Rational::from_integer(f[3].clone()) {
                return Err(Error::Internal(format!(
                    "residue {r}: interpolated count {predicted} differs from {} at t = {}",
                    f[3],
                    t0 + 3 * d
                )));
            }
            if &c[2] != p.area() {
                return Err(Error::Internal(format!(
                    "residue {r}: leading coefficient {} differs from area {}",
                    c[2],
                    p.area()
                )));
            }
            Ok(c)
        })
        .collect::<Result<_>>()?;
    QuasiPolynomial::new(coeffs)
}

/// Outcome of the polynomiality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipCertificate {
    pub is_pip: bool,
    /// Minimal-period form of the Ehrhart quasipolynomial.
    pub ehrhart: QuasiPolynomial,
    /// `(i, b)` read off the polynomial; present only for PIPs.
    pub profile: Option<(BigInt, BigInt)>,
    pub witness_residues: Option<(u64, u64)>,
    /// Direct counts in `P` itself.
    pub interior: BigInt,
    pub boundary: BigInt,
}

impl PipCertificate {
    pub fn to_json(&self) -> Value {
        let mut v = self.ehrhart.to_json();
        let m = v.as_object_mut().expect("object");
        m.insert("is_pip".into(), Value::Bool(self.is_pip));
        m.insert("i".into(), bigint_json(&self.interior));
        m.insert("b".into(), bigint_json(&self.boundary));
        if let Some((r, s)) = self.witness_residues {
            m.insert("witness_residues".into(), json!([r, s]));
        }
        v
    }
}

impl Serialize for PipCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Reconstructs the Ehrhart function and decides whether it is a polynomial.
/// For a PIP the profile `b = 2·c1`, `i = c2 − c1 + 1` is recomputed by
/// direct counting, and any disagreement is an internal error.
pub fn is_pseudointegral(p: &RationalPolygon) -> Result<PipCertificate> {
    let counter = LatticeCounter::new(p);
    let full = reconstruct_with(p, &counter)?;
    let ehrhart = full.collapsed();
    let interior = counter.interior(1);
    let boundary = counter.boundary(1);
    if !ehrhart.is_polynomial() {
        let witness_residues = full.differing_residues();
        return Ok(PipCertificate { is_pip: false, ehrhart, profile: None, witness_residues, interior, boundary });
    }
    let [c0, c1, c2] = ehrhart.coeffs(0).clone();
    if !c0.is_one() {
        return Err(Error::Internal(format!("polynomial Ehrhart function with constant term {c0}")));
    }
    let b = &c1 * Rational::from_integer(BigInt::from(2));
    let i = &c2 - &c1 + Rational::one();
    if !b.is_integer() || !i.is_integer() {
        return Err(Error::Internal(format!("non-integral profile i = {i}, b = {b}")));
    }
    let (i, b) = (i.to_integer(), b.to_integer());
    if i != interior || b != boundary {
        return Err(Error::Internal(format!(
            "profile from coefficients (i = {i}, b = {b}) disagrees with direct counts (i = {interior}, b = {boundary})"
        )));
    }
    Ok(PipCertificate { is_pip: true, ehrhart, profile: Some((i, b)), witness_residues: None, interior, boundary })
}

/// Checks `|int(tP) ∩ Z²| = ehr_P(−t)` for `t = 1..=t_max`.
pub fn check_reciprocity(p: &RationalPolygon, t_max: u64) -> Result<bool> {
    let counter = LatticeCounter::new(p);
    let qp = reconstruct_with(p, &counter)?;
    Ok((1..=t_max).into_par_iter().all(|t| {
        let at_minus_t = qp.eval(&-BigInt::from(t));
        Rational::from_integer(counter.interior(t)) == at_minus_t
    }))
}

/// Certified summary of one polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonProfile {
    pub interior: BigInt,
    pub boundary: BigInt,
    pub area: Rational,
    pub denominator: BigInt,
    pub is_pip: bool,
}

pub fn profile(p: &RationalPolygon) -> Result<PolygonProfile> {
    let cert = is_pseudointegral(p)?;
    Ok(PolygonProfile {
        interior: cert.interior,
        boundary: cert.boundary,
        area: p.area().clone(),
        denominator: p.denominator().clone(),
        is_pip: cert.is_pip,
    })
}

/// Area predicted by Pick's formula, `i + b/2 − 1`.
pub fn pick_area(interior: &BigInt, boundary: &BigInt) -> Rational {
    Rational::from_integer(interior.clone()) + Rational::new(boundary.clone(), BigInt::from(2)) - Rational::one()
}

/// Whether `P` has a lattice point on each edge line, i.e. every edge offset
/// is an integer for the primitive normal.
pub fn all_edges_reticular(p: &RationalPolygon) -> bool {
    p.edges().iter().all(|e| e.is_reticular())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, Vec2};

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::from_ints(x, y)
    }

    fn q(x: (i64, i64), y: (i64, i64)) -> Vec2 {
        Vec2::new(rat(x.0, x.1), rat(y.0, y.1))
    }

    fn coeffs(c0: Rational, c1: Rational, c2: Rational) -> Coeffs {
        [c0, c1, c2]
    }

    #[test]
    fn unit_square_polynomial() {
        let sq = RationalPolygon::hull(&[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]).unwrap();
        let qp = reconstruct_quasipolynomial(&sq).unwrap();
        assert_eq!(qp.period(), 1);
        assert_eq!(qp.coeffs(0), &coeffs(rat_int(1), rat_int(2), rat_int(1)));
        assert!(check_reciprocity(&sq, 5).unwrap());
    }

    #[test]
    fn fibonacci_t1_collapses_to_polynomial() {
        let p = RationalPolygon::hull(&[q((-3, 2), (1, 2)), v(0, -1), v(6, -1)]).unwrap();
        assert_eq!(reconstruct_quasipolynomial(&p).unwrap().period(), 2);
        let cert = is_pseudointegral(&p).unwrap();
        assert!(cert.is_pip);
        assert_eq!(cert.ehrhart.period(), 1);
        assert_eq!(cert.ehrhart.coeffs(0), &coeffs(rat_int(1), rat(9, 2), rat(9, 2)));
        assert_eq!(cert.profile, Some((BigInt::from(1), BigInt::from(9))));
    }

    #[test]
    fn four_gon_is_not_pip() {
        let p = RationalPolygon::hull(&[v(1, 0), q((0, 1), (2, 3)), v(-1, 0), q((0, 1), (-2, 3))]).unwrap();
        let cert = is_pseudointegral(&p).unwrap();
        assert!(!cert.is_pip);
        let (r, s) = cert.witness_residues.unwrap();
        let full = reconstruct_quasipolynomial(&p).unwrap();
        assert_ne!(full.coeffs(r), full.coeffs(s));
        assert_eq!(cert.interior, BigInt::from(1));
    }

    #[test]
    fn t111_reciprocity() {
        let t = RationalPolygon::hull(&[v(-3, 2), v(0, -1), v(3, -1)]).unwrap();
        assert!(check_reciprocity(&t, 6).unwrap());
        let qp = reconstruct_quasipolynomial(&t).unwrap();
        assert_eq!(qp.eval(&BigInt::from(-2)), rat_int(10));
    }

    #[test]
    fn certificate_json_shape() {
        let sq = RationalPolygon::hull(&[v(0, 0), v(2, 0), v(2, 2), v(0, 2)]).unwrap();
        let s = serde_json::to_string(&is_pseudointegral(&sq).unwrap()).unwrap();
        assert_eq!(s, r#"{"b":8,"coeffs":{"0":["1","4","4"]},"i":1,"is_pip":true,"period":1}"#);
    }

    #[test]
    fn collapse_finds_divisor_period() {
        let a = coeffs(rat_int(1), rat_int(0), rat_int(1));
        let b = coeffs(rat_int(0), rat_int(0), rat_int(1));
        let qp = QuasiPolynomial::new(vec![a.clone(), b.clone(), a.clone(), b.clone(), a, b]).unwrap();
        assert_eq!(qp.collapsed().period(), 2);
        assert!(!qp.is_polynomial());
    }

    #[test]
    fn pick_area_formula() {
        assert_eq!(pick_area(&BigInt::from(3), &BigInt::from(14)), rat_int(9));
    }
}
