//! Named verification suites with one pass/fail line per check.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constructions::{
    construct_pip, construct_pip_max_b, example_pip_b1, example_pip_b2, fibonacci, fibonacci_triangle,
    reflexive_catalog, scott_admissible, t_xyz, PIP_DENOMINATORS,
};
use crate::counting::{dilated_width, LatticeCounter};
use crate::ehrhart::{all_edges_reticular, check_reciprocity, is_pseudointegral, pick_area};
use crate::error::{Error, Result};
use crate::exact::{rat, AffineMap, IntMat2, Rational, Vec2};
use crate::polygon::{
    edge_lattice_length_formula, edge_vector_formula, lattice_distance, triangle_invariant,
    triangle_lattice_length_formula, RationalPolygon,
};
use crate::vieta::{
    enumerate_reduced, family, jump_forest, solutions_up_to, verify_general_bound, vieta_jump, vieta_reduce,
    Slot, VietaSolution, REDUCED_TABLE,
};

/// Dilates wider than this many columns are not certified.
pub const MAX_DILATED_WIDTH: u64 = 1_000_000;

pub const SUITES: [&str; 10] = [
    "reduced-table",
    "b-values",
    "general-bound",
    "txyz",
    "fibonacci",
    "denominators",
    "counterexamples",
    "reflexive",
    "properties",
    "small-boundary",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{} {}: {}/{} checks passed", if self.passed() { "PASS" } else { "FAIL" }, self.suite, n, self.checks.len())
    }
}

/// Optional knobs; each suite falls back to its own default.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub bound: Option<u64>,
    pub n: Option<usize>,
    pub depth: Option<usize>,
    pub instances: Option<usize>,
    pub seed: Option<u64>,
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    match name {
        "reduced-table" => reduced_table(),
        "b-values" => b_values(opts.bound.unwrap_or(300)),
        "general-bound" => general_bound(opts),
        "txyz" => txyz_family(opts.depth.unwrap_or(4)),
        "fibonacci" => fibonacci_family(opts.depth.unwrap_or(5)),
        "denominators" => denominator_grid(opts.bound.unwrap_or(6)),
        "counterexamples" => counterexamples(),
        "reflexive" => reflexive(),
        "properties" => properties(opts.instances.unwrap_or(100), opts.seed.unwrap_or(0x5eed)),
        "small-boundary" => small_boundary(opts.bound.unwrap_or(5)),
        _ => Err(Error::Parse(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn table_solution(row: &[u64; 4]) -> VietaSolution {
    VietaSolution::new(row[1], row[2], row[3]).expect("table rows are solutions")
}

fn reduced_table() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("reduced-table");
    let mut found = BTreeSet::new();
    for b in 1..=9u64 {
        let sols = enumerate_reduced(b)?;
        let expected: BTreeSet<VietaSolution> =
            REDUCED_TABLE.iter().filter(|r| r[0] == b).map(table_solution).collect();
        let got: BTreeSet<VietaSolution> = sols.into_iter().collect();
        rep.check(format!("b = {b}"), got == expected, format!("{} reduced solution(s)", got.len()));
        found.extend(got);
    }
    rep.check("total", found.len() == 13, format!("{}/13 solutions matched", found.len()));
    Ok(rep)
}

fn b_values(bound: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("b-values");
    let sols = solutions_up_to(bound);
    let bs: BTreeSet<u64> = sols.iter().map(|s| s[3]).collect();
    let allowed: BTreeSet<u64> = [1, 2, 3, 4, 5, 6, 8, 9].into_iter().collect();
    rep.check(
        "allowed values",
        bs.is_subset(&allowed),
        format!("{} solutions with z ≤ {bound}, b values {bs:?}", sols.len()),
    );
    for b in &allowed {
        rep.check(format!("b = {b} witnessed"), bs.contains(b), "");
    }
    Ok(rep)
}

fn general_bound(opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("general-bound");
    let runs: Vec<(usize, u64)> = match opts.n {
        Some(n) => vec![(n, opts.bound.unwrap_or(40))],
        None => vec![(2, 50), (3, 200), (4, 40)],
    };
    for (n, bound) in runs {
        match verify_general_bound(n, bound) {
            Ok(r) => {
                let n_sq = BigInt::from(n * n);
                rep.check(
                    format!("n = {n}, entries ≤ {bound}"),
                    r.max_b == n_sq,
                    format!("{} solutions, max b = {} (bound {n_sq})", r.solutions.len(), r.max_b),
                );
            }
            Err(e) => rep.check(format!("n = {n}, entries ≤ {bound}"), false, e.to_string()),
        }
    }
    Ok(rep)
}

/// Certifies `p` as a PIP with the given profile.
fn certify_profile(p: &RationalPolygon, i: &BigInt, b: &BigInt) -> std::result::Result<String, String> {
    let cert = is_pseudointegral(p).map_err(|e| e.to_string())?;
    let want = (i.clone(), b.clone());
    if cert.is_pip && cert.profile.as_ref() == Some(&want) {
        Ok(format!("PIP with (i, b) = ({i}, {b}), den {}", p.denominator()))
    } else {
        Err(format!("is_pip = {}, (i, b) = ({}, {}), expected ({i}, {b})", cert.is_pip, cert.interior, cert.boundary))
    }
}

fn txyz_family(depth: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("txyz");
    let mut cases = Vec::new();
    for row in &REDUCED_TABLE {
        for st in family(&table_solution(row), depth)? {
            cases.push(st);
        }
    }
    let results: Vec<(String, Option<std::result::Result<String, String>>)> = cases
        .par_iter()
        .map(|st| {
            let s = st.solution();
            let name = format!("{} j = {}", s, st.j);
            if !st.is_divisible() {
                return (name, None);
            }
            let p = match t_xyz(&s) {
                Ok(p) => p,
                Err(e) => return (name, Some(Err(e.to_string()))),
            };
            let t = 3 * p.denominator().to_u64().unwrap_or(u64::MAX / 4);
            if dilated_width(&p, t) > Rational::from_integer(MAX_DILATED_WIDTH.into()) {
                log::warn!("skipping {name}: dilated width exceeds {MAX_DILATED_WIDTH}");
                return (name, None);
            }
            let res = certify_profile(&p, &BigInt::one(), &s.b)
                .and_then(|cert| edge_lengths_match(&p).map(|edges| format!("{cert}; {edges}")));
            (name, Some(res))
        })
        .collect();
    let mut skipped = 0;
    for (name, res) in results {
        match res {
            None => skipped += 1,
            Some(Ok(d)) => rep.check(name, true, d),
            Some(Err(d)) => rep.check(name, false, d),
        }
    }
    rep.check("skipped instances", true, format!("{skipped} skipped (indivisible or too wide)"));
    Ok(rep)
}

/// Directly measured lattice lengths agree with the normal/offset formulas.
fn edge_lengths_match(p: &RationalPolygon) -> std::result::Result<String, String> {
    let (normals, offsets) = p.normals_and_offsets();
    for (k, e) in p.edges().iter().enumerate() {
        let geom = e.lattice_length();
        let general = edge_lattice_length_formula(&normals, &offsets, k).map_err(|e| e.to_string())?;
        let tri = if p.len() == 3 {
            triangle_lattice_length_formula(&normals, &offsets, k).map_err(|e| e.to_string())?
        } else {
            general.clone()
        };
        if geom != general || geom != tri {
            return Err(format!("edge {k}: length {geom} vs formulas {general}, {tri}"));
        }
    }
    Ok("edge lengths match".into())
}

fn fibonacci_family(depth: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("fibonacci");
    let seed = VietaSolution::new(1, 1, 1)?;
    let fam = family(&seed, depth)?;
    let mut prev_den = BigInt::from(0);
    for j in 1..=depth as u64 {
        let p = fibonacci_triangle(j)?;
        let (f1, f3) = (fibonacci(2 * j - 1), fibonacci(2 * j + 1));
        let st = &fam[j as usize];
        rep.check(
            format!("j = {j} family term"),
            st.y == &f1 * &f1 && st.z == &f3 * &f3,
            format!("(1, {}, {})", st.y, st.z),
        );
        let same = t_xyz(&st.solution()).map(|q| q == p).unwrap_or(false);
        rep.check(format!("j = {j} equals its family triangle"), same, "");
        let res = certify_profile(&p, &BigInt::one(), &BigInt::from(9));
        rep.check(format!("j = {j} certificate"), res.is_ok(), res.unwrap_or_else(|e| e));
        let den = p.denominator().clone();
        rep.check(format!("j = {j} denominator grows"), den > prev_den, format!("den = {den}"));
        prev_den = den;
    }
    Ok(rep)
}

fn denominator_grid(max_i: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("denominators");
    let mut cases = Vec::new();
    for d in PIP_DENOMINATORS {
        for i in 1..=max_i {
            for b in 2..=construct_pip_max_b(d, i)? {
                cases.push((d, i, b));
            }
        }
    }
    type Outcome = ((u64, u64, u64), std::result::Result<String, String>);
    let results: Vec<Outcome> = cases
        .par_iter()
        .map(|&(d, i, b)| {
            let res = construct_pip(d, i, b).map_err(|e| e.to_string()).and_then(|p| {
                if p.denominator() != &BigInt::from(d) {
                    return Err(format!("denominator {}", p.denominator()));
                }
                certify_profile(&p, &BigInt::from(i), &BigInt::from(b))
            });
            ((d, i, b), res)
        })
        .collect();
    for ((d, i, b), res) in results {
        let ok = res.is_ok();
        rep.check(format!("d = {d}, i = {i}, b = {b}"), ok, res.unwrap_or_else(|e| e));
    }
    Ok(rep)
}

/// conv{(±1, 0), (0, ±2/3)} = {|2x| + |3y| <= 2}.
pub fn four_gon() -> RationalPolygon {
    RationalPolygon::hull(&[
        Vec2::from_ints(1, 0),
        Vec2::new(rat(0, 1), rat(2, 3)),
        Vec2::from_ints(-1, 0),
        Vec2::new(rat(0, 1), rat(-2, 3)),
    ])
    .expect("four-gon is full-dimensional")
}

/// {±x ± 2y <= 1, ±2x ± y <= 1}.
pub fn eight_gon() -> RationalPolygon {
    let h = rat(1, 2);
    let t = rat(1, 3);
    let pts = [
        (h.clone(), rat(0, 1)),
        (t.clone(), t.clone()),
        (rat(0, 1), h.clone()),
        (-t.clone(), t.clone()),
        (-h.clone(), rat(0, 1)),
        (-t.clone(), -t.clone()),
        (rat(0, 1), -h.clone()),
        (t.clone(), -t),
    ];
    RationalPolygon::hull(&pts.map(|(x, y)| Vec2::new(x, y))).expect("eight-gon is full-dimensional")
}

fn counterexamples() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("counterexamples");
    let origin = Vec2::zero();

    let p = four_gon();
    let cert = is_pseudointegral(&p)?;
    rep.check("four-gon is not a PIP", !cert.is_pip, format!("period {}", cert.ehrhart.period()));
    rep.check("four-gon has one interior point", cert.interior == BigInt::one(), format!("i = {}", cert.interior));
    let dists: Vec<Rational> = p.edges().iter().map(|e| lattice_distance(e, &origin)).collect();
    rep.check(
        "four-gon has an edge at lattice distance 2",
        dists.iter().any(|d| d == &rat(2, 1)),
        format!("distances {:?}", dists.iter().map(|d| d.to_string()).collect::<Vec<_>>()),
    );

    let p = eight_gon();
    let cert = is_pseudointegral(&p)?;
    rep.check("eight-gon has eight vertices", p.len() == 8, format!("{} vertices", p.len()));
    rep.check("eight-gon is not a PIP", !cert.is_pip, format!("period {}", cert.ehrhart.period()));
    rep.check("eight-gon has no boundary points", cert.boundary == BigInt::from(0), format!("b = {}", cert.boundary));
    rep.check("eight-gon has one interior point", cert.interior == BigInt::one(), format!("i = {}", cert.interior));
    let dual_ok = p.dual().map(|d| d.is_integral()).unwrap_or(false);
    rep.check("eight-gon has an integral dual", dual_ok, "");
    let all_one = p.edges().iter().all(|e| lattice_distance(e, &origin) == rat(1, 1));
    rep.check("eight-gon edges all at lattice distance 1", all_one, "");
    Ok(rep)
}

fn reflexive() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("reflexive");
    let cat = reflexive_catalog();
    rep.check("catalog size", cat.len() == 16, format!("{} entries", cat.len()));
    for (k, p) in cat.iter().enumerate() {
        let c = LatticeCounter::new(p);
        let (i, b) = (c.interior(1), c.boundary(1));
        let dual_ok = p.dual().map(|d| d.is_integral()).unwrap_or(false);
        let b_ok = (3..=9).contains(&b.to_u64().unwrap_or(0));
        let pick = &pick_area(&i, &b) == p.area();
        rep.check(
            format!("entry {k}"),
            p.is_integral() && i == BigInt::one() && dual_ok && b_ok && pick,
            format!("{} vertices, i = {i}, b = {b}, area = {}", p.len(), p.area()),
        );
    }
    Ok(rep)
}

fn small_boundary(max_i: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("small-boundary");
    for i in 1..=max_i {
        for (b, p) in [(1, example_pip_b1(i)?), (2, example_pip_b2(i)?)] {
            let res = certify_profile(&p, &BigInt::from(i), &BigInt::from(b));
            rep.check(format!("i = {i}, b = {b}"), res.is_ok(), res.unwrap_or_else(|e| e));
            rep.check(
                format!("no integral polygon has i = {i}, b = {b}"),
                !scott_admissible(i, b),
                "",
            );
        }
    }
    Ok(rep)
}

/// A random full-dimensional polygon with small rational vertices.
pub fn random_polygon(rng: &mut impl Rng, max_points: usize, max_den: i64) -> RationalPolygon {
    loop {
        let k = rng.gen_range(3..=max_points);
        let pts: Vec<Vec2> = (0..k)
            .map(|_| {
                let dx = rng.gen_range(1..=max_den);
                let dy = rng.gen_range(1..=max_den);
                Vec2::new(rat(rng.gen_range(-4 * dx..=4 * dx), dx), rat(rng.gen_range(-4 * dy..=4 * dy), dy))
            })
            .collect();
        if let Ok(p) = RationalPolygon::hull(&pts) {
            return p;
        }
    }
}

/// A random lattice automorphism built from elementary moves.
pub fn random_unimodular(rng: &mut impl Rng) -> AffineMap {
    let mut m = IntMat2::identity();
    for _ in 0..rng.gen_range(1..=6) {
        let step = match rng.gen_range(0..4) {
            0 => IntMat2::new(1, rng.gen_range(-2..=2), 0, 1),
            1 => IntMat2::new(1, 0, rng.gen_range(-2..=2), 1),
            2 => IntMat2::new(0, 1, 1, 0),
            _ => IntMat2::new(-1, 0, 0, 1),
        };
        m = step.mul(&m);
    }
    let shift = Vec2::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    AffineMap::new(m, shift).expect("elementary moves are unimodular")
}

/// A random polygon from one of the PIP families.
pub fn random_family_member(rng: &mut impl Rng) -> RationalPolygon {
    match rng.gen_range(0..4) {
        0 => {
            let d = *PIP_DENOMINATORS.choose(rng).expect("nonempty");
            let i = rng.gen_range(1..=4);
            let b = rng.gen_range(2..=construct_pip_max_b(d, i).expect("valid d"));
            construct_pip(d, i, b).expect("in range")
        }
        1 => example_pip_b1(rng.gen_range(1..=5)).expect("i ≥ 1"),
        2 => example_pip_b2(rng.gen_range(1..=5)).expect("i ≥ 1"),
        _ => {
            let row = REDUCED_TABLE.choose(rng).expect("nonempty");
            let fam = family(&table_solution(row), 2).expect("reduced seed");
            let divisible: Vec<_> = fam.iter().filter(|s| s.is_divisible()).collect();
            match divisible.choose(rng) {
                Some(st) => t_xyz(&st.solution()).expect("divisible"),
                None => example_pip_b1(1).expect("i ≥ 1"),
            }
        }
    }
}

fn properties(instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("properties");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut fails = Vec::new();
    for k in 0..instances {
        let p = random_polygon(&mut rng, 6, 4);
        let t_max = 2 * p.denominator().to_u64().expect("small denominator");
        if !check_reciprocity(&p, t_max)? {
            fails.push(k);
        }
    }
    rep.check("reciprocity", fails.is_empty(), format!("{instances} polygons, failures {fails:?}"));

    let mut fails = Vec::new();
    for k in 0..instances {
        let p = if k % 2 == 0 { random_polygon(&mut rng, 5, 3) } else { random_family_member(&mut rng) };
        let m = random_unimodular(&mut rng);
        let q = p.apply_map(&m)?;
        let (cp, cq) = (LatticeCounter::new(&p), LatticeCounter::new(&q));
        let counts_ok = (1..=3).all(|t| cp.total(t) == cq.total(t) && cp.boundary(t) == cq.boundary(t));
        let verdict_ok = is_pseudointegral(&p)?.is_pip == is_pseudointegral(&q)?.is_pip;
        if !(counts_ok && verdict_ok) {
            fails.push(k);
        }
    }
    rep.check("unimodular invariance", fails.is_empty(), format!("{instances} maps, failures {fails:?}"));

    let mut fails = Vec::new();
    for k in 0..instances {
        let t = random_triangle(&mut rng);
        let m = random_unimodular(&mut rng);
        if triangle_invariant(&t)? != triangle_invariant(&t.apply_map(&m)?)? {
            fails.push(k);
        }
    }
    rep.check("triangle invariant", fails.is_empty(), format!("{instances} triangles, failures {fails:?}"));

    let mut fails = Vec::new();
    for k in 0..instances {
        let p = if k % 3 == 0 { random_triangle(&mut rng) } else { random_polygon(&mut rng, 7, 5) };
        let (normals, offsets) = p.normals_and_offsets();
        let ok = p.edges().iter().enumerate().all(|(i, e)| {
            edge_vector_formula(&normals, &offsets, i).ok() == Some(&e.end - &e.start)
        }) && edge_lengths_match(&p).is_ok();
        if !ok {
            fails.push(k);
        }
    }
    rep.check("edge formulas", fails.is_empty(), format!("{instances} polygons, failures {fails:?}"));

    let mut fails = Vec::new();
    let mut pips = 0;
    for k in 0..instances {
        let p = random_family_member(&mut rng).apply_map(&random_unimodular(&mut rng))?;
        let cert = is_pseudointegral(&p)?;
        if cert.is_pip {
            pips += 1;
            if !all_edges_reticular(&p) {
                fails.push(k);
            }
        }
    }
    rep.check("PIP edges reticular", fails.is_empty() && pips == instances, format!("{pips} PIPs, failures {fails:?}"));

    let mut fails = Vec::new();
    let table: BTreeSet<VietaSolution> = REDUCED_TABLE.iter().map(table_solution).collect();
    let mut nodes = Vec::new();
    for b in [1u64, 2, 3, 4, 5, 6, 8, 9] {
        nodes.extend(jump_forest(b, &BigInt::from(100_000))?.nodes);
    }
    for k in 0..instances {
        let n = nodes.choose(&mut rng).expect("nonempty forest");
        let involution = Slot::ALL.iter().all(|&s| jump_is_involution(n, s));
        if !involution || !table.contains(&vieta_reduce(n)) {
            fails.push(k);
        }
    }
    rep.check("jumps and reduction", fails.is_empty(), format!("{instances} forest nodes, failures {fails:?}"));
    Ok(rep)
}

/// Jumping an entry and then jumping the new entry again restores `s`.
pub fn jump_is_involution(s: &VietaSolution, slot: Slot) -> bool {
    let Ok(there) = vieta_jump(s, slot) else { return false };
    let others: Vec<&BigInt> = {
        let mut e = s.entries().to_vec();
        let idx = Slot::ALL.iter().position(|&t| t == slot).expect("slot");
        e.remove(idx);
        e
    };
    let mut rest = there.entries().to_vec();
    for o in others {
        match rest.iter().position(|v| *v == o) {
            Some(k) => {
                rest.remove(k);
            }
            None => return false,
        }
    }
    let new_value = rest[0];
    let back_slot = Slot::ALL[there.entries().iter().position(|v| *v == new_value).expect("present")];
    vieta_jump(&there, back_slot).ok().as_ref() == Some(s)
}

fn random_triangle(rng: &mut impl Rng) -> RationalPolygon {
    loop {
        let p = random_polygon(rng, 3, 5);
        if p.len() == 3 {
            return p;
        }
    }
}
