//! Positive integer solutions of `(x + y + z)² = b·xyz`.
//!
//! For fixed `x, y` the equation is a monic quadratic in `z` whose roots sum
//! to `bxy − 2(x + y)`, so any entry can be swapped for the conjugate root (a
//! Vieta jump). Jumping the largest entry down until `z ≤ x + y` reaches a
//! reduced solution, and the reduced solutions are finite in number.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::bigint_json;

/// The reduced solutions for `b = 1..9`, as `[b, x, y, z]`.
pub const REDUCED_TABLE: [[u64; 4]; 13] = [
    [1, 5, 20, 25],
    [1, 6, 12, 18],
    [1, 8, 8, 16],
    [1, 9, 9, 9],
    [2, 3, 6, 9],
    [2, 4, 4, 8],
    [3, 2, 4, 6],
    [3, 3, 3, 3],
    [4, 2, 2, 4],
    [5, 1, 4, 5],
    [6, 1, 2, 3],
    [8, 1, 1, 2],
    [9, 1, 1, 1],
];

/// A solution stored with `x <= y <= z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VietaSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub b: BigInt,
}

/// Position in the sorted triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Smallest,
    Middle,
    Largest,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Smallest, Slot::Middle, Slot::Largest];
}

/// `b = (x+y+z)²/(xyz)` when it is an integer.
pub fn is_solution(x: &BigInt, y: &BigInt, z: &BigInt) -> Result<Option<BigInt>> {
    if !x.is_positive() || !y.is_positive() || !z.is_positive() {
        return Err(Error::NonPositive);
    }
    let s = x + y + z;
    let (b, r) = (&s * &s).div_rem(&(x * y * z));
    Ok(r.is_zero().then_some(b))
}

impl VietaSolution {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        let mut e = [x.into(), y.into(), z.into()];
        e.sort();
        let [x, y, z] = e;
        match is_solution(&x, &y, &z)? {
            Some(b) => Ok(VietaSolution { x, y, z, b }),
            None => Err(Error::NotASolution(format!("({x}, {y}, {z})"))),
        }
    }

    pub fn entries(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn key(&self) -> String {
        format!("{},{},{}", self.x, self.y, self.z)
    }

    pub fn to_json(&self) -> Value {
        json!([bigint_json(&self.x), bigint_json(&self.y), bigint_json(&self.z), bigint_json(&self.b)])
    }
}

impl fmt::Display for VietaSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}) b={}", self.x, self.y, self.z, self.b)
    }
}

/// `x <= y <= z <= x + y`.
pub fn is_vieta_reduced(s: &VietaSolution) -> bool {
    s.x <= s.y && s.y <= s.z && s.z <= &s.x + &s.y
}

/// Replaces the entry at `slot` by the other root of its quadratic.
pub fn vieta_jump(s: &VietaSolution, slot: Slot) -> Result<VietaSolution> {
    let (e, p, q) = match slot {
        Slot::Smallest => (&s.x, &s.y, &s.z),
        Slot::Middle => (&s.y, &s.x, &s.z),
        Slot::Largest => (&s.z, &s.x, &s.y),
    };
    let e2 = &s.b * p * q - 2u32 * (p + q) - e;
    if !e2.is_positive() {
        return Err(Error::JumpOutOfRange(format!("jumping {e} in {s} gives {e2}")));
    }
    let mut t = [p.clone(), q.clone(), e2];
    t.sort();
    let [x, y, z] = t;
    Ok(VietaSolution { x, y, z, b: s.b.clone() })
}

/// Jumps the largest entry until the solution is reduced.
pub fn vieta_reduce(s: &VietaSolution) -> VietaSolution {
    let mut cur = s.clone();
    while !is_vieta_reduced(&cur) {
        cur = vieta_jump(&cur, Slot::Largest).expect("the conjugate of a non-reduced maximum is positive");
    }
    cur
}

fn check_b(b: u64) -> Result<()> {
    if (1..=9).contains(&b) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("b = {b} must satisfy 1 ≤ b ≤ 9")))
    }
}

/// Number of `(x, w)` pairs examined by [`enumerate_reduced`].
pub fn reduced_search_size(b: u64) -> u64 {
    (1..=16 / b).map(|x| x + 1).sum()
}

/// All reduced solutions with the given `b`.
///
/// A reduced solution has `x <= 16/b` and `z = y + w` with `0 <= w <= x`;
/// for each such `(x, w)` the equation becomes
/// `(bx − 4)y² + (bxw − 4(x+w))y − (x+w)² = 0`, solved exactly for `y`.
pub fn enumerate_reduced(b: u64) -> Result<Vec<VietaSolution>> {
    check_b(b)?;
    let b_i = b as i128;
    let mut out = BTreeSet::new();
    for x in 1..=(16 / b) as i128 {
        for w in 0..=x {
            let a = b_i * x - 4;
            let bb = b_i * x * w - 4 * (x + w);
            let c = -(x + w) * (x + w);
            let mut roots = Vec::new();
            if a == 0 {
                if bb != 0 && (-c) % bb == 0 {
                    roots.push(-c / bb);
                }
            } else {
                let disc = bb * bb - 4 * a * c;
                if disc >= 0 {
                    let r = disc.sqrt();
                    if r * r == disc {
                        for num in [-bb + r, -bb - r] {
                            if num % (2 * a) == 0 {
                                roots.push(num / (2 * a));
                            }
                        }
                    }
                }
            }
            for y in roots {
                if y >= x {
                    let s = VietaSolution::new(x, y, y + w)?;
                    debug_assert_eq!(s.b, BigInt::from(b));
                    out.insert(s);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Sorted solutions with `z <= max_z` reachable by single jumps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JumpForest {
    pub roots: Vec<VietaSolution>,
    pub nodes: BTreeSet<VietaSolution>,
    pub adjacency: BTreeMap<VietaSolution, BTreeSet<VietaSolution>>,
}

impl JumpForest {
    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn to_json(&self) -> Value {
        let adj: serde_json::Map<String, Value> = self
            .nodes
            .iter()
            .map(|n| {
                let nbrs: Vec<Value> = self
                    .adjacency
                    .get(n)
                    .into_iter()
                    .flatten()
                    .map(|m| Value::String(m.key()))
                    .collect();
                (n.key(), Value::Array(nbrs))
            })
            .collect();
        Value::Object(adj)
    }
}

/// Breadth-first search from the reduced roots. A jump that returns the same
/// sorted triple is not recorded as an edge.
pub fn jump_forest(b: u64, max_z: &BigInt) -> Result<JumpForest> {
    let roots: Vec<VietaSolution> = enumerate_reduced(b)?.into_iter().filter(|r| &r.z <= max_z).collect();
    let mut forest = JumpForest { roots: roots.clone(), ..Default::default() };
    let mut queue: VecDeque<VietaSolution> = roots.into_iter().collect();
    for r in &queue {
        forest.nodes.insert(r.clone());
        forest.adjacency.entry(r.clone()).or_default();
    }
    while let Some(n) = queue.pop_front() {
        for slot in Slot::ALL {
            let m = vieta_jump(&n, slot)?;
            if &m.z > max_z || m == n {
                continue;
            }
            forest.adjacency.entry(n.clone()).or_default().insert(m.clone());
            forest.adjacency.entry(m.clone()).or_default().insert(n.clone());
            if forest.nodes.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    Ok(forest)
}

/// One term `s_j = (x, y_j, z_j)` of the chain that repeatedly jumps the
/// middle entry of a reduced seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyState {
    pub seed: VietaSolution,
    pub j: usize,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl FamilyState {
    pub fn solution(&self) -> VietaSolution {
        VietaSolution { x: self.x.clone(), y: self.y.clone(), z: self.z.clone(), b: self.seed.b.clone() }
    }

    /// Whether `x` divides `y_j` and `z_j`.
    pub fn is_divisible(&self) -> bool {
        self.y.is_multiple_of(&self.x) && self.z.is_multiple_of(&self.x)
    }
}

/// `s_0 = seed`, `y_{j+1} = z_j`, `z_{j+1} = b·x·y_{j+1} − 2(x + y_{j+1}) − y_j`.
pub fn family(seed: &VietaSolution, j_max: usize) -> Result<Vec<FamilyState>> {
    if !is_vieta_reduced(seed) {
        return Err(Error::OutOfRange(format!("family seed {seed} is not reduced")));
    }
    let x = seed.x.clone();
    let (mut y, mut z) = (seed.y.clone(), seed.z.clone());
    let mut out = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        out.push(FamilyState { seed: seed.clone(), j, x: x.clone(), y: y.clone(), z: z.clone() });
        let z_next = &seed.b * &x * &z - 2u32 * (&x + &z) - &y;
        y = std::mem::replace(&mut z, z_next);
    }
    Ok(out)
}

/// The solution `(4, 5, 81)` with `b = 5`, where `x` divides neither of the
/// other entries.
pub fn indivisible_example() -> VietaSolution {
    VietaSolution::new(4, 5, 81).expect("(4, 5, 81) solves the equation")
}

/// Sorted `x_1 <= ... <= x_n` with `(Σx)² = b·Πx`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NTuple {
    pub xs: Vec<BigInt>,
    pub b: BigInt,
}

impl NTuple {
    pub fn new(mut xs: Vec<BigInt>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::OutOfRange("need at least two entries".into()));
        }
        if xs.iter().any(|x| !x.is_positive()) {
            return Err(Error::NonPositive);
        }
        xs.sort();
        let s: BigInt = xs.iter().sum();
        let p: BigInt = xs.iter().product();
        let (b, r) = (&s * &s).div_rem(&p);
        if !r.is_zero() {
            return Err(Error::NotASolution(format!("{xs:?}")));
        }
        Ok(NTuple { xs, b })
    }

    /// `x_n <= x_1 + ... + x_{n-1}`.
    pub fn is_reduced(&self) -> bool {
        let (last, rest) = self.xs.split_last().expect("nonempty");
        last <= &rest.iter().sum::<BigInt>()
    }

    /// Replaces the largest entry by `b·Π_{i<n} x_i − 2Σ_{i<n} x_i − x_n`.
    pub fn jump_largest(&self) -> NTuple {
        let (last, rest) = self.xs.split_last().expect("nonempty");
        let s: BigInt = rest.iter().sum();
        let p: BigInt = rest.iter().product();
        let mut xs = rest.to_vec();
        xs.push(&self.b * p - 2u32 * s - last);
        xs.sort();
        NTuple { xs, b: self.b.clone() }
    }

    pub fn reduce(&self) -> NTuple {
        let mut cur = self.clone();
        while !cur.is_reduced() {
            cur = cur.jump_largest();
        }
        cur
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralBoundReport {
    pub n: usize,
    pub search_bound: u64,
    pub solutions: Vec<NTuple>,
    pub b_values: BTreeSet<BigInt>,
    pub max_b: BigInt,
}

impl GeneralBoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "bound": self.search_bound,
            "solutions": self.solutions.len(),
            "b_values": self.b_values.iter().map(bigint_json).collect::<Vec<_>>(),
            "max_b": bigint_json(&self.max_b),
        })
    }
}

fn tuples_with_prefix(n: usize, bound: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == n {
        let s: u128 = prefix.iter().map(|&x| x as u128).sum();
        let p: u128 = prefix.iter().map(|&x| x as u128).product();
        if (s * s).is_multiple_of(p) {
            out.push(prefix.clone());
        }
        return;
    }
    let lo = *prefix.last().expect("prefix starts nonempty");
    for x in lo..=bound {
        prefix.push(x);
        tuples_with_prefix(n, bound, prefix, out);
        prefix.pop();
    }
}

/// Exhaustive search over sorted `n`-tuples with entries `<= search_bound`.
/// Every solution found must have `b <= n²` and must reduce to a reduced
/// tuple with the same `b`.
pub fn verify_general_bound(n: usize, search_bound: u64) -> Result<GeneralBoundReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must satisfy n ≥ 2")));
    }
    if search_bound < 1 {
        return Err(Error::OutOfRange("search bound must be at least 1".into()));
    }
    let raw: Vec<Vec<u64>> = (1..=search_bound)
        .into_par_iter()
        .flat_map_iter(|x1| {
            let mut out = Vec::new();
            tuples_with_prefix(n, search_bound, &mut vec![x1], &mut out);
            out
        })
        .collect();
    let n_sq = BigInt::from(n * n);
    let mut solutions = Vec::with_capacity(raw.len());
    for xs in raw {
        let t = NTuple::new(xs.into_iter().map(BigInt::from).collect())?;
        if t.b > n_sq {
            return Err(Error::TheoremViolation(format!("{:?} has b = {} > {}", t.xs, t.b, n_sq)));
        }
        let r = t.reduce();
        let check = NTuple::new(r.xs.clone())?;
        if check.b != t.b || !r.is_reduced() {
            return Err(Error::TheoremViolation(format!("{:?} reduced to {:?}", t.xs, r.xs)));
        }
        solutions.push(t);
    }
    let b_values: BTreeSet<BigInt> = solutions.iter().map(|t| t.b.clone()).collect();
    let max_b = b_values.iter().next_back().cloned().unwrap_or_else(BigInt::zero);
    Ok(GeneralBoundReport { n, search_bound, solutions, b_values, max_b })
}

/// All sorted solutions with `z <= bound`, as `[x, y, z, b]`.
pub fn solutions_up_to(bound: u64) -> Vec<[u64; 4]> {
    let mut out: Vec<[u64; 4]> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut found = Vec::new();
            for y in x..=bound {
                for z in y..=bound {
                    let s = x + y + z;
                    let p = x * y * z;
                    if (s * s) % p == 0 {
                        found.push([x, y, z, s * s / p]);
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}
