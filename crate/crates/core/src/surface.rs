//! Slope splittings of the free group of rank two, seen as the fundamental
//! group of a punctured torus, and a brute-force crossing counter.
//!
//! The counter below deliberately shares nothing with the crossing module:
//! it enumerates a ball, sorts elements into double cosets by explicit
//! two-sided products, and measures quadrants by counting points.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{Automorphism, Endomorphism};
use crate::presentation::Group;
use crate::splitting::{BaseSplitting, Role, Splitting, Transversal};
use crate::subgroup::Subgroup;
use crate::suite;
use crate::word::{Letter, Word};

/// A slope `p/q`, normalised so that the first non-zero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if (p, q) == (0, 0) || gcd(p, q) != 1 {
            return Err(Error::invalid(format!("slope {}/{} is not a primitive pair", p, q)));
        }
        let s = if p < 0 || (p == 0 && q < 0) { -1 } else { 1 };
        Ok(Slope { p: s * p, q: s * q })
    }

    pub fn parse(text: &str) -> Result<Slope> {
        let (a, b) = text.split_once('/').ok_or_else(|| Error::invalid(format!("slope {:?} is not p/q", text)))?;
        let p = a.trim().parse().map_err(|_| Error::invalid(format!("bad slope {:?}", text)))?;
        let q = b.trim().parse().map_err(|_| Error::invalid(format!("bad slope {:?}", text)))?;
        Slope::new(p, q)
    }

    /// Slopes with both entries in `-bound..=bound`, one per class.
    pub fn all_bounded(bound: i64) -> Vec<Slope> {
        let mut out = BTreeSet::new();
        for p in -bound..=bound {
            for q in -bound..=bound {
                if let Ok(s) = Slope::new(p, q) {
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// `|p_a q_b - q_a p_b|`.
pub fn slope_intersection(a: Slope, b: Slope) -> u64 {
    (a.p * b.q - a.q * b.p).unsigned_abs()
}

fn auto(group: &Group, fwd: [&str; 2], inv: [&str; 2]) -> Automorphism {
    let f = Endomorphism::new(fwd.iter().map(|s| group.parse(s).unwrap()).collect());
    let i = Endomorphism::new(inv.iter().map(|s| group.parse(s).unwrap()).collect());
    Automorphism::new(group, f, i).expect("elementary automorphism")
}

/// An automorphism of `F2` sending `x` to a primitive element whose
/// abelianisation is `a x + b y`, built by the Euclidean algorithm.
fn primitive_automorphism(group: &Group, a: i64, b: i64) -> Automorphism {
    match (a, b) {
        (1, 0) => return Automorphism::identity(2),
        (-1, 0) => return auto(group, ["x'", "y"], ["x'", "y"]),
        (0, 1) => return auto(group, ["y", "x"], ["y", "x"]),
        (0, -1) => return auto(group, ["y'", "x"], ["y", "x'"]),
        _ => {}
    }
    let s = if (a > 0) == (b > 0) { 1 } else { -1 };
    if b.abs() >= a.abs() {
        // x -> x y^s, y -> y
        let step = if s == 1 { auto(group, ["x y", "y"], ["x y'", "y"]) } else { auto(group, ["x y'", "y"], ["x y", "y"]) };
        step.after(group, &primitive_automorphism(group, a, b - s * a))
    } else {
        // x -> x, y -> y x^s
        let step = if s == 1 { auto(group, ["x", "y x"], ["x", "y x'"]) } else { auto(group, ["x", "y x'"], ["x", "y x"]) };
        step.after(group, &primitive_automorphism(group, a - s * b, b))
    }
}

/// The splitting of `F2` over `<x>` as an HNN extension with stable letter `y`.
pub fn base_slope_splitting(group: &Group) -> Result<Splitting> {
    let x = group.parse("x")?;
    let yxy = group.parse("y' x y")?;
    let base = BaseSplitting::hnn(
        group,
        vec![Role::A, Role::Stable],
        Subgroup::generated(group, &[x])?,
        Subgroup::generated(group, &[yxy])?,
        Transversal::Shortlex,
    )?;
    Ok(Splitting::from_base("slope(0/1)", base))
}

pub fn slope_automorphism(group: &Group, s: Slope) -> Automorphism {
    primitive_automorphism(group, s.q, s.p)
}

/// The splitting of `F2` dual to the curve of slope `p/q`.
pub fn slope_splitting(p: i64, q: i64) -> Result<Splitting> {
    let s = Slope::new(p, q)?;
    let g = suite::f2();
    let base = base_slope_splitting(&g)?;
    if (s.p, s.q) == (0, 1) {
        return Ok(base);
    }
    let phi = slope_automorphism(&g, s);
    base.apply_automorphism(&phi, &format!("slope({})", s))
}

/// The arc splitting: `F2 = <y> *` with trivial edge group and stable letter
/// `x`. Its standard set is the words beginning with `x`.
pub fn arc_splitting() -> Result<Splitting> {
    let g = suite::f2();
    let base = BaseSplitting::hnn(
        &g,
        vec![Role::Stable, Role::A],
        Subgroup::trivial(&g),
        Subgroup::trivial(&g),
        Transversal::Shortlex,
    )?;
    Ok(Splitting::from_base("arc", base))
}

/// Result of the naive count, with the per-radius quadrant sizes for the
/// counted double cosets.
#[derive(Clone, Debug, Serialize)]
pub struct BruteForceCount {
    pub count: usize,
    pub radius: usize,
    pub crossing_reps: Vec<String>,
}

fn free_mul(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = a.to_vec();
    for &l in b {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn free_inv(a: &[Letter]) -> Vec<Letter> {
    a.iter().rev().map(|l| l.inv()).collect()
}

fn all_reduced(rank: usize, r: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for li in 0..2 * rank {
                let l = Letter(li as u8);
                if w.last() == Some(&l.inv()) {
                    continue;
                }
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, i: usize) -> usize {
        let mut i = i;
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Naive intersection number of two splittings of a free group.
///
/// Points of the radius-`r` ball are grouped into left `K`-classes and into
/// double cosets `K g H` by linking `w` with `k w` and `w h` for short `k` and
/// `h`. Every double coset meeting the radius-`tr` ball is tested: the four
/// quadrants `gX(*) ∩ Y(*)` are measured by the number of `K`-classes they
/// meet, and the class counts when every quadrant grew across the last two
/// radius steps and reached `threshold`.
pub fn brute_force_crossing_count(
    s: &Splitting,
    t: &Splitting,
    r: usize,
    tr: usize,
    threshold: usize,
) -> Result<BruteForceCount> {
    let g = s.group();
    if !g.is_free() {
        return Err(Error::NotApplicable("the brute-force counter needs a free group".into()));
    }
    if r < 3 || tr > r {
        return Err(Error::invalid("need radius at least 3 and translator radius at most the radius"));
    }
    let rank = g.rank();
    let h_short = short_members(s, rank, 8);
    let k_short = short_members(t, rank, 8);
    let points = all_reduced(rank, r);
    let idx: HashMap<&[Letter], usize> = points.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();

    let mut kclass = UnionFind::new(points.len());
    let mut dclass = UnionFind::new(points.len());
    for (i, p) in points.iter().enumerate() {
        for k in &k_short {
            if let Some(&j) = idx.get(free_mul(k, p).as_slice()) {
                kclass.union(i, j);
                dclass.union(i, j);
            }
        }
        for h in &h_short {
            if let Some(&j) = idx.get(free_mul(p, h).as_slice()) {
                dclass.union(i, j);
            }
        }
    }
    let kroot: Vec<usize> = (0..points.len()).map(|i| kclass.find(i)).collect();
    let in_y: Vec<bool> = points.iter().map(|p| t.in_x(&Word::from_letters(p))).collect();

    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if p.len() <= tr {
            reps.entry(dclass.find(i)).or_insert(i);
        }
    }

    let mut count = 0;
    let mut crossing_reps = Vec::new();
    for &i in reps.values() {
        let rep = &points[i];
        let repinv = free_inv(rep);
        let mut seen: [[BTreeSet<usize>; 4]; 3] = Default::default();
        for (j, p) in points.iter().enumerate() {
            let in_gx = s.in_x(&Word::from_letters(&free_mul(&repinv, p)));
            let q = (if in_gx { 0 } else { 2 }) + (if in_y[j] { 0 } else { 1 });
            for (ri, rr) in [r - 2, r - 1, r].into_iter().enumerate() {
                if p.len() <= rr {
                    seen[ri][q].insert(kroot[j]);
                }
            }
        }
        let size = |ri: usize, q: usize| seen[ri][q].len();
        let crosses = (0..4).all(|q| size(0, q) < size(1, q) && size(1, q) < size(2, q) && size(2, q) >= threshold);
        if crosses {
            count += 1;
            crossing_reps.push(g.format(&Word::from_letters(rep)));
        }
    }
    Ok(BruteForceCount { count, radius: r, crossing_reps })
}

/// Elements of the edge group of `s` of length at most `m`, by testing
/// every reduced word.
fn short_members(s: &Splitting, rank: usize, m: usize) -> Vec<Vec<Letter>> {
    all_reduced(rank, m).into_iter().filter(|w| !w.is_empty() && s.in_h(&Word::from_letters(w))).collect()
}

