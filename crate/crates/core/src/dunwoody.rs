//! Trees from nested families with involution, and graphs of groups
//! assembled from compatible splittings.
//!
//! Vertices of the tree are recovered from immediate successors: if `f` is
//! an immediate successor of `e` then the head of `e` is the tail of `f`.
//! Every build is checked by recomputing the order from oriented paths.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley;
use crate::crossing::{self, AiSet, CrossingConfig, Growth};
use crate::error::{Error, Result};
use crate::presentation::Group;
use crate::splitting::{splittings_equivalent, BaseSplitting, EdgeOrder, Role, Splitting, SplittingKind, Transversal, Variant};
use crate::subgroup::{double_coset_rep, Subgroup};
use crate::verdict::Verdict;
use crate::word::{Letter, Word};

/// A finite partial order with a fixed-point-free involution, stored as
/// bitset rows: bit `f` of row `e` is set when `e <= f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    inv: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

impl Poset {
    /// The discrete order (reflexive pairs only).
    pub fn new(labels: Vec<String>, inv: Vec<usize>) -> Result<Poset> {
        let n = labels.len();
        if inv.len() != n || inv.iter().any(|&i| i >= n) {
            return Err(Error::invalid("involution must map the element set to itself"));
        }
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        for (e, row) in rows.iter_mut().enumerate() {
            row[e / 64] |= 1 << (e % 64);
        }
        Ok(Poset { labels, inv, rows })
    }

    /// The order generated by `pairs` (read as `e <= f`), without closing
    /// under transitivity or the involution.
    pub fn from_pairs(labels: Vec<String>, inv: Vec<usize>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut p = Poset::new(labels, inv)?;
        for &(e, f) in pairs {
            if e >= p.len() || f >= p.len() {
                return Err(Error::invalid(format!("pair ({}, {}) is out of range", e, f)));
            }
            p.set_le(e, f);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn inv(&self, e: usize) -> usize {
        self.inv[e]
    }

    pub fn involution(&self) -> &[usize] {
        &self.inv
    }

    pub fn le(&self, e: usize, f: usize) -> bool {
        self.rows[e][f / 64] >> (f % 64) & 1 == 1
    }

    pub fn set_le(&mut self, e: usize, f: usize) {
        self.rows[e][f / 64] |= 1 << (f % 64);
    }

    /// Strict pairs `e < f`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in 0..self.len() {
            for f in self.successors(e) {
                if f != e {
                    out.push((e, f));
                }
            }
        }
        out
    }

    fn successors(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[e];
        (0..self.len()).filter(move |&f| row[f / 64] >> (f % 64) & 1 == 1)
    }

    /// Closes the relation under transitivity.
    pub fn close_transitively(&mut self) {
        let n = self.len();
        for k in 0..n {
            let rk = self.rows[k].clone();
            for e in 0..n {
                if e != k && self.le(e, k) {
                    for (a, b) in self.rows[e].iter_mut().zip(&rk) {
                        *a |= b;
                    }
                }
            }
        }
    }
}

fn poset_error(condition: u8, detail: String) -> Error {
    Error::Poset { condition, detail }
}

/// Checks the hypotheses of the tree theorem. Condition 0 stands for the
/// partial order axioms themselves; conditions 1 to 4 are reported in that
/// order, each with the offending elements. A fixed point of the involution
/// is reported under condition 4, since `e <= e` and `e <= ē` then both hold.
pub fn validate_poset(p: &Poset) -> Result<()> {
    let n = p.len();
    let name = |e: usize| p.labels[e].clone();
    for e in 0..n {
        if p.inv[p.inv[e]] != e {
            return Err(Error::invalid(format!("the map on {} is not an involution", name(e))));
        }
    }
    let first = |check: &(dyn Fn(usize) -> Option<String> + Sync)| (0..n).into_par_iter().find_map_first(check);
    if let Some(d) = first(&|e| {
        for f in p.successors(e) {
            if f != e && p.le(f, e) {
                return Some(format!("{} <= {} and {} <= {}", name(e), name(f), name(f), name(e)));
            }
            if let Some(g) = p.successors(f).find(|&g| !p.le(e, g)) {
                return Some(format!("{} <= {} <= {} but not {} <= {}", name(e), name(f), name(g), name(e), name(g)));
            }
        }
        None
    }) {
        return Err(poset_error(0, format!("not a partial order: {}", d)));
    }
    if let Some(d) = first(&|e| {
        p.successors(e).find(|&f| !p.le(p.inv[f], p.inv[e])).map(|f| {
            format!("{} <= {} but not {} <= {}", name(e), name(f), name(p.inv[f]), name(p.inv[e]))
        })
    }) {
        return Err(poset_error(1, d));
    }
    if let Some(d) = first(&|e| {
        let ei = p.inv[e];
        (0..n)
            .find(|&f| {
                let fi = p.inv[f];
                !(p.le(e, f) || p.le(e, fi) || p.le(ei, f) || p.le(ei, fi))
            })
            .map(|f| format!("{} and {} are not related in any orientation", name(e), name(f)))
    }) {
        return Err(poset_error(3, d));
    }
    if let Some(d) = first(&|e| {
        if p.inv[e] == e {
            return Some(format!("{} is its own involute", name(e)));
        }
        p.successors(e)
            .find(|&f| p.le(e, p.inv[f]))
            .map(|f| format!("{} <= {} and {} <= {}", name(e), name(f), name(e), name(p.inv[f])))
    }) {
        return Err(poset_error(4, d));
    }
    Ok(())
}

/// A tree whose oriented edges are the poset elements.
#[derive(Clone, Debug, Serialize)]
pub struct AbstractTree {
    pub vertex_count: usize,
    /// `(tail, head)` of each oriented edge.
    pub ends: Vec<(usize, usize)>,
    pub inv: Vec<usize>,
    pub labels: Vec<String>,
}

impl AbstractTree {
    pub fn edge_count(&self) -> usize {
        self.ends.len() / 2
    }

    /// One arrow per unoriented edge, drawn from the element with the smaller index.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n");
        for v in 0..self.vertex_count {
            out.push_str(&format!("  v{};\n", v));
        }
        for (e, &(t, h)) in self.ends.iter().enumerate() {
            if e < self.inv[e] {
                out.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", t, h, escape(&self.labels[e])));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
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

/// Builds the tree of a validated poset and verifies that its path order
/// reproduces the input.
pub fn build_tree(p: &Poset) -> Result<AbstractTree> {
    let n = p.len();
    // Slot e stands for the head of e; the tail of e is the head of ē.
    let mut uf = UnionFind::new(n);
    for e in 0..n {
        let strict: Vec<usize> = p.successors(e).filter(|&f| f != e).collect();
        let mut covered = vec![0u64; n.div_ceil(64)];
        for &g in &strict {
            for (k, (c, r)) in covered.iter_mut().zip(&p.rows[g]).enumerate() {
                let own = if k == g / 64 { 1u64 << (g % 64) } else { 0 };
                *c |= r & !own;
            }
        }
        for &f in &strict {
            if covered[f / 64] >> (f % 64) & 1 == 0 {
                uf.union(e, p.inv[f]);
            }
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for e in 0..n {
        let r = uf.find(e);
        let k = ids.len();
        ids.entry(r).or_insert(k);
    }
    let head: Vec<usize> = (0..n).map(|e| ids[&uf.find(e)]).collect();
    let ends: Vec<(usize, usize)> = (0..n).map(|e| (head[p.inv[e]], head[e])).collect();
    let tree = AbstractTree { vertex_count: ids.len(), ends, inv: p.inv.clone(), labels: p.labels.clone() };
    if n > 0 && tree.vertex_count != n / 2 + 1 {
        return Err(Error::TreeCheck(format!(
            "{} vertices for {} edges; the graph is not a tree",
            tree.vertex_count,
            n / 2
        )));
    }
    let back = order_from_paths(&tree);
    if back.rows != p.rows {
        let (e, f) = (0..n)
            .flat_map(|e| (0..n).map(move |f| (e, f)))
            .find(|&(e, f)| back.le(e, f) != p.le(e, f))
            .unwrap();
        return Err(Error::TreeCheck(format!(
            "path order disagrees with the input at ({}, {})",
            p.labels[e], p.labels[f]
        )));
    }
    Ok(tree)
}

/// `e <= f` iff some oriented path starts with `e` and ends with `f`.
pub fn order_from_paths(t: &AbstractTree) -> Poset {
    let n = t.ends.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); t.vertex_count];
    for (e, &(tail, _)) in t.ends.iter().enumerate() {
        out_edges[tail].push(e);
    }
    let mut p = Poset::new(t.labels.clone(), t.inv.clone()).expect("tree involution is in range");
    for e in 0..n {
        let mut stack = vec![e];
        while let Some(x) = stack.pop() {
            for &f in &out_edges[t.ends[x].1] {
                if f != t.inv[x] {
                    p.set_le(e, f);
                    stack.push(f);
                }
            }
        }
    }
    p
}

/// The path order of a random tree with `edges` edges, elements shuffled.
pub fn random_tree_poset<R: Rng>(rng: &mut R, edges: usize) -> Poset {
    let n = 2 * edges;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut ends = vec![(0, 0); n];
    let mut inv = vec![0; n];
    for k in 0..edges {
        let parent = rng.gen_range(0..=k);
        let (a, b) = (perm[2 * k], perm[2 * k + 1]);
        ends[a] = (parent, k + 1);
        ends[b] = (k + 1, parent);
        inv[a] = b;
        inv[b] = a;
    }
    let labels = (0..n).map(|i| format!("e{}", i)).collect();
    order_from_paths(&AbstractTree { vertex_count: edges + 1, ends, inv, labels })
}

/// A translate `g X_i` or its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Element {
    pub family: usize,
    pub translator: Word,
    pub star: bool,
}

/// The nested family of translates of the standard sets of several
/// splittings, with the order relation.
#[derive(Clone, Debug)]
pub struct HalfSpacePoset {
    pub poset: Poset,
    pub elements: Vec<Element>,
    pub splittings: Vec<Arc<Splitting>>,
    pub radius: usize,
    /// Translators are taken from the ball of this radius.
    pub translate_radius: usize,
    /// Family pairs whose standard sets are almost equal up to complement.
    pub almost_equal: Vec<(usize, usize)>,
    /// Radius at which the cross-family growth verdicts were read.
    pub verdict_radius: usize,
}

/// Quadrant order `X∩Y`, `X∩Y*`, `X*∩Y`, `X*∩Y*`.
fn quadrant(x_star: bool, y_star: bool) -> usize {
    2 * x_star as usize + y_star as usize
}

fn small_from_edge_order(o: EdgeOrder) -> Option<[bool; 4]> {
    let mut s = [false; 4];
    match o {
        EdgeOrder::Le => s[1] = true,
        EdgeOrder::Ge => s[2] = true,
        EdgeOrder::LeComplement => s[0] = true,
        EdgeOrder::GeComplement => s[3] = true,
        EdgeOrder::Equal => {
            s[1] = true;
            s[2] = true;
        }
        EdgeOrder::EqualComplement => {
            s[0] = true;
            s[3] = true;
        }
        EdgeOrder::IncomparableAtDepth => return None,
    }
    Some(s)
}

/// Tie rank for almost equal sets of different families: antisymmetric
/// under the involution.
fn tie_rank(e: &Element) -> i64 {
    let k = e.family as i64 + 1;
    if e.star {
        k
    } else {
        -k
    }
}

/// Order between two distinct elements that are equal up to a small set.
/// Two translates of one splitting meeting at a vertex of valence two are
/// ordered by which half-tree contains that vertex.
fn tie_less_in(s: &Splitting, u: &Element, v: &Element) -> Option<bool> {
    let ends = |e: &Element| (s.vertex_key(&e.translator, false), s.vertex_key(&e.translator, true));
    let (tu, hu) = ends(u);
    let (tv, hv) = ends(v);
    let shared = [&tu, &hu].into_iter().find(|k| **k == tv || **k == hv)?.clone();
    let holds = |e: &Element, t: &crate::splitting::TreeKey, h: &crate::splitting::TreeKey| {
        if e.star {
            *t == shared
        } else {
            *h == shared
        }
    };
    let (cu, cv) = (holds(u, &tu, &hu), holds(v, &tv, &hv));
    (cu != cv).then_some(cv)
}

struct PairData {
    x: AiSet,
    y: AiSet,
    candidates: HashMap<Word, [Growth; 4]>,
}

fn same_alphabet(a: &Group, b: &Group) -> bool {
    a.alphabet().names() == b.alphabet().names() && a.relators() == b.relators()
}

/// Builds the order on translates `g X_i`, `g X_i*` with `g` in the ball of
/// radius `max(1, r / 3)`, so every relative translator stays in the ball of
/// radius `r`. Fails if two splittings cross, or a growth verdict cannot be
/// resolved within the configured radii.
pub fn poset_from_halfspaces(splittings: &[Arc<Splitting>], r: usize, cfg: &CrossingConfig) -> Result<HalfSpacePoset> {
    if splittings.is_empty() {
        return Err(Error::invalid("no splittings given"));
    }
    let group = splittings[0].group().clone();
    if splittings.iter().any(|s| !same_alphabet(s.group(), &group)) {
        return Err(Error::invalid("splittings must be of the same group"));
    }
    let nf = splittings.len();
    let t = (r / 3).max(1);
    let sets: Vec<AiSet> = splittings.iter().map(|s| AiSet::from_splitting(s, Variant::X)).collect();

    let mut pairs: HashMap<(usize, usize), PairData> = HashMap::new();
    let mut verdict_radius = 0;
    let mut boundaries = Vec::new();
    for i in 0..nf {
        boundaries.push(if (0..i).any(|j| splittings[i].same_splitting(&splittings[j])) {
            None
        } else {
            Some(crossing::boundary(&sets[i], cfg)?)
        });
    }
    for i in 0..nf {
        for j in i + 1..nf {
            if splittings[i].same_splitting(&splittings[j]) {
                continue;
            }
            let (bx, by) = (boundaries[i].as_ref().unwrap(), boundaries[j].as_ref().unwrap());
            let reps = crossing::candidate_reps(&sets[i], bx, &sets[j], by);
            let growths = crossing::quadrant_growths(&sets[i], &sets[j], &reps, cfg)?;
            let mut candidates = HashMap::new();
            for (rep, (g, rr)) in reps.into_iter().zip(growths) {
                verdict_radius = verdict_radius.max(rr);
                let names = (&splittings[i].name, &splittings[j].name);
                if g.iter().all(|x| *x == Growth::Growing) {
                    return Err(Error::Crossing(format!(
                        "{} and {} cross: translate by {} (double coset K {} H)",
                        names.0,
                        names.1,
                        group.format(&rep),
                        group.format(&rep)
                    )));
                }
                if g.contains(&Growth::Unclear) {
                    return Err(Error::Budget(format!(
                        "unresolved smallness for {} and {} at double coset {} within radius {}",
                        names.0,
                        names.1,
                        group.format(&rep),
                        rr
                    )));
                }
                candidates.insert(rep, g);
            }
            pairs.insert((i, j), PairData { x: sets[i].clone(), y: sets[j].clone(), candidates });
        }
    }

    let ball = cayley::canonical_words(&group, t);
    let mut translators: Vec<Vec<Word>> = Vec::new();
    for s in splittings {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut list = Vec::new();
        for g in &ball {
            if seen.insert(s.edge_group().right_coset_rep(g)) {
                list.push(g.clone());
            }
        }
        translators.push(list);
    }
    let mut elements = Vec::new();
    let mut translate_index: Vec<(usize, usize)> = Vec::new();
    for (i, list) in translators.iter().enumerate() {
        for (k, g) in list.iter().enumerate() {
            for star in [false, true] {
                elements.push(Element { family: i, translator: g.clone(), star });
            }
            translate_index.push((i, k));
        }
    }
    let n = elements.len();
    let inv: Vec<usize> = (0..n).map(|e| e ^ 1).collect();
    let labels: Vec<String> = elements
        .iter()
        .map(|e| {
            format!("{}{}[{}]", if e.star { "~" } else { "" }, splittings[e.family].name, group.format(&e.translator))
        })
        .collect();

    // Small quadrants of g1 X_i against g2 X_j, for every pair of translates.
    let small_for = |i: usize, g1: &Word, j: usize, g2: &Word| -> Result<[bool; 4]> {
        if splittings[i].same_splitting(&splittings[j]) {
            return small_from_edge_order(splittings[i].edge_order(g1, g2)).ok_or_else(|| {
                Error::Budget(format!("edge order of {} undecided at this depth", splittings[i].name))
            });
        }
        let (a, b, ga, gb, flip) = if i < j { (i, j, g1, g2, false) } else { (j, i, g2, g1, true) };
        let data = &pairs[&(a, b)];
        let rel = group.mul(&group.inv(gb), ga);
        let rep = double_coset_rep(&data.y.stabilizer, &data.x.stabilizer, &rel);
        let mut s = [false; 4];
        match data.candidates.get(&rep) {
            Some(g) => {
                for q in 0..4 {
                    s[q] = g[q] == Growth::Stable;
                }
            }
            None => {
                let x_star = data.x.contains(&group.inv(&rel));
                let y_star = data.y.contains(&rel);
                s[quadrant(x_star, y_star)] = true;
            }
        }
        if flip {
            s = [s[0], s[2], s[1], s[3]];
        }
        Ok(s)
    };

    let nt = translate_index.len();
    let rows: Vec<Result<Vec<(usize, [bool; 4])>>> = (0..nt)
        .into_par_iter()
        .map(|u| {
            let (i, k) = translate_index[u];
            let g1 = &translators[i][k];
            let mut row = Vec::with_capacity(nt);
            for (v, &(j, l)) in translate_index.iter().enumerate() {
                if u == v {
                    continue;
                }
                row.push((v, small_for(i, g1, j, &translators[j][l])?));
            }
            Ok(row)
        })
        .collect();

    let tie_less = |u: &Element, v: &Element| -> bool {
        let (su, sv) = (&splittings[u.family], &splittings[v.family]);
        if su.same_splitting(sv) {
            if let Some(b) = tie_less_in(su, u, v) {
                return b;
            }
        }
        tie_rank(u) < tie_rank(v)
    };
    let mut poset = Poset::new(labels, inv)?;
    let mut almost_equal: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, row) in rows.into_iter().enumerate() {
        for (v, small) in row? {
            let count = small.iter().filter(|b| **b).count();
            let (fu, fv) = (translate_index[u].0, translate_index[v].0);
            match count {
                1 => {}
                2 if (small[1] && small[2]) || (small[0] && small[3]) => {
                    almost_equal.insert((fu.min(fv), fu.max(fv)));
                }
                0 => {
                    return Err(Error::Crossing(format!("{} and {} cross", poset.labels[2 * u], poset.labels[2 * v])));
                }
                _ => {
                    return Err(Error::TreeCheck(format!(
                        "inconsistent quadrants for {} and {}",
                        poset.labels[2 * u],
                        poset.labels[2 * v]
                    )));
                }
            }
            for a in [false, true] {
                for b in [false, true] {
                    let (eu, ev) = (2 * u + a as usize, 2 * v + b as usize);
                    let le = small[quadrant(a, !b)] && (count == 1 || tie_less(&elements[eu], &elements[ev]));
                    if le {
                        poset.set_le(eu, ev);
                    }
                }
            }
        }
    }
    validate_poset(&poset)?;
    Ok(HalfSpacePoset {
        poset,
        elements,
        splittings: splittings.to_vec(),
        radius: r,
        translate_radius: t,
        almost_equal: almost_equal.into_iter().collect(),
        verdict_radius,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GogVertex {
    pub id: usize,
    /// Generators found for the vertex group, as words.
    pub gens: Vec<String>,
    #[serde(skip)]
    pub group_gens: Vec<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GogEdge {
    pub family: usize,
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub edge_group: Vec<String>,
    /// Set when the edge is one of several sub-edges of a subdivided edge.
    pub subdivided: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stability {
    pub radii: Vec<usize>,
    pub stable: bool,
}

/// A finite graph of groups, kept together with the truncated tree it was
/// read from.
#[derive(Clone, Debug, Serialize)]
pub struct GraphOfGroups {
    pub radius: usize,
    pub vertices: Vec<GogVertex>,
    pub edges: Vec<GogEdge>,
    /// Pairs of inputs found conjugate-equivalent, with the conjugator.
    pub conjugate_inputs: Vec<(usize, usize, String)>,
    pub stability: Option<Stability>,
    #[serde(skip)]
    pub splittings: Vec<Arc<Splitting>>,
    #[serde(skip)]
    pub source: Option<Arc<(HalfSpacePoset, AbstractTree)>>,
}

impl GraphOfGroups {
    pub fn group(&self) -> &Group {
        self.splittings[0].group()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gog {\n");
        for v in &self.vertices {
            out.push_str(&format!("  v{} [label=\"<{}>\"];\n", v.id, escape(&v.gens.join(", "))));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}: <{}>\"];\n",
                e.tail,
                e.head,
                escape(&e.name),
                escape(&e.edge_group.join(", "))
            ));
        }
        out.push_str("}\n");
        out
    }

    /// The JSON sidecar written next to the DOT file.
    pub fn sidecar(&self) -> serde_json::Value {
        let labels: BTreeMap<String, String> = self
            .vertices
            .iter()
            .map(|v| (format!("v{}", v.id), format!("<{}>", v.gens.join(", "))))
            .chain(self.edges.iter().map(|e| (e.name.clone(), format!("<{}>", e.edge_group.join(", ")))))
            .collect();
        serde_json::json!({
            "edges": self.edges,
            "vertices": self.vertices,
            "labels": labels,
            "stability": self.stability,
        })
    }

    /// Edge incidence and labels, for comparing assemblies at two radii.
    fn shape(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<(usize, usize, usize)> = self.edges.iter().map(|e| (e.family, e.tail, e.head)).collect();
        v.sort();
        v
    }
}

/// Generators of the subgroup, dropping those already generated by shorter
/// ones when the group has a membership oracle for that.
fn reduce_gens(group: &Group, gens: &BTreeSet<Word>) -> Vec<Word> {
    let mut sorted: Vec<Word> = gens.iter().filter(|w| !w.is_empty()).cloned().collect();
    sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    if !group.is_free() {
        sorted.truncate(6);
        return sorted;
    }
    let mut kept: Vec<Word> = Vec::new();
    for w in sorted {
        let redundant = !kept.is_empty() && Subgroup::generated(group, &kept).map(|s| s.contains(&w)).unwrap_or(false);
        if !redundant {
            kept.push(w);
        }
    }
    kept
}

/// Searches the ball of radius `search` for `d` with `s` conjugated by `d`
/// equivalent to `t` on the ball of radius `r`.
pub fn conjugate_equivalent(s: &Splitting, t: &Splitting, search: usize, r: usize) -> Result<(Verdict, Option<Word>)> {
    let mut last = Verdict::certified_false(r, None);
    for d in cayley::canonical_words(s.group(), search) {
        let v = splittings_equivalent(&s.conjugate(&d)?, t, r)?;
        if v.is_true() {
            return Ok((v, Some(d)));
        }
        last = v;
    }
    Ok((last, None))
}

/// Assembles the graph of groups of pairwise compatible splittings from the
/// tree of their nested translates.
pub fn assemble_graph_of_groups(splittings: &[Arc<Splitting>], r: usize, cfg: &CrossingConfig) -> Result<GraphOfGroups> {
    for i in 0..splittings.len() {
        for j in i + 1..splittings.len() {
            let report = crossing::intersection_number(&splittings[i], &splittings[j], cfg)?;
            if report.count > 0 {
                let rep = report.per_coset.iter().find(|c| c.verdict == crate::verdict::VerdictKind::CertifiedTrue).unwrap();
                return Err(Error::Crossing(format!(
                    "{} and {} have intersection number {}; crossing at double coset K {} H",
                    splittings[i].name,
                    splittings[j].name,
                    report.count,
                    splittings[i].group().format(&rep.rep)
                )));
            }
        }
    }
    let hp = poset_from_halfspaces(splittings, r, cfg)?;
    let tree = build_tree(&hp.poset)?;
    let group = splittings[0].group().clone();
    let nf = splittings.len();
    let base: Vec<usize> = (0..nf)
        .map(|i| hp.elements.iter().position(|e| e.family == i && !e.star && e.translator.is_empty()).unwrap())
        .collect();
    // Slot 2i is the tail of X_i, slot 2i+1 its head.
    let slot_vertex = |s: usize| if s % 2 == 0 { tree.ends[base[s / 2]].0 } else { tree.ends[base[s / 2]].1 };
    let head_slot = |e: &Element| 2 * e.family + if e.star { 0 } else { 1 };
    let mut uf = UnionFind::new(2 * nf);
    let mut stab: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); 2 * nf];
    for s in 0..2 * nf {
        let v = slot_vertex(s);
        // Edge groups fix both endpoints but are invisible among coset representatives.
        for j in 0..nf {
            if slot_vertex(2 * j) == v || slot_vertex(2 * j + 1) == v {
                stab[s].extend(splittings[j].edge_group().gens().iter().cloned());
            }
        }
        for (k, e) in hp.elements.iter().enumerate() {
            if tree.ends[k].1 != v {
                continue;
            }
            let other = head_slot(e);
            uf.union(s, other);
            if slot_vertex(other) == v {
                stab[s].insert(e.translator.clone());
            }
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for s in 0..2 * nf {
        let root = uf.find(s);
        let k = ids.len();
        ids.entry(root).or_insert(k);
    }
    let mut vertices: Vec<GogVertex> = Vec::new();
    for (&root, &id) in &ids {
        let gens = reduce_gens(&group, &stab[root]);
        vertices.push(GogVertex { id, gens: gens.iter().map(|w| group.format(w)).collect(), group_gens: gens });
    }
    vertices.sort_by_key(|v| v.id);
    let subdivided: BTreeSet<usize> = hp.almost_equal.iter().filter(|(a, b)| a != b).flat_map(|&(a, b)| [a, b]).collect();
    let edges: Vec<GogEdge> = (0..nf)
        .map(|i| GogEdge {
            family: i,
            name: splittings[i].name.clone(),
            tail: ids[&uf.find(2 * i)],
            head: ids[&uf.find(2 * i + 1)],
            edge_group: splittings[i].edge_group().gens().iter().map(|w| group.format(w)).collect(),
            subdivided: subdivided.contains(&i),
        })
        .collect();
    let mut conjugate_inputs = Vec::new();
    for &(a, b) in &hp.almost_equal {
        if a == b {
            continue;
        }
        if let (v, Some(d)) = conjugate_equivalent(&splittings[a], &splittings[b], 2, 4)? {
            if v.is_true() {
                conjugate_inputs.push((a, b, group.format(&d)));
            }
        }
    }
    Ok(GraphOfGroups {
        radius: r,
        vertices,
        edges,
        conjugate_inputs,
        stability: None,
        splittings: splittings.to_vec(),
        source: Some(Arc::new((hp, tree))),
    })
}

/// Assembles at radii `r` and `r + 2` and records whether the graph and its
/// vertex groups agree.
pub fn assemble_with_stability(splittings: &[Arc<Splitting>], r: usize, cfg: &CrossingConfig) -> Result<GraphOfGroups> {
    let mut lo = assemble_graph_of_groups(splittings, r, cfg)?;
    let hi = assemble_graph_of_groups(splittings, r + 2, cfg)?;
    let mut stable = lo.shape() == hi.shape() && lo.vertices.len() == hi.vertices.len();
    if stable && lo.group().is_free() {
        for (a, b) in lo.vertices.iter().zip(&hi.vertices) {
            let sa = Subgroup::generated(lo.group(), &a.group_gens)?;
            let sb = Subgroup::generated(lo.group(), &b.group_gens)?;
            stable &= sa.same_as(&sb).is_ok();
        }
    }
    lo.stability = Some(Stability { radii: vec![r, r + 2], stable });
    Ok(lo)
}

/// The splitting obtained by collapsing every edge except the `i`-th.
///
/// A one-edge graph is its own splitting. Otherwise the vertex groups are
/// the stabilizers of the two components of the tree with the `i`-th edge
/// orbit removed, read off the truncated tree; a conjugator is searched so
/// that they are generated by letters.
pub fn collapse_edge(gog: &GraphOfGroups, i: usize) -> Result<Splitting> {
    if i >= gog.edges.len() {
        return Err(Error::invalid(format!("edge {} out of range ({} edges)", i, gog.edges.len())));
    }
    if gog.edges.len() == 1 {
        return Ok((*gog.splittings[0]).clone());
    }
    let group = gog.group().clone();
    if !group.is_free() {
        return Err(Error::NotApplicable("collapsing multi-edge graphs needs a free group".into()));
    }
    let src = gog.source.as_ref().ok_or_else(|| Error::invalid("graph has no tree attached"))?;
    let (hp, tree) = (&src.0, &src.1);
    let mut uf = UnionFind::new(tree.vertex_count);
    for (k, e) in hp.elements.iter().enumerate() {
        if e.family != i {
            uf.union(tree.ends[k].0, tree.ends[k].1);
        }
    }
    let e0 = hp.elements.iter().position(|e| e.family == i && !e.star && e.translator.is_empty()).unwrap();
    let c_tail = uf.find(tree.ends[e0].0);
    let c_head = uf.find(tree.ends[e0].1);
    let mut a_gens: BTreeSet<Word> = BTreeSet::new();
    let mut b_gens: BTreeSet<Word> = BTreeSet::new();
    let mut movers: Vec<Word> = Vec::new();
    for (k, e) in hp.elements.iter().enumerate() {
        if e.family != i || e.star {
            continue;
        }
        let (t, h) = (uf.find(tree.ends[k].0), uf.find(tree.ends[k].1));
        if t == c_tail {
            a_gens.insert(e.translator.clone());
        }
        if h == c_head {
            b_gens.insert(e.translator.clone());
        }
        if h == c_tail && c_tail != c_head {
            movers.push(e.translator.clone());
        }
    }
    let h = gog.splittings[i].edge_group();
    a_gens.extend(h.gens().iter().cloned());
    b_gens.extend(h.gens().iter().cloned());
    let name = format!("collapse({})", gog.edges[i].name);
    let a = reduce_gens(&group, &a_gens);
    let b = reduce_gens(&group, &b_gens);
    movers.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    let stable = movers.first().cloned();
    for c in cayley::canonical_words(&group, 3) {
        let conj = |ws: &[Word]| -> Vec<Word> { ws.iter().map(|w| group.conj(&c, w)).collect() };
        let sa = Subgroup::generated(&group, &conj(&a))?;
        let hc = Subgroup::generated(&group, &conj(h.gens()))?;
        let cinv = group.inv(&c);
        let built = match &stable {
            None => {
                let sb = Subgroup::generated(&group, &conj(&b))?;
                amalgam_from_vertex_groups(&group, &sa, &sb, hc)
            }
            Some(_) => hnn_from_vertex_group(&group, &sa, hc),
        };
        if let Some(base) = built {
            return Splitting::from_base(&name, base).conjugate(&cinv);
        }
    }
    Err(Error::NotApplicable(format!("no conjugator in the ball of radius 3 puts {} in letter form", name)))
}

fn letter_roles(group: &Group, side: &[&Subgroup]) -> Vec<Option<usize>> {
    (0..group.rank())
        .map(|g| {
            let w = Word::letter(Letter::gen(g));
            side.iter().position(|s| s.contains(&w))
        })
        .collect()
}

fn generated_by_letters(group: &Group, roles: &[Option<usize>], side: usize, target: &Subgroup) -> bool {
    let letters: Vec<Word> =
        (0..roles.len()).filter(|&g| roles[g] == Some(side)).map(|g| Word::letter(Letter::gen(g))).collect();
    match Subgroup::generated(group, &letters) {
        Ok(s) => s.same_as(target).is_ok(),
        Err(_) => false,
    }
}

fn amalgam_from_vertex_groups(group: &Group, a: &Subgroup, b: &Subgroup, h: Subgroup) -> Option<BaseSplitting> {
    let roles = letter_roles(group, &[a, b]);
    if roles.iter().any(|r| r.is_none()) {
        return None;
    }
    if !generated_by_letters(group, &roles, 0, a) || !generated_by_letters(group, &roles, 1, b) {
        return None;
    }
    let roles = roles.into_iter().map(|r| if r == Some(0) { Role::A } else { Role::B }).collect();
    BaseSplitting::amalgam(group, roles, h, Transversal::Shortlex).ok()
}

fn hnn_from_vertex_group(group: &Group, a: &Subgroup, h: Subgroup) -> Option<BaseSplitting> {
    let roles = letter_roles(group, &[a]);
    let outside: Vec<usize> = (0..roles.len()).filter(|&g| roles[g].is_none()).collect();
    if outside.len() != 1 || !generated_by_letters(group, &roles, 0, a) {
        return None;
    }
    let stable = Word::letter(Letter::gen(outside[0]));
    let roles: Vec<Role> = roles.iter().map(|r| if r.is_some() { Role::A } else { Role::Stable }).collect();
    let sinv = group.inv(&stable);
    for h0 in [h.clone(), conj_subgroup(group, &h, &sinv)?] {
        let h1 = conj_subgroup(group, &h0, &stable)?;
        if let Ok(b) = BaseSplitting::hnn(group, roles.clone(), h0, h1, Transversal::Shortlex) {
            if b.kind() == SplittingKind::Hnn {
                return Some(b);
            }
        }
    }
    None
}

/// `g^-1 H g`.
fn conj_subgroup(group: &Group, h: &Subgroup, g: &Word) -> Option<Subgroup> {
    let gens: Vec<Word> = h.gens().iter().map(|w| group.conj(g, w)).collect();
    Subgroup::generated(group, &gens).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{}", i)).collect()
    }

    #[test]
    fn single_pair_is_an_edge() {
        let p = Poset::new(labels(2), vec![1, 0]).unwrap();
        validate_poset(&p).unwrap();
        let t = build_tree(&p).unwrap();
        assert_eq!((t.vertex_count, t.edge_count()), (2, 1));
    }

    #[test]
    fn chain_gives_a_path() {
        // e0 < e2 and hence e3 < e1.
        let p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2), (3, 1)]).unwrap();
        validate_poset(&p).unwrap();
        let t = build_tree(&p).unwrap();
        assert_eq!((t.vertex_count, t.edge_count()), (3, 2));
        assert_eq!(order_from_paths(&t), p);
    }

    #[test]
    fn constructed_violations() {
        let mut p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2), (0, 3), (2, 1), (3, 1)]).unwrap();
        p.close_transitively();
        assert!(matches!(validate_poset(&p), Err(Error::Poset { condition: 4, .. })));
        let p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2)]).unwrap();
        assert!(matches!(validate_poset(&p), Err(Error::Poset { condition: 1, .. })));
        let p = Poset::new(labels(4), vec![1, 0, 3, 2]).unwrap();
        assert!(matches!(validate_poset(&p), Err(Error::Poset { condition: 3, .. })));
    }

    #[test]
    fn random_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in [1, 2, 5, 17, 40] {
            let p = random_tree_poset(&mut rng, m);
            validate_poset(&p).unwrap();
            let t = build_tree(&p).unwrap();
            assert_eq!(t.vertex_count, m + 1);
        }
    }
}
