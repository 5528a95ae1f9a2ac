//! Finite neighbourhoods of Bass–Serre trees, and quotients of minimal
//! invariant subtrees.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::cayley;
use crate::error::{Error, Result};
use crate::splitting::{Splitting, TreeKey};
use crate::subgroup::Subgroup;
use crate::verdict::Verdict;
use crate::word::Word;

#[derive(Clone, Debug, Serialize)]
pub struct TreeEdge {
    /// An element `g` with this edge equal to `g e0`.
    pub rep: Word,
    pub key: TreeKey,
    pub tail: TreeKey,
    pub head: TreeKey,
    /// Number of edges on the shortest path to the base edge, plus one;
    /// zero for the base edge.
    pub distance: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeLocal {
    pub depth: usize,
    pub edges: Vec<TreeEdge>,
    pub vertices: Vec<TreeKey>,
}

impl TreeLocal {
    pub fn to_dot(&self, s: &Splitting) -> String {
        let g = s.group();
        let vid: HashMap<&TreeKey, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut out = String::from("digraph tree {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, key_label(s, v)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                vid[&e.tail],
                vid[&e.head],
                g.format(&e.rep)
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn key_label(s: &Splitting, k: &TreeKey) -> String {
    let g = s.group();
    let parts: Vec<String> = k
        .0
        .iter()
        .map(|(tag, w)| match tag {
            10 => "A".to_string(),
            11 => "B".to_string(),
            _ => format!("{}:{}", tag, g.format(w)),
        })
        .collect();
    parts.join(" ")
}

/// Edge distance between `e0` and `g e0`.
pub fn edge_distance(s: &Splitting, g: &Word) -> usize {
    let e0 = s.edge_key(&Word::empty());
    let target = s.edge_key(g);
    if target == e0 {
        return 0;
    }
    let path = s.path_edges(g);
    let keys: Vec<TreeKey> = path.iter().map(|e| s.edge_key(e)).collect();
    let mut n = keys.len() + 1;
    if keys.first() == Some(&e0) {
        n -= 1;
    }
    if keys.last() == Some(&target) {
        n -= 1;
    }
    n
}

/// Edges `g e0` with `g` in the ball of radius `depth` and within edge
/// distance `depth` of the base edge.
pub fn local_tree(s: &Splitting, depth: usize, budget: usize) -> Result<TreeLocal> {
    let ball = cayley::Ball::new(s.group(), depth, budget)?;
    let mut edges: BTreeMap<TreeKey, TreeEdge> = BTreeMap::new();
    for g in &ball.words {
        let key = s.edge_key(g);
        if edges.contains_key(&key) {
            continue;
        }
        let distance = edge_distance(s, g);
        if distance > depth {
            continue;
        }
        let edge = TreeEdge { rep: g.clone(), tail: s.vertex_key(g, false), head: s.vertex_key(g, true), key: key.clone(), distance };
        edges.insert(key, edge);
    }
    let mut edges: Vec<TreeEdge> = edges.into_values().collect();
    edges.sort_by(|a, b| a.distance.cmp(&b.distance).then(a.rep.cmp(&b.rep)));
    let vertices: BTreeSet<TreeKey> = edges.iter().flat_map(|e| [e.tail.clone(), e.head.clone()]).collect();
    Ok(TreeLocal { depth, edges, vertices: vertices.into_iter().collect() })
}

/// The quotient of the minimal invariant subtree by the acting subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientGraph {
    pub edges: usize,
    pub vertices: usize,
    pub stabilized: bool,
    pub depth: usize,
    /// One element per edge orbit, naming the edge `g e0`.
    pub edge_reps: Vec<Word>,
    /// Edge counts at `depth` and `depth + 1`.
    pub counts: [usize; 2],
    pub verdict_radius: usize,
}

impl QuotientGraph {
    pub fn verdict(&self) -> Verdict {
        if self.stabilized {
            Verdict::certified_true(self.depth)
        } else {
            Verdict::unresolved(self.depth)
        }
    }
}

struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn find(&mut self, i: usize) -> usize {
        let mut i = i;
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Axis edges of the actor's elements of generator length at most `m`,
/// counted up to the action.
fn subtree_at(s: &Splitting, actor: &Subgroup, m: usize) -> (usize, usize, Vec<Word>) {
    let g = s.group();
    let mut keys: Vec<TreeKey> = Vec::new();
    let mut reps: Vec<Word> = Vec::new();
    let mut index: HashMap<TreeKey, usize> = HashMap::new();
    for h in actor.generator_ball(m) {
        let d1 = s.vertex_distance(&h);
        let d2 = s.vertex_distance(&g.mul(&h, &h));
        if d2 <= d1 {
            continue;
        }
        let len = d2 - d1;
        let start = (d1 - len) / 2;
        let path = s.path_edges(&h);
        for e in path.iter().skip(start).take(len) {
            let k = s.edge_key(e);
            if !index.contains_key(&k) {
                index.insert(k.clone(), keys.len());
                keys.push(k);
                reps.push(e.clone());
            }
        }
    }
    let mut orbits = Orbits { parent: (0..keys.len()).collect() };
    let steps: Vec<Word> = actor.gens().iter().flat_map(|x| [x.clone(), g.inv(x)]).collect();
    for i in 0..keys.len() {
        for x in &steps {
            let k = s.edge_key(&g.mul(x, &reps[i]));
            if let Some(&j) = index.get(&k) {
                orbits.union(i, j);
            }
        }
    }
    let mut vertex_keys: HashMap<TreeKey, usize> = HashMap::new();
    let mut vreps: Vec<(Word, bool)> = Vec::new();
    for e in &reps {
        for head in [false, true] {
            let k = s.vertex_key(e, head);
            if !vertex_keys.contains_key(&k) {
                vertex_keys.insert(k, vreps.len());
                vreps.push((e.clone(), head));
            }
        }
    }
    let mut vorbits = Orbits { parent: (0..vreps.len()).collect() };
    for i in 0..vreps.len() {
        for x in &steps {
            let k = s.vertex_key(&g.mul(x, &vreps[i].0), vreps[i].1);
            if let Some(&j) = vertex_keys.get(&k) {
                vorbits.union(i, j);
            }
        }
    }
    let mut orbit_reps: BTreeMap<usize, Word> = BTreeMap::new();
    for i in 0..keys.len() {
        let root = orbits.find(i);
        let w = orbit_reps.entry(root).or_insert_with(|| reps[i].clone());
        if reps[i] < *w {
            *w = reps[i].clone();
        }
    }
    let nv = (0..vreps.len()).filter(|&i| vorbits.find(i) == i).count();
    let mut er: Vec<Word> = orbit_reps.into_values().collect();
    er.sort();
    (er.len(), nv, er)
}

/// The quotient graph of the minimal subtree of the actor acting on the
/// tree of `s`, built from axes of the actor's elements up to generator
/// length `depth` and `depth + 1`. Counts are reported as stabilized only
/// when the two depths agree.
pub fn minimal_subtree(s: &Splitting, actor_gens: &[Word], depth: usize) -> Result<QuotientGraph> {
    if depth == 0 {
        return Err(Error::invalid("depth must be positive"));
    }
    let actor = Subgroup::generated(s.group(), actor_gens)
        .unwrap_or_else(|_| Subgroup::from_predicate(s.group(), actor_gens.to_vec(), std::sync::Arc::new(|_| false)));
    let (e1, _, _) = subtree_at(s, &actor, depth);
    let (e2, v2, reps) = subtree_at(s, &actor, depth + 1);
    Ok(QuotientGraph {
        edges: e2,
        vertices: v2,
        stabilized: e1 == e2,
        depth,
        edge_reps: reps,
        counts: [e1, e2],
        verdict_radius: depth + 1,
    })
}
