//! Folded graphs of finitely generated subgroups of free groups.
//!
//! The folded graph embeds in the Schreier graph of the subgroup; every
//! coset not represented inside it hangs off a missing half-edge as a tree.
//! That makes membership and shortlex coset representatives exact.

use std::collections::VecDeque;

use crate::word::{Letter, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct FoldedGraph {
    nletters: usize,
    out: Vec<u32>,
    /// Shortlex-least path from the base vertex to each vertex.
    from_base: Vec<Word>,
    /// First letter of the shortlex-least path from each vertex to the base.
    to_base_step: Vec<u8>,
    dist: Vec<u32>,
}

struct Folder {
    nletters: usize,
    parent: Vec<u32>,
    out: Vec<Vec<u32>>,
}

impl Folder {
    fn find(&mut self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = p;
        }
        v
    }

    fn new_vertex(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.out.push(vec![NONE; self.nletters]);
        id
    }

    fn add_edge(&mut self, u: u32, l: Letter, v: u32) {
        let mut pending = vec![(u, l, v)];
        while let Some((u, l, v)) = pending.pop() {
            let u = self.find(u);
            let v = self.find(v);
            let li = l.0 as usize;
            let t = self.out[u as usize][li];
            if t != NONE {
                let t = self.find(t);
                if t != v {
                    self.merge(t, v, &mut pending);
                }
                continue;
            }
            self.out[u as usize][li] = v;
            let back = l.inv().0 as usize;
            let s = self.out[v as usize][back];
            if s != NONE {
                let s = self.find(s);
                if s != u {
                    self.merge(s, u, &mut pending);
                }
            } else {
                self.out[v as usize][back] = u;
            }
        }
    }

    fn merge(&mut self, a: u32, b: u32, pending: &mut Vec<(u32, Letter, u32)>) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        self.parent[a as usize] = b;
        let edges = std::mem::take(&mut self.out[a as usize]);
        for (li, &t) in edges.iter().enumerate() {
            if t != NONE {
                pending.push((b, Letter(li as u8), t));
            }
        }
        self.out[a as usize] = vec![NONE; self.nletters];
    }
}

impl FoldedGraph {
    /// Folds the bouquet of loops spelled by `gens` in the free group of `rank`.
    pub fn new(rank: usize, gens: &[Word]) -> FoldedGraph {
        let nletters = 2 * rank;
        let mut f = Folder { nletters, parent: Vec::new(), out: Vec::new() };
        let base = f.new_vertex();
        for g in gens {
            let g = g.free_reduce();
            if g.is_empty() {
                continue;
            }
            let mut cur = base;
            for (i, &l) in g.letters().iter().enumerate() {
                let next = if i + 1 == g.len() { base } else { f.new_vertex() };
                f.add_edge(cur, l, next);
                cur = f.find(next);
            }
        }
        // Compact the surviving vertices, base first.
        let n = f.parent.len();
        let mut id = vec![NONE; n];
        let mut order = Vec::new();
        let root = f.find(base);
        id[root as usize] = 0;
        order.push(root);
        for v in 0..n as u32 {
            if f.find(v) == v && v != root {
                id[v as usize] = order.len() as u32;
                order.push(v);
            }
        }
        let mut out = vec![NONE; order.len() * nletters];
        for (new, &old) in order.iter().enumerate() {
            for li in 0..nletters {
                let t = f.out[old as usize][li];
                if t != NONE {
                    out[new * nletters + li] = id[f.find(t) as usize];
                }
            }
        }
        let mut g = FoldedGraph {
            nletters,
            out,
            from_base: Vec::new(),
            to_base_step: Vec::new(),
            dist: Vec::new(),
        };
        g.compute_paths();
        g
    }

    fn compute_paths(&mut self) {
        let n = self.vertex_count();
        let mut from_base = vec![None; n];
        let mut dist = vec![u32::MAX; n];
        from_base[0] = Some(Word::empty());
        dist[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            for li in 0..self.nletters {
                let t = self.step(v, Letter(li as u8));
                if t != NONE && from_base[t as usize].is_none() {
                    let mut p = from_base[v as usize].clone().unwrap();
                    p.push(Letter(li as u8));
                    from_base[t as usize] = Some(p);
                    dist[t as usize] = dist[v as usize] + 1;
                    queue.push_back(t);
                }
            }
        }
        let mut to_base_step = vec![u8::MAX; n];
        for v in 1..n {
            for li in 0..self.nletters {
                let t = self.step(v as u32, Letter(li as u8));
                if t != NONE && dist[t as usize] + 1 == dist[v] {
                    to_base_step[v] = li as u8;
                    break;
                }
            }
        }
        self.from_base = from_base.into_iter().map(|p| p.unwrap_or_default()).collect();
        self.dist = dist;
        self.to_base_step = to_base_step;
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len() / self.nletters
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().filter(|&&t| t != NONE).count() / 2
    }

    #[inline]
    fn step(&self, v: u32, l: Letter) -> u32 {
        self.out[v as usize * self.nletters + l.0 as usize]
    }

    /// Reads as much of `w` as the graph allows, returning the vertex reached
    /// and the number of letters consumed.
    pub fn read(&self, w: &[Letter]) -> (u32, usize) {
        let mut v = 0u32;
        for (i, &l) in w.iter().enumerate() {
            let t = self.step(v, l);
            if t == NONE {
                return (v, i);
            }
            v = t;
        }
        (v, w.len())
    }

    pub fn contains(&self, w: &Word) -> bool {
        let w = w.free_reduce();
        let (v, used) = self.read(w.letters());
        used == w.len() && v == 0
    }

    /// Shortlex-least element of `H w`.
    pub fn left_coset_rep(&self, w: &Word) -> Word {
        let w = w.free_reduce();
        let (v, used) = self.read(w.letters());
        let mut out = self.from_base[v as usize].clone();
        out.0.extend_from_slice(&w.letters()[used..]);
        out
    }

    /// Shortlex-least element of `w H`.
    pub fn right_coset_rep(&self, w: &Word) -> Word {
        let winv = w.free_reduce().inverse();
        let (v, used) = self.read(winv.letters());
        let mut out: Word = winv.letters()[used..].iter().rev().map(|l| l.inv()).collect();
        let mut cur = v;
        while cur != 0 {
            let l = Letter(self.to_base_step[cur as usize]);
            out.push(l);
            cur = self.step(cur, l);
        }
        out
    }

    /// True when the subgroup is all of the free group.
    pub fn is_whole_group(&self) -> bool {
        self.vertex_count() == 1 && self.out.iter().all(|&t| t != NONE)
    }

    pub fn is_trivial(&self) -> bool {
        self.edge_count() == 0
    }
}
