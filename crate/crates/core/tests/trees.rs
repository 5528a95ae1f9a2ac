use std::sync::Arc;

use splitkit_core::bass_serre::{local_tree, minimal_subtree};
use splitkit_core::cayley::{canonical_words, DEFAULT_VERTEX_BUDGET};
use splitkit_core::surface::{arc_splitting, slope_splitting};
use splitkit_core::{suite, EdgeOrder, Splitting, Variant, Word};

fn w(s: &Splitting, text: &str) -> Word {
    s.group().parse(text).unwrap()
}

/// Containments between `g1 X(*)` and `g2 X(*)` tested point by point.
fn pointwise(s: &Splitting, g1: &Word, g2: &Word, r: usize) -> [[bool; 2]; 2] {
    let mut out = [[true; 2]; 2];
    let vs = [Variant::X, Variant::XStar];
    for x in canonical_words(s.group(), r) {
        let left = vs.map(|v| s.half_space_contains(g1, v, &x));
        let right = vs.map(|v| s.half_space_contains(g2, v, &x));
        for a in 0..2 {
            for b in 0..2 {
                if left[a] && !right[b] {
                    out[a][b] = false;
                }
            }
        }
    }
    out
}

fn agrees(s: &Splitting, g1: &Word, g2: &Word, r: usize) {
    let o = s.edge_order(g1, g2);
    assert_ne!(o, EdgeOrder::IncomparableAtDepth);
    let p = pointwise(s, g1, g2, r);
    for a in 0..2 {
        for b in 0..2 {
            if o.contains_left_in_right(a == 1, b == 1) {
                assert!(p[a][b], "{:?} {} {}", o, a, b);
            }
        }
    }
}

#[test]
fn local_trees() {
    let z = suite::z_splitting().unwrap();
    let t = local_tree(&z, 2, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(t.edges.len(), 5);
    assert_eq!(t.vertices.len(), 6);

    let d = suite::z2_free_z2_splitting().unwrap();
    let t = local_tree(&d, 2, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(t.vertices.len(), t.edges.len() + 1);
    let mut degree = std::collections::HashMap::new();
    for e in &t.edges {
        *degree.entry(e.tail.clone()).or_insert(0) += 1;
        *degree.entry(e.head.clone()).or_insert(0) += 1;
    }
    assert!(degree.values().all(|&k| k <= 2));

    let arc = arc_splitting().unwrap();
    let t = local_tree(&arc, 1, DEFAULT_VERTEX_BUDGET).unwrap();
    assert_eq!(t.edges.len(), 5);
    assert!(t.edges.iter().all(|e| e.distance <= 1));
}

#[test]
fn edge_orders() {
    let z = suite::z_splitting().unwrap();
    let t = w(&z, "t");
    assert_eq!(z.edge_order(&t, &Word::empty()), EdgeOrder::Le);
    assert_eq!(z.edge_order(&t, &t), EdgeOrder::Equal);
    agrees(&z, &t, &Word::empty(), 8);

    let d = suite::z2_free_z2_splitting().unwrap();
    let a = w(&d, "a");
    let o = d.edge_order(&a, &Word::empty());
    assert!(o.contains_left_in_right(true, false));
    agrees(&d, &a, &Word::empty(), 8);

    for s in suite::all().unwrap() {
        assert_eq!(s.edge_order(&Word::empty(), &Word::empty()), EdgeOrder::Equal);
    }
}

#[test]
fn nested_translates() {
    for s in suite::all().unwrap() {
        let (r, pr) = match s.group().rank() {
            4.. => (1, 4),
            3 => (2, 5),
            _ => (3, 6),
        };
        let words = canonical_words(s.group(), r);
        for g in &words {
            agrees(&s, g, &Word::empty(), pr);
        }
    }
}

#[test]
fn minimal_subtrees() {
    let d = suite::z2_free_z2_splitting().unwrap();
    let q = minimal_subtree(&d, &[w(&d, "a")], 4).unwrap();
    assert_eq!(q.edges, 0);

    let cases = [((0, 1), (1, 0), 1), ((1, 1), (1, -1), 2)];
    for ((p, q), (p2, q2), want) in cases {
        let actor = Arc::new(slope_splitting(p, q).unwrap());
        let tree = slope_splitting(p2, q2).unwrap();
        let gens = actor.edge_group().gens().to_vec();
        let m = minimal_subtree(&tree, &gens, 6).unwrap();
        assert!(m.stabilized);
        assert_eq!(m.edges, want);
    }
}
