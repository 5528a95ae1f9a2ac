use std::sync::Arc;

use splitkit_core::crossing::CrossingConfig;
use splitkit_core::dunwoody::{
    assemble_graph_of_groups, assemble_with_stability, build_tree, collapse_edge, conjugate_equivalent,
    order_from_paths, poset_from_halfspaces, validate_poset,
};
use splitkit_core::surface::slope_splitting;
use splitkit_core::{suite, AbstractTree, Error, Poset, Splitting};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn arc(s: Splitting) -> Arc<Splitting> {
    Arc::new(s)
}

#[test]
fn validation() {
    let p = Poset::new(labels(2), vec![1, 0]).unwrap();
    assert!(validate_poset(&p).is_ok());

    let mut p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2), (0, 3), (2, 1), (3, 1)]).unwrap();
    p.close_transitively();
    assert!(matches!(validate_poset(&p), Err(Error::Poset { condition: 4, .. })));

    let p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2)]).unwrap();
    assert!(matches!(validate_poset(&p), Err(Error::Poset { condition: 1, .. })));

    let p = Poset::new(labels(3), vec![1, 0, 2]).unwrap();
    assert!(matches!(validate_poset(&p), Err(Error::Poset { .. })));
}

#[test]
fn trees() {
    let t = build_tree(&Poset::new(labels(2), vec![1, 0]).unwrap()).unwrap();
    assert_eq!((t.edge_count(), t.vertex_count), (1, 2));

    let p = Poset::from_pairs(labels(4), vec![1, 0, 3, 2], &[(0, 2), (3, 1)]).unwrap();
    let t = build_tree(&p).unwrap();
    assert_eq!((t.edge_count(), t.vertex_count), (2, 3));
    assert_eq!(order_from_paths(&t), p);
}

#[test]
fn path_orders() {
    let single = AbstractTree { vertex_count: 2, ends: vec![(0, 1), (1, 0)], inv: vec![1, 0], labels: labels(2) };
    assert!(order_from_paths(&single).strict_pairs().is_empty());

    // 0 -a- 1 -b- 2 -c- 3 with a, b, c at even indices
    let path = AbstractTree {
        vertex_count: 4,
        ends: vec![(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)],
        inv: vec![1, 0, 3, 2, 5, 4],
        labels: labels(6),
    };
    let mut got = order_from_paths(&path).strict_pairs();
    got.sort();
    assert_eq!(got, vec![(0, 2), (0, 4), (2, 4), (3, 1), (5, 1), (5, 3)]);
}

#[test]
fn translate_posets() {
    let cfg = CrossingConfig::with_radius(8);
    let z = arc(suite::z_splitting().unwrap());
    let hp = poset_from_halfspaces(&[z.clone()], 3, &cfg).unwrap();
    validate_poset(&hp.poset).unwrap();
    let t = build_tree(&hp.poset).unwrap();
    assert_eq!(t.edge_count(), 3);

    let hp = poset_from_halfspaces(&[z], 9, &cfg).unwrap();
    assert_eq!(hp.translate_radius, 3);
    let t = build_tree(&hp.poset).unwrap();
    assert_eq!((t.edge_count(), t.vertex_count), (7, 8));

    let f = [arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap())];
    let hp = poset_from_halfspaces(&f, 8, &cfg).unwrap();
    validate_poset(&hp.poset).unwrap();
    let fams: std::collections::BTreeSet<usize> = hp.elements.iter().map(|e| e.family).collect();
    assert_eq!(fams.len(), 2);
    let mixed = hp.poset.strict_pairs().iter().any(|&(a, b)| hp.elements[a].family != hp.elements[b].family);
    assert!(mixed);

    let s = [arc(slope_splitting(0, 1).unwrap()), arc(slope_splitting(1, 0).unwrap())];
    assert!(matches!(poset_from_halfspaces(&s, 6, &cfg), Err(Error::Crossing(_))));
}

#[test]
fn single_splitting_graph() {
    let cfg = CrossingConfig::with_radius(8);
    let s = arc(suite::z2_free_z2_splitting().unwrap());
    let gog = assemble_graph_of_groups(&[s.clone()], 6, &cfg).unwrap();
    assert_eq!(gog.edges.len(), 1);
    assert_eq!(gog.vertices.len(), 2);
    let back = collapse_edge(&gog, 0).unwrap();
    let (v, _) = conjugate_equivalent(&back, &s, 2, 6).unwrap();
    assert!(v.is_true());
    assert!(collapse_edge(&gog, 1).is_err());
}

#[test]
fn f3_graph() {
    let cfg = CrossingConfig::with_radius(8);
    let f = [arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap())];
    let gog = assemble_with_stability(&f, 8, &cfg).unwrap();
    assert_eq!(gog.edges.len(), 2);
    assert_eq!(gog.vertices.len(), 3);
    assert!(gog.stability.as_ref().unwrap().stable);
    assert!(gog.edges.iter().all(|e| e.edge_group.is_empty()));
    let g = gog.group().clone();
    for gen in ["x", "y", "z"] {
        let w = g.parse(gen).unwrap();
        // some vertex group is conjugate to <gen>: contains a conjugate of it
        let hit = gog.vertices.iter().any(|v| {
            v.group_gens.len() == 1 && {
                let h = &v.group_gens[0];
                (0..h.len()).any(|k| {
                    let rot: Vec<_> = h.letters()[k..].iter().chain(&h.letters()[..k]).copied().collect();
                    rot == w.letters()
                })
            }
        });
        assert!(hit, "{gen}");
    }
    for (i, s) in f.iter().enumerate() {
        let back = collapse_edge(&gog, i).unwrap();
        let (v, _) = conjugate_equivalent(&back, s, 3, 6).unwrap();
        assert!(v.is_true(), "edge {i}");
    }
}

#[test]
fn conjugate_pair_is_subdivided() {
    let cfg = CrossingConfig::with_radius(8);
    let s = slope_splitting(0, 1).unwrap();
    let x = s.group().parse("x").unwrap();
    let pair = [arc(s.clone()), arc(s.conjugate(&x).unwrap())];
    let gog = assemble_graph_of_groups(&pair, 8, &cfg).unwrap();
    assert_eq!(gog.edges.len(), 2);
    assert!(gog.edges.iter().all(|e| e.subdivided && e.edge_group == vec!["x".to_string()]));
    for (i, t) in pair.iter().enumerate() {
        let back = collapse_edge(&gog, i).unwrap();
        assert!(conjugate_equivalent(&back, t, 3, 6).unwrap().0.is_true());
    }
}

#[test]
fn crossing_pair_is_rejected() {
    let cfg = CrossingConfig::with_radius(8);
    let s = [arc(slope_splitting(0, 1).unwrap()), arc(slope_splitting(1, 0).unwrap())];
    match assemble_graph_of_groups(&s, 8, &cfg) {
        Err(Error::Crossing(msg)) => assert!(msg.contains("intersection number 1")),
        other => panic!("expected a crossing error, got {:?}", other.map(|g| g.edges.len())),
    }
}
