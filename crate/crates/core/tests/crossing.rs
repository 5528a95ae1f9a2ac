use std::collections::HashMap;
use std::sync::Arc;

use splitkit_core::cayley::{canonical_words, DEFAULT_VERTEX_BUDGET};
use splitkit_core::crossing::{
    crosses, crosses_strongly, double_coset_reps, intersection_number, smallness_verdict, strong_intersection_number,
    two_sided_invariance_check, CrossingConfig,
};
use splitkit_core::surface::{arc_splitting, slope_splitting};
use splitkit_core::{suite, HalfSpace, Splitting, Subgroup, Variant, Word};

fn arc(s: Splitting) -> Arc<Splitting> {
    Arc::new(s)
}

fn slopes() -> (Arc<Splitting>, Arc<Splitting>) {
    (arc(slope_splitting(0, 1).unwrap()), arc(slope_splitting(1, 0).unwrap()))
}

#[test]
fn double_cosets() {
    let z = suite::z();
    let all = Subgroup::generated(&z, &[z.parse("t").unwrap()]).unwrap();
    assert_eq!(double_coset_reps(&all, &all, 4), vec![Word::empty()]);
    let triv = Subgroup::trivial(&z);
    assert_eq!(double_coset_reps(&triv, &triv, 2).len(), 5);

    // brute force: link g with x^i g x^j inside the ball
    let f2 = suite::f2();
    let hx = Subgroup::generated(&f2, &[f2.parse("x").unwrap()]).unwrap();
    let reps = double_coset_reps(&hx, &hx, 2);
    let ball = canonical_words(&f2, 2);
    let x = f2.parse("x").unwrap();
    let mut class: HashMap<Word, usize> = ball.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    loop {
        let mut changed = false;
        for w in &ball {
            for i in -4..=4 {
                for j in -4..=4 {
                    let v = f2.mul3(&f2.pow(&x, i), w, &f2.pow(&x, j));
                    if let Some(&cv) = class.get(&v) {
                        let cw = class[w];
                        if cv != cw {
                            let m = cv.min(cw);
                            class.insert(v.clone(), m);
                            class.insert(w.clone(), m);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut distinct: Vec<usize> = class.values().copied().collect();
    distinct.sort();
    distinct.dedup();
    assert_eq!(reps.len(), distinct.len());
    let rep_classes: std::collections::BTreeSet<usize> = reps.iter().filter_map(|r| class.get(r).copied()).collect();
    assert_eq!(rep_classes.len(), reps.len());
}

#[test]
fn smallness() {
    let z = Arc::new(suite::z_splitting().unwrap());
    let g = z.group().clone();
    let triv = Subgroup::trivial(&g);
    let t = g.parse("t").unwrap();
    let b = DEFAULT_VERTEX_BUDGET;
    let x = |w: &Word| z.in_x(w);
    let xs = |w: &Word| !z.in_x(w);
    let tx = |w: &Word| z.half_space_contains(&t, Variant::X, w);
    let txs = |w: &Word| !z.half_space_contains(&t, Variant::X, w);
    assert!(smallness_verdict(&x, &xs, &triv, 8, 2, b).unwrap().is_true());
    assert!(smallness_verdict(&x, &txs, &triv, 8, 2, b).unwrap().is_true());
    let v = smallness_verdict(&x, &tx, &triv, 8, 2, b).unwrap();
    assert!(v.is_false());
    assert!(v.witness.is_some());
}

#[test]
fn crossing_pairs() {
    let z = arc(suite::z_splitting().unwrap());
    let t = z.group().parse("t").unwrap();
    let std = HalfSpace::standard(&z);
    assert!(crosses(&HalfSpace::new(&z, t, Variant::X), &std, 8).unwrap().is_false());
    assert!(crosses(&std, &std, 8).unwrap().is_false());

    let f = arc(suite::f3_first().unwrap());
    for g in canonical_words(f.group(), 2) {
        assert!(crosses(&HalfSpace::new(&f, g, Variant::X), &HalfSpace::standard(&f), 8).unwrap().is_false());
    }

    let (a, b) = slopes();
    let (ha, hb) = (HalfSpace::standard(&a), HalfSpace::standard(&b));
    assert!(crosses(&ha, &hb, 10).unwrap().is_true());
    assert!(crosses_strongly(&ha, &hb, 10).unwrap().is_true());
    assert!(crosses_strongly(&hb, &ha, 10).unwrap().is_true());
    assert!(crosses_strongly(&std, &std, 8).unwrap().is_false());
}

#[test]
fn intersection_numbers() {
    let cfg = CrossingConfig::with_radius(8);
    for s in suite::all().unwrap() {
        if s.group().rank() > 3 {
            continue;
        }
        let r = intersection_number(&s, &s, &cfg).unwrap();
        assert_eq!((r.count, r.exact), (0, true), "{}", s.name);
        let r = strong_intersection_number(&s, &s, &cfg).unwrap();
        assert_eq!((r.count, r.exact), (0, true), "{}", s.name);
    }
    let (a, b) = slopes();
    for (s, t) in [(&a, &b), (&b, &a)] {
        let i = intersection_number(s, t, &cfg).unwrap();
        let si = strong_intersection_number(s, t, &cfg).unwrap();
        assert_eq!((i.count, i.exact), (1, true));
        assert_eq!((si.count, si.exact), (1, true));
    }
    let (f, g) = (arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap()));
    let i = intersection_number(&f, &g, &cfg).unwrap();
    assert_eq!((i.count, i.exact), (0, true));
}

#[test]
fn curve_arc_asymmetry() {
    let cfg = CrossingConfig::with_radius(8);
    let curve = arc(slope_splitting(0, 1).unwrap());
    let a = arc(arc_splitting().unwrap());
    let forward = strong_intersection_number(&curve, &a, &cfg).unwrap();
    let backward = strong_intersection_number(&a, &curve, &cfg).unwrap();
    assert!(forward.count >= 1 && forward.exact);
    assert_eq!((backward.count, backward.exact), (0, true));
    let i = intersection_number(&curve, &a, &cfg).unwrap();
    assert!(forward.count <= i.count);
}

#[test]
fn two_sided_invariance() {
    let z = suite::z_splitting().unwrap();
    let triv = Subgroup::trivial(z.group());
    assert!(two_sided_invariance_check(&|w| z.in_x(w), &triv, 6).is_true());

    let s = slope_splitting(0, 1).unwrap();
    let h = s.edge_group().clone();
    assert!(two_sided_invariance_check(&|w| s.in_x(w), &h, 8).is_true());

    let g = s.group().clone();
    let target = g.parse("y x").unwrap();
    let flipped = |w: &Word| s.in_x(w) != (*w == target);
    let v = two_sided_invariance_check(&flipped, &h, 8);
    assert!(v.is_false());
    assert!(v.witness.is_some());
}
