
use splitkit_core::cayley::{
    almost_invariance_verdict, coboundary, estimate_ends, Ball, EndsValue, QuotientBall, DEFAULT_VERTEX_BUDGET,
};
use splitkit_core::suite;
use splitkit_core::{Subgroup, Word};

const B: usize = DEFAULT_VERTEX_BUDGET;

#[test]
fn ball_sizes() {
    let z = Ball::new(&suite::z(), 2, B).unwrap();
    assert_eq!((z.len(), z.edges().len()), (5, 4));
    let f2 = Ball::new(&suite::f2(), 1, B).unwrap();
    assert_eq!((f2.len(), f2.edges().len()), (5, 4));
    let g = suite::z2_free_z2();
    let d = Ball::new(&g, 3, B).unwrap();
    let mut names: Vec<String> = d.words.iter().map(|w| g.format(w)).collect();
    names.sort();
    assert_eq!(names, vec!["a", "a b", "a b a", "b", "b a", "b a b", "e"]);
}

#[test]
fn quotient_balls() {
    let z = suite::z();
    let whole = Subgroup::generated(&z, &[z.parse("t").unwrap()]).unwrap();
    assert_eq!(QuotientBall::new(&z, &whole, 4, B).unwrap().len(), 1);

    let f2 = suite::f2();
    let q = QuotientBall::new(&f2, &Subgroup::trivial(&f2), 3, B).unwrap();
    assert_eq!(q.len(), Ball::new(&f2, 3, B).unwrap().len());

    let hx = Subgroup::generated(&f2, &[f2.parse("x").unwrap()]).unwrap();
    let q = QuotientBall::new(&f2, &hx, 2, B).unwrap();
    // e, then y^{±1}, then y^{±1} followed by x^{±1} or the same y^{±1}
    assert_eq!(q.len(), 1 + 2 + 6);
    for s in ["e", "y", "y'", "x y", "x y'"] {
        let w = f2.parse(s).unwrap();
        assert!(q.index_of(&hx.left_coset_rep(&w)).is_some(), "{s}");
    }
    assert_eq!(q.index_of(&hx.left_coset_rep(&f2.parse("x x").unwrap())), Some(0));
}

#[test]
fn coboundaries() {
    let z = suite::z_splitting().unwrap();
    let cut = coboundary(z.group(), &|w| z.in_x(w), 3, B).unwrap();
    assert_eq!(cut.len(), 1);
    let g = z.group();
    let ends = [g.format(&cut[0].from), g.format(&cut[0].to)];
    assert!(ends.contains(&"e".to_string()) && ends.contains(&"t".to_string()));

    let d = suite::z2_free_z2_splitting().unwrap();
    let cut = coboundary(d.group(), &|w| d.in_x(w), 4, B).unwrap();
    assert_eq!(cut.len(), 1);
    let ends = [d.group().format(&cut[0].from), d.group().format(&cut[0].to)];
    assert!(ends.contains(&"e".to_string()) && ends.contains(&"a".to_string()));

    assert!(coboundary(g, &|_| true, 5, B).unwrap().is_empty());
}

#[test]
fn almost_invariance() {
    for s in suite::all().unwrap() {
        let r = if s.group().rank() > 3 { 4 } else { 7 };
        let v = almost_invariance_verdict(s.group(), s.edge_group(), &|w| s.in_x(w), r, B).unwrap();
        assert!(v.is_true(), "{}", s.name);
    }
    let z = suite::z();
    let triv = Subgroup::trivial(&z);
    for r in 2..10 {
        let v = almost_invariance_verdict(&z, &triv, &|w: &Word| w.len() % 2 == 0, r, B).unwrap();
        assert!(v.is_unresolved());
    }
    assert!(almost_invariance_verdict(&z, &triv, &|_| true, 4, B).unwrap().is_true());
}

#[test]
fn ends() {
    let z = suite::z();
    assert_eq!(estimate_ends(&z, &Subgroup::trivial(&z), 8, B).unwrap().value, EndsValue::Two);
    let f2 = suite::f2();
    assert_eq!(estimate_ends(&f2, &Subgroup::trivial(&f2), 8, B).unwrap().value, EndsValue::Many);
    let hx = Subgroup::generated(&f2, &[f2.parse("x").unwrap()]).unwrap();
    let e = estimate_ends(&f2, &hx, 8, B).unwrap();
    assert!(e.value >= EndsValue::Two);
    assert!(e.certified_radius.is_some());
}
