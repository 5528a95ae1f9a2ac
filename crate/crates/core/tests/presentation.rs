use std::sync::Arc;

use splitkit_core::suite;
use splitkit_core::{GroupPresentation, Subgroup, Word};

#[test]
fn free_reduction() {
    let g = suite::f2();
    let r = |s: &str| g.format(&g.free_reduce(&g.parse(s).unwrap()).unwrap());
    assert_eq!(r("x x' y"), "y");
    assert_eq!(r(""), "e");
    assert_eq!(r("x y y' x"), "x x");
}

#[test]
fn word_problem() {
    let f2 = suite::f2();
    assert!(!f2.word_equals(&f2.parse("x y").unwrap(), &f2.parse("y x").unwrap()));

    let z2 = Arc::new(GroupPresentation::rewriting("Z2", &["a"], &["a a"]).unwrap());
    assert!(z2.word_equals(&z2.parse("a a a").unwrap(), &z2.parse("a").unwrap()));

    let s = suite::genus2();
    let rel = s.parse("a b a' b' c d c' d'").unwrap();
    assert!(s.is_identity(&rel));
    for k in 0..8 {
        let l = rel.letters();
        let rot: Vec<_> = l[k..].iter().chain(&l[..k]).copied().collect();
        assert!(s.is_identity(&Word::from_letters(&rot)));
    }
    assert!(!s.is_identity(&s.parse("a b a' b'").unwrap()));
}

#[test]
fn coset_canonical() {
    let f2 = suite::f2();
    let w = f2.parse("x y").unwrap();
    assert_eq!(Subgroup::trivial(&f2).left_coset_rep(&w), w);

    let z = suite::z();
    let t = z.parse("t").unwrap();
    let h = Subgroup::generated(&z, &[t]).unwrap();
    for s in ["t", "t' t'", "t t t"] {
        assert!(h.left_coset_rep(&z.parse(s).unwrap()).is_empty());
    }

    let hx = Subgroup::generated(&f2, &[f2.parse("x").unwrap()]).unwrap();
    assert_eq!(f2.format(&hx.left_coset_rep(&w)), "y");
}

#[test]
fn subgroup_balls() {
    let z = suite::z();
    assert_eq!(Subgroup::trivial(&z).ball(5), vec![Word::empty()]);

    let h = Subgroup::generated(&z, &[z.parse("t").unwrap()]).unwrap();
    let got: Vec<String> = h.ball(2).iter().map(|w| z.format(w)).collect();
    let mut want: Vec<String> = ["t' t'", "t'", "e", "t", "t t"].iter().map(|s| s.to_string()).collect();
    let mut got_sorted = got.clone();
    got_sorted.sort();
    want.sort();
    assert_eq!(got_sorted, want);

    let f2 = suite::f2();
    let xy = f2.parse("x y").unwrap();
    let h = Subgroup::generated(&f2, &[xy.clone()]).unwrap();
    let ball = h.ball(4);
    assert_eq!(ball.len(), 5);
    for n in -2..=2 {
        assert!(ball.contains(&f2.pow(&xy, n)));
    }
}
