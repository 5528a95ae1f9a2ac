use std::sync::Arc;

use splitkit_core::cayley::canonical_words;
use splitkit_core::crossing::{intersection_number, CrossingConfig};
use splitkit_core::splitting::splittings_equivalent;
use splitkit_core::suite;
use splitkit_core::{BaseSplitting, GroupPresentation, NormalForm, Role, Subgroup, Transversal, Variant, Word};

fn w(s: &splitkit_core::Splitting, text: &str) -> Word {
    s.group().parse(text).unwrap()
}

#[test]
fn validation() {
    assert!(suite::z2_free_z2_splitting().is_ok());
    assert!(suite::z_splitting().is_ok());

    // A = H = Z2 inside B = Z4
    let g = Arc::new(GroupPresentation::rewriting("Z4", &["a", "b"], &["a a", "b b b b", "a b' b'"]).unwrap());
    let h = Subgroup::generated(&g, &[g.parse("a").unwrap()]).unwrap();
    let err = BaseSplitting::amalgam(&g, vec![Role::A, Role::B], h, Transversal::Shortlex);
    assert!(err.is_err());
}

#[test]
fn normal_forms() {
    let s = suite::z2_free_z2_splitting().unwrap();
    let g = s.group().clone();
    match s.normal_form(&w(&s, "a b a")) {
        NormalForm::Amalgam { syllables, h } => {
            let got: Vec<(u8, String)> = syllables.iter().map(|(k, x)| (*k, g.format(x))).collect();
            assert_eq!(got, vec![(0, "a".into()), (1, "b".into()), (0, "a".into())]);
            assert!(h.is_empty());
        }
        _ => panic!("expected an amalgam normal form"),
    }

    let s = suite::z4_amalgam_splitting().unwrap();
    let g = s.group().clone();
    let x = w(&s, "a a b");
    let nf = s.normal_form(&x);
    let tuple = nf.amalgam_tuple().unwrap();
    let names: Vec<String> = tuple.iter().map(|t| g.format(t)).collect();
    assert_eq!(names, vec!["e", "b", "a a"]);
    // reassembly: b a^2 = a^2 b
    assert!(g.word_equals(&g.mul(&tuple[1], &tuple[2]), &x));

    let s = suite::z_splitting().unwrap();
    match s.normal_form(&w(&s, "t'")) {
        NormalForm::Hnn { syllables, tail } => {
            assert_eq!(syllables, vec![(Word::empty(), -1)]);
            assert!(tail.is_empty());
        }
        _ => panic!("expected an HNN normal form"),
    }
}

#[test]
fn standard_sides() {
    let s = suite::z2_free_z2_splitting().unwrap();
    assert!(s.in_x(&w(&s, "a b a")));
    assert!(!s.in_x(&w(&s, "b a")));
    let z = suite::z_splitting().unwrap();
    assert!(z.in_x(&w(&z, "t t")));
    assert!(!z.in_x(&w(&z, "t'")));
}

#[test]
fn translated_sides() {
    let z = Arc::new(suite::z_splitting().unwrap());
    let t = w(&z, "t");
    assert!(!z.half_space_contains(&t, Variant::X, &t));
    assert!(z.half_space_contains(&t, Variant::X, &w(&z, "t t t")));
    for x in canonical_words(z.group(), 4) {
        assert_eq!(z.half_space_contains(&Word::empty(), Variant::X, &x), z.in_x(&x));
    }
}

#[test]
fn conjugates() {
    let s = suite::z2_free_z2_splitting().unwrap();
    assert!(splittings_equivalent(&s, &s.conjugate(&Word::empty()).unwrap(), 6).unwrap().is_true());

    let s4 = suite::z4_amalgam_splitting().unwrap();
    let c = s4.conjugate(&w(&s4, "a a")).unwrap();
    assert!(splittings_equivalent(&s4, &c, 6).unwrap().is_true());

    let a = w(&s, "a");
    let sa = s.conjugate(&a).unwrap();
    let differs = canonical_words(s.group(), 6).iter().any(|x| s.in_x(x) != sa.in_x(x));
    assert!(differs);
    let (s, sa) = (Arc::new(s), Arc::new(sa));
    let cfg = CrossingConfig::with_radius(6);
    for other in [&s, &sa] {
        let before = intersection_number(&s, other, &cfg).unwrap();
        let after = intersection_number(&sa, other, &cfg).unwrap();
        assert_eq!(before.count, after.count);
        assert!(before.exact && after.exact);
    }
}

#[test]
fn equivalence() {
    for s in suite::all().unwrap() {
        assert!(splittings_equivalent(&s, &s, 5).unwrap().is_true(), "{}", s.name);
    }
    let s = suite::z2_free_z2_splitting().unwrap();
    assert!(splittings_equivalent(&s, &s.swapped().unwrap(), 6).unwrap().is_true());
    let s4 = suite::z4_amalgam_splitting().unwrap();
    assert!(splittings_equivalent(&s4, &s4.swapped().unwrap(), 6).unwrap().is_true());

    let (a, b) = (suite::f3_first().unwrap(), suite::f3_second().unwrap());
    let v = splittings_equivalent(&a, &b, 1).unwrap();
    assert!(v.is_false());
    assert!(v.witness.unwrap().len() <= 1);
}
