//! Acceptance run. Prints one PASS/FAIL line per criterion. Pass criterion
//! numbers as arguments to run a subset.
//!
//! A criterion whose checks all hold but whose pinned radius or time was out
//! of reach prints FAIL with a `short:` note and does not fail the target; a
//! violated check does.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitkit_core::bass_serre::minimal_subtree;
use splitkit_core::cayley::{canonical_words, projected_coboundaries, DEFAULT_VERTEX_BUDGET};
use splitkit_core::crossing::{
    intersection_number, intersection_number_with, strong_intersection_number, two_sided_invariance_check,
    CrossingConfig,
};
use splitkit_core::dunwoody::{
    assemble_graph_of_groups, assemble_with_stability, build_tree, collapse_edge, conjugate_equivalent,
    order_from_paths, random_tree_poset, validate_poset,
};
use splitkit_core::surface::{arc_splitting, brute_force_crossing_count, slope_intersection, slope_splitting, Slope};
use splitkit_core::{suite, Error, Poset, Splitting, Variant, Word};

enum Outcome {
    Pass(String),
    Fail(String),
    Short(String),
}

type Check = fn() -> Outcome;

/// Membership tests allowed per splitting for the pointwise nestedness oracle.
const POINTWISE_BUDGET: usize = 20_000_000;

fn arc(s: Splitting) -> Arc<Splitting> {
    Arc::new(s)
}

fn slope(p: i64, q: i64) -> Arc<Splitting> {
    arc(slope_splitting(p, q).unwrap())
}

fn verdict(problems: Vec<String>, shortfalls: Vec<String>, summary: String) -> Outcome {
    if !problems.is_empty() {
        Outcome::Fail(format!("{}; {}", summary, problems.join("; ")))
    } else if !shortfalls.is_empty() {
        Outcome::Short(format!("{}; short: {}", summary, shortfalls.join("; ")))
    } else {
        Outcome::Pass(summary)
    }
}

const QUADRANTS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];

fn nestedness() -> Outcome {
    let start = Instant::now();
    let (mut problems, mut shortfalls, mut parts) = (Vec::new(), Vec::new(), Vec::new());
    for s in suite::all().unwrap() {
        let g = s.group();
        let mut edges = BTreeMap::new();
        for w in canonical_words(g, 5) {
            edges.entry(s.edge_key(&w)).or_insert(w);
        }
        let reps: Vec<Word> = edges.into_values().collect();
        let claims: Vec<Vec<(bool, bool)>> = reps
            .iter()
            .map(|t| {
                let o = s.edge_order(&Word::empty(), t);
                QUADRANTS.into_iter().filter(|&(a, b)| o.contains_left_in_right(a, b)).collect()
            })
            .collect();
        for (t, c) in reps.iter().zip(&claims) {
            if c.is_empty() {
                problems.push(format!("{}: no containment for {}", s.name, g.format(t)));
            }
        }
        let mut r = 0;
        let mut ball = canonical_words(g, 0);
        while r < 10 {
            let next = canonical_words(g, r + 1);
            if next.len() * reps.len() > POINTWISE_BUDGET {
                break;
            }
            ball = next;
            r += 1;
        }
        let in_x: Vec<bool> = ball.iter().map(|x| s.in_x(x)).collect();
        for (t, c) in reps.iter().zip(&claims) {
            let mut occupied = [[false; 2]; 2];
            let mut broken = None;
            for (x, &a) in ball.iter().zip(&in_x) {
                let b = s.half_space_contains(t, Variant::X, x);
                occupied[!a as usize][!b as usize] = true;
                if let Some(&(ca, cb)) = c.iter().find(|&&(ca, cb)| (a ^ ca) && !(b ^ cb)) {
                    broken = Some((x.clone(), ca, cb));
                }
            }
            if occupied.iter().flatten().all(|&o| o) {
                problems.push(format!("{}: X and {}X cross on the ball", s.name, g.format(t)));
            }
            if let Some((x, ca, cb)) = broken {
                problems.push(format!("{}: claim ({},{}) for {} fails at {}", s.name, ca, cb, g.format(t), g.format(&x)));
            }
        }
        if r < 10 {
            shortfalls.push(format!("{} pointwise radius {}", s.name, r));
        }
        parts.push(format!("{} {} edges r{}", s.name, reps.len(), r));
    }
    if start.elapsed() > Duration::from_secs(120) {
        shortfalls.push(format!("took {:.0?}", start.elapsed()));
    }
    verdict(problems, shortfalls, parts.join(", "))
}

fn self_intersection() -> Outcome {
    let cfg = CrossingConfig::with_radius(8);
    let (mut problems, mut shortfalls, mut parts) = (Vec::new(), Vec::new(), Vec::new());
    for s in suite::all().unwrap() {
        let t = Instant::now();
        let r = intersection_number(&s, &s, &cfg).unwrap();
        if (r.count, r.exact) != (0, true) {
            problems.push(format!("{}: i = {} exact {}", s.name, r.count, r.exact));
        }
        if t.elapsed() > Duration::from_secs(60) {
            shortfalls.push(format!("{} took {:.0?}", s.name, t.elapsed()));
        }
        parts.push(format!("{} r{}", s.name, r.radius));
    }
    verdict(problems, shortfalls, parts.join(", "))
}

fn symmetry() -> Outcome {
    let cfg = CrossingConfig::with_radius(12);
    let pairs = [
        (slope(0, 1), slope(1, 0)),
        (arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap())),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut problems, mut parts) = (Vec::new(), Vec::new());
    for (s, t) in &pairs {
        let g = s.group();
        let base = intersection_number(s, t, &cfg).unwrap();
        let mut runs = vec![("reverse".to_string(), intersection_number(t, s, &cfg).unwrap())];
        let mut ball = canonical_words(g, 3);
        ball.retain(|w| !w.is_empty());
        for c in ball.choose_multiple(&mut rng, 10) {
            let sc = arc(s.conjugate(c).unwrap());
            let tc = arc(t.conjugate(c).unwrap());
            runs.push((format!("left by {}", g.format(c)), intersection_number(&sc, t, &cfg).unwrap()));
            runs.push((format!("right by {}", g.format(c)), intersection_number(s, &tc, &cfg).unwrap()));
        }
        for vs in Variant::ALL {
            for vt in Variant::ALL {
                let r = intersection_number_with(s, vs, t, vt, &cfg).unwrap();
                runs.push((format!("{:?}/{:?}", vs, vt), r));
            }
        }
        if !base.exact {
            problems.push(format!("{}/{} not exact", s.name, t.name));
        }
        for (label, r) in &runs {
            if r.count != base.count || !r.exact {
                problems.push(format!("{}/{} {}: {} exact {}", s.name, t.name, label, r.count, r.exact));
            }
        }
        parts.push(format!("{}/{} i={} over {} runs", s.name, t.name, base.count, runs.len() + 1));
    }
    verdict(problems, Vec::new(), parts.join(", "))
}

fn slope_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = CrossingConfig::with_radius(12);
    let (mut problems, mut shortfalls) = (Vec::new(), Vec::new());
    let mut pairs = 0;
    let small = Slope::all_bounded(2);
    for (i, a) in small.iter().enumerate() {
        for b in &small[i + 1..] {
            pairs += 1;
            let det = slope_intersection(*a, *b) as usize;
            let (s, t) = (slope(a.p, a.q), slope(b.p, b.q));
            let lib = intersection_number(&s, &t, &cfg).unwrap();
            let bf = brute_force_crossing_count(&s, &t, 8, 4, 2).unwrap();
            if lib.count != det || bf.count != det || !lib.exact {
                problems.push(format!("{a} {b}: det {det} lib {} exact {} brute {}", lib.count, lib.exact, bf.count));
            }
        }
    }
    let wide = Slope::all_bounded(3);
    let mut wide_pairs = 0;
    for (i, a) in wide.iter().enumerate() {
        for b in &wide[i + 1..] {
            wide_pairs += 1;
            let det = slope_intersection(*a, *b) as usize;
            let lib = intersection_number(&slope(a.p, a.q), &slope(b.p, b.q), &cfg).unwrap();
            if lib.count != det || !lib.exact {
                problems.push(format!("{a} {b}: det {det} lib {} exact {}", lib.count, lib.exact));
            }
        }
    }
    if start.elapsed() > Duration::from_secs(600) {
        shortfalls.push(format!("took {:.0?}", start.elapsed()));
    }
    let summary = format!("{pairs} pairs against determinant and brute force, {wide_pairs} against determinant");
    verdict(problems, shortfalls, summary)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    for k in 0..100 {
        let edges = rng.gen_range(1..=100);
        let p = random_tree_poset(&mut rng, edges);
        if let Err(e) = validate_poset(&p) {
            problems.push(format!("poset {k} rejected: {e}"));
            continue;
        }
        match build_tree(&p) {
            Ok(t) if order_from_paths(&t) == p => {}
            Ok(_) => problems.push(format!("poset {k}: path order differs")),
            Err(e) => problems.push(format!("poset {k}: {e}")),
        }
    }
    let four = || (labels(4), vec![1, 0, 3, 2]);
    let unflipped = {
        let (l, i) = four();
        Poset::from_pairs(l, i, &[(0, 2)]).unwrap()
    };
    let unrelated = {
        let (l, i) = four();
        Poset::new(l, i).unwrap()
    };
    let both = {
        let (l, i) = four();
        let mut p = Poset::from_pairs(l, i, &[(0, 2), (0, 3), (2, 1), (3, 1)]).unwrap();
        p.close_transitively();
        p
    };
    for (p, want) in [(unflipped, 1), (unrelated, 3), (both, 4)] {
        match validate_poset(&p) {
            Err(Error::Poset { condition, .. }) if condition == want => {}
            other => problems.push(format!("expected condition {want}, got {:?}", other.err())),
        }
    }
    let shortfalls = if start.elapsed() > Duration::from_secs(60) {
        vec![format!("took {:.0?}", start.elapsed())]
    } else {
        Vec::new()
    };
    verdict(problems, shortfalls, "100 posets and 3 invalid".into())
}

fn assembly() -> Outcome {
    let cfg = CrossingConfig::with_radius(8);
    let mut problems = Vec::new();
    let f = [arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap())];
    let gog = assemble_with_stability(&f, 8, &cfg).unwrap();
    if gog.edges.len() != 2 {
        problems.push(format!("F3 pair gave {} edges", gog.edges.len()));
    }
    if !gog.stability.as_ref().is_some_and(|s| s.stable) {
        problems.push("F3 graph not stable from radius 8 to 10".into());
    }
    for (i, s) in f.iter().enumerate().take(gog.edges.len()) {
        let back = collapse_edge(&gog, i).unwrap();
        let (v, _) = conjugate_equivalent(&back, s, 3, 6).unwrap();
        if !v.is_true() {
            problems.push(format!("collapse of edge {i} is not conjugate-equivalent"));
        }
    }
    match assemble_graph_of_groups(&[slope(0, 1), slope(1, 0)], 8, &cfg) {
        Err(Error::Crossing(msg)) if msg.contains("double coset") => {}
        other => problems.push(format!("slope pair not rejected: {:?}", other.map(|g| g.edges.len()))),
    }
    verdict(problems, Vec::new(), format!("{} edges, {} vertices", gog.edges.len(), gog.vertices.len()))
}

fn strong_intersection() -> Outcome {
    let cfg = CrossingConfig::with_radius(12);
    let mut problems = Vec::new();
    let mut pairs: Vec<(Arc<Splitting>, Arc<Splitting>)> = Vec::new();
    let small = Slope::all_bounded(2);
    for a in &small {
        for b in &small {
            if a != b {
                pairs.push((slope(a.p, a.q), slope(b.p, b.q)));
            }
        }
    }
    let curve = slope(0, 1);
    let a = arc(arc_splitting().unwrap());
    pairs.push((curve.clone(), a.clone()));
    pairs.push((a.clone(), curve.clone()));
    let f = (arc(suite::f3_first().unwrap()), arc(suite::f3_second().unwrap()));
    pairs.push((f.0.clone(), f.1.clone()));
    pairs.push((f.1, f.0));
    for s in suite::all().unwrap() {
        pairs.push((s.clone(), s));
    }
    let mut psi = 0;
    for (s, t) in &pairs {
        let i = intersection_number(s, t, &cfg).unwrap();
        let si = strong_intersection_number(s, t, &cfg).unwrap();
        if si.count > i.count {
            problems.push(format!("{}/{}: si {} > i {}", s.name, t.name, si.count, i.count));
        }
        if s.name.starts_with("slope") && t.name.starts_with("slope") && si.count == i.count && si.exact && i.exact {
            let m = minimal_subtree(t, s.edge_group().gens(), 6).unwrap();
            psi += 1;
            if !m.stabilized || m.edges != si.count {
                problems.push(format!("{}/{}: psi {} stable {} vs si {}", s.name, t.name, m.edges, m.stabilized, si.count));
            }
        }
    }
    let (s, t) = (slope(0, 1), slope(1, 0));
    let (i, si) = (intersection_number(&s, &t, &cfg).unwrap(), strong_intersection_number(&s, &t, &cfg).unwrap());
    if (i.count, si.count, i.exact, si.exact) != (1, 1, true, true) {
        problems.push(format!("slope 0/1 1/0: i {} si {}", i.count, si.count));
    }
    let forward = strong_intersection_number(&curve, &a, &cfg).unwrap();
    let backward = strong_intersection_number(&a, &curve, &cfg).unwrap();
    if !(forward.count >= 1 && forward.exact && backward.count == 0 && backward.exact) {
        problems.push(format!("curve/arc si {} and {}", forward.count, backward.count));
    }
    verdict(problems, Vec::new(), format!("{} pairs, {} psi comparisons", pairs.len(), psi))
}

fn stabilization() -> Outcome {
    let (mut problems, mut shortfalls, mut parts) = (Vec::new(), Vec::new(), Vec::new());
    for s in suite::all().unwrap() {
        let g = s.group();
        let x = |w: &Word| s.in_x(w);
        match projected_coboundaries(g, s.edge_group(), &x, 4, 10, DEFAULT_VERTEX_BUDGET) {
            Ok(sets) => {
                if sets.windows(2).any(|p| p[0] != p[1]) {
                    let sizes: Vec<usize> = sets.iter().map(|c| c.len()).collect();
                    problems.push(format!("{}: sizes {:?}", s.name, sizes));
                }
                parts.push(format!("{} {}", s.name, sets[0].len()));
            }
            Err(Error::Budget(_)) => {
                let mut hi = 4;
                let mut last = None;
                while let Ok(sets) = projected_coboundaries(g, s.edge_group(), &x, 4, hi + 1, DEFAULT_VERTEX_BUDGET) {
                    last = Some(sets);
                    hi += 1;
                }
                match last {
                    Some(sets) if sets.windows(2).any(|p| p[0] != p[1]) => {
                        problems.push(format!("{}: changes below radius {}", s.name, hi))
                    }
                    _ => shortfalls.push(format!("{} only to radius {}", s.name, hi)),
                }
            }
            Err(e) => problems.push(format!("{}: {e}", s.name)),
        }
    }
    verdict(problems, shortfalls, parts.join(", "))
}

fn invariance() -> Outcome {
    let (mut problems, mut parts) = (Vec::new(), Vec::new());
    for s in suite::all().unwrap() {
        let g = s.group();
        let h = s.edge_group();
        let r = if g.rank() > 2 { 4 } else { 6 };
        if !two_sided_invariance_check(&|w| s.in_x(w), h, r).is_true() {
            problems.push(format!("{}: standard set fails", s.name));
        }
        if h.is_trivial() {
            continue;
        }
        let outside = canonical_words(g, 2).into_iter().find(|w| !s.in_x(w)).unwrap();
        let perturbed = |w: &Word| s.in_x(w) || *w == outside;
        let v = two_sided_invariance_check(&perturbed, h, r);
        if !(v.is_false() && v.witness.is_some()) {
            problems.push(format!("{}: perturbed set at {} passes", s.name, g.format(&outside)));
        }
        parts.push(s.name.clone());
    }
    verdict(problems, Vec::new(), format!("perturbed sets rejected for {}", parts.join(", ")))
}

fn main() {
    let checks: [(u8, &str, Check); 9] = [
        (1, "nestedness", nestedness),
        (2, "self-intersection", self_intersection),
        (3, "symmetry and invariance", symmetry),
        (4, "slope oracle", slope_oracle),
        (5, "poset round trip", round_trip),
        (6, "compatibility assembly", assembly),
        (7, "strong intersection", strong_intersection),
        (8, "coboundary stabilization", stabilization),
        (9, "two-sided invariance", invariance),
    ];
    let wanted: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut broken = 0;
    for (n, name, check) in checks {
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Outcome::Fail(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Short(d) => ("FAIL", d),
            Outcome::Fail(d) => {
                broken += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {n} {tag} {name} ({secs:.1}s): {detail}");
    }
    if broken > 0 {
        std::process::exit(1);
    }
}
