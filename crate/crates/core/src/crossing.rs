//! Smallness, crossing, strong crossing and intersection numbers.
//!
//! An almost invariant set is known through its indicator and the subgroup
//! it is invariant under. Its coboundary, projected to `H\Γ`, is computed on
//! growing balls until it stops changing; the endpoints of those edges, closed
//! under prefixes together with the generators of `H`, form a connected
//! region `Δ` whose `H`-translates contain the whole boundary.
//!
//! If `g H Δ` misses `K Φ` (the boundary region of `Y`), both boundaries lie
//! on one side of the other set and one quadrant is exactly empty. So only
//! the double cosets in `K Φ Δ⁻¹ H` need a growth test.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{self, Ball};
use crate::error::{Error, Result};
use crate::presentation::Group;
use crate::splitting::{EdgeOrder, HalfSpace, Splitting, Variant};
use crate::subgroup::{double_coset_rep, Subgroup};
use crate::verdict::{Verdict, VerdictKind};
use crate::word::Word;

pub type Indicator = Arc<dyn Fn(&Word) -> bool + Send + Sync>;

/// An `H`-almost invariant set given by its indicator.
#[derive(Clone)]
pub struct AiSet {
    pub name: String,
    pub stabilizer: Subgroup,
    pub indicator: Indicator,
    pub source: Option<(Arc<Splitting>, Variant)>,
}

impl std::fmt::Debug for AiSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AiSet({})", self.name)
    }
}

impl AiSet {
    pub fn from_splitting(s: &Arc<Splitting>, v: Variant) -> AiSet {
        let sp = s.clone();
        AiSet {
            name: format!("{}:{}", s.name, v.name()),
            stabilizer: s.edge_group().clone(),
            indicator: Arc::new(move |w| sp.in_variant(w, v)),
            source: Some((s.clone(), v)),
        }
    }

    pub fn custom(name: &str, stabilizer: Subgroup, indicator: Indicator) -> AiSet {
        AiSet { name: name.to_string(), stabilizer, indicator, source: None }
    }

    pub fn group(&self) -> &Group {
        self.stabilizer.group()
    }

    pub fn contains(&self, w: &Word) -> bool {
        (self.indicator)(w)
    }
}

/// Tunable windows for the growth tests.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingConfig {
    /// First ball radius tried for quadrant counts.
    pub start_radius: usize,
    /// Largest ball radius tried.
    pub max_radius: usize,
    /// Largest radius for the coboundary stabilization search.
    pub boundary_radius: usize,
    /// A growing count must reach this size to certify infinite.
    pub threshold: usize,
    pub vertex_budget: usize,
}

impl Default for CrossingConfig {
    fn default() -> Self {
        CrossingConfig { start_radius: 6, max_radius: 12, boundary_radius: 10, threshold: 2, vertex_budget: cayley::DEFAULT_VERTEX_BUDGET }
    }
}

impl CrossingConfig {
    pub fn with_radius(r: usize) -> CrossingConfig {
        CrossingConfig { start_radius: r.clamp(3, 6), max_radius: r.max(3), ..Default::default() }
    }
}

/// Boundary data of an almost invariant set.
#[derive(Clone, Debug)]
pub struct Boundary {
    /// Endpoints of the coboundary edges, one edge per `H`-orbit.
    pub points: Vec<Word>,
    /// Prefix closure of the endpoints and the generators of `H`.
    pub region: Vec<Word>,
    pub edge_orbits: usize,
    /// Radius at which the projected coboundary was seen to stop changing.
    pub radius: usize,
    pub stable: bool,
}

/// Projected coboundary, searched for three equal consecutive radii.
pub fn boundary(set: &AiSet, cfg: &CrossingConfig) -> Result<Boundary> {
    let g = set.group();
    let ind = set.indicator.clone();
    let f = move |w: &Word| ind(w);
    let mut hi = 6.min(cfg.boundary_radius).max(4);
    loop {
        let sets = cayley::projected_coboundaries(g, &set.stabilizer, &f, 2, hi, cfg.vertex_budget)?;
        let found = (4..=hi).find(|&r| sets[r - 4] == sets[r - 3] && sets[r - 3] == sets[r - 2]);
        if found.is_some() || hi >= cfg.boundary_radius {
            let (radius, stable) = match found {
                Some(r) => (r, true),
                None => (hi, false),
            };
            let edges = &sets[radius - 2];
            let mut points: BTreeSet<Word> = BTreeSet::new();
            for e in edges {
                points.insert(e.from.clone());
                points.insert(g.mul_letter(&e.from, e.letter));
            }
            let mut region: BTreeSet<Word> = BTreeSet::new();
            region.insert(Word::empty());
            let seeds: Vec<Word> = points.iter().cloned().chain(set.stabilizer.gens().iter().cloned()).collect();
            for w in &seeds {
                for k in 1..=w.len() {
                    region.insert(g.canon(&w.letters()[..k]));
                }
            }
            return Ok(Boundary {
                points: points.into_iter().collect(),
                region: region.into_iter().collect(),
                edge_orbits: edges.len(),
                radius,
                stable,
            });
        }
        hi = (hi + 2).min(cfg.boundary_radius);
    }
}

/// Canonical double coset representatives `K g H` with `g` in `K Φ Δ⁻¹ H`.
pub fn candidate_reps(x: &AiSet, bx: &Boundary, y: &AiSet, by: &Boundary) -> Vec<Word> {
    let g = x.group();
    let mut out: BTreeSet<Word> = BTreeSet::new();
    for phi in &by.region {
        for d in &bx.region {
            let c = g.mul(phi, &g.inv(d));
            out.insert(double_coset_rep(&y.stabilizer, &x.stabilizer, &c));
        }
    }
    out.into_iter().collect()
}

/// The ball with each point's left `K`-coset and membership in `Y`.
struct QuadrantBall {
    radius: usize,
    ball: Ball,
    kid: Vec<u32>,
    in_y: Vec<bool>,
}

impl QuadrantBall {
    fn new(y: &AiSet, r: usize, budget: usize) -> Result<QuadrantBall> {
        let ball = Ball::new(y.group(), r, budget)?;
        let mut ids: HashMap<Word, u32> = HashMap::new();
        let mut kid = Vec::with_capacity(ball.len());
        for w in &ball.words {
            let rep = y.stabilizer.left_coset_rep(w);
            let n = ids.len() as u32;
            kid.push(*ids.entry(rep).or_insert(n));
        }
        let in_y = ball.words.iter().map(|w| y.contains(w)).collect();
        Ok(QuadrantBall { radius: r, ball, kid, in_y })
    }

    /// Numbers of `K`-cosets met by the quadrants `gX(*) ∩ Y(*)` inside the
    /// balls of radius `r-w..=r`. Quadrant order: `X∩Y`, `X∩Y*`, `X*∩Y`,
    /// `X*∩Y*`.
    fn counts(&self, x: &AiSet, g: &Word, w: usize) -> Vec<[usize; 4]> {
        let grp = x.group();
        let ginv = grp.inv(g);
        let r = self.radius;
        let lo = r.saturating_sub(w);
        let mut sets: Vec<[BTreeSet<u32>; 4]> = (lo..=r).map(|_| Default::default()).collect();
        for (i, v) in self.ball.words.iter().enumerate() {
            let in_x = x.contains(&grp.mul(&ginv, v));
            let q = (if in_x { 0 } else { 2 }) + (if self.in_y[i] { 0 } else { 1 });
            let d = self.ball.distance(i);
            for (k, rr) in (lo..=r).enumerate() {
                if d <= rr {
                    sets[k][q].insert(self.kid[i]);
                }
            }
        }
        sets.iter().map(|s| [s[0].len(), s[1].len(), s[2].len(), s[3].len()]).collect()
    }
}

/// Radii over which a count must stay constant to read as stable. Counts of
/// an infinite quadrant can plateau for about the length of a stabilizer
/// generator before growing again.
fn stability_window(x: &AiSet, y: &AiSet) -> usize {
    let longest = x.stabilizer.gens().iter().chain(y.stabilizer.gens()).map(|w| w.len()).max().unwrap_or(0);
    (longest + 1).max(2)
}

fn column(c: &[[usize; 4]], q: usize) -> Vec<usize> {
    c.iter().map(|row| row[q]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Growth {
    Stable,
    Growing,
    Unclear,
}

/// `c` holds counts at consecutive radii. Stable needs every count equal,
/// growing needs the last three strictly increasing.
fn growth(c: &[usize], threshold: usize) -> Growth {
    let n = c.len();
    if n < 3 {
        return Growth::Unclear;
    }
    if c.windows(2).all(|p| p[0] == p[1]) {
        Growth::Stable
    } else if c[n - 3] < c[n - 2] && c[n - 2] < c[n - 1] && c[n - 1] >= threshold {
        Growth::Growing
    } else {
        Growth::Unclear
    }
}

fn crossing_from_counts(counts: &[[usize; 4]], threshold: usize, r: usize) -> Verdict {
    let g: Vec<Growth> = (0..4).map(|q| growth(&column(counts, q), threshold)).collect();
    if g.iter().all(|x| *x == Growth::Growing) {
        Verdict::certified_true(r)
    } else if g.contains(&Growth::Stable) {
        Verdict::certified_false(r, None)
    } else {
        Verdict::unresolved(r)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetVerdict {
    pub rep: Word,
    pub verdict: VerdictKind,
    pub radius: usize,
    /// How the verdict was reached: `nested` (exact tree order or boundary
    /// separation) or `growth`.
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub count: usize,
    pub exact: bool,
    pub radius: usize,
    pub per_coset: Vec<CosetVerdict>,
}

/// Exact verdict for two sets of one splitting: translates are nested.
fn same_splitting_verdict(s: &Splitting, g: &Word, r: usize) -> Verdict {
    match s.edge_order(g, &Word::empty()) {
        EdgeOrder::IncomparableAtDepth => Verdict::unresolved(r),
        _ => Verdict::certified_false(r, None),
    }
}

fn same_source(x: &AiSet, y: &AiSet) -> Option<Arc<Splitting>> {
    match (&x.source, &y.source) {
        (Some((a, _)), Some((b, _))) if a.same_splitting(b) => Some(a.clone()),
        _ => None,
    }
}

/// Growth verdicts for candidate translators, raising the radius until all
/// are certified or the maximum is reached.
fn candidate_verdicts(x: &AiSet, y: &AiSet, reps: &[Word], cfg: &CrossingConfig) -> Result<Vec<Verdict>> {
    let mut verdicts: Vec<Verdict> = vec![Verdict::unresolved(0); reps.len()];
    let w = stability_window(x, y);
    let mut r = cfg.start_radius.max(w).max(3).min(cfg.max_radius.max(3));
    loop {
        let open: Vec<usize> = (0..reps.len()).filter(|&i| verdicts[i].is_unresolved()).collect();
        if open.is_empty() {
            break;
        }
        let qb = match QuadrantBall::new(y, r, cfg.vertex_budget) {
            Ok(qb) => qb,
            Err(Error::Budget(_)) => break,
            Err(e) => return Err(e),
        };
        let found: Vec<(usize, Verdict)> = open
            .par_iter()
            .map(|&i| {
                let v = crossing_from_counts(&qb.counts(x, &reps[i], w), cfg.threshold, r);
                (i, if r < w && v.is_false() { Verdict::unresolved(r) } else { v })
            })
            .collect();
        for (i, v) in found {
            verdicts[i] = v;
        }
        if r >= cfg.max_radius {
            break;
        }
        r = (r + 2).min(cfg.max_radius);
    }
    Ok(verdicts)
}

/// Per-quadrant growth of `gX(*) ∩ Y(*)` for each translator, raising the
/// radius until every quadrant is stable or growing. Returns the growths and
/// the radius they were read at.
pub fn quadrant_growths(x: &AiSet, y: &AiSet, reps: &[Word], cfg: &CrossingConfig) -> Result<Vec<([Growth; 4], usize)>> {
    let mut out: Vec<([Growth; 4], usize)> = vec![([Growth::Unclear; 4], 0); reps.len()];
    let w = stability_window(x, y);
    let mut r = cfg.start_radius.max(w).max(3).min(cfg.max_radius.max(3));
    loop {
        let open: Vec<usize> = (0..reps.len()).filter(|&i| out[i].0.contains(&Growth::Unclear)).collect();
        if open.is_empty() {
            break;
        }
        let qb = match QuadrantBall::new(y, r, cfg.vertex_budget) {
            Ok(qb) => qb,
            Err(Error::Budget(_)) => break,
            Err(e) => return Err(e),
        };
        let found: Vec<(usize, [Growth; 4])> = open
            .par_iter()
            .map(|&i| {
                let c = qb.counts(x, &reps[i], w);
                let mut g = [Growth::Unclear; 4];
                for (q, slot) in g.iter_mut().enumerate() {
                    *slot = match growth(&column(&c, q), cfg.threshold) {
                        Growth::Stable if r < w => Growth::Unclear,
                        other => other,
                    };
                }
                (i, g)
            })
            .collect();
        for (i, g) in found {
            out[i] = (g, r);
        }
        if r >= cfg.max_radius {
            break;
        }
        r = (r + 2).min(cfg.max_radius);
    }
    Ok(out)
}

/// Counts double cosets `K g H` with `gX` crossing `Y`.
pub fn intersection_number_sets(x: &AiSet, y: &AiSet, cfg: &CrossingConfig) -> Result<CountReport> {
    if let Some(s) = same_source(x, y) {
        return Ok(same_splitting_report(&s, x, y, cfg));
    }
    let bx = boundary(x, cfg)?;
    let by = boundary(y, cfg)?;
    let reps = candidate_reps(x, &bx, y, &by);
    let verdicts = candidate_verdicts(x, y, &reps, cfg)?;
    let count = verdicts.iter().filter(|v| v.is_true()).count();
    let exact = bx.stable && by.stable && verdicts.iter().all(|v| !v.is_unresolved());
    let radius = verdicts.iter().map(|v| v.radius).max().unwrap_or(0).max(bx.radius).max(by.radius);
    let per_coset = reps
        .into_iter()
        .zip(verdicts)
        .map(|(rep, v)| CosetVerdict { rep, verdict: v.kind, radius: v.radius, method: "growth" })
        .collect();
    Ok(CountReport { count, exact, radius, per_coset })
}

fn same_splitting_report(s: &Splitting, x: &AiSet, y: &AiSet, cfg: &CrossingConfig) -> CountReport {
    let r = cfg.start_radius.min(4);
    let reps = double_coset_reps(&x.stabilizer, &y.stabilizer, r);
    let per_coset: Vec<CosetVerdict> = reps
        .into_iter()
        .map(|g| {
            let v = same_splitting_verdict(s, &g, r);
            CosetVerdict { rep: g, verdict: v.kind, radius: r, method: "nested" }
        })
        .collect();
    let exact = per_coset.iter().all(|c| c.verdict != VerdictKind::Unresolved);
    let count = per_coset.iter().filter(|c| c.verdict == VerdictKind::CertifiedTrue).count();
    CountReport { count, exact, radius: r, per_coset }
}

pub fn intersection_number(s: &Arc<Splitting>, t: &Arc<Splitting>, cfg: &CrossingConfig) -> Result<CountReport> {
    intersection_number_with(s, Variant::X, t, Variant::X, cfg)
}

pub fn intersection_number_with(
    s: &Arc<Splitting>,
    vs: Variant,
    t: &Arc<Splitting>,
    vt: Variant,
    cfg: &CrossingConfig,
) -> Result<CountReport> {
    intersection_number_sets(&AiSet::from_splitting(s, vs), &AiSet::from_splitting(t, vt), cfg)
}

/// Does `gX` cross `Y`? Exact when the translate is outside the candidate
/// double cosets or both sets come from one splitting.
pub fn crosses_sets(x: &AiSet, g: &Word, y: &AiSet, cfg: &CrossingConfig) -> Result<Verdict> {
    if let Some(s) = same_source(x, y) {
        return Ok(same_splitting_verdict(&s, g, cfg.max_radius));
    }
    let bx = boundary(x, cfg)?;
    let by = boundary(y, cfg)?;
    let rep = double_coset_rep(&y.stabilizer, &x.stabilizer, g);
    let reps = candidate_reps(x, &bx, y, &by);
    if reps.binary_search(&rep).is_err() {
        return Ok(Verdict::certified_false(bx.radius.max(by.radius), None));
    }
    Ok(candidate_verdicts(x, y, &[g.clone()], cfg)?.remove(0))
}

/// Crossing of two half-spaces `gV` and `kW`.
pub fn crosses(a: &HalfSpace, b: &HalfSpace, r: usize) -> Result<Verdict> {
    let cfg = CrossingConfig::with_radius(r);
    let g = a.splitting.group();
    let x = AiSet::from_splitting(&a.splitting, a.variant);
    let y = AiSet::from_splitting(&b.splitting, b.variant);
    let rel = g.ldiv(&b.translator, &a.translator);
    crosses_sets(&x, &rel, &y, &cfg)
}

/// Numbers of `K`-cosets met by `δ(gX) ∩ Y` and `δ(gX) ∩ Y*`, using the
/// boundary points `g h D` for `h` of generator length `m`.
fn strong_counts(x: &AiSet, bx: &Boundary, g: &Word, y: &AiSet, m: usize) -> [usize; 2] {
    let grp = x.group();
    let mut sides: [BTreeSet<Word>; 2] = Default::default();
    for h in x.stabilizer.generator_ball(m) {
        let gh = grp.mul(g, &h);
        for d in &bx.points {
            let p = grp.mul(&gh, d);
            let side = if y.contains(&p) { 0 } else { 1 };
            sides[side].insert(y.stabilizer.left_coset_rep(&p));
        }
    }
    [sides[0].len(), sides[1].len()]
}

fn strong_verdict(x: &AiSet, bx: &Boundary, g: &Word, y: &AiSet, cfg: &CrossingConfig) -> Verdict {
    let w = stability_window(x, y);
    let mut m = cfg.start_radius.max(2);
    loop {
        let c: Vec<[usize; 2]> = (m.saturating_sub(w)..=m).map(|k| strong_counts(x, bx, g, y, k)).collect();
        let grow: Vec<Growth> = (0..2).map(|s| growth(&c.iter().map(|row| row[s]).collect::<Vec<_>>(), cfg.threshold)).collect();
        if grow.iter().all(|x| *x == Growth::Growing) {
            return Verdict::certified_true(m);
        }
        if grow.contains(&Growth::Stable) {
            return Verdict::certified_false(m, None);
        }
        if m >= cfg.max_radius {
            return Verdict::unresolved(m);
        }
        m += 2;
    }
}

/// Does `gX` cross `Y` strongly?
pub fn crosses_strongly_sets(x: &AiSet, g: &Word, y: &AiSet, cfg: &CrossingConfig) -> Result<Verdict> {
    let c = crosses_sets(x, g, y, cfg)?;
    if c.is_false() {
        return Ok(c);
    }
    let bx = boundary(x, cfg)?;
    Ok(strong_verdict(x, &bx, g, y, cfg))
}

pub fn crosses_strongly(a: &HalfSpace, b: &HalfSpace, r: usize) -> Result<Verdict> {
    let cfg = CrossingConfig::with_radius(r);
    let g = a.splitting.group();
    let x = AiSet::from_splitting(&a.splitting, a.variant);
    let y = AiSet::from_splitting(&b.splitting, b.variant);
    let rel = g.ldiv(&b.translator, &a.translator);
    crosses_strongly_sets(&x, &rel, &y, &cfg)
}

/// Counts double cosets `K g H` with `gX` crossing `Y` strongly.
pub fn strong_intersection_number_sets(x: &AiSet, y: &AiSet, cfg: &CrossingConfig) -> Result<CountReport> {
    let base = intersection_number_sets(x, y, cfg)?;
    if base.count == 0 && base.exact {
        return Ok(base);
    }
    let bx = boundary(x, cfg)?;
    let mut per_coset = Vec::new();
    let mut exact = base.exact;
    let mut radius = base.radius;
    for c in base.per_coset {
        if c.verdict == VerdictKind::CertifiedFalse {
            per_coset.push(c);
            continue;
        }
        let v = strong_verdict(x, &bx, &c.rep, y, cfg);
        if v.is_unresolved() || c.verdict == VerdictKind::Unresolved {
            exact = false;
        }
        radius = radius.max(v.radius);
        let kind = if c.verdict == VerdictKind::Unresolved && v.is_true() { VerdictKind::Unresolved } else { v.kind };
        per_coset.push(CosetVerdict { rep: c.rep, verdict: kind, radius: v.radius, method: "strong-growth" });
    }
    let count = per_coset.iter().filter(|c| c.verdict == VerdictKind::CertifiedTrue).count();
    Ok(CountReport { count, exact, radius, per_coset })
}

pub fn strong_intersection_number(s: &Arc<Splitting>, t: &Arc<Splitting>, cfg: &CrossingConfig) -> Result<CountReport> {
    strong_intersection_number_sets(&AiSet::from_splitting(s, Variant::X), &AiSet::from_splitting(t, Variant::X), cfg)
}

/// One canonical representative per double coset `K g H` meeting the ball.
pub fn double_coset_reps(h: &Subgroup, k: &Subgroup, r: usize) -> Vec<Word> {
    let g = h.group();
    let mut out: BTreeSet<Word> = BTreeSet::new();
    for w in cayley::canonical_words(g, r) {
        out.insert(double_coset_rep(k, h, &w));
    }
    out.into_iter().collect()
}

/// Is `U ∩ V` small over `H`? Compares the number of `H`-cosets met, and the
/// largest distance from an intersection point to the coboundary of `V`,
/// at radii `r-2`, `r-1`, `r`.
pub fn smallness_verdict(
    u: &dyn Fn(&Word) -> bool,
    v: &dyn Fn(&Word) -> bool,
    h: &Subgroup,
    r: usize,
    threshold: usize,
    budget: usize,
) -> Result<Verdict> {
    if r < 2 {
        return Err(Error::invalid("radius must be at least 2"));
    }
    let g = h.group();
    let ball = Ball::new(g, r, budget)?;
    let n = ball.len();
    let in_v: Vec<bool> = ball.words.iter().map(|w| v(w)).collect();
    let inter: Vec<bool> = (0..n).map(|i| in_v[i] && u(&ball.words[i])).collect();
    // distance to the nearest endpoint of a cut edge of V
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (i, _, j) in ball.edges() {
        if in_v[i] != in_v[j] {
            for x in [i, j] {
                if dist[x] == usize::MAX {
                    dist[x] = 0;
                    queue.push_back(x);
                }
            }
        }
    }
    let letters = g.letters();
    while let Some(x) = queue.pop_front() {
        for &l in &letters {
            if let Some(y) = ball.neighbor(x, l) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut cosets: [BTreeSet<Word>; 3] = Default::default();
    let mut depth = [0usize; 3];
    let mut first: Option<Word> = None;
    for i in 0..n {
        if !inter[i] {
            continue;
        }
        let d = ball.distance(i);
        let rep = h.left_coset_rep(&ball.words[i]);
        for (k, rr) in [r - 2, r - 1, r].into_iter().enumerate() {
            if d <= rr {
                cosets[k].insert(rep.clone());
                depth[k] = depth[k].max(dist[i]);
            }
        }
        if first.is_none() {
            first = Some(ball.words[i].clone());
        }
    }
    let c = [cosets[0].len(), cosets[1].len(), cosets[2].len()];
    match growth(&c, threshold) {
        Growth::Stable if depth[0] == depth[1] && depth[1] == depth[2] => Ok(Verdict::certified_true(r)),
        Growth::Growing => Ok(Verdict { kind: VerdictKind::CertifiedFalse, radius: r, witness: first }),
        _ => Ok(Verdict::unresolved(r)),
    }
}

/// Checks `Y h ⊆ Y` for `y` in the ball and `h` in the subgroup ball.
pub fn two_sided_invariance_check(y: &dyn Fn(&Word) -> bool, h: &Subgroup, r: usize) -> Verdict {
    let g = h.group();
    let hs = h.ball(r);
    for w in cayley::canonical_words(g, r) {
        if !y(&w) {
            continue;
        }
        for x in &hs {
            if !y(&g.mul(&w, x)) {
                return Verdict::certified_false(r, Some(w));
            }
        }
    }
    Verdict::certified_true(r)
}

/// Smallness of each quadrant of `gX` against `Y`, reported per quadrant.
#[derive(Clone, Debug, Serialize)]
pub struct QuadrantReport {
    pub counts: Vec<[usize; 4]>,
    pub growth: Vec<Growth>,
    pub radius: usize,
}

pub fn quadrant_report(x: &AiSet, g: &Word, y: &AiSet, r: usize, cfg: &CrossingConfig) -> Result<QuadrantReport> {
    let qb = QuadrantBall::new(y, r.max(3), cfg.vertex_budget)?;
    let c = qb.counts(x, g, stability_window(x, y));
    let growth = (0..4).map(|q| self::growth(&column(&c, q), cfg.threshold)).collect();
    Ok(QuadrantReport { counts: c, growth, radius: qb.radius })
}
