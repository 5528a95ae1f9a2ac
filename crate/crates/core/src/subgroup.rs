//! Subgroups with membership oracles and coset representatives.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presentation::{FreeAmalgam, Group, Strategy};
use crate::stallings::FoldedGraph;
use crate::word::Word;

/// Membership predicate for subgroups known only through a splitting.
pub type MembershipFn = Arc<dyn Fn(&Word) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Membership {
    Trivial,
    /// Every element, as canonical words.
    Finite(Vec<Word>),
    /// Powers of one infinite-order element, found by scanning a window.
    CyclicPowers { gen: Word, powers: Arc<Vec<Word>> },
    /// Folded graph in a free group.
    Folded(Arc<FoldedGraph>),
    /// Syllable criterion from a splitting normal form. Membership only:
    /// coset representatives fall back to the element itself.
    Predicate(MembershipFn),
}

impl fmt::Debug for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Trivial => write!(f, "Trivial"),
            Membership::Finite(v) => write!(f, "Finite({})", v.len()),
            Membership::CyclicPowers { gen, .. } => write!(f, "CyclicPowers({:?})", gen),
            Membership::Folded(g) => write!(f, "Folded({} vertices)", g.vertex_count()),
            Membership::Predicate(_) => write!(f, "Predicate"),
        }
    }
}

const POWER_WINDOW: i64 = 48;

/// A subgroup of an ambient group, given by generators and a membership kind.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: Group,
    gens: Vec<Word>,
    kind: Membership,
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Subgroup {
        Subgroup { group: group.clone(), gens: Vec::new(), kind: Membership::Trivial }
    }

    /// Picks the best available oracle for the subgroup generated by `gens`.
    pub fn generated(group: &Group, gens: &[Word]) -> Result<Subgroup> {
        for g in gens {
            group.alphabet().check(g)?;
        }
        let gens: Vec<Word> = gens.iter().map(|g| group.canon(g.letters())).filter(|g| !g.is_empty()).collect();
        if gens.is_empty() {
            return Ok(Subgroup::trivial(group));
        }
        if group.is_free() {
            let fg = FoldedGraph::new(group.rank(), &gens);
            return Ok(Subgroup { group: group.clone(), gens, kind: Membership::Folded(Arc::new(fg)) });
        }
        if let Some(elements) = enumerate_finite(group, &gens, 1024) {
            return Ok(Subgroup { group: group.clone(), gens, kind: Membership::Finite(elements) });
        }
        if gens.len() == 1 {
            return Ok(Subgroup::cyclic_powers(group, &gens[0]));
        }
        Err(Error::NotApplicable(
            "no membership oracle for an infinite subgroup with several generators in this group".into(),
        ))
    }

    pub fn cyclic_powers(group: &Group, gen: &Word) -> Subgroup {
        let gen = group.canon(gen.letters());
        let mut powers = Vec::with_capacity((2 * POWER_WINDOW + 1) as usize);
        for k in -POWER_WINDOW..=POWER_WINDOW {
            powers.push(group.pow(&gen, k));
        }
        Subgroup {
            group: group.clone(),
            gens: vec![gen.clone()],
            kind: Membership::CyclicPowers { gen, powers: Arc::new(powers) },
        }
    }

    /// A finite subgroup listed element by element. Closure is checked.
    pub fn finite_enumeration(group: &Group, elements: &[Word]) -> Result<Subgroup> {
        let set: BTreeSet<Word> = elements.iter().map(|w| group.canon(w.letters())).collect();
        if !set.contains(&Word::empty()) {
            return Err(Error::invalid("finite subgroup must contain the identity"));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(Error::invalid("listed elements are not closed under multiplication"));
                }
            }
        }
        let elems: Vec<Word> = set.into_iter().collect();
        let gens: Vec<Word> = elems.iter().filter(|w| !w.is_empty()).cloned().collect();
        if gens.is_empty() {
            return Ok(Subgroup::trivial(group));
        }
        Ok(Subgroup { group: group.clone(), gens, kind: Membership::Finite(elems) })
    }

    pub fn from_predicate(group: &Group, gens: Vec<Word>, pred: MembershipFn) -> Subgroup {
        Subgroup { group: group.clone(), gens, kind: Membership::Predicate(pred) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn gens(&self) -> &[Word] {
        &self.gens
    }

    pub fn kind(&self) -> &Membership {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, Membership::Trivial)
    }

    pub fn finite_elements(&self) -> Option<&[Word]> {
        match &self.kind {
            Membership::Trivial => None,
            Membership::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Number of elements, if finite.
    pub fn finite_order(&self) -> Option<usize> {
        match &self.kind {
            Membership::Trivial => Some(1),
            Membership::Finite(v) => Some(v.len()),
            Membership::Folded(g) if g.is_trivial() => Some(1),
            _ => None,
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        match &self.kind {
            Membership::Trivial => self.group.is_identity(w),
            Membership::Finite(v) => v.binary_search(&self.group.canon(w.letters())).is_ok(),
            Membership::Folded(g) => g.contains(w),
            Membership::Predicate(p) => p(&self.group.canon(w.letters())),
            Membership::CyclicPowers { .. } => {
                let w = self.group.canon(w.letters());
                self.window(&w).any(|h| h == w)
            }
        }
    }

    fn window<'a>(&'a self, w: &Word) -> Box<dyn Iterator<Item = Word> + 'a> {
        match &self.kind {
            Membership::CyclicPowers { gen, powers } => {
                let need = (2 * w.len() + 2 * gen.len() + 4) as i64;
                if need <= POWER_WINDOW {
                    let lo = (POWER_WINDOW - need) as usize;
                    let hi = (POWER_WINDOW + need) as usize;
                    Box::new(powers[lo..=hi].iter().cloned())
                } else {
                    let g = self.group.clone();
                    let gen = gen.clone();
                    Box::new((-need..=need).map(move |k| g.pow(&gen, k)))
                }
            }
            Membership::Finite(v) => Box::new(v.iter().cloned()),
            _ => Box::new(std::iter::once(Word::empty())),
        }
    }

    /// The amalgam structure of the group, when this is its amalgamated
    /// cyclic subgroup.
    fn amalgamated(&self) -> Option<&FreeAmalgam> {
        let Membership::CyclicPowers { gen, .. } = &self.kind else { return None };
        let Strategy::FreeAmalgam(fa) = self.group.strategy() else { return None };
        (*gen == *fa.u() || *gen == fa.u().inverse()).then_some(fa)
    }

    /// Canonical representative of the coset `H w`: the shortlex-least
    /// canonical word, except for the amalgamated subgroup of a genus-2
    /// style group, where it is the inverse of the representative of `w⁻¹ H`.
    pub fn left_coset_rep(&self, w: &Word) -> Word {
        if self.amalgamated().is_some() {
            let tau = self.right_coset_rep(&w.inverse());
            return self.group.canon(tau.inverse().letters());
        }
        match &self.kind {
            Membership::Trivial => self.group.canon(w.letters()),
            Membership::Folded(g) => g.left_coset_rep(w),
            Membership::Predicate(_) => self.group.canon(w.letters()),
            _ => {
                let w = self.group.canon(w.letters());
                self.window(&w).map(|h| self.group.mul(&h, &w)).min().unwrap()
            }
        }
    }

    /// Canonical representative of the coset `w H`.
    pub fn right_coset_rep(&self, w: &Word) -> Word {
        if let Some(fa) = self.amalgamated() {
            // canonical words end in a power of the amalgamated element
            let (syllables, _) = fa.syllables(w.letters());
            let mut out = Word::empty();
            for (_, t) in &syllables {
                out.0.extend_from_slice(t.letters());
            }
            return out;
        }
        match &self.kind {
            Membership::Trivial => self.group.canon(w.letters()),
            Membership::Folded(g) => g.right_coset_rep(w),
            Membership::Predicate(_) => self.group.canon(w.letters()),
            _ => {
                let w = self.group.canon(w.letters());
                self.window(&w).map(|h| self.group.mul(&w, &h)).min().unwrap()
            }
        }
    }

    /// `c = tau h` with `tau` the canonical representative of `c H`.
    pub fn decompose_right(&self, c: &Word) -> (Word, Word) {
        let tau = self.right_coset_rep(c);
        let h = self.group.ldiv(&tau, c);
        (tau, h)
    }

    /// Elements of the subgroup whose canonical word has length at most `r`.
    pub fn ball(&self, r: usize) -> Vec<Word> {
        let mut out: BTreeSet<Word> = BTreeSet::new();
        match &self.kind {
            Membership::Trivial => {
                out.insert(Word::empty());
            }
            Membership::Finite(v) => out.extend(v.iter().filter(|w| w.len() <= r).cloned()),
            Membership::CyclicPowers { gen, .. } => {
                let span = (2 * r + 2) as i64;
                for k in -span..=span {
                    let p = self.group.pow(gen, k);
                    if p.len() <= r {
                        out.insert(p);
                    }
                }
            }
            Membership::Folded(_) | Membership::Predicate(_) => {
                for w in crate::cayley::canonical_words(&self.group, r) {
                    if self.contains(&w) {
                        out.insert(w);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Products of at most `m` generators and their inverses, deduplicated.
    pub fn generator_ball(&self, m: usize) -> Vec<Word> {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut layer = vec![Word::empty()];
        seen.insert(Word::empty());
        let steps: Vec<Word> =
            self.gens.iter().flat_map(|g| [g.clone(), self.group.inv(g)]).collect();
        for _ in 0..m {
            let mut next = Vec::new();
            for w in &layer {
                for s in &steps {
                    let x = self.group.mul(w, s);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<Word> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Equality of subgroups through mutual generator membership.
    pub fn same_as(&self, other: &Subgroup) -> std::result::Result<(), Word> {
        for g in &self.gens {
            if !other.contains(g) {
                return Err(g.clone());
            }
        }
        for g in &other.gens {
            if !self.contains(g) {
                return Err(g.clone());
            }
        }
        Ok(())
    }

    /// Representatives to try on the left when canonicalising double cosets.
    fn double_coset_window(&self, len: usize) -> Vec<Word> {
        match &self.kind {
            Membership::Trivial => vec![Word::empty()],
            Membership::Finite(v) => v.clone(),
            Membership::CyclicPowers { gen, powers } => {
                let span = (2 * (len + gen.len()) + 4) as i64;
                if span <= POWER_WINDOW {
                    powers[(POWER_WINDOW - span) as usize..=(POWER_WINDOW + span) as usize].to_vec()
                } else {
                    (-span..=span).map(|k| self.group.pow(gen, k)).collect()
                }
            }
            Membership::Folded(_) | Membership::Predicate(_) => {
                if self.gens.len() == 1 {
                    let gen = &self.gens[0];
                    let span = (2 * (len + gen.len()) + 4) as i64;
                    (-span..=span).map(|k| self.group.pow(gen, k)).collect()
                } else {
                    self.ball(2 * len + 2)
                }
            }
        }
    }
}

/// Canonical representative of the double coset `K g H`.
pub fn double_coset_rep(k: &Subgroup, h: &Subgroup, g: &Word) -> Word {
    let group = k.group();
    let g = group.canon(g.letters());
    if k.is_trivial() {
        return h.right_coset_rep(&g);
    }
    if h.is_trivial() {
        return k.left_coset_rep(&g);
    }
    k.double_coset_window(g.len())
        .iter()
        .map(|x| h.right_coset_rep(&group.mul(x, &g)))
        .min()
        .unwrap()
}

fn enumerate_finite(group: &Group, gens: &[Word], cap: usize) -> Option<Vec<Word>> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::empty());
    let mut frontier = vec![Word::empty()];
    while let Some(w) = frontier.pop() {
        for g in gens {
            let x = group.mul(&w, g);
            if seen.insert(x.clone()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(x);
            }
        }
    }
    Some(seen.into_iter().collect())
}
