//! Finitely presented groups with a solvable word problem.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::rewriting::{CompletionLimits, RewritingSystem};
use crate::stallings::FoldedGraph;
use crate::word::{Alphabet, Letter, Word};

/// How canonical forms are computed.
#[derive(Clone, Debug)]
pub enum Strategy {
    Free,
    Finite(FiniteGroup),
    Rewriting(RewritingSystem),
    FreeAmalgam(FreeAmalgam),
}

/// Two free groups on disjoint generator sets amalgamated along `u = v`.
///
/// Canonical words are syllable normal forms with shortlex coset
/// representatives, followed by a power of `u`. They are unique but not
/// geodesic.
#[derive(Clone, Debug)]
pub struct FreeAmalgam {
    side: Vec<u8>,
    u: Word,
    v: Word,
    hu: FoldedGraph,
    hv: FoldedGraph,
}

impl FreeAmalgam {
    pub fn new(rank: usize, side: Vec<u8>, u: Word, v: Word) -> Result<FreeAmalgam> {
        if side.len() != rank || side.iter().any(|&s| s > 1) {
            return Err(Error::invalid("each generator must be assigned to side 0 or 1"));
        }
        let u = u.free_reduce();
        let v = v.free_reduce();
        if u.is_empty() || v.is_empty() {
            return Err(Error::invalid("amalgamated elements must be non-trivial"));
        }
        if u.letters().iter().any(|l| side[l.index()] != 0) || v.letters().iter().any(|l| side[l.index()] != 1) {
            return Err(Error::invalid("amalgamated words must lie in their factors"));
        }
        let hu = FoldedGraph::new(rank, &[u.clone()]);
        let hv = FoldedGraph::new(rank, &[v.clone()]);
        Ok(FreeAmalgam { side, u, v, hu, hv })
    }

    /// Syllables `(side, coset rep)` of `w` and the exponent `k` of the
    /// trailing `u^k`.
    pub fn syllables(&self, w: &[Letter]) -> (Vec<(u8, Word)>, i64) {
        let mut stack: Vec<(u8, Word)> = Vec::new();
        let mut k: i64 = 0;
        // one coset decomposition per maximal run of letters from one side
        for run in w.chunk_by(|a, b| self.side[a.index()] == self.side[b.index()]) {
            let s = self.side[run[0].index()];
            let base = match stack.last() {
                Some((ts, _)) if *ts == s => stack.pop().unwrap().1,
                _ => Word::empty(),
            };
            let (h, graph) = if s == 0 { (&self.u, &self.hu) } else { (&self.v, &self.hv) };
            let mut c = base.free_mul(&h.free_pow(k));
            c = c.free_mul(&Word::from_letters(run));
            let tau = graph.right_coset_rep(&c);
            let rest = tau.inverse().free_mul(&c);
            k = rest.free_log(h).expect("coset decomposition lands in the cyclic subgroup");
            if !tau.is_empty() {
                stack.push((s, tau));
            }
        }
        (stack, k)
    }

    pub fn side(&self) -> &[u8] {
        &self.side
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    fn canonical(&self, w: &[Letter]) -> Word {
        let (stack, k) = self.syllables(w);
        let mut out = Word::empty();
        for (_, t) in &stack {
            out.0.extend_from_slice(t.letters());
        }
        out.0.extend_from_slice(self.u.free_pow(k).letters());
        out
    }
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub name: String,
    alphabet: Alphabet,
    relators: Vec<Word>,
    strategy: Strategy,
}

pub type Group = Arc<GroupPresentation>;

impl GroupPresentation {
    pub fn free<S: AsRef<str>>(name: &str, gens: &[S]) -> Result<GroupPresentation> {
        Ok(GroupPresentation {
            name: name.to_string(),
            alphabet: Alphabet::new(gens)?,
            relators: Vec::new(),
            strategy: Strategy::Free,
        })
    }

    pub fn finite<S: AsRef<str>>(
        name: &str,
        gens: &[S],
        table: Vec<Vec<usize>>,
        gen_elements: Vec<usize>,
    ) -> Result<GroupPresentation> {
        let alphabet = Alphabet::new(gens)?;
        if gen_elements.len() != alphabet.rank() {
            return Err(Error::invalid("one table element per generator is required"));
        }
        Ok(GroupPresentation {
            name: name.to_string(),
            alphabet,
            relators: Vec::new(),
            strategy: Strategy::Finite(FiniteGroup::new(table, gen_elements)?),
        })
    }

    /// Completes the relators to a confluent shortlex system.
    pub fn rewriting<S: AsRef<str>>(name: &str, gens: &[S], relators: &[&str]) -> Result<GroupPresentation> {
        let alphabet = Alphabet::new(gens)?;
        let rels = relators.iter().map(|r| alphabet.parse(r)).collect::<Result<Vec<_>>>()?;
        let sys = RewritingSystem::complete(alphabet.rank(), &rels, CompletionLimits::default())?;
        Ok(GroupPresentation { name: name.to_string(), alphabet, relators: rels, strategy: Strategy::Rewriting(sys) })
    }

    /// Uses the given rules; rejected unless confluent.
    pub fn rewriting_with_rules<S: AsRef<str>>(
        name: &str,
        gens: &[S],
        relators: &[&str],
        rules: &[(&str, &str)],
    ) -> Result<GroupPresentation> {
        let alphabet = Alphabet::new(gens)?;
        let rels = relators.iter().map(|r| alphabet.parse(r)).collect::<Result<Vec<_>>>()?;
        let rules = rules
            .iter()
            .map(|(l, r)| Ok((alphabet.parse(l)?, alphabet.parse(r)?)))
            .collect::<Result<Vec<_>>>()?;
        let sys = RewritingSystem::from_rules(alphabet.rank(), rules)?;
        for r in &rels {
            if !sys.reduce(r.letters()).is_empty() {
                return Err(Error::invalid("rewriting system does not kill a relator"));
            }
        }
        Ok(GroupPresentation { name: name.to_string(), alphabet, relators: rels, strategy: Strategy::Rewriting(sys) })
    }

    /// Amalgam of the free groups on the two sides, identifying `u` with `v`.
    pub fn free_amalgam<S: AsRef<str>>(name: &str, gens: &[S], side: Vec<u8>, u: &str, v: &str) -> Result<GroupPresentation> {
        let alphabet = Alphabet::new(gens)?;
        let (u, v) = (alphabet.parse(u)?, alphabet.parse(v)?);
        let relator = u.concat(&v.inverse());
        let fa = FreeAmalgam::new(alphabet.rank(), side, u, v)?;
        Ok(GroupPresentation {
            name: name.to_string(),
            alphabet,
            relators: vec![relator],
            strategy: Strategy::FreeAmalgam(fa),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.alphabet.letters()
    }

    pub fn is_free(&self) -> bool {
        matches!(self.strategy, Strategy::Free)
    }

    /// Canonical words are shortlex-least, hence geodesic and prefix closed.
    pub fn has_geodesic_forms(&self) -> bool {
        !matches!(self.strategy, Strategy::FreeAmalgam(_))
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    pub fn format(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    /// Free reduction; rejects letters outside the alphabet.
    pub fn free_reduce(&self, w: &Word) -> Result<Word> {
        self.alphabet.check(w)?;
        Ok(w.free_reduce())
    }

    /// The canonical word of the element represented by `w`.
    pub fn canon(&self, w: &[Letter]) -> Word {
        match &self.strategy {
            Strategy::Free => crate::word::free_reduce_letters(w),
            Strategy::Finite(f) => f.canonical(w),
            Strategy::Rewriting(r) => r.reduce(w),
            Strategy::FreeAmalgam(a) => a.canonical(w),
        }
    }

    pub fn mul(&self, a: &Word, b: &Word) -> Word {
        match &self.strategy {
            Strategy::Free => a.free_mul(b),
            _ => self.canon(a.concat(b).letters()),
        }
    }

    pub fn mul3(&self, a: &Word, b: &Word, c: &Word) -> Word {
        match &self.strategy {
            Strategy::Free => a.free_mul(b).free_mul(c),
            _ => self.canon(a.concat(b).concat(c).letters()),
        }
    }

    pub fn inv(&self, a: &Word) -> Word {
        match &self.strategy {
            Strategy::Free => a.inverse(),
            _ => self.canon(a.inverse().letters()),
        }
    }

    /// `a^-1 b`.
    pub fn ldiv(&self, a: &Word, b: &Word) -> Word {
        match &self.strategy {
            Strategy::Free => a.inverse().free_mul(b),
            _ => self.canon(a.inverse().concat(b).letters()),
        }
    }

    pub fn conj(&self, g: &Word, w: &Word) -> Word {
        // g^-1 w g
        self.mul3(&self.inv(g), w, g)
    }

    pub fn pow(&self, a: &Word, n: i64) -> Word {
        let mut base = if n < 0 { self.inv(a) } else { self.canon(a.letters()) };
        let mut out = Word::empty();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    pub fn mul_letter(&self, w: &Word, l: Letter) -> Word {
        match &self.strategy {
            Strategy::Free => {
                let mut out = w.clone();
                if out.0.last() == Some(&l.inv()) {
                    out.0.pop();
                } else {
                    out.push(l);
                }
                out
            }
            Strategy::Rewriting(r) => r.append(w, l),
            _ => {
                let mut x = w.clone();
                x.push(l);
                self.canon(x.letters())
            }
        }
    }

    /// For geodesic strategies: is `w l` canonical, given canonical `w`?
    pub fn extends_canonically(&self, w: &Word, l: Letter) -> bool {
        match &self.strategy {
            Strategy::Free => w.letters().last() != Some(&l.inv()),
            Strategy::Rewriting(r) => r.extends_irreducibly(w.letters(), l),
            _ => {
                let next = self.mul_letter(w, l);
                next.len() == w.len() + 1 && next.letters()[..w.len()] == *w.letters()
            }
        }
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.canon(w.letters()).is_empty()
    }

    pub fn word_equals(&self, u: &Word, v: &Word) -> bool {
        self.canon(u.letters()) == self.canon(v.letters())
    }

    /// Order of `w` if it is at most `bound`.
    pub fn order_up_to(&self, w: &Word, bound: usize) -> Option<usize> {
        let w = self.canon(w.letters());
        let mut acc = w.clone();
        for n in 1..=bound {
            if acc.is_empty() {
                return Some(n);
            }
            acc = self.mul(&acc, &w);
        }
        None
    }
}
