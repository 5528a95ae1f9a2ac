//! Shortlex string rewriting: Knuth–Bendix completion, confluence checking
//! and fast reduction to irreducible normal form.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct RewritingSystem {
    rank: usize,
    rules: Vec<(Word, Word)>,
    by_last: Vec<Vec<usize>>,
}

/// Limits for completion.
#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_lhs: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_rules: 4000, max_lhs: 40 }
    }
}

fn orient(a: Word, b: Word) -> Option<(Word, Word)> {
    match a.cmp(&b) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some((a, b)),
        std::cmp::Ordering::Less => Some((b, a)),
    }
}

fn free_rules(rank: usize) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for g in 0..rank {
        for l in [Letter::gen(g), Letter::gen_inv(g)] {
            out.push((Word::from_letters(&[l, l.inv()]), Word::empty()));
        }
    }
    out
}

fn contains_at(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl RewritingSystem {
    fn index(rank: usize, rules: Vec<(Word, Word)>) -> RewritingSystem {
        let mut by_last = vec![Vec::new(); rank * 2];
        for (i, (l, _)) in rules.iter().enumerate() {
            if let Some(last) = l.letters().last() {
                by_last[last.0 as usize].push(i);
            }
        }
        RewritingSystem { rank, rules, by_last }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rules(&self) -> &[(Word, Word)] {
        &self.rules
    }

    /// Accepts explicit rules (free cancellation rules are added), checks
    /// each is shortlex-decreasing and that the whole system is confluent.
    pub fn from_rules(rank: usize, rules: Vec<(Word, Word)>) -> Result<RewritingSystem> {
        let mut all = free_rules(rank);
        for (l, r) in rules {
            if l <= r {
                return Err(Error::invalid("rewriting rule is not shortlex-decreasing"));
            }
            if l.rank_bound() > rank || r.rank_bound() > rank {
                return Err(Error::UnknownSymbol("letter outside alphabet in rule".into()));
            }
            all.push((l, r));
        }
        let sys = RewritingSystem::index(rank, all);
        sys.check_confluence()?;
        Ok(sys)
    }

    /// Knuth–Bendix completion of `rank` generators subject to `relators`,
    /// followed by an independent confluence check.
    pub fn complete(rank: usize, relators: &[Word], limits: CompletionLimits) -> Result<RewritingSystem> {
        let mut rules = free_rules(rank);
        let mut sys = RewritingSystem::index(rank, rules.clone());
        for r in relators {
            let red = sys.reduce(r.letters());
            if let Some(rule) = orient(red, Word::empty()) {
                rules.push(rule);
                sys = RewritingSystem::index(rank, rules.clone());
            }
        }
        let mut seen: HashSet<(usize, usize, usize)> = HashSet::new();
        loop {
            rules = interreduce(rank, rules);
            sys = RewritingSystem::index(rank, rules.clone());
            seen.clear();
            let mut new_rules: Vec<(Word, Word)> = Vec::new();
            for i in 0..rules.len() {
                for j in 0..rules.len() {
                    let (li, ri) = &rules[i];
                    let (lj, rj) = &rules[j];
                    let max_k = li.len().min(lj.len());
                    for k in 1..max_k {
                        if li.letters()[li.len() - k..] != lj.letters()[..k] {
                            continue;
                        }
                        if !seen.insert((i, j, k)) {
                            continue;
                        }
                        // li = p s, lj = s q, overlap p s q.
                        let p = li.prefix(li.len() - k);
                        let q = lj.suffix_from(k);
                        let a = sys.reduce(ri.concat(&q).letters());
                        let b = sys.reduce(p.concat(rj).letters());
                        if let Some(rule) = orient(a, b) {
                            if rule.0.len() > limits.max_lhs {
                                return Err(Error::NotConfluent(format!(
                                    "completion produced a left side of length {}",
                                    rule.0.len()
                                )));
                            }
                            if !new_rules.contains(&rule) {
                                new_rules.push(rule);
                            }
                        }
                    }
                }
            }
            if new_rules.is_empty() {
                break;
            }
            rules.extend(new_rules);
            if rules.len() > limits.max_rules {
                return Err(Error::NotConfluent(format!(
                    "completion exceeded {} rules",
                    limits.max_rules
                )));
            }
        }
        sys.check_confluence()?;
        Ok(sys)
    }

    /// Every critical pair (overlap and inclusion) must be joinable.
    pub fn check_confluence(&self) -> Result<()> {
        for (i, (li, ri)) in self.rules.iter().enumerate() {
            for (j, (lj, rj)) in self.rules.iter().enumerate() {
                for k in 1..li.len().min(lj.len()) {
                    if li.letters()[li.len() - k..] != lj.letters()[..k] {
                        continue;
                    }
                    let p = li.prefix(li.len() - k);
                    let q = lj.suffix_from(k);
                    let a = self.reduce(ri.concat(&q).letters());
                    let b = self.reduce(p.concat(rj).letters());
                    if a != b {
                        return Err(Error::NotConfluent(format!("overlap of rules {} and {}", i, j)));
                    }
                }
                if i != j {
                    if let Some(pos) = contains_at(li.letters(), lj.letters()) {
                        let a = self.reduce(ri.letters());
                        let mut b = li.prefix(pos).concat(rj);
                        b = b.concat(&li.suffix_from(pos + lj.len()));
                        let b = self.reduce(b.letters());
                        if a != b {
                            return Err(Error::NotConfluent(format!(
                                "rule {} contains rule {}",
                                i, j
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Irreducible form. The input need not be reduced.
    pub fn reduce(&self, w: &[Letter]) -> Word {
        let mut out = Word::empty();
        let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
        while let Some(l) = pending.pop() {
            out.push(l);
            for &ri in &self.by_last[l.0 as usize] {
                let (lhs, rhs) = &self.rules[ri];
                let n = lhs.len();
                if n <= out.len() && out.letters()[out.len() - n..] == *lhs.letters() {
                    out.0.truncate(out.len() - n);
                    pending.extend(rhs.letters().iter().rev());
                    break;
                }
            }
        }
        out
    }

    /// Multiplies an irreducible word by one letter on the right.
    pub fn append(&self, w: &Word, l: Letter) -> Word {
        let mut out = w.clone();
        let mut pending = vec![l];
        while let Some(l) = pending.pop() {
            out.push(l);
            for &ri in &self.by_last[l.0 as usize] {
                let (lhs, rhs) = &self.rules[ri];
                let n = lhs.len();
                if n <= out.len() && out.letters()[out.len() - n..] == *lhs.letters() {
                    out.0.truncate(out.len() - n);
                    pending.extend(rhs.letters().iter().rev());
                    break;
                }
            }
        }
        out
    }

    /// True if `w` has no rule left side as a factor.
    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        for end in 1..=w.len() {
            let l = w[end - 1];
            for &ri in &self.by_last[l.0 as usize] {
                let lhs = &self.rules[ri].0;
                let n = lhs.len();
                if n <= end && w[end - n..end] == *lhs.letters() {
                    return false;
                }
            }
        }
        true
    }

    /// Does appending `l` to the irreducible word `w` keep it irreducible?
    pub fn extends_irreducibly(&self, w: &[Letter], l: Letter) -> bool {
        for &ri in &self.by_last[l.0 as usize] {
            let lhs = self.rules[ri].0.letters();
            let n = lhs.len();
            if n <= w.len() + 1 && w[w.len() + 1 - n..] == lhs[..n - 1] {
                return false;
            }
        }
        true
    }
}

fn interreduce(rank: usize, mut rules: Vec<(Word, Word)>) -> Vec<(Word, Word)> {
    rules.sort();
    rules.dedup();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < rules.len() {
            let others: Vec<(Word, Word)> =
                rules.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r.clone()).collect();
            let sys = RewritingSystem::index(rank, others);
            let (l, r) = rules[i].clone();
            let l2 = sys.reduce(l.letters());
            if l2 != l {
                rules.remove(i);
                let r2 = sys.reduce(r.letters());
                if let Some(rule) = orient(l2, r2) {
                    if !rules.contains(&rule) {
                        rules.push(rule);
                    }
                }
                changed = true;
                continue;
            }
            let r2 = sys.reduce(r.letters());
            if r2 != r {
                rules[i].1 = r2;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            return rules;
        }
    }
}
