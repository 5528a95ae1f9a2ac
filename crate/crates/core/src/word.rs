//! Letters, words and the alphabet they are spelled in.
//!
//! A letter packs a generator index and an inverse bit into one byte, so the
//! natural order on letters is `x < x' < y < y' < ...`. [`Word`] orders by
//! shortlex with respect to that letter order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(pub u8);

impl Letter {
    pub fn gen(g: usize) -> Letter {
        Letter((g as u8) << 1)
    }

    pub fn gen_inv(g: usize) -> Letter {
        Letter(((g as u8) << 1) | 1)
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inv(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.index(), if self.is_inverse() { "'" } else { "" })
    }
}

/// A finite sequence of letters. Not necessarily reduced.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub SmallVec<[Letter; 16]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: Letter) -> Word {
        let mut w = Word::empty();
        w.0.push(l);
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Formal inverse: reverse and invert every letter.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Formal concatenation, no reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.0.extend_from_slice(&other.0);
        out
    }

    /// Free reduction, cancelling adjacent inverse pairs.
    pub fn free_reduce(&self) -> Word {
        free_reduce_letters(&self.0)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// Free product of two freely reduced words, cancelling only at the seam.
    pub fn free_mul(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for &l in other.0.iter() {
            if out.0.last() == Some(&l.inv()) {
                out.0.pop();
            } else {
                out.0.push(l);
            }
        }
        out
    }

    /// `w^n` for a freely reduced word, freely reduced.
    pub fn free_pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.free_mul(&base);
        }
        out
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_letters(&self.0[..n])
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word::from_letters(&self.0[n..])
    }

    /// Splits a freely reduced word as `p c p^-1` with `c` cyclically reduced.
    pub fn cyclic_split(&self) -> (Word, Word) {
        let l = self.letters();
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inv() {
            k += 1;
        }
        (self.prefix(k), Word::from_letters(&l[k..l.len() - k]))
    }

    /// For freely reduced `self = u^n`, returns `n`.
    pub fn free_log(&self, u: &Word) -> Option<i64> {
        if u.is_empty() {
            return if self.is_empty() { Some(0) } else { None };
        }
        let (p, c) = u.cyclic_split();
        if self.len() < 2 * p.len() || (self.len() - 2 * p.len()) % c.len() != 0 {
            return None;
        }
        let m = ((self.len() - 2 * p.len()) / c.len()) as i64;
        for n in [m, -m] {
            if u.free_pow(n) == *self {
                return Some(n);
            }
        }
        None
    }

    /// Largest generator index used, plus one.
    pub fn rank_bound(&self) -> usize {
        self.0.iter().map(|l| l.index() + 1).max().unwrap_or(0)
    }
}

pub fn free_reduce_letters(letters: &[Letter]) -> Word {
    let mut out: SmallVec<[Letter; 16]> = SmallVec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:?}", l)?;
        }
        write!(f, "]")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Generator names. Words print as whitespace-separated symbols with a
/// trailing `'` marking an inverse, and the identity prints as `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > 127 {
            return Err(Error::invalid("at most 127 generators are supported"));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n == "e" || n.contains('\'') || n.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("bad generator name {:?}", n)));
            }
            if names[..i].contains(n) {
                return Err(Error::invalid(format!("duplicate generator {:?}", n)));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// All `2 * rank` letters in letter order.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.names.len() * 2).map(|i| Letter(i as u8)).collect()
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parse_letter(&self, sym: &str) -> Result<Letter> {
        let (base, inv) = match sym.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (sym, false),
        };
        let g = self.lookup(base).ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
        Ok(if inv { Letter::gen_inv(g) } else { Letter::gen(g) })
    }

    /// Parses `"a b' a"`. The symbol `e` and the empty string denote the identity.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut w = Word::empty();
        for sym in text.split_whitespace() {
            if sym == "e" {
                continue;
            }
            w.push(self.parse_letter(sym)?);
        }
        Ok(w)
    }

    pub fn format_letter(&self, l: Letter) -> String {
        let name = &self.names[l.index()];
        if l.is_inverse() {
            format!("{}'", name)
        } else {
            name.clone()
        }
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        w.letters().iter().map(|&l| self.format_letter(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.index() >= self.rank()) {
            Some(l) => Err(Error::UnknownSymbol(format!("{:?}", l))),
            None => Ok(()),
        }
    }
}
