//! Endomorphisms and automorphisms given by images of generators.

use crate::error::{Error, Result};
use crate::presentation::Group;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    images: Vec<Word>,
}

impl Endomorphism {
    pub fn identity(rank: usize) -> Endomorphism {
        Endomorphism { images: (0..rank).map(|g| Word::letter(Letter::gen(g))).collect() }
    }

    pub fn new(images: Vec<Word>) -> Endomorphism {
        Endomorphism { images }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, group: &Group, w: &Word) -> Word {
        let mut out = Word::empty();
        for &l in w.letters() {
            let img = &self.images[l.index()];
            if l.is_inverse() {
                out.0.extend(img.letters().iter().rev().map(|x| x.inv()));
            } else {
                out.0.extend_from_slice(img.letters());
            }
        }
        group.canon(out.letters())
    }

    /// `self` after `first`: `w -> self(first(w))`.
    pub fn after(&self, group: &Group, first: &Endomorphism) -> Endomorphism {
        Endomorphism { images: first.images.iter().map(|w| self.apply(group, w)).collect() }
    }
}

/// An automorphism together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub forward: Endomorphism,
    pub inverse: Endomorphism,
}

impl Automorphism {
    pub fn identity(rank: usize) -> Automorphism {
        Automorphism { forward: Endomorphism::identity(rank), inverse: Endomorphism::identity(rank) }
    }

    /// Checks that the two maps are mutually inverse on generators.
    pub fn new(group: &Group, forward: Endomorphism, inverse: Endomorphism) -> Result<Automorphism> {
        for g in 0..group.rank() {
            let x = Word::letter(Letter::gen(g));
            if forward.apply(group, &inverse.apply(group, &x)) != x
                || inverse.apply(group, &forward.apply(group, &x)) != x
            {
                return Err(Error::invalid("maps are not mutually inverse"));
            }
        }
        Ok(Automorphism { forward, inverse })
    }

    /// `self` after `first`.
    pub fn after(&self, group: &Group, first: &Automorphism) -> Automorphism {
        Automorphism {
            forward: self.forward.after(group, &first.forward),
            inverse: first.inverse.after(group, &self.inverse),
        }
    }

    pub fn inverted(&self) -> Automorphism {
        Automorphism { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }
}
