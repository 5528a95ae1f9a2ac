//! Three-valued answers certified at a finite radius.

use serde::Serialize;

use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    CertifiedTrue,
    CertifiedFalse,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub radius: usize,
    pub witness: Option<Word>,
}

impl Verdict {
    pub fn certified_true(radius: usize) -> Verdict {
        Verdict { kind: VerdictKind::CertifiedTrue, radius, witness: None }
    }

    pub fn certified_false(radius: usize, witness: Option<Word>) -> Verdict {
        Verdict { kind: VerdictKind::CertifiedFalse, radius, witness }
    }

    pub fn unresolved(radius: usize) -> Verdict {
        Verdict { kind: VerdictKind::Unresolved, radius, witness: None }
    }

    pub fn with_witness(mut self, w: Word) -> Verdict {
        self.witness = Some(w);
        self
    }

    pub fn is_true(&self) -> bool {
        self.kind == VerdictKind::CertifiedTrue
    }

    pub fn is_false(&self) -> bool {
        self.kind == VerdictKind::CertifiedFalse
    }

    pub fn is_unresolved(&self) -> bool {
        self.kind == VerdictKind::Unresolved
    }

    pub fn negate(mut self) -> Verdict {
        self.kind = match self.kind {
            VerdictKind::CertifiedTrue => VerdictKind::CertifiedFalse,
            VerdictKind::CertifiedFalse => VerdictKind::CertifiedTrue,
            VerdictKind::Unresolved => VerdictKind::Unresolved,
        };
        self
    }

    pub fn label(&self) -> &'static str {
        match self.kind {
            VerdictKind::CertifiedTrue => "CertifiedTrue",
            VerdictKind::CertifiedFalse => "CertifiedFalse",
            VerdictKind::Unresolved => "Unresolved",
        }
    }
}
