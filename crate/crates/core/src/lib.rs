//! Splittings of finitely generated groups, their standard almost-invariant
//! sets, crossing, and tree constructions from nested families.

pub mod bass_serre;
pub mod cayley;
pub mod crossing;
pub mod dunwoody;
pub mod error;
pub mod finite;
pub mod json;
pub mod morphism;
pub mod presentation;
pub mod rewriting;
pub mod splitting;
pub mod stallings;
pub mod subgroup;
pub mod suite;
pub mod surface;
pub mod verdict;
pub mod word;

pub use dunwoody::{AbstractTree, GraphOfGroups, Poset};
pub use error::{Error, Result};
pub use presentation::{Group, GroupPresentation, Strategy};
pub use splitting::{BaseSplitting, EdgeOrder, HalfSpace, NormalForm, Role, Splitting, SplittingKind, Transversal, Variant};
pub use subgroup::Subgroup;
pub use verdict::{Verdict, VerdictKind};
pub use word::{Alphabet, Letter, Word};
