//! File formats: group presentations, splittings and posets. Unknown keys
//! are rejected everywhere. Words are whitespace-separated generator names,
//! with a trailing `'` for inverses.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dunwoody::Poset;
use crate::error::{Error, Result};
use crate::morphism::{Automorphism, Endomorphism};
use crate::presentation::{Group, GroupPresentation};
use crate::splitting::{BaseSplitting, Role, Splitting, Transversal};
use crate::subgroup::Subgroup;
use crate::word::Word;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    Free,
    Rewriting,
    Finite,
    FreeAmalgam,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmalgamSpec {
    /// Side (0 or 1) of each generator.
    pub side: Vec<u8>,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<String>,
    pub strategy: StrategyName,
    #[serde(default)]
    pub relators: Vec<String>,
    /// Named subgroups, each by generating words.
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<String>>,
    /// Explicit rewriting rules; completion is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<(String, String)>>,
    /// Multiplication table over element indices, identity first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_elements: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amalgam: Option<AmalgamSpec>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("{}: {}", what, e)))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {}", path.display(), e)))
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<PresentationFile> {
        parse_json(text, "presentation")
    }

    pub fn load(path: &Path) -> Result<PresentationFile> {
        PresentationFile::parse(&read(path)?)
    }

    pub fn build(&self) -> Result<Group> {
        let name = if self.name.is_empty() { "G" } else { &self.name };
        let rels: Vec<&str> = self.relators.iter().map(|s| s.as_str()).collect();
        let p = match self.strategy {
            StrategyName::Free => {
                if !rels.is_empty() {
                    return Err(Error::invalid("a free presentation has no relators"));
                }
                GroupPresentation::free(name, &self.generators)?
            }
            StrategyName::Rewriting => match &self.rules {
                Some(rules) => {
                    let rules: Vec<(&str, &str)> = rules.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
                    GroupPresentation::rewriting_with_rules(name, &self.generators, &rels, &rules)?
                }
                None => GroupPresentation::rewriting(name, &self.generators, &rels)?,
            },
            StrategyName::Finite => {
                let table = self.table.clone().ok_or_else(|| Error::invalid("finite strategy needs a table"))?;
                let gens = self
                    .generator_elements
                    .clone()
                    .ok_or_else(|| Error::invalid("finite strategy needs generator_elements"))?;
                GroupPresentation::finite(name, &self.generators, table, gens)?
            }
            StrategyName::FreeAmalgam => {
                let a = self.amalgam.as_ref().ok_or_else(|| Error::invalid("free_amalgam strategy needs amalgam"))?;
                GroupPresentation::free_amalgam(name, &self.generators, a.side.clone(), &a.u, &a.v)?
            }
        };
        Ok(Arc::new(p))
    }

    pub fn subgroup(&self, group: &Group, name: &str) -> Result<Subgroup> {
        subgroup_from_spec(group, &self.subgroups, name)
    }
}

/// A subgroup by name from `named`, or `trivial`, or a `;`-separated list of
/// generating words.
pub fn subgroup_from_spec(group: &Group, named: &BTreeMap<String, Vec<String>>, spec: &str) -> Result<Subgroup> {
    if spec == "trivial" {
        return Ok(Subgroup::trivial(group));
    }
    let gens: Vec<String> = match named.get(spec) {
        Some(g) => g.clone(),
        None => spec.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
    };
    let words = gens.iter().map(|s| group.parse(s)).collect::<Result<Vec<Word>>>()?;
    Subgroup::generated(group, &words)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(Box<PresentationFile>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TransversalSpec {
    Named(String),
    Explicit { first: Vec<String>, second: Vec<String> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub images: Vec<String>,
    pub inverse: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Amalgam,
    Hnn,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SplittingFile {
    #[serde(default)]
    pub name: String,
    /// Inline presentation, or a path relative to the splitting file.
    pub group: GroupRef,
    pub kind: KindName,
    /// Generator names of each vertex group: two lists for an amalgam, one
    /// for an HNN extension.
    pub vertex_groups: Vec<Vec<String>>,
    pub edge_subgroup: Vec<String>,
    /// HNN only: generators of `t^-1 H t`; computed from the stable letter
    /// when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_subgroup_image: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_letter: Option<String>,
    #[serde(default = "shortlex")]
    pub transversal: TransversalSpec,
    /// Applied after construction, in this order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<AutomorphismSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugate_by: Option<String>,
    #[serde(default)]
    pub swap: bool,
}

fn shortlex() -> TransversalSpec {
    TransversalSpec::Named("shortlex".into())
}

impl SplittingFile {
    pub fn parse(text: &str) -> Result<SplittingFile> {
        parse_json(text, "splitting")
    }

    pub fn load(path: &Path) -> Result<(SplittingFile, PathBuf)> {
        let dir = path.parent().map(|p| p.to_path_buf()).unwrap_or_default();
        Ok((SplittingFile::parse(&read(path)?)?, dir))
    }

    pub fn group(&self, dir: &Path) -> Result<Group> {
        match &self.group {
            GroupRef::Inline(p) => p.build(),
            GroupRef::Path(p) => PresentationFile::load(&dir.join(p))?.build(),
        }
    }

    pub fn build(&self, dir: &Path) -> Result<Splitting> {
        let g = self.group(dir)?;
        self.build_in(&g)
    }

    /// Builds against an already loaded group with the same generators.
    pub fn build_in(&self, g: &Group) -> Result<Splitting> {
        let words = |list: &[String]| list.iter().map(|s| g.parse(s)).collect::<Result<Vec<Word>>>();
        let lookup = |name: &str| {
            g.alphabet().lookup(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
        };
        let mut roles: Vec<Option<Role>> = vec![None; g.rank()];
        let mut assign = |gen: usize, r: Role| -> Result<()> {
            if roles[gen].is_some() {
                return Err(Error::InvalidSplitting(format!("generator {} has two roles", g.alphabet().names()[gen])));
            }
            roles[gen] = Some(r);
            Ok(())
        };
        let transversal = match &self.transversal {
            TransversalSpec::Named(s) if s == "shortlex" => Transversal::Shortlex,
            TransversalSpec::Named(s) => return Err(Error::invalid(format!("unknown transversal {:?}", s))),
            TransversalSpec::Explicit { first, second } => {
                Transversal::Explicit { first: words(first)?, second: words(second)? }
            }
        };
        let h = Subgroup::generated(g, &words(&self.edge_subgroup)?)?;
        let base = match self.kind {
            KindName::Amalgam => {
                if self.vertex_groups.len() != 2 || self.stable_letter.is_some() {
                    return Err(Error::InvalidSplitting("an amalgam has two vertex groups and no stable letter".into()));
                }
                for (side, r) in [(0, Role::A), (1, Role::B)] {
                    for name in &self.vertex_groups[side] {
                        assign(lookup(name)?, r)?;
                    }
                }
                let roles = collect_roles(g, roles)?;
                BaseSplitting::amalgam(g, roles, h, transversal)?
            }
            KindName::Hnn => {
                if self.vertex_groups.len() != 1 {
                    return Err(Error::InvalidSplitting("an HNN extension has one vertex group".into()));
                }
                let t = self
                    .stable_letter
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSplitting("an HNN extension needs a stable letter".into()))?;
                let tg = lookup(t)?;
                assign(tg, Role::Stable)?;
                for name in &self.vertex_groups[0] {
                    assign(lookup(name)?, Role::A)?;
                }
                let roles = collect_roles(g, roles)?;
                let h1 = match &self.edge_subgroup_image {
                    Some(list) => Subgroup::generated(g, &words(list)?)?,
                    None => {
                        let tw = Word::letter(crate::word::Letter::gen(tg));
                        let conj: Vec<Word> = h.gens().iter().map(|x| g.conj(&tw, x)).collect();
                        Subgroup::generated(g, &conj)?
                    }
                };
                BaseSplitting::hnn(g, roles, h, h1, transversal)?
            }
        };
        let name = if self.name.is_empty() { "splitting" } else { &self.name };
        let mut s = Splitting::from_base(name, base);
        if self.swap {
            s = s.swapped()?;
        }
        if let Some(a) = &self.automorphism {
            let phi = Automorphism::new(g, Endomorphism::new(words(&a.images)?), Endomorphism::new(words(&a.inverse)?))?;
            s = s.apply_automorphism(&phi, name)?;
        }
        if let Some(c) = &self.conjugate_by {
            s = s.conjugate(&g.parse(c)?)?;
            s.name = name.to_string();
        }
        Ok(s)
    }
}

fn collect_roles(g: &Group, roles: Vec<Option<Role>>) -> Result<Vec<Role>> {
    roles
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.ok_or_else(|| Error::InvalidSplitting(format!("generator {} has no role", g.alphabet().names()[i])))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    /// Pairs `[e, ē]`; every element appears in exactly one pair.
    pub involution: Vec<(String, String)>,
    /// Pairs `[e, f]` meaning `e <= f`; reflexive pairs may be omitted.
    pub order: Vec<(String, String)>,
}

impl PosetFile {
    pub fn parse(text: &str) -> Result<PosetFile> {
        parse_json(text, "poset")
    }

    pub fn load(path: &Path) -> Result<PosetFile> {
        PosetFile::parse(&read(path)?)
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let index: BTreeMap<&str, usize> = self.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != self.elements.len() {
            return Err(Error::invalid("duplicate element names"));
        }
        let get = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownSymbol(s.to_string()));
        let mut inv = vec![usize::MAX; self.elements.len()];
        for (a, b) in &self.involution {
            let (i, j) = (get(a)?, get(b)?);
            if inv[i] != usize::MAX || inv[j] != usize::MAX {
                return Err(Error::invalid(format!("{} or {} is paired twice", a, b)));
            }
            inv[i] = j;
            inv[j] = i;
        }
        if let Some(i) = inv.iter().position(|&x| x == usize::MAX) {
            return Err(Error::invalid(format!("{} has no involute", self.elements[i])));
        }
        let pairs = self.order.iter().map(|(a, b)| Ok((get(a)?, get(b)?))).collect::<Result<Vec<_>>>()?;
        Poset::from_pairs(self.elements.clone(), inv, &pairs)
    }

    pub fn from_poset(p: &Poset) -> PosetFile {
        let l = p.labels();
        let involution = (0..p.len()).filter(|&e| e < p.inv(e)).map(|e| (l[e].clone(), l[p.inv(e)].clone())).collect();
        let order = p.strict_pairs().into_iter().map(|(e, f)| (l[e].clone(), l[f].clone())).collect();
        PosetFile { elements: l.to_vec(), involution, order }
    }
}
