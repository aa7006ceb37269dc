//! Index-set calculus: templates `(V, W, E)`, the doubling construction,
//! and the set-family operators used to pair seminorms with coordinate
//! algebras.
//!
//! An index is an opaque name plus an optional copy bit; doubling an index
//! `i` produces `i^0` and `i^1`. Keeping the copy bit explicit (rather than
//! minting fresh names) lets cube corners be iterated as integer counters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on template edge counts. Doubling multiplies the edge count
/// by up to 2^k per edge, so the cap is generous.
pub const DEFAULT_SIZE_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index {
    name: String,
    copy: Option<bool>,
}

impl Index {
    pub fn new(name: impl Into<String>) -> Self {
        Index {
            name: name.into(),
            copy: None,
        }
    }

    pub fn copy(&self, bit: bool) -> Self {
        Index {
            name: self.name.clone(),
            copy: Some(bit),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn copy_bit(&self) -> Option<bool> {
        self.copy
    }

    /// Base index with the copy bit stripped.
    pub fn base(&self) -> Index {
        Index {
            name: self.name.clone(),
            copy: None,
        }
    }

    /// Parses `name`, `name^0` or `name^1`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once('^') {
            None => {
                if s.is_empty() {
                    return Err(Error::Parse("empty index name".into()));
                }
                Ok(Index::new(s))
            }
            Some((name, bit)) => {
                if name.is_empty() {
                    return Err(Error::Parse(format!("bad index {s:?}")));
                }
                match bit {
                    "0" => Ok(Index::new(name).copy(false)),
                    "1" => Ok(Index::new(name).copy(true)),
                    _ => Err(Error::Parse(format!("bad copy bit in index {s:?}"))),
                }
            }
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.copy {
            None => write!(f, "{}", self.name),
            Some(false) => write!(f, "{}^0", self.name),
            Some(true) => write!(f, "{}^1", self.name),
        }
    }
}

pub type IndexSet = BTreeSet<Index>;
pub type Edge = BTreeSet<Index>;

pub fn index_set<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> IndexSet {
    names.into_iter().map(Index::new).collect()
}

fn fmt_set(s: &IndexSet) -> String {
    let names: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

/// A template `(V, W, E)`: free indices `V`, parameter indices `W`, and a
/// k-uniform edge set on `V ∪ W` declaring which index k-sets must land in
/// the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    k: usize,
    free: IndexSet,
    params: IndexSet,
    edges: BTreeSet<Edge>,
    bound: usize,
}

impl Template {
    pub fn new<E>(k: usize, free: IndexSet, params: IndexSet, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = Edge>,
    {
        Self::with_bound(k, free, params, edges, DEFAULT_SIZE_BOUND)
    }

    pub fn with_bound<E>(
        k: usize,
        free: IndexSet,
        params: IndexSet,
        edges: E,
        bound: usize,
    ) -> Result<Self>
    where
        E: IntoIterator<Item = Edge>,
    {
        if k == 0 {
            return Err(Error::InvalidArgument("uniformity k must be >= 1".into()));
        }
        if !free.is_disjoint(&params) {
            return Err(Error::IndexError(format!(
                "free and parameter indices overlap: {}",
                fmt_set(&free.intersection(&params).cloned().collect())
            )));
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != k {
                return Err(Error::IndexError(format!(
                    "edge {} has {} indices, expected {k}",
                    fmt_set(e),
                    e.len()
                )));
            }
            if !e.iter().all(|i| free.contains(i) || params.contains(i)) {
                return Err(Error::IndexError(format!(
                    "edge {} mentions indices outside V ∪ W",
                    fmt_set(e)
                )));
            }
        }
        if edges.len() > bound {
            return Err(Error::SizeBoundExceeded {
                got: edges.len(),
                bound,
            });
        }
        Ok(Template {
            k,
            free,
            params,
            edges,
            bound,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn free(&self) -> &IndexSet {
        &self.free
    }

    pub fn params(&self) -> &IndexSet {
        &self.params
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn size_bound(&self) -> usize {
        self.bound
    }

    /// Restricts the free set to `subset`, keeping only edges contained in
    /// `subset ∪ W`. This realizes the convention that an edge not inside
    /// the current vertex set is ignored.
    pub fn restrict(&self, subset: &IndexSet) -> Result<Template> {
        if !subset.is_subset(&self.free) {
            return Err(Error::NotSubsetOfFree(
                subset.iter().map(|i| i.to_string()).collect(),
            ));
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| {
                e.iter()
                    .all(|i| subset.contains(i) || self.params.contains(i))
            })
            .cloned()
            .collect::<Vec<_>>();
        Template::with_bound(self.k, subset.clone(), self.params.clone(), edges, self.bound)
    }

    /// Moves the free indices in `into_params` to the parameter set,
    /// keeping every edge. Used to form the inner measure of an iterated
    /// integral.
    pub fn fix(&self, into_params: &IndexSet) -> Result<Template> {
        if !into_params.is_subset(&self.free) {
            return Err(Error::NotSubsetOfFree(
                into_params.iter().map(|i| i.to_string()).collect(),
            ));
        }
        let free: IndexSet = self.free.difference(into_params).cloned().collect();
        let params: IndexSet = self.params.union(into_params).cloned().collect();
        Template::with_bound(self.k, free, params, self.edges.clone(), self.bound)
    }

    /// The doubling `E^{V+I}`: each index of `I` splits into copies `i^0`,
    /// `i^1`, and each edge `J` yields an edge `J^ω` for every
    /// `ω : J ∩ I → {0,1}`.
    pub fn double(&self, doubled: &IndexSet) -> Result<Template> {
        if !doubled.is_subset(&self.free) {
            return Err(Error::NotSubsetOfFree(
                doubled.iter().map(|i| i.to_string()).collect(),
            ));
        }
        if doubled.is_empty() {
            return Ok(self.clone());
        }
        if let Some(i) = doubled.iter().find(|i| i.copy_bit().is_some()) {
            return Err(Error::IndexError(format!("index {i} is already doubled")));
        }
        let mut free: IndexSet = self.free.difference(doubled).cloned().collect();
        for i in doubled {
            free.insert(i.copy(false));
            free.insert(i.copy(true));
        }
        let mut edges: Vec<Edge> = Vec::new();
        for e in &self.edges {
            let split: Vec<&Index> = e.iter().filter(|i| doubled.contains(*i)).collect();
            let kept: Edge = e
                .iter()
                .filter(|i| !doubled.contains(*i))
                .cloned()
                .collect();
            for omega in 0u32..(1 << split.len()) {
                let mut corner = kept.clone();
                for (pos, i) in split.iter().enumerate() {
                    corner.insert(i.copy(omega >> pos & 1 == 1));
                }
                edges.push(corner);
            }
        }
        Template::with_bound(self.k, free, self.params.clone(), edges, self.bound)
    }
}

/// A family of subsets of a ground index set (the paper-facing lattice
/// object backing `perp`, `minus`, and `wedge`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFamily {
    ground: IndexSet,
    members: BTreeSet<IndexSet>,
}

impl IndexFamily {
    pub fn new<M>(ground: IndexSet, members: M) -> Result<Self>
    where
        M: IntoIterator<Item = IndexSet>,
    {
        let members: BTreeSet<IndexSet> = members.into_iter().collect();
        for m in &members {
            if !m.is_subset(&ground) {
                return Err(Error::IndexError(format!(
                    "family member {} is not a subset of the ground set",
                    fmt_set(m)
                )));
            }
        }
        Ok(IndexFamily { ground, members })
    }

    pub fn ground(&self) -> &IndexSet {
        &self.ground
    }

    /// Members sorted by size, then lexicographically.
    pub fn members(&self) -> Vec<IndexSet> {
        let mut out: Vec<IndexSet> = self.members.iter().cloned().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn contains(&self, set: &IndexSet) -> bool {
        self.members.contains(set)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True when no member strictly contains another.
    pub fn is_antichain(&self) -> bool {
        self.members.iter().all(|a| {
            self.members
                .iter()
                .all(|b| a == b || !a.is_subset(b))
        })
    }

    fn subsets_of_ground(&self) -> Vec<IndexSet> {
        let ground: Vec<Index> = self.ground.iter().cloned().collect();
        (0u64..(1 << ground.len()))
            .map(|mask| {
                ground
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, idx)| idx.clone())
                    .collect()
            })
            .collect()
    }

    /// `F^⊥`: the minimal subsets of the ground set not covered by any
    /// member. Always an antichain. Requires a nonempty family.
    pub fn perp(&self) -> Result<IndexFamily> {
        if self.members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut out = BTreeSet::new();
        'cand: for j in self.subsets_of_ground() {
            if self.members.iter().any(|m| j.is_subset(m)) {
                continue;
            }
            // minimality: every facet (hence every proper subset) is covered
            for drop in &j {
                let mut smaller = j.clone();
                smaller.remove(drop);
                if !self.members.iter().any(|m| smaller.is_subset(m)) {
                    continue 'cand;
                }
            }
            out.insert(j);
        }
        Ok(IndexFamily {
            ground: self.ground.clone(),
            members: out,
        })
    }

    /// `J⁻ = {I ⊆ ground : J ⊄ I}`.
    pub fn minus(j: &IndexSet, ground: &IndexSet) -> Result<IndexFamily> {
        if !j.is_subset(ground) {
            return Err(Error::IndexError(format!(
                "{} is not a subset of the ground set",
                fmt_set(j)
            )));
        }
        let family = IndexFamily {
            ground: ground.clone(),
            members: BTreeSet::new(),
        };
        let members = family
            .subsets_of_ground()
            .into_iter()
            .filter(|i| !j.is_subset(i))
            .collect();
        Ok(IndexFamily {
            ground: ground.clone(),
            members,
        })
    }

    /// `F ∧ G`: all K contained in some `I ∩ J`, returned downward closed.
    pub fn wedge(&self, other: &IndexFamily) -> Result<IndexFamily> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        let mut intersections: BTreeSet<IndexSet> = BTreeSet::new();
        for i in &self.members {
            for j in &other.members {
                intersections.insert(i.intersection(j).cloned().collect());
            }
        }
        let seed = IndexFamily {
            ground: self.ground.clone(),
            members: intersections,
        };
        Ok(seed.downward_closure())
    }

    /// All subsets of members: `{J : ∃I ∈ F, J ⊆ I}`.
    pub fn downward_closure(&self) -> IndexFamily {
        let mut out: BTreeSet<IndexSet> = BTreeSet::new();
        for m in &self.members {
            let elems: Vec<Index> = m.iter().cloned().collect();
            for mask in 0u64..(1 << elems.len()) {
                out.insert(
                    elems
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, idx)| idx.clone())
                        .collect(),
                );
            }
        }
        IndexFamily {
            ground: self.ground.clone(),
            members: out,
        }
    }

    /// Maximal members only.
    pub fn antichain(&self) -> IndexFamily {
        let members = self
            .members
            .iter()
            .filter(|m| {
                !self
                    .members
                    .iter()
                    .any(|other| *m != other && m.is_subset(other))
            })
            .cloned()
            .collect();
        IndexFamily {
            ground: self.ground.clone(),
            members,
        }
    }

    /// The two canonical forms generating the same algebra: the downward
    /// closure and the antichain of maximal members.
    pub fn canonical_forms(&self) -> (IndexFamily, IndexFamily) {
        (self.downward_closure(), self.antichain())
    }
}

// -- template serialization ------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TemplateJson {
    k: usize,
    free: Vec<String>,
    params: Vec<String>,
    edges: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
}

impl Template {
    pub fn to_json(&self) -> String {
        let doc = TemplateJson {
            k: self.k,
            free: self.free.iter().map(|i| i.to_string()).collect(),
            params: self.params.iter().map(|i| i.to_string()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|i| i.to_string()).collect())
                .collect(),
            bound: (self.bound != DEFAULT_SIZE_BOUND).then_some(self.bound),
        };
        serde_json::to_string_pretty(&doc).expect("template serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Template> {
        let doc: TemplateJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let parse_set = |names: &[String]| -> Result<IndexSet> {
            let mut out = IndexSet::new();
            for s in names {
                let idx = Index::parse(s)?;
                if !out.insert(idx) {
                    return Err(Error::Parse(format!("duplicate index {s:?}")));
                }
            }
            Ok(out)
        };
        let free = parse_set(&doc.free)?;
        let params = parse_set(&doc.params)?;
        let mut edges = Vec::new();
        for e in &doc.edges {
            edges.push(e.iter().map(|s| Index::parse(s)).collect::<Result<Edge>>()?);
        }
        Template::with_bound(
            doc.k,
            free,
            params,
            edges,
            doc.bound.unwrap_or(DEFAULT_SIZE_BOUND),
        )
    }
}

/// A position map assigning each index a slot, shared by assignments and
/// the enumeration engine.
pub(crate) fn positions(set: &IndexSet) -> BTreeMap<Index, usize> {
    set.iter()
        .enumerate()
        .map(|(pos, idx)| (idx.clone(), pos))
        .collect()
}
