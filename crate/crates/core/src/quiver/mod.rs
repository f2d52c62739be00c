//! Quivers, paths and monomial relation sets.
//!
//! Vertices and arrows are addressed by their index in declaration order.
//! Paths are stored in traversal order: the first arrow of the vector is the
//! first arrow walked.

mod arms;
mod classify;
pub mod dsl;
pub mod family;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use arms::{arms, derive_core, Arm, ArmDecomposition, CoreDerivation};
pub use classify::{enumerate_paths, linear_order, longest_paths, validate, BranchingVertex, QuiverClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex names and `(label, source, target)`
    /// triples naming declared vertices. Connectivity and acyclicity are
    /// checked separately by [`validate`].
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        vertices: impl IntoIterator<Item = S>,
        arrows: impl IntoIterator<Item = (S, S, S)>,
    ) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(|v| v.as_ref().to_string()).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut built = Vec::new();
        let mut arrow_index = HashMap::new();
        for (label, s, t) in arrows {
            let label = label.as_ref().to_string();
            let lookup = |v: &str| {
                vertex_index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()))
            };
            let source = lookup(s.as_ref())?;
            let target = lookup(t.as_ref())?;
            if arrow_index.insert(label.clone(), built.len()).is_some() {
                return Err(Error::DuplicateArrow(label));
            }
            built.push(Arrow { label, source, target });
        }
        Ok(Self::assemble(name.into(), vertices, built, vertex_index, arrow_index))
    }

    fn assemble(
        name: String,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        vertex_index: HashMap<String, usize>,
        arrow_index: HashMap<String, usize>,
    ) -> Self {
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_arrows[a.source].push(i);
            in_arrows[a.target].push(i);
        }
        Self { name, vertices, arrows, vertex_index, arrow_index, out_arrows, in_arrows }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<usize> {
        self.arrow_index.get(label).copied().ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_arrows[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_arrows[v].len()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_arrows[v].is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_arrows[v].is_empty()
    }

    /// Full subquiver on the kept vertices, in their original order.
    /// Returns it with the map from old to new vertex indices.
    pub fn induced(&self, keep: &[bool]) -> (Quiver, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertices.len()];
        let mut vertices = Vec::new();
        for (v, name) in self.vertices.iter().enumerate() {
            if keep[v] {
                map[v] = Some(vertices.len());
                vertices.push(name.as_str());
            }
        }
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .filter(|a| keep[a.source] && keep[a.target])
            .map(|a| (a.label.as_str(), self.vertex_name(a.source), self.vertex_name(a.target)))
            .collect();
        let q = Quiver::new(self.name.clone(), vertices, arrows).expect("subquiver of a valid quiver");
        (q, map)
    }

    pub fn trivial_path(&self, v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    /// Checks composability of an arrow sequence and turns it into a path.
    pub fn path(&self, arrows: Vec<usize>) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::RelationTooShort(String::new()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NonComposable {
                    relation: self.labels(&arrows),
                    first: self.arrows[w[0]].label.clone(),
                    second: self.arrows[w[1]].label.clone(),
                });
            }
        }
        let source = self.arrows[first].source;
        let target = self.arrows[*arrows.last().unwrap()].target;
        Ok(Path { source, target, arrows })
    }

    pub fn path_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Path> {
        let arrows = labels
            .iter()
            .map(|l| self.arrow_by_label(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.path(arrows)
    }

    fn labels(&self, arrows: &[usize]) -> String {
        let ls: Vec<&str> = arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect();
        format!("[{}]", ls.join(","))
    }

    /// Vertex sequence of a path, e.g. `2→3→5`, or the vertex itself for a
    /// trivial path.
    pub fn display_path(&self, p: &Path) -> String {
        let mut s = self.vertex_name(p.source).to_string();
        for &a in &p.arrows {
            s.push('→');
            s.push_str(self.vertex_name(self.arrows[a].target));
        }
        s
    }

    /// Arrow-label form, e.g. `[a,b,g]`.
    pub fn display_labels(&self, p: &Path) -> String {
        self.labels(&p.arrows)
    }

    /// Vertices visited by a path, in order.
    pub fn path_vertices(&self, p: &Path) -> Vec<usize> {
        std::iter::once(p.source).chain(p.arrows.iter().map(|&a| self.arrows[a].target)).collect()
    }
}

/// A path in traversal order. A trivial path has no arrows and equal
/// source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Whether `other` occurs as a contiguous run of arrows inside `self`.
    /// Trivial paths are contained only at vertices the path visits, which
    /// callers never need; they return false here.
    pub fn contains(&self, other: &Path) -> bool {
        !other.arrows.is_empty()
            && other.arrows.len() <= self.arrows.len()
            && self.arrows.windows(other.arrows.len()).any(|w| w == other.arrows.as_slice())
    }
}

/// Monomial zero relations, normalized so that no relation contains another
/// as a contiguous subpath.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    relations: Vec<Path>,
}

impl RelationSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates each arrow sequence and normalizes: duplicates and
    /// relations containing a shorter relation are dropped, survivors keep
    /// their input order.
    pub fn new(q: &Quiver, relations: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut paths = Vec::new();
        for arrows in relations {
            if arrows.len() < 2 {
                return Err(Error::RelationTooShort(q.labels(&arrows)));
            }
            paths.push(q.path(arrows)?);
        }
        Ok(Self::normalized(paths))
    }

    pub fn from_labels<S: AsRef<str>>(q: &Quiver, relations: &[Vec<S>]) -> Result<Self> {
        let mut seqs = Vec::new();
        for rel in relations {
            let arrows = rel
                .iter()
                .map(|l| q.arrow_by_label(l.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            seqs.push(arrows);
        }
        Self::new(q, seqs)
    }

    fn normalized(paths: Vec<Path>) -> Self {
        let mut kept: Vec<Path> = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            if kept.contains(p) {
                continue;
            }
            let subsumed = paths.iter().enumerate().any(|(j, other)| {
                j != i && other != p && p.contains(other)
            });
            if !subsumed {
                kept.push(p.clone());
            }
        }
        Self { relations: kept }
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Relation sources, sorted and deduplicated.
    pub fn sources(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.relations.iter().map(|r| r.source).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Relation targets, sorted and deduplicated.
    pub fn targets(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.relations.iter().map(|r| r.target).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// Vertices that are neither source nor target of any relation.
    pub fn free_vertices(&self, q: &Quiver) -> Vec<usize> {
        (0..q.vertex_count())
            .filter(|v| self.relations.iter().all(|r| r.source != *v && r.target != *v))
            .collect()
    }

    /// Whether a path has some relation as a contiguous subpath.
    pub fn kills(&self, p: &Path) -> bool {
        self.relations.iter().any(|r| p.contains(r))
    }

    /// Relations whose arrows all survive in `map` (old arrow index to new),
    /// re-indexed into the target quiver.
    pub fn restrict(&self, target: &Quiver, arrow_map: &[Option<usize>]) -> RelationSet {
        let paths = self
            .relations
            .iter()
            .filter_map(|r| {
                let arrows: Option<Vec<usize>> = r.arrows.iter().map(|&a| arrow_map[a]).collect();
                arrows.map(|a| target.path(a).expect("restricted relation stays composable"))
            })
            .collect();
        Self::normalized(paths)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.source, self.arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new("a3", ["1", "2", "3"], [("x", "1", "2"), ("y", "2", "3")]).unwrap()
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        assert_eq!(
            Quiver::new("q", ["1", "1"], Vec::<(&str, &str, &str)>::new()).unwrap_err(),
            Error::DuplicateVertex("1".into())
        );
        assert_eq!(
            Quiver::new("q", ["1", "2"], [("a", "1", "2"), ("a", "2", "1")]).unwrap_err(),
            Error::DuplicateArrow("a".into())
        );
        assert_eq!(
            Quiver::new("q", ["1"], [("a", "1", "9")]).unwrap_err(),
            Error::UnknownVertex("9".into())
        );
    }

    #[test]
    fn relation_validation() {
        let q = a3();
        assert!(matches!(
            RelationSet::from_labels(&q, &[vec!["x"]]),
            Err(Error::RelationTooShort(_))
        ));
        assert!(matches!(
            RelationSet::from_labels(&q, &[vec!["y", "x"]]),
            Err(Error::NonComposable { .. })
        ));
        let r = RelationSet::from_labels(&q, &[vec!["x", "y"]]).unwrap();
        assert_eq!(r.sources(), vec![0]);
        assert_eq!(r.targets(), vec![2]);
    }

    #[test]
    fn normalization_drops_subsumed() {
        let q = Quiver::new(
            "a4",
            ["1", "2", "3", "4"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        let r = RelationSet::from_labels(
            &q,
            &[vec!["a", "b", "c"], vec!["b", "c"], vec!["b", "c"]],
        )
        .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(q.display_labels(&r.relations()[0]), "[b,c]");
        assert_eq!(r.free_vertices(&q), vec![0, 2]);
    }
}
