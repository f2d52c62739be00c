//! Arms of a tree and the armless core obtained by cutting them back.
//!
//! A left arm runs linearly from a source to an immediate predecessor of a
//! branching vertex; a right arm runs from an immediate successor of a
//! branching vertex to a sink. The core keeps only the arm vertex adjacent to
//! the branching vertex, so every arm of the core is trivial while sources
//! and sinks stay in bijection with the original ones.

use serde::Serialize;

use super::{validate, Quiver, QuiverClass, RelationSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arm {
    /// In arrow order: source first for left arms, sink last for right arms.
    pub vertices: Vec<usize>,
    /// The branching vertex the arm attaches to.
    pub branching: usize,
}

impl Arm {
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArmDecomposition {
    pub left: Vec<Arm>,
    pub right: Vec<Arm>,
}

impl ArmDecomposition {
    pub fn without_arms(&self) -> bool {
        self.left.iter().chain(&self.right).all(Arm::is_trivial)
    }

    pub fn left_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.iter().flat_map(|a| a.vertices.iter().copied())
    }

    pub fn right_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.right.iter().flat_map(|a| a.vertices.iter().copied())
    }
}

fn require_branching_tree(q: &Quiver) -> Result<QuiverClass> {
    let class = validate(q)?;
    if !class.is_tree {
        return Err(Error::NotATree);
    }
    if class.is_linear {
        return Err(Error::LinearQuiver);
    }
    Ok(class)
}

pub fn arms(q: &Quiver) -> Result<ArmDecomposition> {
    let class = require_branching_tree(q)?;
    let branching = |v: usize| q.in_degree(v) >= 2 || q.out_degree(v) >= 2;

    let mut left = Vec::new();
    for &s in &class.sources {
        if branching(s) {
            continue;
        }
        let mut walk = vec![s];
        loop {
            let here = *walk.last().unwrap();
            // non-branching vertices on an arm have exactly one successor
            let next = q.arrow(q.out_arrows(here)[0]).target;
            if branching(next) {
                left.push(Arm { vertices: walk, branching: next });
                break;
            }
            walk.push(next);
        }
    }

    let mut right = Vec::new();
    for &t in &class.sinks {
        if branching(t) {
            continue;
        }
        let mut walk = vec![t];
        loop {
            let here = *walk.last().unwrap();
            let prev = q.arrow(q.in_arrows(here)[0]).source;
            if branching(prev) {
                walk.reverse();
                right.push(Arm { vertices: walk, branching: prev });
                break;
            }
            walk.push(prev);
        }
    }
    Ok(ArmDecomposition { left, right })
}

#[derive(Clone, Debug)]
pub struct CoreDerivation {
    pub quiver: Quiver,
    pub relations: RelationSet,
    /// Index in the core for every vertex of the original quiver that
    /// survives.
    pub vertex_map: Vec<Option<usize>>,
    /// Core vertices that are neither sources nor sinks of the core, as
    /// core indices.
    pub inner_vertices: Vec<usize>,
    pub arms: ArmDecomposition,
}

impl CoreDerivation {
    /// Inner vertices expressed as indices of the original quiver.
    pub fn inner_in_original(&self) -> Vec<usize> {
        self.vertex_map
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|c| self.inner_vertices.contains(c)).map(|_| v))
            .collect()
    }

    /// Whether the relations of the original set lying inside the core are
    /// exactly the core relations.
    pub fn relations_confined(&self, q: &Quiver, r: &RelationSet) -> bool {
        let inside: Vec<Vec<String>> = r
            .relations()
            .iter()
            .filter(|p| q.path_vertices(p).iter().all(|&v| self.vertex_map[v].is_some()))
            .map(|p| p.arrows.iter().map(|&a| q.arrow(a).label.clone()).collect())
            .collect();
        let core: Vec<Vec<String>> = self
            .relations
            .relations()
            .iter()
            .map(|p| p.arrows.iter().map(|&a| self.quiver.arrow(a).label.clone()).collect())
            .collect();
        inside.len() == core.len() && inside.iter().all(|p| core.contains(p))
    }
}

/// Cuts every non-trivial left arm back to its last vertex and every
/// non-trivial right arm back to its first, and keeps the relations lying
/// entirely in what remains. A tree without arms yields the identity.
pub fn derive_core(q: &Quiver, r: &RelationSet) -> Result<CoreDerivation> {
    let arms = arms(q)?;
    let mut keep = vec![true; q.vertex_count()];
    for arm in &arms.left {
        for &v in &arm.vertices[..arm.vertices.len() - 1] {
            keep[v] = false;
        }
    }
    for arm in &arms.right {
        for &v in &arm.vertices[1..] {
            keep[v] = false;
        }
    }
    let (core, vertex_map) = q.induced(&keep);
    let arrow_map: Vec<Option<usize>> = q
        .arrows()
        .iter()
        .map(|a| core.arrow_by_label(&a.label).ok())
        .collect();
    let relations = r.restrict(&core, &arrow_map);
    let inner_vertices = (0..core.vertex_count())
        .filter(|&v| !core.is_source(v) && !core.is_sink(v))
        .collect();
    Ok(CoreDerivation { quiver: core, relations, vertex_map, inner_vertices, arms })
}
