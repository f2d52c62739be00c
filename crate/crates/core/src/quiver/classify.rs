use serde::Serialize;

use super::{Path, Quiver};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchingVertex {
    pub vertex: usize,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverClass {
    pub is_tree: bool,
    pub is_linear: bool,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub branching: Vec<BranchingVertex>,
}

impl QuiverClass {
    /// A branching vertex that is a sink with several incoming arrows or a
    /// source with several outgoing arrows.
    pub fn branching_sink_or_source(&self) -> Option<BranchingVertex> {
        self.branching
            .iter()
            .copied()
            .find(|b| (b.out_degree == 0 && b.in_degree >= 2) || (b.in_degree == 0 && b.out_degree >= 2))
    }
}

/// Confirms the quiver is nonempty, connected and acyclic and classifies it.
pub fn validate(q: &Quiver) -> Result<QuiverClass> {
    let n = q.vertex_count();
    if n == 0 {
        return Err(Error::Empty);
    }
    let components = components(q);
    if components.len() > 1 {
        let named = components
            .iter()
            .map(|c| c.iter().map(|&v| q.vertex_name(v).to_string()).collect())
            .collect();
        return Err(Error::Disconnected(named));
    }
    if let Some(cycle) = find_cycle(q) {
        return Err(Error::Cycle(cycle.iter().map(|&v| q.vertex_name(v).to_string()).collect()));
    }
    // connected with n-1 edges is a tree; parallel arrows push the count up
    let is_tree = q.arrows().len() == n - 1;
    let branching: Vec<BranchingVertex> = (0..n)
        .filter(|&v| q.in_degree(v) >= 2 || q.out_degree(v) >= 2)
        .map(|v| BranchingVertex { vertex: v, in_degree: q.in_degree(v), out_degree: q.out_degree(v) })
        .collect();
    Ok(QuiverClass {
        is_tree,
        is_linear: is_tree && branching.is_empty(),
        sources: (0..n).filter(|&v| q.is_source(v)).collect(),
        sinks: (0..n).filter(|&v| q.is_sink(v)).collect(),
        branching,
    })
}

fn components(q: &Quiver) -> Vec<Vec<usize>> {
    let n = q.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = Vec::new();
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            let neighbours = q
                .out_arrows(v)
                .iter()
                .map(|&a| q.arrow(a).target)
                .chain(q.in_arrows(v).iter().map(|&a| q.arrow(a).source));
            for w in neighbours {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// A directed cycle as a closed vertex walk, if any.
fn find_cycle(q: &Quiver) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(q: &Quiver, v: usize, marks: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        marks[v] = Mark::Active;
        stack.push(v);
        for &a in q.out_arrows(v) {
            let w = q.arrow(a).target;
            match marks[w] {
                Mark::Active => {
                    let start = stack.iter().position(|&x| x == w).unwrap();
                    let mut cycle = stack[start..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                Mark::New => {
                    if let Some(c) = visit(q, w, marks, stack) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        stack.pop();
        marks[v] = Mark::Done;
        None
    }
    let mut marks = vec![Mark::New; q.vertex_count()];
    let mut stack = Vec::new();
    (0..q.vertex_count()).find_map(|v| {
        if marks[v] == Mark::New {
            visit(q, v, &mut marks, &mut stack)
        } else {
            None
        }
    })
}

/// Every directed path including trivial ones, ordered by source vertex,
/// then length, then arrow labels lexicographically. Requires an acyclic
/// quiver.
pub fn enumerate_paths(q: &Quiver) -> Vec<Path> {
    let mut all = Vec::new();
    for v in 0..q.vertex_count() {
        let mut from_v = vec![q.trivial_path(v)];
        let mut frontier = vec![q.trivial_path(v)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for &a in q.out_arrows(p.target) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { source: v, target: q.arrow(a).target, arrows });
                }
            }
            from_v.extend(next.iter().cloned());
            frontier = next;
        }
        from_v.sort_by(|x, y| {
            x.len().cmp(&y.len()).then_with(|| {
                let lx = x.arrows.iter().map(|&a| q.arrow(a).label.as_str());
                let ly = y.arrows.iter().map(|&a| q.arrow(a).label.as_str());
                lx.cmp(ly)
            })
        });
        all.extend(from_v);
    }
    all
}

/// All paths of maximal length.
pub fn longest_paths(q: &Quiver) -> Vec<Path> {
    let paths = enumerate_paths(q);
    let max = paths.iter().map(Path::len).max().unwrap_or(0);
    paths.into_iter().filter(|p| p.len() == max).collect()
}

/// The vertices of a linearly oriented quiver from its source to its sink.
pub fn linear_order(q: &Quiver) -> Option<Vec<usize>> {
    let class = validate(q).ok()?;
    if !class.is_linear {
        return None;
    }
    let mut order = vec![class.sources[0]];
    while let Some(&a) = q.out_arrows(*order.last().unwrap()).first() {
        order.push(q.arrow(a).target);
    }
    Some(order)
}
