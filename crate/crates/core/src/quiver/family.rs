//! Generators for the quiver and relation families used in sweeps: linear
//! quivers and their quotients, random trees, random relation sets and the
//! exhaustive list of small connected acyclic quivers.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{enumerate_paths, linear_order, validate, Path, Quiver, RelationSet};
use crate::error::{Error, Result};

/// A relation on a linear quiver written as `(first vertex, length)` with
/// vertices numbered from 1.
pub type Segment = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Linear { n: usize },
    /// All paths of length `m` in the linear quiver on `n` vertices.
    Truncated { n: usize, m: usize },
    /// Pairwise arrow-disjoint segments.
    Disjoint { n: usize, relations: Vec<Segment> },
    /// Segments whose lengths strictly increase, or strictly decrease, with
    /// their first vertex.
    Monotone { n: usize, relations: Vec<Segment> },
    RandomDisjoint { n: usize, seed: u64 },
    RandomMonotone { n: usize, seed: u64 },
    RandomTree { vertices: usize, relations: usize, seed: u64 },
    RandomRelations { n: usize, count: usize, seed: u64, anchored: bool },
}

pub fn generate_family(spec: &FamilySpec) -> Result<(Quiver, RelationSet)> {
    match *spec {
        FamilySpec::Linear { n } => Ok((linear(n)?, RelationSet::empty())),
        FamilySpec::Truncated { n, m } => truncated(n, m),
        FamilySpec::Disjoint { n, ref relations } => disjoint(n, relations),
        FamilySpec::Monotone { n, ref relations } => monotone(n, relations),
        FamilySpec::RandomDisjoint { n, seed } => random_disjoint(n, seed),
        FamilySpec::RandomMonotone { n, seed } => random_monotone(n, seed),
        FamilySpec::RandomTree { vertices, relations, seed } => {
            let q = random_tree(vertices, seed)?;
            let r = if relations == 0 {
                RelationSet::empty()
            } else {
                random_relations(&q, relations, seed, RelationConstraints::default())?
            };
            Ok((q, r))
        }
        FamilySpec::RandomRelations { n, count, seed, anchored } => {
            let q = linear(n)?;
            let r = random_relations(&q, count, seed, RelationConstraints { anchored, ..Default::default() })?;
            Ok((q.with_name(format!("random_relations_{n}_{count}_{seed}")), r))
        }
    }
}

/// `1 -> 2 -> ... -> n` with arrows `a1 .. a(n-1)`.
pub fn linear(n: usize) -> Result<Quiver> {
    if n == 0 {
        return Err(Error::InfeasibleFamily("linear quiver needs n >= 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
        .collect();
    Ok(Quiver::new(format!("linear_{n}"), names.iter(), arrows.iter().map(|(l, s, t)| (l, s, t)))
        .expect("linear quiver is well formed"))
}

fn segment_path(n: usize, (start, len): Segment) -> Result<Vec<usize>> {
    if len < 2 || start == 0 || start + len > n {
        return Err(Error::InfeasibleFamily(format!(
            "segment ({start}, {len}) does not fit a linear quiver on {n} vertices with length >= 2"
        )));
    }
    // arrow a_i has index i - 1
    Ok((start - 1..start - 1 + len).collect())
}

fn linear_with_segments(n: usize, name: String, segments: &[Segment]) -> Result<(Quiver, RelationSet)> {
    let q = linear(n)?.with_name(name);
    let seqs = segments.iter().map(|&s| segment_path(n, s)).collect::<Result<Vec<_>>>()?;
    let r = RelationSet::new(&q, seqs)?;
    if r.len() != segments.len() {
        return Err(Error::InfeasibleFamily("some relations are redundant".into()));
    }
    Ok((q, r))
}

pub fn truncated(n: usize, m: usize) -> Result<(Quiver, RelationSet)> {
    if m < 2 || m + 1 > n {
        return Err(Error::InfeasibleFamily(format!("truncated({n}, {m}) needs 2 <= m <= n - 1")));
    }
    let segments: Vec<Segment> = (1..=n - m).map(|s| (s, m)).collect();
    linear_with_segments(n, format!("truncated_{n}_{m}"), &segments)
}

pub fn disjoint(n: usize, segments: &[Segment]) -> Result<(Quiver, RelationSet)> {
    let mut used = HashSet::new();
    for &s in segments {
        for a in segment_path(n, s)? {
            if !used.insert(a) {
                return Err(Error::InfeasibleFamily(format!("segments share arrow a{}", a + 1)));
            }
        }
    }
    linear_with_segments(n, format!("disjoint_{n}"), segments)
}

pub fn monotone(n: usize, segments: &[Segment]) -> Result<(Quiver, RelationSet)> {
    let mut sorted = segments.to_vec();
    sorted.sort_unstable();
    let starts_distinct = sorted.windows(2).all(|w| w[0].0 < w[1].0);
    let increasing = sorted.windows(2).all(|w| w[0].1 < w[1].1);
    let decreasing = sorted.windows(2).all(|w| w[0].1 > w[1].1);
    if !starts_distinct || !(increasing || decreasing) {
        return Err(Error::InfeasibleFamily("relation lengths are not strictly monotone".into()));
    }
    linear_with_segments(n, format!("monotone_{n}"), &sorted)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_disjoint(n: usize, seed: u64) -> Result<(Quiver, RelationSet)> {
    if n < 3 {
        return Err(Error::InfeasibleFamily("disjoint relations need n >= 3".into()));
    }
    let mut rng = rng(seed);
    let mut segments = Vec::new();
    let mut start = rng.gen_range(1..=2.min(n - 2));
    while start + 2 <= n {
        let max_len = (n - start).min(4);
        let len = rng.gen_range(2..=max_len);
        segments.push((start, len));
        start += len + rng.gen_range(0..=1);
    }
    linear_with_segments(n, format!("random_disjoint_{n}_{seed}"), &segments)
}

pub fn random_monotone(n: usize, seed: u64) -> Result<(Quiver, RelationSet)> {
    if n < 4 {
        return Err(Error::InfeasibleFamily("monotone relations need n >= 4".into()));
    }
    let mut rng = rng(seed);
    for _ in 0..1000 {
        let count = rng.gen_range(2..=((n - 1) / 2).max(2));
        let mut starts: Vec<usize> = (1..=n - 2).collect();
        starts.shuffle(&mut rng);
        let mut starts: Vec<usize> = starts.into_iter().take(count).collect();
        starts.sort_unstable();
        let mut lens: Vec<usize> = (0..count).map(|_| rng.gen_range(2..=n - 1)).collect();
        lens.sort_unstable();
        if rng.gen_bool(0.5) {
            lens.reverse();
        }
        let segments: Vec<Segment> = starts.into_iter().zip(lens).collect();
        if let Ok(found) = monotone(n, &segments) {
            return Ok((found.0.with_name(format!("random_monotone_{n}_{seed}")), found.1));
        }
    }
    Err(Error::InfeasibleFamily(format!("no monotone relation set found for n = {n}")))
}

/// Uniformly random labelled tree (Prüfer code) with independently random
/// arrow orientations. Vertices are `1..=v`, arrows `a1..`.
pub fn random_tree(v: usize, seed: u64) -> Result<Quiver> {
    if v == 0 {
        return Err(Error::InfeasibleFamily("tree needs at least one vertex".into()));
    }
    let mut rng = rng(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if v == 2 {
        edges.push((0, 1));
    } else if v > 2 {
        let code: Vec<usize> = (0..v - 2).map(|_| rng.gen_range(0..v)).collect();
        let mut degree = vec![1usize; v];
        for &c in &code {
            degree[c] += 1;
        }
        for &c in &code {
            let leaf = (0..v).find(|&x| degree[x] == 1).unwrap();
            edges.push((leaf, c));
            degree[leaf] -= 1;
            degree[c] -= 1;
        }
        let rest: Vec<usize> = (0..v).filter(|&x| degree[x] == 1).collect();
        edges.push((rest[0], rest[1]));
    }
    let oriented: Vec<(usize, usize)> = edges
        .into_iter()
        .map(|(a, b)| if rng.gen_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    Ok(from_edges(format!("random_tree_{v}_{seed}"), v, &oriented))
}

/// Random connected acyclic quiver: a random tree plus `extra` arrows, all
/// oriented along a random vertex order so no cycle can appear.
pub fn random_connected_dag(v: usize, extra: usize, seed: u64) -> Result<Quiver> {
    let tree = random_tree(v, seed)?;
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut order: Vec<usize> = (0..v).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0; v];
    for (i, &x) in order.iter().enumerate() {
        rank[x] = i;
    }
    let orient = |a: usize, b: usize| if rank[a] < rank[b] { (a, b) } else { (b, a) };
    let mut edges: Vec<(usize, usize)> = tree.arrows().iter().map(|a| orient(a.source, a.target)).collect();
    if v >= 2 {
        for _ in 0..extra {
            let a = rng.gen_range(0..v);
            let mut b = rng.gen_range(0..v - 1);
            if b >= a {
                b += 1;
            }
            edges.push(orient(a, b));
        }
    }
    Ok(from_edges(format!("random_dag_{v}_{extra}_{seed}"), v, &edges))
}

fn from_edges(name: String, v: usize, edges: &[(usize, usize)]) -> Quiver {
    let names: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (format!("a{}", i + 1), names[s].clone(), names[t].clone()))
        .collect();
    Quiver::new(name, names.iter(), arrows.iter().map(|(l, s, t)| (l, s, t)))
        .expect("generated quiver is well formed")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RelationConstraints {
    /// Longest relation allowed; unlimited when `None`.
    pub max_len: Option<usize>,
    /// For linear quivers: the source vertex starts some relation and the
    /// sink ends one.
    pub anchored: bool,
}

/// `count` distinct random paths of length at least two, normalized.
/// Deterministic in `seed`. Normalization may leave fewer than `count`.
pub fn random_relations(
    q: &Quiver,
    count: usize,
    seed: u64,
    constraints: RelationConstraints,
) -> Result<RelationSet> {
    let candidates: Vec<Path> = enumerate_paths(q)
        .into_iter()
        .filter(|p| p.len() >= 2 && constraints.max_len.is_none_or(|m| p.len() <= m))
        .collect();
    if count > 0 && candidates.is_empty() {
        return Err(Error::InfeasibleFamily("quiver has no path of length >= 2".into()));
    }
    let ends = if constraints.anchored {
        let order = linear_order(q)
            .ok_or_else(|| Error::InfeasibleFamily("anchoring needs a linear quiver".into()))?;
        Some((order[0], *order.last().unwrap()))
    } else {
        None
    };
    let mut rng = rng(seed);
    for _ in 0..10_000 {
        let mut picked = candidates.clone();
        picked.shuffle(&mut rng);
        picked.truncate(count.min(candidates.len()));
        let r = RelationSet::new(q, picked.into_iter().map(|p| p.arrows))?;
        match ends {
            Some((s, t)) if !(r.sources().contains(&s) && r.targets().contains(&t)) => continue,
            _ => return Ok(r),
        }
    }
    Err(Error::InfeasibleFamily("relation constraints could not be met".into()))
}

/// Every connected acyclic quiver on `n` vertices with at most
/// `max_parallel` arrows between any two vertices, one per isomorphism
/// class.
pub fn connected_acyclic_quivers(n: usize, max_parallel: usize) -> Vec<Quiver> {
    // orient every unordered pair along a vertex order, then quotient by
    // relabelling; any DAG has such a topological labelling
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let choices = max_parallel + 1;
    let total = choices.pow(pairs.len() as u32);
    for code in 0..total {
        let mut mult = vec![0usize; pairs.len()];
        let mut c = code;
        for m in mult.iter_mut() {
            *m = c % choices;
            c /= choices;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&mult)
            .flat_map(|(&e, &m)| std::iter::repeat_n(e, m))
            .collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| adjacency_key(n, &edges, p))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(from_edges(format!("dag_{n}_{}", out.len()), n, &edges));
        }
    }
    out
}

fn adjacency_key(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> Vec<usize> {
    let mut m = vec![0; n * n];
    for &(s, t) in edges {
        m[perm[s] * n + perm[t]] += 1;
    }
    m
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in edges {
            let w = if s == v { t } else if t == v { s } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Checks a generated pair the way any loaded file would be checked.
pub fn checked(pair: (Quiver, RelationSet)) -> Result<(Quiver, RelationSet)> {
    validate(&pair.0)?;
    Ok(pair)
}
