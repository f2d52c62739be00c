//! The bound quiver algebra `KQ/I` for a monomial ideal `I`, described by its
//! basis of nonzero paths.

use crate::quiver::{enumerate_paths, Path, Quiver, RelationSet};

/// A path is zero exactly when some relation occurs in it as a contiguous
/// run of arrows. This is only valid for monomial ideals.
pub fn is_zero_path(p: &Path, r: &RelationSet) -> bool {
    r.kills(p)
}

/// Nonzero paths of `KQ/I`, grouped by source and by target. Within a group
/// paths are ordered by length.
#[derive(Clone, Debug)]
pub struct PathBasis {
    paths: Vec<Path>,
    from: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
}

impl PathBasis {
    /// Requires an acyclic quiver.
    pub fn new(q: &Quiver, r: &RelationSet) -> Self {
        let paths: Vec<Path> = enumerate_paths(q).into_iter().filter(|p| !r.kills(p)).collect();
        let mut from = vec![Vec::new(); q.vertex_count()];
        let mut into = vec![Vec::new(); q.vertex_count()];
        for (i, p) in paths.iter().enumerate() {
            from[p.source].push(i);
            into[p.target].push(i);
        }
        for list in &mut into {
            list.sort_by_key(|&i| paths[i].len());
        }
        Self { paths, from, into }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Dimension of the algebra.
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn paths_from(&self, v: usize) -> impl Iterator<Item = &Path> + '_ {
        self.from[v].iter().map(|&i| &self.paths[i])
    }

    pub fn paths_into(&self, v: usize) -> impl Iterator<Item = &Path> + '_ {
        self.into[v].iter().map(|&i| &self.paths[i])
    }

    pub fn nonzero_paths_from(&self, v: usize) -> Vec<Path> {
        self.paths_from(v).cloned().collect()
    }

    pub fn nonzero_paths_into(&self, v: usize) -> Vec<Path> {
        self.paths_into(v).cloned().collect()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.from[p.source].iter().any(|&i| &self.paths[i] == p)
    }

    /// Nonzero paths from `v` that every arrow extension kills: these span
    /// the socle of the projective at `v`.
    pub fn right_maximal_from(&self, q: &Quiver, v: usize) -> Vec<&Path> {
        self.paths_from(v)
            .filter(|p| {
                q.out_arrows(p.target).iter().all(|&a| {
                    let mut longer = p.arrows.clone();
                    longer.push(a);
                    !self.contains(&Path { source: p.source, target: q.arrow(a).target, arrows: longer })
                })
            })
            .collect()
    }

    /// Nonzero paths into `v` that no arrow can be prepended to: these span
    /// the top of the injective at `v`.
    pub fn left_maximal_into(&self, q: &Quiver, v: usize) -> Vec<&Path> {
        self.paths_into(v)
            .filter(|p| {
                q.in_arrows(p.source).iter().all(|&a| {
                    let mut longer = vec![a];
                    longer.extend_from_slice(&p.arrows);
                    !self.contains(&Path { source: q.arrow(a).source, target: p.target, arrows: longer })
                })
            })
            .collect()
    }

    /// Nonzero paths of positive length that extend in neither direction.
    pub fn maximal_paths(&self, q: &Quiver) -> Vec<&Path> {
        (0..q.vertex_count())
            .flat_map(|v| self.right_maximal_from(q, v))
            .filter(|p| {
                !p.is_trivial()
                    && q.in_arrows(p.source).iter().all(|&a| {
                        let mut longer = vec![a];
                        longer.extend_from_slice(&p.arrows);
                        !self.contains(&Path { source: q.arrow(a).source, target: p.target, arrows: longer })
                    })
            })
            .collect()
    }
}
