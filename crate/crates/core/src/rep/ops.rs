use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{BoundAlgebra, ModuleMap, Module, Morphism, Representation, SemisimpleProfile};
use crate::field::Field;
use crate::linalg::{self, Matrix};

const ISO_RETRIES: usize = 8;

impl<F: Field> BoundAlgebra<F> {
    /// The socle as a semisimple profile, together with a basis of
    /// `soc(M)_v` at every vertex (as the columns of the inclusion map).
    pub fn socle(&self, m: &Module<F>) -> (SemisimpleProfile, Morphism<F>) {
        let q = self.quiver();
        let fl = self.field();
        let components: Vec<Matrix<F::Elem>> = (0..q.vertex_count())
            .map(|v| {
                let outs: Vec<&Matrix<F::Elem>> = q.out_arrows(v).iter().map(|&a| m.map(a)).collect();
                let stacked = Matrix::vstack(m.dim(v), &outs);
                linalg::kernel(fl, &stacked)
            })
            .collect();
        let profile = SemisimpleProfile { multiplicities: components.iter().map(Matrix::cols).collect() };
        (profile, ModuleMap { components })
    }

    /// The socle viewed as a module with zero arrow maps.
    pub fn socle_module(&self, profile: &SemisimpleProfile) -> Module<F> {
        let q = self.quiver();
        let dims = profile.multiplicities.clone();
        let maps = q
            .arrows()
            .iter()
            .map(|a| linalg::zeros(self.field(), dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps, labels: None }
    }

    pub fn top(&self, m: &Module<F>) -> SemisimpleProfile {
        let q = self.quiver();
        let multiplicities = (0..q.vertex_count())
            .map(|v| {
                let ins: Vec<&Matrix<F::Elem>> = q.in_arrows(v).iter().map(|&a| m.map(a)).collect();
                m.dim(v) - linalg::rank(self.field(), &Matrix::hstack(m.dim(v), &ins))
            })
            .collect();
        SemisimpleProfile { multiplicities }
    }

    /// Total dimensions of the layers `rad^k M / rad^{k+1} M`.
    pub fn radical_layers(&self, m: &Module<F>) -> Vec<usize> {
        let q = self.quiver();
        let fl = self.field();
        let mut current: Vec<Matrix<F::Elem>> = (0..q.vertex_count()).map(|v| linalg::identity(fl, m.dim(v))).collect();
        let mut layers = Vec::new();
        while current.iter().any(|u| u.cols() > 0) {
            let next: Vec<Matrix<F::Elem>> = (0..q.vertex_count())
                .map(|w| {
                    let images: Vec<Matrix<F::Elem>> = q
                        .in_arrows(w)
                        .iter()
                        .map(|&a| linalg::mul(fl, m.map(a), &current[q.arrow(a).source]))
                        .collect();
                    let refs: Vec<&Matrix<F::Elem>> = images.iter().collect();
                    linalg::column_basis(fl, &Matrix::hstack(m.dim(w), &refs))
                })
                .collect();
            let before: usize = current.iter().map(Matrix::cols).sum();
            let after: usize = next.iter().map(Matrix::cols).sum();
            layers.push(before - after);
            current = next;
        }
        layers
    }

    /// Every radical layer is simple.
    pub fn is_uniserial(&self, m: &Module<F>) -> bool {
        self.radical_layers(m).iter().all(|&d| d == 1)
    }

    /// A basis of `Hom(M, N)`, found by solving `N(a) f_v = f_w M(a)` for
    /// every arrow `a: v → w`.
    pub fn hom_space(&self, m: &Module<F>, n: &Module<F>) -> Vec<Morphism<F>> {
        let q = self.quiver();
        let fl = self.field();
        let nv = q.vertex_count();
        let mut offset = vec![0; nv + 1];
        for v in 0..nv {
            offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
        }
        let unknowns = offset[nv];
        if unknowns == 0 {
            return Vec::new();
        }
        // f_v[r][c] lives at offset[v] + r * dim M_v + c
        let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dim(v) + c;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (v, w) = (arrow.source, arrow.target);
            for r in 0..n.dim(w) {
                for c in 0..m.dim(v) {
                    let mut eq = vec![fl.zero(); unknowns];
                    for k in 0..n.dim(v) {
                        let x = n.map(a).get(r, k);
                        if !fl.is_zero(x) {
                            let i = var(v, k, c);
                            eq[i] = fl.add(&eq[i], x);
                        }
                    }
                    for k in 0..m.dim(w) {
                        let x = m.map(a).get(k, c);
                        if !fl.is_zero(x) {
                            let i = var(w, r, k);
                            eq[i] = fl.sub(&eq[i], x);
                        }
                    }
                    rows.push(eq);
                }
            }
        }
        let system = Matrix::from_fn(rows.len(), unknowns, |r, c| rows[r][c].clone());
        let kernel = linalg::kernel(fl, &system);
        (0..kernel.cols())
            .map(|k| ModuleMap {
                components: (0..nv)
                    .map(|v| Matrix::from_fn(n.dim(v), m.dim(v), |r, c| kernel.get(var(v, r, c), k).clone()))
                    .collect(),
            })
            .collect()
    }

    fn is_iso_map(&self, f: &Morphism<F>) -> bool {
        f.components.iter().all(|c| linalg::is_invertible(self.field(), c))
    }

    /// Searches `Hom(M, N)` for an invertible element: seeded random
    /// combinations first, then for hom spaces of dimension at most two an
    /// exhaustive pencil `h₁ + t·h₂` over enough values of `t` that a
    /// nonvanishing determinant cannot be missed.
    pub fn are_isomorphic(&self, m: &Module<F>, n: &Module<F>) -> bool {
        if m.dims() != n.dims() {
            return false;
        }
        if m.is_zero() {
            return true;
        }
        if self.top(m) != self.top(n) || self.socle(m).0 != self.socle(n).0 {
            return false;
        }
        let homs = self.hom_space(m, n);
        if homs.is_empty() {
            return false;
        }
        if homs.iter().any(|h| self.is_iso_map(h)) {
            return true;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed());
        for _ in 0..ISO_RETRIES {
            if self.is_iso_map(&self.random_combination(&homs, &mut rng)) {
                return true;
            }
        }
        if homs.len() == 2 {
            // det(h₁ + t h₂) is a polynomial of degree at most dim M in t
            let fl = self.field();
            for t in 0..=m.total_dimension() as i64 {
                let t = fl.from_i64(t);
                let f = ModuleMap {
                    components: homs[0]
                        .components
                        .iter()
                        .zip(&homs[1].components)
                        .map(|(a, b)| linalg::add(fl, a, &linalg::scale(fl, &t, b)))
                        .collect(),
                };
                if self.is_iso_map(&f) {
                    return true;
                }
            }
        }
        false
    }
}
