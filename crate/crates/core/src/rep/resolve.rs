use serde::Serialize;

use super::{BoundAlgebra, DomDim, ModuleMap, Module, Morphism, Representation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

/// `I(vertex)^multiplicity` inside a term of a resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub vertex: usize,
    pub multiplicity: usize,
    pub projective: bool,
}

#[derive(Clone, Debug)]
pub struct Envelope<E> {
    /// `(v, m)` for each `I(v)^m`, by increasing vertex.
    pub summands: Vec<(usize, usize)>,
    pub module: Representation<E>,
    pub inclusion: ModuleMap<E>,
}

#[derive(Clone, Debug)]
pub struct InjectiveResolution<E> {
    pub terms: Vec<Vec<Summand>>,
    pub modules: Vec<Representation<E>>,
    /// The resolved module into the first term.
    pub inclusion: ModuleMap<E>,
    /// `maps[k]` goes from term `k` to term `k + 1`.
    pub maps: Vec<ModuleMap<E>>,
    /// Exactness held at every stage.
    pub exact: bool,
    /// The cap was reached with a nonzero cokernel left over.
    pub truncated: bool,
}

impl<E> InjectiveResolution<E> {
    fn term_projective(&self, k: usize) -> bool {
        self.terms[k].iter().all(|s| s.projective)
    }

    /// Number of leading terms made of projective summands only, or
    /// infinity when the resolution ends and every term is projective.
    pub fn dominant_dimension(&self) -> Option<DomDim> {
        let leading = (0..self.terms.len()).take_while(|&k| self.term_projective(k)).count();
        if leading < self.terms.len() {
            Some(DomDim::Finite(leading))
        } else if self.truncated {
            None
        } else {
            Some(DomDim::Infinite)
        }
    }

    /// The last term of a finite resolution with at least two terms is
    /// never projective: otherwise the final epimorphism would split and
    /// the previous term would not be an envelope.
    pub fn last_term_not_projective(&self) -> bool {
        self.truncated || self.terms.len() < 2 || !self.term_projective(self.terms.len() - 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveReport {
    pub vertex: usize,
    pub name: String,
    pub dominant_dimension: DomDim,
    pub terms: Vec<Vec<Summand>>,
    pub exact: bool,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub dominant_dimension: DomDim,
    pub projectives: Vec<ProjectiveReport>,
}

impl<F: Field> BoundAlgebra<F> {
    /// `E(M) = ⊕_v I(v)^{dim soc(M)_v}` and an inclusion `M → E(M)`.
    ///
    /// Each socle basis vector `s` at `v` comes with a functional `φ` on
    /// `M_v` that is 1 on `s` and vanishes on the rest of a basis extending
    /// the socle basis. The component of the inclusion into the matching
    /// copy of `I(v)` sends `x ∈ M_u` to `(φ(p·x))_p` over paths `p: u ⇝ v`.
    pub fn injective_envelope(&self, m: &Module<F>) -> Result<Envelope<F::Elem>> {
        let q = self.quiver();
        let fl = self.field();
        let nv = q.vertex_count();
        let (profile, socle) = self.socle(m);

        let mut functionals: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for v in 0..nv {
            let s = profile.multiplicities[v];
            if s == 0 {
                continue;
            }
            let (basis, _) = linalg::extend_to_basis(fl, &socle.components[v]);
            let inv = linalg::inverse(fl, &basis).ok_or_else(|| Error::Defect("socle basis not extendable".into()))?;
            for k in 0..s {
                functionals.push((v, inv.row(k).to_vec()));
            }
        }

        let mut blocks: Vec<Vec<Matrix<F::Elem>>> = vec![Vec::new(); nv];
        let mut parts: Vec<&Module<F>> = Vec::new();
        for (v, phi) in &functionals {
            let target = &self.injectives[*v];
            parts.push(target);
            let phi = Matrix::from_fn(1, phi.len(), |_, c| phi[c].clone());
            for u in 0..nv {
                let rows: Vec<Matrix<F::Elem>> = self
                    .basis()
                    .paths_into(*v)
                    .filter(|p| p.source == u)
                    .map(|p| linalg::mul(fl, &phi, &self.path_action(m, p)))
                    .collect();
                debug_assert_eq!(rows.len(), target.dim(u));
                let refs: Vec<&Matrix<F::Elem>> = rows.iter().collect();
                blocks[u].push(Matrix::vstack(m.dim(u), &refs));
            }
        }
        let module = self.direct_sum(&parts);
        let components: Vec<Matrix<F::Elem>> = blocks
            .iter()
            .enumerate()
            .map(|(u, bs)| {
                let refs: Vec<&Matrix<F::Elem>> = bs.iter().collect();
                Matrix::vstack(m.dim(u), &refs)
            })
            .collect();
        let inclusion = ModuleMap { components };
        for u in 0..nv {
            if linalg::rank(fl, &inclusion.components[u]) != m.dim(u) {
                return Err(Error::Defect(format!("envelope inclusion not injective at {}", q.vertex_name(u))));
            }
        }
        if !self.is_homomorphism(&inclusion, m, &module) {
            return Err(Error::Defect("envelope inclusion is not a module map".into()));
        }
        let summands = (0..nv).filter(|&v| profile.multiplicities[v] > 0).map(|v| (v, profile.multiplicities[v])).collect();
        Ok(Envelope { summands, module, inclusion })
    }

    /// `N / im f` with the projection `N → N / im f`.
    pub fn cokernel(&self, f: &Morphism<F>, n: &Module<F>) -> (Module<F>, Morphism<F>) {
        let q = self.quiver();
        let fl = self.field();
        let nv = q.vertex_count();
        let mut projections = Vec::with_capacity(nv);
        let mut complements = Vec::with_capacity(nv);
        for v in 0..nv {
            let image = linalg::column_basis(fl, &f.components[v]);
            let r = image.cols();
            let (basis, _) = linalg::extend_to_basis(fl, &image);
            let inv = linalg::inverse(fl, &basis).expect("extended basis is invertible");
            let d = n.dim(v);
            let keep: Vec<usize> = (r..d).collect();
            projections.push(inv.select_rows(&keep));
            complements.push(basis.select_columns(&keep));
        }
        let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let moved = linalg::mul(fl, n.map(a), &complements[arrow.source]);
                linalg::mul(fl, &projections[arrow.target], &moved)
            })
            .collect();
        (Representation { dims, maps, labels: None }, ModuleMap { components: projections })
    }

    /// Whether `I(v)` is projective, with the vertex `i` of `P(i) ≅ I(v)`.
    pub fn projective_partner(&self, v: usize) -> Option<usize> {
        self.proj_inj_table()[v]
    }

    fn proj_inj_table(&self) -> &[Option<usize>] {
        self.proj_inj.get_or_init(|| {
            self.execution().map_range(self.vertex_count(), |j| {
                let inj = &self.injectives[j];
                let i = self.top(inj).as_simple()?;
                let proj = &self.projectives[i];
                (proj.dims() == inj.dims() && self.are_isomorphic(proj, inj)).then_some(i)
            })
        })
    }

    /// All pairs `(i, j)` with `P(i) ≅ I(j)`, ordered by `i`.
    pub fn projective_injectives(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> =
            self.proj_inj_table().iter().enumerate().filter_map(|(j, i)| i.map(|i| (i, j))).collect();
        pairs.sort_unstable();
        pairs
    }

    /// The pairs `(i, j)` joined by a nonzero path that extends in neither
    /// direction with `P(i)` and `I(j)` both uniserial. On trees these are
    /// exactly the projective-injective pairs.
    pub fn projective_injectives_by_paths(&self) -> Vec<(usize, usize)> {
        let q = self.quiver();
        let mut ends: Vec<(usize, usize)> = if q.vertex_count() == 1 {
            vec![(0, 0)]
        } else {
            self.basis().maximal_paths(q).iter().map(|p| (p.source, p.target)).collect()
        };
        ends.sort_unstable();
        ends.dedup();
        ends.retain(|&(i, j)| self.is_uniserial(&self.projectives[i]) && self.is_uniserial(&self.injectives[j]));
        ends
    }

    fn summands(&self, raw: &[(usize, usize)]) -> Vec<Summand> {
        raw.iter()
            .map(|&(vertex, multiplicity)| Summand {
                vertex,
                multiplicity,
                projective: self.projective_partner(vertex).is_some(),
            })
            .collect()
    }

    /// Iterates envelope and cokernel until the cokernel vanishes or the cap
    /// is reached, checking exactness with ranks at each stage.
    pub fn minimal_injective_resolution(&self, m: &Module<F>) -> Result<InjectiveResolution<F::Elem>> {
        let fl = self.field();
        let nv = self.vertex_count();
        if !self.satisfies_relations(m) {
            return Err(Error::Defect("module does not satisfy the relations".into()));
        }
        let first = self.injective_envelope(m)?;
        let mut terms = vec![self.summands(&first.summands)];
        let mut modules = vec![first.module];
        let inclusion = first.inclusion;
        let mut maps: Vec<Morphism<F>> = Vec::new();
        let mut incoming = inclusion.clone();
        let mut exact = true;
        let mut truncated = false;
        loop {
            let k = modules.len() - 1;
            let (cok, proj) = self.cokernel(&incoming, &modules[k]);
            if !self.satisfies_relations(&cok) {
                return Err(Error::Defect("cokernel violates a relation".into()));
            }
            if cok.is_zero() {
                // the last map must be onto
                exact &= (0..nv).all(|v| linalg::rank(fl, &incoming.components[v]) == modules[k].dim(v));
                break;
            }
            if modules.len() >= self.cap() {
                truncated = true;
                break;
            }
            let env = self.injective_envelope(&cok)?;
            let d = self.compose(&env.inclusion, &proj);
            let closes = (0..nv).all(|v| {
                let r_in = linalg::rank(fl, &incoming.components[v]);
                let r_out = linalg::rank(fl, &d.components[v]);
                r_in + r_out == modules[k].dim(v)
                    && linalg::is_zero(fl, &linalg::mul(fl, &d.components[v], &incoming.components[v]))
            });
            exact &= closes;
            terms.push(self.summands(&env.summands));
            modules.push(env.module);
            maps.push(d.clone());
            incoming = d;
        }
        Ok(InjectiveResolution { terms, modules, inclusion, maps, exact, truncated })
    }

    pub fn dominant_dimension_module(&self, m: &Module<F>) -> Result<DomDim> {
        if m.is_zero() {
            return Ok(DomDim::Infinite);
        }
        let res = self.minimal_injective_resolution(m)?;
        self.checked_value(&res, "module")
    }

    fn checked_value(&self, res: &InjectiveResolution<F::Elem>, name: &str) -> Result<DomDim> {
        if !res.exact {
            return Err(Error::Defect(format!("resolution of {name} is not exact")));
        }
        if !res.last_term_not_projective() {
            return Err(Error::Defect(format!("resolution of {name} ends in a projective term")));
        }
        res.dominant_dimension()
            .ok_or_else(|| Error::CapExceeded { module: name.to_string(), cap: self.cap() })
    }

    pub fn projective_report(&self, i: usize) -> Result<ProjectiveReport> {
        let name = format!("P({})", self.quiver().vertex_name(i));
        let res = self.minimal_injective_resolution(self.projective(i)?)?;
        let value = self.checked_value(&res, &name)?;
        Ok(ProjectiveReport {
            vertex: i,
            name,
            dominant_dimension: value,
            terms: res.terms,
            exact: res.exact,
            truncated: res.truncated,
        })
    }

    /// The minimum over the indecomposable projectives, evaluated with the
    /// algebra's [`Execution`](crate::exec::Execution) mode.
    pub fn dominant_dimension(&self) -> Result<AlgebraReport> {
        // fill the shared table once before fanning out
        self.proj_inj_table();
        let reports = self.execution().map_range(self.vertex_count(), |i| self.projective_report(i));
        let projectives = reports.into_iter().collect::<Result<Vec<_>>>()?;
        let value = projectives.iter().map(|r| r.dominant_dimension).min().unwrap_or(DomDim::Infinite);
        Ok(AlgebraReport { dominant_dimension: value, projectives })
    }
}
