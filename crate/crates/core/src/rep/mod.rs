//! Modules over a bound quiver algebra, given as quiver representations over
//! an exact field.
//!
//! A [`Representation`] stores one matrix per arrow, of shape
//! `dim(target) × dim(source)`, acting on column vectors. Everything that
//! needs field arithmetic goes through a [`BoundAlgebra`], which also caches
//! the indecomposable projectives and injectives.

mod ops;
mod resolve;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::PathBasis;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::quiver::{validate, Path, Quiver, QuiverClass, RelationSet};

pub use resolve::{AlgebraReport, Envelope, InjectiveResolution, ProjectiveReport, Summand};

/// Default seed of the randomized isomorphism test.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<E> {
    dims: Vec<usize>,
    maps: Vec<Matrix<E>>,
    labels: Option<Vec<Vec<String>>>,
}

impl<E: Clone> Representation<E> {
    /// Shapes are checked against `q`; relations are not (see
    /// [`BoundAlgebra::satisfies_relations`]).
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Matrix<E>>) -> Result<Self> {
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::Defect("representation does not match quiver".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Defect(format!("arrow `{}` has a map of the wrong shape", a.label)));
            }
        }
        Ok(Self { dims, maps, labels: None })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dimension() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix<E> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<E>] {
        &self.maps
    }

    /// Basis labels per vertex, present for constructed projectives and
    /// injectives and their direct sums.
    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }
}

/// A morphism of representations: one matrix `f_v: M_v → N_v` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<E> {
    pub components: Vec<Matrix<E>>,
}

/// Multiplicity of each simple `S(v)` in a semisimple module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleProfile {
    pub multiplicities: Vec<usize>,
}

impl SemisimpleProfile {
    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Vertices with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.multiplicities.len()).filter(|&v| self.multiplicities[v] > 0).collect()
    }

    /// The vertex `v` if the profile is the single simple `S(v)`.
    pub fn as_simple(&self) -> Option<usize> {
        match self.support().as_slice() {
            [v] if self.multiplicities[*v] == 1 => Some(*v),
            _ => None,
        }
    }

    /// Rendered as `S(3)⊕S(5)^2`, or `0`.
    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|v| match self.multiplicities[v] {
                1 => format!("S({})", q.vertex_name(v)),
                m => format!("S({})^{m}", q.vertex_name(v)),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("⊕")
        }
    }
}

/// A dominant dimension: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DomDim {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for DomDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomDim::Finite(d) => write!(f, "{d}"),
            DomDim::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for DomDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DomDim::Finite(d) => s.serialize_u64(*d as u64),
            DomDim::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for DomDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(DomDim::Finite(n as usize)),
            Raw::Text(t) if t == "infinity" => Ok(DomDim::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("expected a number or `infinity`, got `{t}`"))),
        }
    }
}

pub type Module<F> = Representation<<F as Field>::Elem>;
pub type Morphism<F> = ModuleMap<<F as Field>::Elem>;

/// The algebra `KQ/I` over a chosen field, with the data every module
/// computation needs. Immutable after construction apart from a lazily
/// filled table of projective-injective pairs, so it can be shared across
/// threads.
#[derive(Debug)]
pub struct BoundAlgebra<F: Field> {
    quiver: Quiver,
    relations: RelationSet,
    class: QuiverClass,
    basis: PathBasis,
    field: F,
    seed: u64,
    cap: usize,
    execution: Execution,
    projectives: Vec<Module<F>>,
    injectives: Vec<Module<F>>,
    proj_inj: OnceLock<Vec<Option<usize>>>,
}

impl<F: Field> BoundAlgebra<F> {
    pub fn new(quiver: Quiver, relations: RelationSet, field: F) -> Result<Self> {
        let class = validate(&quiver)?;
        let basis = PathBasis::new(&quiver, &relations);
        let n = quiver.vertex_count();
        let mut alg = Self {
            quiver,
            relations,
            class,
            basis,
            field,
            seed: DEFAULT_SEED,
            cap: n + 2,
            execution: Execution::default(),
            projectives: Vec::new(),
            injectives: Vec::new(),
            proj_inj: OnceLock::new(),
        };
        alg.projectives = (0..n).map(|i| alg.build_projective(i)).collect();
        alg.injectives = (0..n).map(|j| alg.build_injective(j)).collect();
        Ok(alg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Maximum number of terms of a resolution before it is reported as
    /// truncated.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn class(&self) -> &QuiverClass {
        &self.class
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn zero_module(&self) -> Module<F> {
        let q = &self.quiver;
        Representation {
            dims: vec![0; q.vertex_count()],
            maps: q.arrows().iter().map(|_| linalg::zeros(&self.field, 0, 0)).collect(),
            labels: Some(vec![Vec::new(); q.vertex_count()]),
        }
    }

    pub fn simple(&self, i: usize) -> Result<Module<F>> {
        self.check_vertex(i)?;
        let q = &self.quiver;
        let dims: Vec<usize> = (0..q.vertex_count()).map(|v| usize::from(v == i)).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|a| linalg::zeros(&self.field, dims[a.target], dims[a.source]))
            .collect();
        let labels = (0..q.vertex_count())
            .map(|v| if v == i { vec![q.vertex_name(v).to_string()] } else { Vec::new() })
            .collect();
        Ok(Representation { dims, maps, labels: Some(labels) })
    }

    pub fn projective(&self, i: usize) -> Result<&Module<F>> {
        self.check_vertex(i)?;
        Ok(&self.projectives[i])
    }

    pub fn injective(&self, j: usize) -> Result<&Module<F>> {
        self.check_vertex(j)?;
        Ok(&self.injectives[j])
    }

    /// Basis: nonzero paths from `i`, each placed at its target. An arrow
    /// extends a path at its end.
    fn build_projective(&self, i: usize) -> Module<F> {
        let q = &self.quiver;
        let paths: Vec<&Path> = self.basis.paths_from(i).collect();
        self.thin_module(&paths, |p| p.target, |p, a| {
            (q.arrow(a).source == p.target).then(|| {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                Path { source: p.source, target: q.arrow(a).target, arrows }
            })
        })
    }

    /// Basis: nonzero paths into `j`, each placed at its source. An arrow
    /// strips itself off the front of a path that starts with it.
    fn build_injective(&self, j: usize) -> Module<F> {
        let q = &self.quiver;
        let paths: Vec<&Path> = self.basis.paths_into(j).collect();
        self.thin_module(&paths, |p| p.source, |p, a| {
            (p.arrows.first() == Some(&a))
                .then(|| Path { source: q.arrow(a).target, target: p.target, arrows: p.arrows[1..].to_vec() })
        })
    }

    fn thin_module(
        &self,
        paths: &[&Path],
        place: impl Fn(&Path) -> usize,
        act: impl Fn(&Path, usize) -> Option<Path>,
    ) -> Module<F> {
        let q = &self.quiver;
        let f = &self.field;
        let mut at: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
        for p in paths {
            at[place(p)].push(p);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let maps = (0..q.arrows().len())
            .map(|a| {
                let (s, t) = (q.arrow(a).source, q.arrow(a).target);
                let mut m = linalg::zeros(f, dims[t], dims[s]);
                for (c, p) in at[s].iter().enumerate() {
                    if let Some(image) = act(p, a) {
                        if let Some(r) = at[t].iter().position(|x| **x == image) {
                            m.set(r, c, f.one());
                        }
                    }
                }
                m
            })
            .collect();
        let labels = at.iter().map(|ps| ps.iter().map(|p| q.display_path(p)).collect()).collect();
        Representation { dims, maps, labels: Some(labels) }
    }

    pub fn direct_sum(&self, parts: &[&Module<F>]) -> Module<F> {
        let q = &self.quiver;
        let zero = self.field.zero();
        let dims: Vec<usize> = (0..q.vertex_count()).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let maps = (0..q.arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix<F::Elem>> = parts.iter().map(|m| &m.maps[a]).collect();
                Matrix::block_diag(&zero, &blocks)
            })
            .collect();
        let labels = parts.iter().all(|m| m.labels.is_some()).then(|| {
            (0..q.vertex_count())
                .map(|v| parts.iter().flat_map(|m| m.labels.as_ref().unwrap()[v].iter().cloned()).collect())
                .collect()
        });
        Representation { dims, maps, labels }
    }

    /// `A` as a left module over itself: the sum of all `P(i)`.
    pub fn regular_module(&self) -> Module<F> {
        let parts: Vec<&Module<F>> = self.projectives.iter().collect();
        self.direct_sum(&parts)
    }

    /// The matrix by which a path acts, `M(a_m)···M(a_1)`.
    pub fn path_action(&self, m: &Module<F>, p: &Path) -> Matrix<F::Elem> {
        let mut acc = linalg::identity(&self.field, m.dims[p.source]);
        for &a in &p.arrows {
            acc = linalg::mul(&self.field, &m.maps[a], &acc);
        }
        acc
    }

    /// Every relation acts as zero.
    pub fn satisfies_relations(&self, m: &Module<F>) -> bool {
        self.relations.relations().iter().all(|r| linalg::is_zero(&self.field, &self.path_action(m, r)))
    }

    /// Whether `f: m → n` commutes with every arrow.
    pub fn is_homomorphism(&self, f: &Morphism<F>, m: &Module<F>, n: &Module<F>) -> bool {
        let fl = &self.field;
        self.quiver.arrows().iter().enumerate().all(|(a, arrow)| {
            let left = linalg::mul(fl, &n.maps[a], &f.components[arrow.source]);
            let right = linalg::mul(fl, &f.components[arrow.target], &m.maps[a]);
            left == right || linalg::is_zero(fl, &linalg::sub(fl, &left, &right))
        })
    }

    pub fn identity_map(&self, m: &Module<F>) -> Morphism<F> {
        ModuleMap { components: m.dims.iter().map(|&d| linalg::identity(&self.field, d)).collect() }
    }

    pub fn compose(&self, g: &Morphism<F>, f: &Morphism<F>) -> Morphism<F> {
        ModuleMap {
            components: g
                .components
                .iter()
                .zip(&f.components)
                .map(|(gv, fv)| linalg::mul(&self.field, gv, fv))
                .collect(),
        }
    }

    /// A random module for property tests: a sum of projectives, injectives
    /// and simples modulo the image of a random map out of a projective.
    pub fn random_module(&self, seed: u64) -> Module<F> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.vertex_count();
        let count = rng.gen_range(1..=3);
        let mut parts: Vec<Module<F>> = Vec::new();
        for _ in 0..count {
            let v = rng.gen_range(0..n);
            parts.push(match rng.gen_range(0..3) {
                0 => self.projectives[v].clone(),
                1 => self.injectives[v].clone(),
                _ => self.simple(v).unwrap(),
            });
        }
        let refs: Vec<&Module<F>> = parts.iter().collect();
        let sum = self.direct_sum(&refs);
        if rng.gen_bool(0.3) {
            return sum;
        }
        let source = &self.projectives[rng.gen_range(0..n)];
        let homs = self.hom_space(source, &sum);
        if homs.is_empty() {
            return sum;
        }
        let f = self.random_combination(&homs, &mut rng);
        self.cokernel(&f, &sum).0
    }

    fn random_combination(&self, basis: &[Morphism<F>], rng: &mut ChaCha8Rng) -> Morphism<F> {
        let fl = &self.field;
        let mut acc: Vec<Matrix<F::Elem>> =
            basis[0].components.iter().map(|c| linalg::zeros(fl, c.rows(), c.cols())).collect();
        for h in basis {
            let coeff = fl.from_i64(rng.gen_range(-1000..=1000));
            for (acc_v, h_v) in acc.iter_mut().zip(&h.components) {
                *acc_v = linalg::add(fl, acc_v, &linalg::scale(fl, &coeff, h_v));
            }
        }
        ModuleMap { components: acc }
    }
}
