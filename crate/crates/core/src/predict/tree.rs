use super::{Clause, ConditionReport, Prediction, Theorem, Witness};
use crate::algebra::PathBasis;
use crate::error::{Error, Result};
use crate::quiver::{arms, derive_core, validate, Quiver, RelationSet};
use crate::rep::DomDim;

/// Socles, tops and uniseriality of indecomposable projectives and
/// injectives read off the nonzero paths, valid for monomial relations.
///
/// `P(i)` has a basis vector per nonzero path from `i` and each arrow sends
/// a path to its extension or to zero, so `soc P(i)` is spanned by the paths
/// no arrow extends and `P(i)` is uniserial exactly when there is at most one
/// nonzero path of each length. Dually for `I(j)`.
pub struct PathCombinatorics<'a> {
    q: &'a Quiver,
    basis: PathBasis,
}

impl<'a> PathCombinatorics<'a> {
    pub fn new(q: &'a Quiver, r: &RelationSet) -> Self {
        Self { q, basis: PathBasis::new(q, r) }
    }

    fn one_per_length<'p>(paths: impl Iterator<Item = &'p crate::quiver::Path>) -> bool {
        let mut seen = Vec::new();
        for p in paths {
            if seen.contains(&p.len()) {
                return false;
            }
            seen.push(p.len());
        }
        true
    }

    pub fn projective_uniserial(&self, i: usize) -> bool {
        Self::one_per_length(self.basis.paths_from(i))
    }

    pub fn injective_uniserial(&self, j: usize) -> bool {
        Self::one_per_length(self.basis.paths_into(j))
    }

    /// Vertices of the simple summands of `soc P(i)`, with repetition.
    pub fn socle_of_projective(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.basis.right_maximal_from(self.q, i).iter().map(|p| p.target).collect();
        out.sort_unstable();
        out
    }

    /// Vertices of the simple summands of `top I(j)`, with repetition.
    pub fn top_of_injective(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.basis.left_maximal_into(self.q, j).iter().map(|p| p.source).collect();
        out.sort_unstable();
        out
    }

    fn semisimple(&self, vertices: &[usize]) -> String {
        vertices.iter().map(|&v| format!("S({})", self.q.vertex_name(v))).collect::<Vec<_>>().join("⊕")
    }
}

fn clause(name: &'static str, witness: Option<Witness>) -> Clause {
    Clause { name, holds: witness.is_none(), witness }
}

fn witness(vertex: &str, module: String, detail: String) -> Witness {
    Witness { vertex: vertex.to_string(), module, detail }
}

/// The three star clauses on any tree: the projectives at sources and
/// injectives at sinks are uniserial, every `soc P(i)` lives on sinks and
/// every `top I(i)` lives on sources.
fn star_clauses(q: &Quiver, c: &PathCombinatorics) -> Vec<Clause> {
    let n = q.vertex_count();
    let name = |v: usize| q.vertex_name(v);

    let ends = (0..n)
        .filter(|&a| q.is_source(a) && !c.projective_uniserial(a))
        .map(|a| witness(name(a), format!("P({})", name(a)), format!("P({}) is not uniserial", name(a))))
        .chain(
            (0..n)
                .filter(|&b| q.is_sink(b) && !c.injective_uniserial(b))
                .map(|b| witness(name(b), format!("I({})", name(b)), format!("I({}) is not uniserial", name(b)))),
        )
        .next();

    let socles = (0..n).find_map(|i| {
        let soc = c.socle_of_projective(i);
        soc.iter().find(|&&v| !q.is_sink(v)).map(|&v| {
            witness(
                name(i),
                format!("P({})", name(i)),
                format!("soc P({}) = {} contains S({}) and {} is not a sink", name(i), c.semisimple(&soc), name(v), name(v)),
            )
        })
    });

    let tops = (0..n).find_map(|i| {
        let top = c.top_of_injective(i);
        top.iter().find(|&&v| !q.is_source(v)).map(|&v| {
            witness(
                name(i),
                format!("I({})", name(i)),
                format!("top I({}) = {} contains S({}) and {} is not a source", name(i), c.semisimple(&top), name(v), name(v)),
            )
        })
    });

    vec![clause("uniserial-ends", ends), clause("socles-at-sinks", socles), clause("tops-at-sources", tops)]
}

/// Star conditions on a tree without arms.
pub fn check_conditions_star(q: &Quiver, r: &RelationSet) -> Result<ConditionReport> {
    if !arms(q)?.without_arms() {
        return Err(Error::HasArms);
    }
    let c = PathCombinatorics::new(q, r);
    Ok(ConditionReport { star: star_clauses(q, &c), double_star: None, relations_confined: None })
}

/// Double-star conditions on a tree with arms: the star conditions on the
/// core, a simple socle off the core's inner vertices for every projective
/// at a left-arm vertex, and a simple top off the inner vertices for every
/// injective at a right-arm vertex.
pub fn check_conditions_double_star(q: &Quiver, r: &RelationSet) -> Result<ConditionReport> {
    let decomposition = arms(q)?;
    if decomposition.without_arms() {
        return Err(Error::NoArms);
    }
    let core = derive_core(q, r)?;
    let confined = core.relations_confined(q, r);
    let core_comb = PathCombinatorics::new(&core.quiver, &core.relations);
    let star = star_clauses(&core.quiver, &core_comb);
    let inner = core.inner_in_original();
    let c = PathCombinatorics::new(q, r);
    let name = |v: usize| q.vertex_name(v);

    let core_clause = clause("core-star", star.iter().find_map(|cl| cl.witness.clone()));

    let left = decomposition.left_vertices().find_map(|i| {
        let soc = c.socle_of_projective(i);
        match soc.as_slice() {
            [v] if !inner.contains(v) => None,
            [v] => Some(witness(
                name(i),
                format!("P({})", name(i)),
                format!("soc P({}) = S({}) and {} is an inner core vertex", name(i), name(*v), name(*v)),
            )),
            _ => Some(witness(
                name(i),
                format!("P({})", name(i)),
                format!("soc P({}) = {} is not simple", name(i), c.semisimple(&soc)),
            )),
        }
    });

    let right = decomposition.right_vertices().find_map(|j| {
        let top = c.top_of_injective(j);
        match top.as_slice() {
            [v] if !inner.contains(v) => None,
            [v] => Some(witness(
                name(j),
                format!("I({})", name(j)),
                format!("top I({}) = S({}) and {} is an inner core vertex", name(j), name(*v), name(*v)),
            )),
            _ => Some(witness(
                name(j),
                format!("I({})", name(j)),
                format!("top I({}) = {} is not simple", name(j), c.semisimple(&top)),
            )),
        }
    });

    Ok(ConditionReport {
        star,
        double_star: Some(vec![core_clause, clause("left-arm-socles", left), clause("right-arm-tops", right)]),
        relations_confined: Some(confined),
    })
}

fn failure_note(report: &ConditionReport) -> String {
    match report.first_failure() {
        Some(Clause { name, witness: Some(w), .. }) => format!("clause {name} fails: {}", w.detail),
        _ => "all clauses hold".into(),
    }
}

/// Trees that are not linear: 0 when some sink has two incoming arrows or
/// some source two outgoing ones, otherwise 1 or 0 according to the star
/// or double-star conditions.
pub fn predict_tree(q: &Quiver, r: &RelationSet) -> Result<Prediction> {
    let class = validate(q)?;
    if !class.is_tree {
        return Err(Error::NotATree);
    }
    if class.is_linear {
        return Err(Error::LinearQuiver);
    }
    if let Some(b) = class.branching_sink_or_source() {
        let what = if b.out_degree == 0 {
            format!("sink {} has {} incoming arrows", q.vertex_name(b.vertex), b.in_degree)
        } else {
            format!("source {} has {} outgoing arrows", q.vertex_name(b.vertex), b.out_degree)
        };
        return Ok(Prediction::exact(DomDim::Finite(0), Theorem::BranchingSinkOrSource, what));
    }

    if arms(q)?.without_arms() {
        let report = check_conditions_star(q, r)?;
        let value = usize::from(report.star_holds());
        let mut p = Prediction::exact(DomDim::Finite(value), Theorem::TreeWithoutArms, failure_note(&report));
        p.conditions = Some(report);
        return Ok(p);
    }

    let report = check_conditions_double_star(q, r)?;
    let mut p = if report.relations_confined == Some(false) {
        Prediction::interval(
            0,
            1,
            Theorem::TreeWithArms,
            "relations inside the core differ from the core relations; the dichotomy does not apply",
        )
    } else {
        let value = usize::from(report.double_star_holds() == Some(true));
        Prediction::exact(DomDim::Finite(value), Theorem::TreeWithArms, failure_note(&report))
    };
    p.conditions = Some(report);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predict::Predicted;
    use crate::quiver::dsl;

    const COUNTER1: &str = "quiver c1\nvertices 1 2 3 4 5 6\narrow d 1 -> 3\narrow a 2 -> 3\n\
        arrow b 3 -> 5\narrow t 3 -> 4\narrow g 5 -> 6\nrel a t\nrel d b\nrel a b g\n";
    const COUNTER1_CORE: &str = "quiver c1core\nvertices 1 2 3 4 5\narrow d 1 -> 3\narrow a 2 -> 3\n\
        arrow b 3 -> 5\narrow t 3 -> 4\nrel a t\nrel d b\n";
    const COUNTER2: &str = "quiver c2\nvertices 1 2 3 4 5 6 7 8 9\n\
        arrow a1 1 -> 2\narrow a2 2 -> 4\narrow a3 3 -> 4\narrow a4 4 -> 5\narrow a5 5 -> 6\n\
        arrow a6 6 -> 7\narrow a7 7 -> 8\narrow b6 6 -> 9\n\
        rel a2 a4 a5 b6\nrel a3 a4 a5 a6\nrel a1 a2 a4 a5\nrel a2 a4 a5 a6 a7\n";
    const REVERSE: &str = "quiver rev\nvertices 1 2 3 4 5 6\narrow al 1 -> 2\narrow be 2 -> 5\n\
        arrow ga 5 -> 6\narrow x 2 -> 3\narrow y 4 -> 5\nrel al be\nrel be ga\n";
    const WITH_ARMS: &str = "quiver arms\nvertices a 1 2 3 4 5 b\narrow al a -> 1\narrow x 1 -> 3\n\
        arrow y 2 -> 3\narrow z 3 -> 4\narrow w 3 -> 5\narrow be 5 -> b\nrel x w\nrel y z\n";

    fn load(text: &str) -> (Quiver, RelationSet) {
        let d = dsl::parse(text).unwrap();
        (d.quiver, d.relations)
    }

    fn value(p: &Prediction) -> DomDim {
        match p.value {
            Predicted::Exact { value } => value,
            Predicted::Interval { .. } => panic!("expected exact prediction"),
        }
    }

    #[test]
    fn core_satisfies_star() {
        let (q, r) = load(COUNTER1_CORE);
        let report = check_conditions_star(&q, &r).unwrap();
        assert!(report.star_holds());
        let p = predict_tree(&q, &r).unwrap();
        assert_eq!(p.theorem, Theorem::TreeWithoutArms);
        assert_eq!(value(&p), DomDim::Finite(1));
    }

    #[test]
    fn reverse_example_fails_socle_clause() {
        let (q, r) = load(REVERSE);
        let report = check_conditions_star(&q, &r).unwrap();
        assert!(report.clause("uniserial-ends").unwrap().holds);
        let socles = report.clause("socles-at-sinks").unwrap();
        assert!(!socles.holds);
        let w = socles.witness.as_ref().unwrap();
        assert_eq!(w.vertex, "2");
        assert!(w.detail.contains("S(3)⊕S(5)") && w.detail.contains("5 is not a sink"), "{}", w.detail);
        assert!(!report.clause("tops-at-sources").unwrap().holds);
    }

    #[test]
    fn hereditary_branching_tree_fails_uniserial_clause() {
        let (q, r) = load("quiver t\nvertices 1 2 3 4 5\narrow a 1 -> 3\narrow b 2 -> 3\narrow c 3 -> 4\narrow d 3 -> 5\n");
        let report = check_conditions_star(&q, &r).unwrap();
        assert!(!report.clause("uniserial-ends").unwrap().holds);
    }

    #[test]
    fn counter_examples_with_arms() {
        let (q, r) = load(COUNTER1);
        let report = check_conditions_double_star(&q, &r).unwrap();
        assert_eq!(report.relations_confined, Some(true));
        assert!(report.star_holds());
        let right = report.clause("right-arm-tops").unwrap();
        assert!(!right.holds);
        assert_eq!(right.witness.as_ref().unwrap().vertex, "6");
        assert_eq!(value(&predict_tree(&q, &r).unwrap()), DomDim::Finite(0));

        let (q, r) = load(COUNTER2);
        let report = check_conditions_double_star(&q, &r).unwrap();
        assert!(report.star_holds());
        let left = report.clause("left-arm-socles").unwrap();
        assert!(!left.holds);
        let w = left.witness.as_ref().unwrap();
        assert_eq!((w.vertex.as_str(), w.module.as_str()), ("1", "P(1)"));
        assert!(w.detail.contains("S(5)"));
        assert_eq!(value(&predict_tree(&q, &r).unwrap()), DomDim::Finite(0));
    }

    #[test]
    fn positive_instance_with_arms() {
        let (q, r) = load(WITH_ARMS);
        let report = check_conditions_double_star(&q, &r).unwrap();
        assert_eq!(report.double_star_holds(), Some(true), "{report:?}");
        let p = predict_tree(&q, &r).unwrap();
        assert_eq!(p.theorem, Theorem::TreeWithArms);
        assert_eq!(value(&p), DomDim::Finite(1));
    }

    #[test]
    fn branching_sink_gives_zero() {
        let (q, r) = load("quiver v\nvertices 1 2 3 4\narrow a 1 -> 2\narrow b 2 -> 4\narrow c 3 -> 4\nrel a b\n");
        let p = predict_tree(&q, &r).unwrap();
        assert_eq!(p.theorem, Theorem::BranchingSinkOrSource);
        assert_eq!(value(&p), DomDim::Finite(0));
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let (q, r) = load(WITH_ARMS);
        assert_eq!(check_conditions_star(&q, &r).unwrap_err(), Error::HasArms);
        let (q, r) = load(COUNTER1_CORE);
        assert_eq!(check_conditions_double_star(&q, &r).unwrap_err(), Error::NoArms);
        let (q, r) = load("quiver l\nvertices 1 2 3\narrow a 1 -> 2\narrow b 2 -> 3\n");
        assert_eq!(predict_tree(&q, &r).unwrap_err(), Error::LinearQuiver);
    }
}
