//! Closed-form predictions of the dominant dimension, read off from the
//! quiver and its relations without building any module, and their
//! reconciliation with computed values.

mod linear;
mod tree;

use serde::Serialize;

use crate::error::Result;
use crate::quiver::{validate, Quiver, RelationSet};
use crate::rep::DomDim;

pub use linear::{predict_an_quotient, predict_hereditary, truncated_formula, truncation_length};
pub use tree::{check_conditions_double_star, check_conditions_star, predict_tree, PathCombinatorics};

/// The result a prediction rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// A single vertex: the algebra is the field itself.
    SelfInjective,
    /// No relations: 1 for the linear quiver, 0 otherwise.
    HereditaryDichotomy,
    /// Linear quiver whose source starts no relation or whose sink ends none.
    SourceOrSinkFree,
    /// Linear quiver truncated at a fixed path length.
    TruncatedFormula,
    /// Linear quiver with a vertex `a` starting no relation whose successor
    /// ends none.
    FreePair,
    /// Linear quiver with a vertex touching no relation at its ends.
    FreeVertexBound,
    /// Any quotient of the linear quiver lies in `[1, n-1]`.
    LinearQuotientBounds,
    /// A sink with two or more incoming arrows, or a source with two or
    /// more outgoing ones.
    BranchingSinkOrSource,
    /// Tree without arms: 1 exactly when the star conditions hold.
    TreeWithoutArms,
    /// Tree with arms: 1 exactly when the double-star conditions hold.
    TreeWithArms,
    /// Outside every closed form: the value is at most `n - 1`.
    DirectedUpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Predicted {
    Exact { value: DomDim },
    Interval { lo: usize, hi: usize },
}

impl Predicted {
    pub fn contains(&self, value: DomDim) -> bool {
        match *self {
            Predicted::Exact { value: v } => v == value,
            Predicted::Interval { lo, hi } => matches!(value, DomDim::Finite(d) if lo <= d && d <= hi),
        }
    }
}

impl std::fmt::Display for Predicted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Predicted::Exact { value } => write!(f, "{value}"),
            Predicted::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vertex: String,
    pub module: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub holds: bool,
    /// Present exactly when the clause fails.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// Star conditions, on the tree itself or on its core.
    pub star: Vec<Clause>,
    /// Double-star conditions, for trees with arms.
    pub double_star: Option<Vec<Clause>>,
    /// Whether the relations lying inside the core are exactly the core
    /// relations.
    pub relations_confined: Option<bool>,
}

impl ConditionReport {
    pub fn star_holds(&self) -> bool {
        self.star.iter().all(|c| c.holds)
    }

    pub fn double_star_holds(&self) -> Option<bool> {
        self.double_star.as_ref().map(|cs| cs.iter().all(|c| c.holds))
    }

    /// The clause deciding the outcome: the first failing one, if any.
    pub fn first_failure(&self) -> Option<&Clause> {
        match &self.double_star {
            Some(cs) => cs.iter().find(|c| !c.holds),
            None => self.star.iter().find(|c| !c.holds),
        }
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.star.iter().chain(self.double_star.iter().flatten()).find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub value: Predicted,
    pub theorem: Theorem,
    pub evidence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionReport>,
}

impl Prediction {
    fn exact(value: DomDim, theorem: Theorem, evidence: impl Into<String>) -> Self {
        Self { value: Predicted::Exact { value }, theorem, evidence: vec![evidence.into()], conditions: None }
    }

    fn interval(lo: usize, hi: usize, theorem: Theorem, evidence: impl Into<String>) -> Self {
        debug_assert!(lo <= hi);
        Self { value: Predicted::Interval { lo, hi }, theorem, evidence: vec![evidence.into()], conditions: None }
    }

    /// Only the generic upper bound applies.
    pub fn is_out_of_scope(&self) -> bool {
        self.theorem == Theorem::DirectedUpperBound
    }
}

/// Picks the applicable closed form: hereditary algebras, quotients of the
/// linear quiver, then trees. Anything else gets the generic bound
/// `[0, n-1]` under [`Theorem::DirectedUpperBound`].
pub fn predict(q: &Quiver, r: &RelationSet) -> Result<Prediction> {
    let class = validate(q)?;
    let n = q.vertex_count();
    if n == 1 || r.is_empty() {
        return predict_hereditary(q);
    }
    if class.is_linear {
        return predict_an_quotient(q, r);
    }
    if class.is_tree {
        return predict_tree(q, r);
    }
    Ok(Prediction::interval(
        0,
        n - 1,
        Theorem::DirectedUpperBound,
        "relations on a quiver that is neither linear nor a tree",
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Agree,
    WithinInterval,
    Mismatch,
}

pub fn reconcile(pred: &Prediction, engine: DomDim) -> Verdict {
    match pred.value {
        Predicted::Exact { value } if value == engine => Verdict::Agree,
        Predicted::Interval { .. } if pred.value.contains(engine) => Verdict::WithinInterval,
        _ => Verdict::Mismatch,
    }
}
