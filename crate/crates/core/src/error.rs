use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),

    #[error("relation {relation} is not composable: arrow `{first}` ends where `{second}` does not start")]
    NonComposable { relation: String, first: String, second: String },

    #[error("relation length < 2: `{0}`")]
    RelationTooShort(String),

    #[error("cycle detected: {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("quiver is disconnected: components {0:?}")]
    Disconnected(Vec<Vec<String>>),

    #[error("quiver has no vertices")]
    Empty,

    #[error("not a tree")]
    NotATree,

    #[error("linear quiver has no branching vertex")]
    LinearQuiver,

    #[error("tree has non-trivial arms")]
    HasArms,

    #[error("tree has no non-trivial arms")]
    NoArms,

    #[error("infeasible family descriptor: {0}")]
    InfeasibleFamily(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("outside predictor scope: {0}")]
    OutOfScope(String),

    #[error("resolution of {module} exceeded {cap} steps")]
    CapExceeded { module: String, cap: usize },

    /// An internal invariant failed: the engine produced something that
    /// cannot occur for a correct computation.
    #[error("engine defect: {0}")]
    Defect(String),
}

impl Error {
    /// Whether the error reflects bad input rather than an engine defect.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::CapExceeded { .. } | Error::Defect(_))
    }
}
