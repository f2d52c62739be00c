//! Dominant dimension of bound quiver algebras `KQ/I` with `Q` finite and
//! acyclic and `I` generated by zero relations.
//!
//! The engine builds minimal injective resolutions of the indecomposable
//! projectives over an exact field. The [`predict`] module evaluates the
//! closed-form answers known for hereditary algebras, quotients of the
//! linear quiver and trees, so the two can be reconciled.

pub mod algebra;
pub mod error;
pub mod exec;
pub mod field;
pub mod linalg;
pub mod predict;
pub mod quiver;
pub mod rep;

pub use algebra::{is_zero_path, PathBasis};
pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use quiver::{Path, Quiver, RelationSet};
pub use rep::{BoundAlgebra, DomDim};
