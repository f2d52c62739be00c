use super::{Prediction, Theorem};
use crate::error::{Error, Result};
use crate::quiver::{linear_order, validate, Quiver, RelationSet};
use crate::rep::DomDim;

/// Hereditary algebras: 1 for the linear quiver on `n ≥ 2` vertices, 0 for
/// every other quiver. A single vertex gives the field, which is
/// self-injective.
pub fn predict_hereditary(q: &Quiver) -> Result<Prediction> {
    let class = validate(q)?;
    if q.vertex_count() == 1 {
        return Ok(Prediction::exact(
            DomDim::Infinite,
            Theorem::SelfInjective,
            "single vertex: the algebra is the field, outside the n ≥ 2 dichotomy",
        ));
    }
    Ok(if class.is_linear {
        Prediction::exact(DomDim::Finite(1), Theorem::HereditaryDichotomy, "no relations, linear quiver")
    } else {
        Prediction::exact(DomDim::Finite(0), Theorem::HereditaryDichotomy, "no relations, quiver is not linear")
    })
}

/// Dominant dimension of the linear quiver on `n` vertices modulo all paths
/// of length `m`.
pub fn truncated_formula(n: usize, m: usize) -> Result<usize> {
    if n < 3 || m < 2 || m > n - 1 {
        return Err(Error::InfeasibleFamily(format!("truncation needs 2 ≤ m ≤ n-1 and n ≥ 3, got n={n}, m={m}")));
    }
    if m == 2 {
        return Ok(n - 1);
    }
    // residue class of n modulo m, taken in 1..=m
    let j = (n - 1) % m + 1;
    let numerator = if j <= m - 2 {
        2 * n - (m + 2 * j)
    } else if j == m - 1 {
        2 * n - 2 * j
    } else {
        2 * n - j
    };
    debug_assert_eq!(numerator % m, 0);
    Ok(numerator / m)
}

/// The length `m` if the relations are exactly all paths of length `m` of
/// the linear quiver on `n` vertices.
pub fn truncation_length(q: &Quiver, r: &RelationSet) -> Option<usize> {
    let n = q.vertex_count();
    let m = r.relations().first()?.len();
    (m >= 2 && m < n && r.relations().iter().all(|p| p.len() == m) && r.len() == n - m).then_some(m)
}

/// Quotients of the linear quiver by a nonempty set of relations. The
/// sharpest statement that applies wins: a free source or sink, then the
/// truncation formula, then a free pair, then a free vertex, then the
/// general bounds.
pub fn predict_an_quotient(q: &Quiver, r: &RelationSet) -> Result<Prediction> {
    let order = linear_order(q).ok_or_else(|| Error::OutOfScope("quiver is not linear".into()))?;
    let n = order.len();
    if n < 3 || r.is_empty() {
        return Err(Error::OutOfScope("needs n ≥ 3 and at least one relation".into()));
    }
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k + 1;
    }
    let starts: Vec<usize> = r.sources().iter().map(|&v| pos[v]).collect();
    let ends: Vec<usize> = r.targets().iter().map(|&v| pos[v]).collect();
    let name = |k: usize| q.vertex_name(order[k - 1]).to_string();

    if !starts.contains(&1) {
        return Ok(Prediction::exact(
            DomDim::Finite(1),
            Theorem::SourceOrSinkFree,
            format!("source {} starts no relation", name(1)),
        ));
    }
    if !ends.contains(&n) {
        return Ok(Prediction::exact(
            DomDim::Finite(1),
            Theorem::SourceOrSinkFree,
            format!("sink {} ends no relation", name(n)),
        ));
    }
    if let Some(m) = truncation_length(q, r) {
        let value = truncated_formula(n, m)?;
        return Ok(Prediction::exact(
            DomDim::Finite(value),
            Theorem::TruncatedFormula,
            format!("all {} paths of length {m} are relations, n = {n}", n - m),
        ));
    }
    if let Some(a) = (1..n).find(|&a| !starts.contains(&a) && !ends.contains(&(a + 1))) {
        return Ok(Prediction::exact(
            DomDim::Finite(1),
            Theorem::FreePair,
            format!("{} starts no relation and {} ends none", name(a), name(a + 1)),
        ));
    }
    if let Some(&v) = r.free_vertices(q).first() {
        return Ok(Prediction::interval(
            1,
            2,
            Theorem::FreeVertexBound,
            format!("vertex {} is free", q.vertex_name(v)),
        ));
    }
    Ok(Prediction::interval(1, n - 1, Theorem::LinearQuotientBounds, format!("quotient of the linear quiver, n = {n}")))
}
