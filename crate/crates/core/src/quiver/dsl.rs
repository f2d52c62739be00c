//! Line-oriented text format for a quiver with monomial relations.
//!
//! ```text
//! quiver counter1
//! field rational            # or: field prime 7
//! vertices 1 2 3 4 5 6
//! arrow d 1 -> 3
//! arrow a 2 -> 3
//! rel a t                   # walk a, then t
//! ```
//!
//! Relations list arrows in the order they are walked. In composition
//! notation, where `ba` means "first `a`, then `b`", the relation `rel a b`
//! is the product `ba`.

use super::{Quiver, RelationSet};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub quiver: Quiver,
    pub relations: RelationSet,
    pub field: FieldSpec,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &body[s..i], column: body[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &body[s..], column: body[..s].chars().count() + 1 });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

pub fn parse(text: &str) -> Result<Document> {
    let mut name: Option<String> = None;
    let mut field = FieldSpec::Rational;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relations: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        let end_col = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        match head.text {
            "quiver" => {
                if name.is_some() {
                    return Err(syntax(line, head.column, "duplicate `quiver` line"));
                }
                match toks.as_slice() {
                    [_, n] => name = Some(n.text.to_string()),
                    [_] => return Err(syntax(line, end_col, "expected quiver name")),
                    [_, _, extra, ..] => return Err(syntax(line, extra.column, "unexpected token")),
                    [] => unreachable!(),
                }
            }
            "field" => {
                let rest: Vec<&str> = toks[1..].iter().map(|t| t.text).collect();
                let col = toks.get(1).map_or(end_col, |t| t.column);
                field = match rest.as_slice() {
                    ["rational"] => FieldSpec::Rational,
                    ["prime", p] => format!("prime:{p}")
                        .parse()
                        .map_err(|e: Error| syntax(line, col, e.to_string()))?,
                    _ => return Err(syntax(line, col, "expected `rational` or `prime <p>`")),
                };
            }
            "vertices" => {
                if toks.len() == 1 {
                    return Err(syntax(line, end_col, "expected at least one vertex"));
                }
                vertices.extend(toks[1..].iter().map(|t| t.text.to_string()));
            }
            "arrow" => match toks.as_slice() {
                [_, label, s, arrow, t] if arrow.text == "->" => {
                    arrows.push((label.text.into(), s.text.into(), t.text.into()));
                }
                [_, _, _, bad, _] => return Err(syntax(line, bad.column, "expected `->`")),
                [_, .., last] if toks.len() > 5 => {
                    return Err(syntax(line, last.column, "unexpected token"))
                }
                _ => return Err(syntax(line, end_col, "expected `arrow <label> <src> -> <tgt>`")),
            },
            "rel" => {
                relations.push((line, toks[1..].iter().map(|t| t.text.to_string()).collect()));
            }
            other => {
                return Err(syntax(line, head.column, format!("unknown directive `{other}`")));
            }
        }
    }

    let name = name.ok_or_else(|| syntax(1, 1, "missing `quiver <name>` line"))?;
    let quiver = Quiver::new(
        name,
        vertices.iter(),
        arrows.iter().map(|(l, s, t)| (l, s, t)),
    )?;
    let mut seqs = Vec::new();
    for (_line, labels) in &relations {
        let arrows = labels
            .iter()
            .map(|l| quiver.arrow_by_label(l))
            .collect::<Result<Vec<_>>>()?;
        seqs.push(arrows);
    }
    let relations = RelationSet::new(&quiver, seqs)?;
    Ok(Document { quiver, relations, field })
}

/// Canonical text form; parsing it gives back an equal document.
pub fn serialize(doc: &Document) -> String {
    let q = &doc.quiver;
    let mut out = format!("quiver {}\n", q.name());
    if let FieldSpec::Prime(p) = doc.field {
        out.push_str(&format!("field prime {p}\n"));
    }
    out.push_str("vertices");
    for v in q.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} -> {}\n",
            a.label,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    for r in doc.relations.relations() {
        out.push_str("rel");
        for &a in &r.arrows {
            out.push(' ');
            out.push_str(&q.arrow(a).label);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTER1: &str = "\
quiver counter1
vertices 1 2 3 4 5 6
arrow d 1 -> 3
arrow a 2 -> 3
arrow b 3 -> 5
arrow t 3 -> 4
arrow g 5 -> 6
rel a t      # theta alpha
rel d b
rel a b g
";

    #[test]
    fn parses_counter_example() {
        let doc = parse(COUNTER1).unwrap();
        assert_eq!(doc.quiver.vertex_count(), 6);
        assert_eq!(doc.quiver.arrows().len(), 5);
        assert_eq!(doc.relations.len(), 3);
        assert_eq!(doc.field, FieldSpec::Rational);
    }

    #[test]
    fn empty_relations_section() {
        let doc = parse("quiver a2\nvertices 1 2\narrow x 1 -> 2\n").unwrap();
        assert!(doc.relations.is_empty());
    }

    #[test]
    fn single_arrow_relation_is_rejected() {
        let err = parse("quiver a2\nvertices 1 2\narrow x 1 -> 2\nrel x\n").unwrap_err();
        assert!(matches!(err, Error::RelationTooShort(_)));
        assert!(err.to_string().contains("relation length < 2"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("quiver q\nvertices 1 2\narrow x 1 => 2\n").unwrap_err();
        assert_eq!(err, Error::Syntax { line: 3, column: 11, message: "expected `->`".into() });
        let err = parse("quiver q\n  bogus 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 3, .. }));
        assert!(matches!(parse("vertices 1\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_references() {
        assert_eq!(
            parse("quiver q\nvertices 1\narrow x 1 -> 2\n").unwrap_err(),
            Error::UnknownVertex("2".into())
        );
        assert_eq!(
            parse("quiver q\nvertices 1 2 3\narrow x 1 -> 2\narrow y 2 -> 3\nrel x z\n").unwrap_err(),
            Error::UnknownArrow("z".into())
        );
    }

    #[test]
    fn prime_field_line() {
        let doc = parse("quiver q\nfield prime 7\nvertices 1\n").unwrap();
        assert_eq!(doc.field, FieldSpec::Prime(7));
        assert!(parse("quiver q\nfield prime 9\nvertices 1\n").is_err());
        assert!(serialize(&doc).contains("field prime 7"));
    }

    #[test]
    fn serialization_is_canonical() {
        let doc = parse(COUNTER1).unwrap();
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}
