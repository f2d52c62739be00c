use std::fmt::Write as _;

use domdim::predict::{Prediction, Predicted, Verdict};
use domdim::rep::{AlgebraReport, Summand};
use domdim::{BoundAlgebra, DomDim, Field, Quiver, RelationSet};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub tree: bool,
    pub linear: bool,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
}

impl ClassSummary {
    pub fn new(q: &Quiver, r: &RelationSet) -> domdim::Result<Self> {
        let class = domdim::quiver::validate(q)?;
        let names = |vs: &[usize]| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect();
        Ok(Self {
            vertices: q.vertex_count(),
            arrows: q.arrows().len(),
            relations: r.len(),
            tree: class.is_tree,
            linear: class.is_linear,
            sources: names(&class.sources),
            sinks: names(&class.sinks),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermSummand {
    pub vertex: String,
    pub multiplicity: usize,
    pub projective: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub projective: String,
    /// Basis of `P(i)` as arrow-label paths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    pub dominant_dimension: DomDim,
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<Vec<TermSummand>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Engine {
    pub dominant_dimension: DomDim,
    pub projective_injectives: Vec<(String, String)>,
    pub resolutions: Vec<Resolution>,
}

impl Engine {
    pub fn new<F: Field>(alg: &BoundAlgebra<F>, report: AlgebraReport, full: bool) -> Self {
        let q = alg.quiver();
        let name = |v: usize| q.vertex_name(v).to_string();
        let term = |t: &Vec<Summand>| {
            t.iter()
                .map(|s| TermSummand { vertex: name(s.vertex), multiplicity: s.multiplicity, projective: s.projective })
                .collect()
        };
        let resolutions = report
            .projectives
            .iter()
            .map(|p| Resolution {
                projective: p.name.clone(),
                basis: full.then(|| alg.basis().paths_from(p.vertex).map(|path| label(q, path)).collect()),
                dominant_dimension: p.dominant_dimension,
                length: p.terms.len(),
                terms: full.then(|| p.terms.iter().map(term).collect()),
            })
            .collect();
        Self {
            dominant_dimension: report.dominant_dimension,
            projective_injectives: alg.projective_injectives().into_iter().map(|(i, j)| (name(i), name(j))).collect(),
            resolutions,
        }
    }
}

fn label(q: &Quiver, p: &domdim::Path) -> String {
    if p.is_trivial() {
        format!("e{}", q.vertex_name(p.source))
    } else {
        p.arrows.iter().map(|&a| q.arrow(a).label.as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassSummary>,
    pub field: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.input);
        if let Some(c) = &self.class {
            let shape = if c.linear {
                "linear"
            } else if c.tree {
                "tree"
            } else {
                "acyclic"
            };
            let _ = writeln!(
                out,
                "  quiver      {} vertices, {} arrows, {} relations ({shape})",
                c.vertices, c.arrows, c.relations
            );
        }
        let _ = writeln!(out, "  field       {}   seed {}", self.field, self.seed);
        if let Some(e) = &self.engine {
            let _ = writeln!(out, "  engine      dom.dim = {}", e.dominant_dimension);
            let pairs: Vec<String> = e.projective_injectives.iter().map(|(i, j)| format!("P({i})≅I({j})")).collect();
            let _ = writeln!(out, "  proj-inj    {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") });
            for r in &e.resolutions {
                let _ = write!(out, "    {:<8} {:>8}", r.projective, r.dominant_dimension.to_string());
                match &r.terms {
                    Some(terms) => {
                        let chain: Vec<String> = terms.iter().map(|t| render_term(t)).collect();
                        let _ = writeln!(out, "   0 → {} → {} → 0", r.projective, chain.join(" → "));
                        if let Some(b) = &r.basis {
                            let _ = writeln!(out, "{:21}basis {{{}}}", "", b.join(", "));
                        }
                    }
                    None => {
                        let _ = writeln!(out, "   {} terms", r.length);
                    }
                }
            }
            if e.resolutions.iter().any(|r| r.terms.is_some()) {
                let _ = writeln!(out, "    (* marks a summand that is not projective)");
            }
        }
        if let Some(p) = &self.prediction {
            let kind = match p.value {
                Predicted::Exact { .. } => "exact",
                Predicted::Interval { .. } => "interval",
            };
            let theorem = serde_json::to_value(p.theorem).ok().and_then(|v| v.as_str().map(String::from));
            let _ = writeln!(out, "  prediction  {} ({kind}, {})", p.value, theorem.unwrap_or_default());
            for e in &p.evidence {
                let _ = writeln!(out, "    {e}");
            }
        }
        if let Some(v) = self.verdict {
            let text = match v {
                Verdict::Agree => "agree",
                Verdict::WithinInterval => "within interval",
                Verdict::Mismatch => "MISMATCH",
            };
            let _ = writeln!(out, "  verdict     {text}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error       {e}");
        }
        out
    }
}

fn render_term(t: &[TermSummand]) -> String {
    t.iter()
        .map(|s| {
            let mut x = format!("I({})", s.vertex);
            if s.multiplicity > 1 {
                x.push_str(&format!("^{}", s.multiplicity));
            }
            if !s.projective {
                x.push('*');
            }
            x
        })
        .collect::<Vec<_>>()
        .join("⊕")
}
