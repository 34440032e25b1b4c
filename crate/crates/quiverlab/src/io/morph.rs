//! The morphism text format: a header naming the domain and codomain quiver
//! files, then one assignment per line.
//!
//! ```text
//! domain p3.quiver
//! codomain c3.quiver
//! vmap a_1 -> a_1
//! emap x_1 -> x_1
//! ```

use std::sync::Arc;

use crate::error::QuiverError;
use crate::io::ParseError;
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;

/// An unresolved morphism description: file references plus name-level
/// assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawMorphism {
    pub domain: String,
    pub codomain: String,
    pub vmap: Vec<(String, String)>,
    pub emap: Vec<(String, String)>,
}

pub fn parse_morphism(input: &str) -> Result<RawMorphism, ParseError> {
    let mut domain = None;
    let mut codomain = None;
    let mut vmap = Vec::new();
    let mut emap = Vec::new();
    for (idx, full_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).ok_or_else(|| {
            ParseError::Syntax {
                line: line_no,
                message: format!("unrecognized declaration `{line}`"),
            }
        })?;
        let rest = rest.trim();
        match keyword {
            "domain" | "codomain" => {
                let slot = if keyword == "domain" {
                    &mut domain
                } else {
                    &mut codomain
                };
                if slot.replace(rest.to_string()).is_some() {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        message: format!("`{keyword}` declared twice"),
                    });
                }
            }
            "vmap" | "emap" => {
                let (from, to) = rest.split_once("->").ok_or_else(|| ParseError::Syntax {
                    line: line_no,
                    message: "assignments use `from -> to`".into(),
                })?;
                let pair = (from.trim().to_string(), to.trim().to_string());
                if pair.0.is_empty() || pair.1.is_empty() {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        message: "assignments use `from -> to`".into(),
                    });
                }
                if keyword == "vmap" {
                    vmap.push(pair);
                } else {
                    emap.push(pair);
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    line: line_no,
                    message: format!("unrecognized declaration `{line}`"),
                });
            }
        }
    }
    Ok(RawMorphism {
        domain: domain.ok_or_else(|| ParseError::Structure("missing `domain` line".into()))?,
        codomain: codomain
            .ok_or_else(|| ParseError::Structure("missing `codomain` line".into()))?,
        vmap,
        emap,
    })
}

pub fn print_morphism(m: &QuiverMorphism, domain_path: &str, codomain_path: &str) -> String {
    let mut out = String::new();
    out.push_str("domain ");
    out.push_str(domain_path);
    out.push('\n');
    out.push_str("codomain ");
    out.push_str(codomain_path);
    out.push('\n');
    for v in m.domain().vertices() {
        out.push_str("vmap ");
        out.push_str(m.domain().vertex_name(v));
        out.push_str(" -> ");
        out.push_str(m.codomain().vertex_name(m.apply_vertex(v)));
        out.push('\n');
    }
    for e in m.domain().edges() {
        out.push_str("emap ");
        out.push_str(m.domain().edge_name(e));
        out.push_str(" -> ");
        out.push_str(m.codomain().edge_name(m.apply_edge(e)));
        out.push('\n');
    }
    out
}

/// Resolves name-level assignments against concrete quivers. Every domain
/// vertex and edge must be assigned exactly once.
pub fn resolve_morphism(
    raw: &RawMorphism,
    domain: Arc<Quiver>,
    codomain: Arc<Quiver>,
) -> Result<QuiverMorphism, QuiverError> {
    let mut vmap = vec![None; domain.vertex_count()];
    for (from, to) in &raw.vmap {
        let v = domain
            .vertex_by_name(from)
            .ok_or_else(|| QuiverError::UnknownVertex(from.clone()))?;
        let w = codomain
            .vertex_by_name(to)
            .ok_or_else(|| QuiverError::UnknownVertex(to.clone()))?;
        if vmap[v.0].replace(w).is_some() {
            return Err(QuiverError::Totality(format!(
                "vertex `{from}` assigned twice"
            )));
        }
    }
    let mut emap = vec![None; domain.edge_count()];
    for (from, to) in &raw.emap {
        let e = domain
            .edge_by_name(from)
            .ok_or_else(|| QuiverError::UnknownEdge(from.clone()))?;
        let f = codomain
            .edge_by_name(to)
            .ok_or_else(|| QuiverError::UnknownEdge(to.clone()))?;
        if emap[e.0].replace(f).is_some() {
            return Err(QuiverError::Totality(format!(
                "edge `{from}` assigned twice"
            )));
        }
    }
    let vmap = vmap
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                QuiverError::Totality(format!(
                    "vertex `{}` has no assignment",
                    domain.vertex_name(crate::quiver::VertexId(i))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let emap = emap
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            e.ok_or_else(|| {
                QuiverError::Totality(format!(
                    "edge `{}` has no assignment",
                    domain.edge_name(crate::quiver::EdgeId(i))
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    QuiverMorphism::new(domain, codomain, vmap, emap)
}
