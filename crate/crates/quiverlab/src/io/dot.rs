//! Deterministic DOT export. Every parallel edge is emitted separately and
//! loops are kept. With a classification overlay, partite blocks and layers
//! become clusters and any counterexample walk is highlighted.

use std::fmt::Write as _;

use crate::injectivity::{Classification, ClassificationDetail, ComponentKind};
use crate::quiver::{EdgeId, Quiver};

fn quoted(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders the quiver as a `digraph`. When a classification is supplied, its
/// component structure is rendered as clusters over the same vertex names.
pub fn export_dot(q: &Quiver, annotations: Option<&Classification>) -> String {
    let mut out = String::from("digraph quiver {\n");
    let mut highlighted: Vec<EdgeId> = Vec::new();

    match annotations.map(|c| &c.detail) {
        Some(ClassificationDetail::Components(components)) => {
            let mut cluster = 0;
            for class in components {
                let comp = &class.component;
                match &class.kind {
                    ComponentKind::Loaded => {
                        write_cluster(
                            &mut out,
                            &mut cluster,
                            "loaded",
                            comp.vertices().map(|v| comp.vertex_name(v)),
                        );
                    }
                    ComponentKind::CycleBlowup { witness, .. } => {
                        for (b, block) in witness.vertex_blocks.iter().enumerate() {
                            let label = format!(
                                "A[{}]",
                                witness.base.vertex_name(crate::quiver::VertexId(b))
                            );
                            write_cluster(
                                &mut out,
                                &mut cluster,
                                &label,
                                block.iter().map(|&v| witness.blown.vertex_name(v)),
                            );
                        }
                    }
                    ComponentKind::Short { layers, .. } => {
                        for (i, layer) in layers.iter().enumerate() {
                            let label = format!("B[{}]", i + 1);
                            write_cluster(
                                &mut out,
                                &mut cluster,
                                &label,
                                layer.iter().map(|&v| comp.vertex_name(v)),
                            );
                        }
                    }
                    ComponentKind::NotInjective { walk } => {
                        write_cluster(
                            &mut out,
                            &mut cluster,
                            "not injective",
                            comp.vertices().map(|v| comp.vertex_name(v)),
                        );
                        for &e in &walk.edges {
                            // Walk edges are named in the component; map back.
                            if let Some(orig) = q.edge_by_name(comp.edge_name(e)) {
                                highlighted.push(orig);
                            }
                        }
                    }
                }
            }
        }
        Some(ClassificationDetail::Phi2 { offending }) => {
            for v in q.vertices() {
                let _ = writeln!(out, "  {};", quoted(q.vertex_name(v)));
            }
            if let Some(e) = offending {
                highlighted.push(*e);
            }
        }
        None => {
            for v in q.vertices() {
                let _ = writeln!(out, "  {};", quoted(q.vertex_name(v)));
            }
        }
    }

    highlighted.sort();
    highlighted.dedup();
    for e in q.edges() {
        let attrs = if highlighted.binary_search(&e).is_ok() {
            format!(" [label={} color=red]", quoted(q.edge_name(e)))
        } else {
            format!(" [label={}]", quoted(q.edge_name(e)))
        };
        let _ = writeln!(
            out,
            "  {} -> {}{};",
            quoted(q.vertex_name(q.src(e))),
            quoted(q.vertex_name(q.tgt(e))),
            attrs
        );
    }
    out.push_str("}\n");
    out
}

fn write_cluster<'a>(
    out: &mut String,
    cluster: &mut usize,
    label: &str,
    vertices: impl Iterator<Item = &'a str>,
) {
    let _ = writeln!(out, "  subgraph cluster_{} {{", cluster);
    let _ = writeln!(out, "    label={};", quoted(label));
    for name in vertices {
        let _ = writeln!(out, "    {};", quoted(name));
    }
    out.push_str("  }\n");
    *cluster += 1;
}
