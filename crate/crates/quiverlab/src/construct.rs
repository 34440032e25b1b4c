//! Categorical product and coproduct, plus weak connectivity.

use std::sync::Arc;

use crate::morphism::QuiverMorphism;
use crate::quiver::{EdgeId, Quiver, RawQuiver, VertexId};

/// A categorical product together with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub quiver: Arc<Quiver>,
    pub proj_left: QuiverMorphism,
    pub proj_right: QuiverMorphism,
}

/// The product quiver: vertex pairs and edge pairs with component-wise
/// endpoints. Pair ids are `left__right`; if that scheme collides on unusual
/// input names, positional ids `p{i}_{j}` / `q{i}_{j}` are used instead.
pub fn product(g: &Arc<Quiver>, h: &Arc<Quiver>) -> Product {
    let friendly_v: Vec<String> = g
        .vertices()
        .flat_map(|u| {
            h.vertices()
                .map(move |w| format!("{}__{}", g.vertex_name(u), h.vertex_name(w)))
        })
        .collect();
    let friendly_e: Vec<String> = g
        .edges()
        .flat_map(|d| {
            h.edges()
                .map(move |f| format!("{}__{}", g.edge_name(d), h.edge_name(f)))
        })
        .collect();
    let friendly = all_distinct(&friendly_v) && all_distinct(&friendly_e);

    let hv = h.vertex_count();
    let vertex_name = |i: usize, j: usize| {
        if friendly {
            friendly_v[i * hv + j].clone()
        } else {
            format!("p{i}_{j}")
        }
    };
    let edge_name = |i: usize, j: usize| {
        if friendly {
            friendly_e[i * h.edge_count() + j].clone()
        } else {
            format!("q{i}_{j}")
        }
    };

    let mut raw = RawQuiver::default();
    for i in 0..g.vertex_count() {
        for j in 0..hv {
            raw = raw.vertex(&vertex_name(i, j));
        }
    }
    let mut proj_left_v = Vec::new();
    let mut proj_right_v = Vec::new();
    for i in 0..g.vertex_count() {
        for j in 0..hv {
            proj_left_v.push(VertexId(i));
            proj_right_v.push(VertexId(j));
        }
    }
    let mut proj_left_e = Vec::new();
    let mut proj_right_e = Vec::new();
    for (i, d) in g.edges().enumerate() {
        for (j, f) in h.edges().enumerate() {
            let src = vertex_name(g.src(d).0, h.src(f).0);
            let tgt = vertex_name(g.tgt(d).0, h.tgt(f).0);
            raw = raw.edge(&edge_name(i, j), &src, &tgt);
            proj_left_e.push(EdgeId(i));
            proj_right_e.push(EdgeId(j));
        }
    }

    let quiver = Arc::new(Quiver::validate(&raw).expect("product ids are unique"));
    let proj_left = QuiverMorphism::new(quiver.clone(), g.clone(), proj_left_v, proj_left_e)
        .expect("projection is total");
    let proj_right = QuiverMorphism::new(quiver.clone(), h.clone(), proj_right_v, proj_right_e)
        .expect("projection is total");
    Product {
        quiver,
        proj_left,
        proj_right,
    }
}

fn all_distinct(names: &[String]) -> bool {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// A coproduct (disjoint union) together with its canonical injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub quiver: Arc<Quiver>,
    pub injections: Vec<QuiverMorphism>,
}

/// The disjoint union with relabeled ids: part `k` (1-based) contributes
/// `name_k` for each of its ids. The suffix scheme cannot collide across
/// parts.
pub fn coproduct(parts: &[Arc<Quiver>]) -> Coproduct {
    let mut raw = RawQuiver::default();
    for (k, part) in parts.iter().enumerate() {
        let tag = k + 1;
        for name in part.vertices().map(|v| part.vertex_name(v)) {
            raw = raw.vertex(&format!("{name}_{tag}"));
        }
        for e in part.edges() {
            raw = raw.edge(
                &format!("{}_{tag}", part.edge_name(e)),
                &format!("{}_{tag}", part.vertex_name(part.src(e))),
                &format!("{}_{tag}", part.vertex_name(part.tgt(e))),
            );
        }
    }
    let quiver = Arc::new(Quiver::validate(&raw).expect("coproduct ids are unique"));

    let mut injections = Vec::with_capacity(parts.len());
    let mut vertex_offset = 0;
    let mut edge_offset = 0;
    for part in parts {
        let vmap = part.vertices().map(|v| VertexId(vertex_offset + v.0)).collect();
        let emap = part.edges().map(|e| EdgeId(edge_offset + e.0)).collect();
        injections.push(
            QuiverMorphism::new(part.clone(), quiver.clone(), vmap, emap)
                .expect("injection is total"),
        );
        vertex_offset += part.vertex_count();
        edge_offset += part.edge_count();
    }
    Coproduct { quiver, injections }
}

/// One weakly connected component: vertex and edge ids into the original
/// quiver, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Partitions the quiver into weakly connected components (components of the
/// underlying undirected multigraph). Components are ordered by least vertex.
pub fn weak_components(q: &Quiver) -> Vec<Component> {
    let n = q.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut stack = vec![start];
        label[start] = id;
        while let Some(v) = stack.pop() {
            let v = VertexId(v);
            for e in q.out_edges(v) {
                let w = q.tgt(e).0;
                if label[w] == usize::MAX {
                    label[w] = id;
                    stack.push(w);
                }
            }
            for e in q.in_edges(v) {
                let w = q.src(e).0;
                if label[w] == usize::MAX {
                    label[w] = id;
                    stack.push(w);
                }
            }
        }
    }
    let mut components = vec![
        Component {
            vertices: Vec::new(),
            edges: Vec::new()
        };
        count
    ];
    for v in 0..n {
        components[label[v]].vertices.push(VertexId(v));
    }
    for e in q.edges() {
        components[label[q.src(e).0]].edges.push(e);
    }
    components
}

/// The sub-quiver induced by one component, preserving ids so certificates
/// stay meaningful in the original quiver.
pub fn component_quiver(q: &Quiver, component: &Component) -> Quiver {
    let mut raw = RawQuiver::default();
    for &v in &component.vertices {
        raw = raw.vertex(q.vertex_name(v));
    }
    for &e in &component.edges {
        raw = raw.edge(
            q.edge_name(e),
            q.vertex_name(q.src(e)),
            q.vertex_name(q.tgt(e)),
        );
    }
    Quiver::validate(&raw).expect("component ids inherit uniqueness")
}
