//! The finite quiver data model.
//!
//! A quiver is a directed multigraph with loops: finite vertex and edge sets
//! together with total source and target maps. Parallel edges are first-class
//! citizens — every edge carries its own identity — and the vertex/edge
//! orders are the insertion orders of the input, so that every "choose the
//! least" step downstream is deterministic.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a vertex within its quiver, in insertion order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

/// Index of an edge within its quiver, in insertion order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl From<VertexId> for usize {
    fn from(v: VertexId) -> usize {
        v.0
    }
}

impl From<EdgeId> for usize {
    fn from(e: EdgeId) -> usize {
        e.0
    }
}

/// An unvalidated quiver description: named vertices plus named edges with
/// named endpoints. This is the wire form for both the text and JSON formats.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl RawQuiver {
    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(mut self, id: &str, src: &str, tgt: &str) -> Self {
        self.edges.push(RawEdge {
            id: id.to_string(),
            src: src.to_string(),
            tgt: tgt.to_string(),
        });
        self
    }
}

/// A single defect found while validating a raw quiver description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    /// An id appears more than once within its namespace.
    DuplicateId { id: String, kind: IdKind },
    /// An edge endpoint names a vertex that does not exist.
    DanglingEndpoint { edge: String, vertex: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdKind {
    Vertex,
    Edge,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DuplicateId { id, kind } => {
                let kind = match kind {
                    IdKind::Vertex => "vertex",
                    IdKind::Edge => "edge",
                };
                write!(f, "duplicate {kind} id `{id}`")
            }
            ValidationIssue::DanglingEndpoint { edge, vertex } => {
                write!(f, "edge `{edge}` references missing vertex `{vertex}`")
            }
        }
    }
}

/// Every violation found in one validation pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// A validated finite quiver. Immutable after construction; cheap to share.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edge_src: Vec<usize>,
    edge_tgt: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    vertex_lookup: HashMap<String, usize>,
    edge_lookup: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_names == other.vertex_names
            && self.edge_names == other.edge_names
            && self.edge_src == other.edge_src
            && self.edge_tgt == other.edge_tgt
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Checks a raw description against the data-model invariants and builds
    /// the quiver. On failure the report lists every violation, not just the
    /// first.
    pub fn validate(raw: &RawQuiver) -> Result<Quiver, ValidationReport> {
        let mut issues = Vec::new();
        let mut vertex_lookup = HashMap::new();
        for (i, name) in raw.vertices.iter().enumerate() {
            if vertex_lookup.insert(name.clone(), i).is_some() {
                issues.push(ValidationIssue::DuplicateId {
                    id: name.clone(),
                    kind: IdKind::Vertex,
                });
            }
        }
        let mut edge_lookup = HashMap::new();
        let mut edge_src = Vec::with_capacity(raw.edges.len());
        let mut edge_tgt = Vec::with_capacity(raw.edges.len());
        for (i, edge) in raw.edges.iter().enumerate() {
            if edge_lookup.insert(edge.id.clone(), i).is_some() {
                issues.push(ValidationIssue::DuplicateId {
                    id: edge.id.clone(),
                    kind: IdKind::Edge,
                });
            }
            for endpoint in [&edge.src, &edge.tgt] {
                if !vertex_lookup.contains_key(endpoint) {
                    issues.push(ValidationIssue::DanglingEndpoint {
                        edge: edge.id.clone(),
                        vertex: endpoint.clone(),
                    });
                }
            }
            edge_src.push(vertex_lookup.get(&edge.src).copied().unwrap_or(usize::MAX));
            edge_tgt.push(vertex_lookup.get(&edge.tgt).copied().unwrap_or(usize::MAX));
        }
        if !issues.is_empty() {
            return Err(ValidationReport { issues });
        }

        let mut out_edges = vec![Vec::new(); raw.vertices.len()];
        let mut in_edges = vec![Vec::new(); raw.vertices.len()];
        for e in 0..raw.edges.len() {
            out_edges[edge_src[e]].push(e);
            in_edges[edge_tgt[e]].push(e);
        }

        Ok(Quiver {
            vertex_names: raw.vertices.clone(),
            edge_names: raw.edges.iter().map(|e| e.id.clone()).collect(),
            edge_src,
            edge_tgt,
            out_edges,
            in_edges,
            vertex_lookup,
            edge_lookup,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied().map(VertexId)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied().map(EdgeId)
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        VertexId(self.edge_src[e.0])
    }

    pub fn tgt(&self, e: EdgeId) -> VertexId {
        VertexId(self.edge_tgt[e.0])
    }

    /// Outgoing edges of `v`, in edge order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_edges[v.0].iter().copied().map(EdgeId)
    }

    /// Incoming edges of `v`, in edge order.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.in_edges[v.0].iter().copied().map(EdgeId)
    }

    /// All edges with source `v` and target `w`, in edge order.
    pub fn edges_between(&self, v: VertexId, w: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_edges(v).filter(move |&e| self.tgt(e) == w)
    }

    pub fn has_edge_between(&self, v: VertexId, w: VertexId) -> bool {
        self.edges_between(v, w).next().is_some()
    }

    pub fn has_loop_at(&self, v: VertexId) -> bool {
        self.has_edge_between(v, v)
    }

    /// The least loop edge, if the quiver has any loop.
    pub fn first_loop(&self) -> Option<EdgeId> {
        self.edges().find(|&e| self.src(e) == self.tgt(e))
    }

    /// True when every ordered vertex pair, loops included, carries at least
    /// one edge. Vacuously true for the empty quiver; callers that need
    /// nonemptiness test it separately.
    pub fn is_loaded(&self) -> bool {
        self.vertices()
            .all(|v| self.vertices().all(|w| self.has_edge_between(v, w)))
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertex_names.clone(),
            edges: (0..self.edge_count())
                .map(|e| RawEdge {
                    id: self.edge_names[e].clone(),
                    src: self.vertex_names[self.edge_src[e]].clone(),
                    tgt: self.vertex_names[self.edge_tgt[e]].clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop_is_valid() {
        let raw = RawQuiver::default().vertex("a").edge("e", "a", "a");
        let q = Quiver::validate(&raw).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.edge_count(), 1);
        assert_eq!(q.src(EdgeId(0)), q.tgt(EdgeId(0)));
    }

    #[test]
    fn empty_quiver_is_valid() {
        let q = Quiver::validate(&RawQuiver::default()).unwrap();
        assert!(q.is_empty());
        assert!(q.is_loaded());
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let raw = RawQuiver::default().vertex("a").edge("e", "a", "b");
        let report = Quiver::validate(&raw).unwrap_err();
        assert_eq!(
            report.issues,
            vec![ValidationIssue::DanglingEndpoint {
                edge: "e".into(),
                vertex: "b".into()
            }]
        );
    }

    #[test]
    fn every_violation_is_listed() {
        let raw = RawQuiver::default()
            .vertex("a")
            .vertex("a")
            .edge("e", "a", "b")
            .edge("e", "c", "a");
        let report = Quiver::validate(&raw).unwrap_err();
        assert_eq!(report.issues.len(), 4);
        assert!(report.issues.contains(&ValidationIssue::DuplicateId {
            id: "a".into(),
            kind: IdKind::Vertex
        }));
        assert!(report.issues.contains(&ValidationIssue::DuplicateId {
            id: "e".into(),
            kind: IdKind::Edge
        }));
    }

    #[test]
    fn edges_between_respects_direction() {
        let raw = RawQuiver::default()
            .vertex("a")
            .vertex("b")
            .edge("e1", "a", "b")
            .edge("e2", "a", "b")
            .edge("f", "b", "a");
        let q = Quiver::validate(&raw).unwrap();
        let a = q.vertex_by_name("a").unwrap();
        let b = q.vertex_by_name("b").unwrap();
        let forward: Vec<_> = q.edges_between(a, b).collect();
        assert_eq!(forward, vec![EdgeId(0), EdgeId(1)]);
        let back: Vec<_> = q.edges_between(b, a).collect();
        assert_eq!(back, vec![EdgeId(2)]);
        assert!(!q.has_loop_at(a));
    }

    #[test]
    fn raw_round_trip() {
        let raw = RawQuiver::default()
            .vertex("a")
            .vertex("b")
            .edge("e", "a", "b");
        let q = Quiver::validate(&raw).unwrap();
        assert_eq!(q.to_raw(), raw);
    }

    #[test]
    fn quivers_share_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Quiver>();
        assert_send_sync::<crate::morphism::QuiverMorphism>();
    }
}
