//! Quiver homomorphisms: total vertex and edge maps that commute with the
//! source and target maps.

use std::sync::Arc;

use crate::error::QuiverError;
use crate::families::{cycle_quiver, path_quiver};
use crate::quiver::{EdgeId, Quiver, VertexId};

/// A candidate homomorphism between two quivers. Totality and id ranges are
/// enforced at construction; whether the structure squares commute is a
/// separate question answered by [`QuiverMorphism::check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverMorphism {
    domain: Arc<Quiver>,
    codomain: Arc<Quiver>,
    vmap: Vec<VertexId>,
    emap: Vec<EdgeId>,
}

/// The first structure-square failure of a candidate morphism, in edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub edge: EdgeId,
    /// Which square broke: the source square or the target square.
    pub square: Square,
    pub expected: VertexId,
    pub actual: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    Source,
    Target,
}

impl QuiverMorphism {
    /// Builds a candidate morphism, checking totality (one assignment per
    /// domain vertex/edge) and that assignments land in the codomain.
    pub fn new(
        domain: Arc<Quiver>,
        codomain: Arc<Quiver>,
        vmap: Vec<VertexId>,
        emap: Vec<EdgeId>,
    ) -> Result<Self, QuiverError> {
        if vmap.len() != domain.vertex_count() {
            return Err(QuiverError::Totality(format!(
                "vertex map covers {} of {} vertices",
                vmap.len(),
                domain.vertex_count()
            )));
        }
        if emap.len() != domain.edge_count() {
            return Err(QuiverError::Totality(format!(
                "edge map covers {} of {} edges",
                emap.len(),
                domain.edge_count()
            )));
        }
        if let Some(v) = vmap.iter().find(|v| v.0 >= codomain.vertex_count()) {
            return Err(QuiverError::UnknownVertex(format!(
                "image vertex index {} out of range",
                v.0
            )));
        }
        if let Some(e) = emap.iter().find(|e| e.0 >= codomain.edge_count()) {
            return Err(QuiverError::UnknownEdge(format!(
                "image edge index {} out of range",
                e.0
            )));
        }
        Ok(QuiverMorphism {
            domain,
            codomain,
            vmap,
            emap,
        })
    }

    pub fn identity(q: Arc<Quiver>) -> Self {
        let vmap = q.vertices().collect();
        let emap = q.edges().collect();
        QuiverMorphism {
            domain: q.clone(),
            codomain: q,
            vmap,
            emap,
        }
    }

    pub fn domain(&self) -> &Quiver {
        &self.domain
    }

    pub fn codomain(&self) -> &Quiver {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<Quiver> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<Quiver> {
        &self.codomain
    }

    pub fn apply_vertex(&self, v: VertexId) -> VertexId {
        self.vmap[v.0]
    }

    pub fn apply_edge(&self, e: EdgeId) -> EdgeId {
        self.emap[e.0]
    }

    pub fn vmap(&self) -> &[VertexId] {
        &self.vmap
    }

    pub fn emap(&self) -> &[EdgeId] {
        &self.emap
    }

    /// Verifies both homomorphism squares. On failure reports the first
    /// offending edge in edge order.
    pub fn check(&self) -> Result<(), HomViolation> {
        for e in self.domain.edges() {
            let img = self.emap[e.0];
            let expected_src = self.vmap[self.domain.src(e).0];
            let actual_src = self.codomain.src(img);
            if actual_src != expected_src {
                return Err(HomViolation {
                    edge: e,
                    square: Square::Source,
                    expected: expected_src,
                    actual: actual_src,
                });
            }
            let expected_tgt = self.vmap[self.domain.tgt(e).0];
            let actual_tgt = self.codomain.tgt(img);
            if actual_tgt != expected_tgt {
                return Err(HomViolation {
                    edge: e,
                    square: Square::Target,
                    expected: expected_tgt,
                    actual: actual_tgt,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// True when both component maps are injective, the operational notion of
    /// a monomorphism here.
    pub fn is_monic(&self) -> bool {
        componentwise_injective(&self.vmap, self.codomain.vertex_count())
            && componentwise_injective_edges(&self.emap, self.codomain.edge_count())
    }

    /// Diagrammatic composition: `self.then(g)` is `g ∘ self`.
    pub fn then(&self, g: &QuiverMorphism) -> Result<QuiverMorphism, QuiverError> {
        if *self.codomain != *g.domain {
            return Err(QuiverError::Precondition(
                "composition requires matching middle quiver".into(),
            ));
        }
        Ok(QuiverMorphism {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            vmap: self.vmap.iter().map(|&v| g.vmap[v.0]).collect(),
            emap: self.emap.iter().map(|&e| g.emap[e.0]).collect(),
        })
    }
}

fn componentwise_injective(map: &[VertexId], codomain_size: usize) -> bool {
    let mut seen = vec![false; codomain_size];
    for &v in map {
        if seen[v.0] {
            return false;
        }
        seen[v.0] = true;
    }
    true
}

fn componentwise_injective_edges(map: &[EdgeId], codomain_size: usize) -> bool {
    let mut seen = vec![false; codomain_size];
    for &e in map {
        if seen[e.0] {
            return false;
        }
        seen[e.0] = true;
    }
    true
}

/// The natural embedding of the directed path `P_n` into the directed cycle
/// `C_n`: `a_j -> a_j`, `x_j -> x_j`. Monic by construction.
pub fn phi_n(n: usize) -> Result<QuiverMorphism, QuiverError> {
    if n < 2 {
        return Err(QuiverError::InvalidSize(
            "the path-into-cycle embedding needs n >= 2".into(),
        ));
    }
    let p = Arc::new(path_quiver(n)?);
    let c = Arc::new(cycle_quiver(n)?);
    let vmap = p.vertices().collect();
    let emap = p.edges().collect();
    QuiverMorphism::new(p, c, vmap, emap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::loaded_quiver;
    use crate::quiver::RawQuiver;

    #[test]
    fn identity_is_a_valid_monic_hom() {
        let c3 = Arc::new(cycle_quiver(3).unwrap());
        let id = QuiverMorphism::identity(c3);
        assert!(id.is_valid());
        assert!(id.is_monic());
    }

    #[test]
    fn phi_n_is_a_valid_monomorphism() {
        for n in 2..=6 {
            let phi = phi_n(n).unwrap();
            assert!(phi.is_valid());
            assert!(phi.is_monic());
            assert_eq!(phi.domain().edge_count(), n - 1);
            assert_eq!(phi.codomain().edge_count(), n);
        }
    }

    #[test]
    fn broken_square_reports_first_offending_edge() {
        // Swap the vertices of P_2 but keep the edge fixed.
        let p2 = Arc::new(path_quiver(2).unwrap());
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let m = QuiverMorphism::new(
            p2,
            c2,
            vec![VertexId(1), VertexId(0)],
            vec![EdgeId(0)],
        )
        .unwrap();
        let violation = m.check().unwrap_err();
        assert_eq!(violation.edge, EdgeId(0));
        assert_eq!(violation.square, Square::Source);
    }

    #[test]
    fn collapse_onto_a_loop_is_not_monic() {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let m = QuiverMorphism::new(
            c2,
            c1,
            vec![VertexId(0), VertexId(0)],
            vec![EdgeId(0), EdgeId(0)],
        )
        .unwrap();
        assert!(m.is_valid());
        assert!(!m.is_monic());
    }

    #[test]
    fn totality_is_enforced() {
        let p2 = Arc::new(path_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let err = QuiverMorphism::new(p2, c1, vec![VertexId(0)], vec![EdgeId(0)]).unwrap_err();
        assert!(matches!(err, QuiverError::Totality(_)));
    }

    #[test]
    fn composition_follows_diagram_order() {
        let p2 = Arc::new(path_quiver(2).unwrap());
        let l = Arc::new(loaded_quiver(2, 1).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let f = QuiverMorphism::new(
            p2.clone(),
            l.clone(),
            vec![VertexId(0), VertexId(1)],
            vec![l.edge_by_name("e_1_2_1").unwrap()],
        )
        .unwrap();
        let g = QuiverMorphism::new(
            l,
            c1.clone(),
            vec![VertexId(0), VertexId(0)],
            vec![EdgeId(0), EdgeId(0), EdgeId(0), EdgeId(0)],
        )
        .unwrap();
        let gf = f.then(&g).unwrap();
        assert!(gf.is_valid());
        assert_eq!(gf.codomain(), &*c1);
    }

    #[test]
    fn mismatched_middle_quiver_is_rejected() {
        let p2 = Arc::new(path_quiver(2).unwrap());
        let p3 = Arc::new(path_quiver(3).unwrap());
        let f = QuiverMorphism::identity(p2);
        let g = QuiverMorphism::identity(p3);
        assert!(f.then(&g).is_err());
    }

    #[test]
    fn empty_domain_morphism_is_valid() {
        let empty = Arc::new(Quiver::validate(&RawQuiver::default()).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let m = QuiverMorphism::new(empty, c1, vec![], vec![]).unwrap();
        assert!(m.is_valid());
        assert!(m.is_monic());
    }
}
