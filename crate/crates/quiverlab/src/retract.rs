//! Section and retraction recognition.
//!
//! A morphism `j: G -> H` is a section exactly when some `q: H -> G` has
//! `q ∘ j = id`. The search constrains `q` on the image of `j` and
//! backtracks over the rest; the returned partition certificate can be
//! re-checked without rerunning the search. Dually for retractions.

use thiserror::Error;

use crate::error::{Budget, QuiverError};
use crate::homs::HomIter;
use crate::morphism::QuiverMorphism;
use crate::quiver::{EdgeId, VertexId};

/// Checkable evidence that a morphism `j: G -> H` is a section: partitions of
/// `V(H)` and `E(H)` indexed by `G`, compatible with `j` and the structure
/// maps. Blocks are the fibers of the left inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCertificate {
    /// Block `A_v` of `V(H)` for each vertex `v` of `G`, ascending.
    pub partition_v: Vec<Vec<VertexId>>,
    /// Block `B_e` of `E(H)` for each edge `e` of `G`, ascending.
    pub partition_e: Vec<Vec<EdgeId>>,
}

/// Checkable evidence that a morphism `q: H -> G` is a retraction: one chosen
/// preimage per vertex and edge of `G`, aligned with the structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionCertificate {
    /// `w_v` in `V(H)` for each vertex `v` of `G`.
    pub chosen_v: Vec<VertexId>,
    /// `f_e` in `E(H)` for each edge `e` of `G`.
    pub chosen_e: Vec<EdgeId>,
}

/// A found left inverse plus its certificate.
#[derive(Clone, Debug)]
pub struct Retraction {
    /// `q: H -> G` with `q ∘ j = id`.
    pub morphism: QuiverMorphism,
    pub certificate: SectionCertificate,
}

/// A found right inverse plus its certificate.
#[derive(Clone, Debug)]
pub struct Section {
    /// `j: G -> H` with `q ∘ j = id`.
    pub morphism: QuiverMorphism,
    pub certificate: RetractionCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate violation: {0}")]
pub struct CertificateViolation(pub String);

/// Searches for a left inverse of `j`. Returns the least such `q` (by
/// assignment order) with the partition certificate derived from its fibers,
/// or `None` when `j` is not a section.
pub fn find_retraction(
    j: &QuiverMorphism,
    budget: &mut Budget,
) -> Result<Option<Retraction>, QuiverError> {
    if j.check().is_err() {
        return Err(QuiverError::Precondition(
            "retraction search needs a valid homomorphism".into(),
        ));
    }
    let g = j.domain_arc();
    let h = j.codomain_arc();

    // q(j(v)) = v pins the image of j; a repeated image admits no q at all.
    let mut forced_v: Vec<Option<usize>> = vec![None; h.vertex_count()];
    for v in g.vertices() {
        let w = j.apply_vertex(v).0;
        if forced_v[w].replace(v.0).is_some() {
            return Ok(None);
        }
    }
    let mut forced_e: Vec<Option<usize>> = vec![None; h.edge_count()];
    for e in g.edges() {
        let f = j.apply_edge(e).0;
        if forced_e[f].replace(e.0).is_some() {
            return Ok(None);
        }
    }

    let vertex_cands: Vec<Vec<usize>> = forced_v
        .iter()
        .map(|forced| match forced {
            Some(v) => vec![*v],
            None => (0..g.vertex_count()).collect(),
        })
        .collect();
    let edge_mask: Vec<Vec<bool>> = forced_e
        .iter()
        .map(|forced| match forced {
            Some(e) => {
                let mut row = vec![false; g.edge_count()];
                row[*e] = true;
                row
            }
            None => vec![true; g.edge_count()],
        })
        .collect();

    let mut iter = HomIter::new(h.clone(), g.clone(), vertex_cands, Some(edge_mask));
    let q = match iter.next_budgeted(budget)? {
        Some(q) => q,
        None => return Ok(None),
    };

    let mut partition_v = vec![Vec::new(); g.vertex_count()];
    for w in h.vertices() {
        partition_v[q.apply_vertex(w).0].push(w);
    }
    let mut partition_e = vec![Vec::new(); g.edge_count()];
    for f in h.edges() {
        partition_e[q.apply_edge(f).0].push(f);
    }
    Ok(Some(Retraction {
        morphism: q,
        certificate: SectionCertificate {
            partition_v,
            partition_e,
        },
    }))
}

/// Searches for a right inverse of `q`. Candidates for each `v`/`e` of `G`
/// are the fibers of `q`, tried least-first. Returns `None` when `q` is not
/// a retraction.
pub fn find_section(
    q: &QuiverMorphism,
    budget: &mut Budget,
) -> Result<Option<Section>, QuiverError> {
    if q.check().is_err() {
        return Err(QuiverError::Precondition(
            "section search needs a valid homomorphism".into(),
        ));
    }
    let h = q.domain_arc();
    let g = q.codomain_arc();

    let mut vertex_cands: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for w in h.vertices() {
        vertex_cands[q.apply_vertex(w).0].push(w.0);
    }
    let mut edge_mask: Vec<Vec<bool>> = vec![vec![false; h.edge_count()]; g.edge_count()];
    for f in h.edges() {
        edge_mask[q.apply_edge(f).0][f.0] = true;
    }

    let mut iter = HomIter::new(g.clone(), h.clone(), vertex_cands, Some(edge_mask));
    let j = match iter.next_budgeted(budget)? {
        Some(j) => j,
        None => return Ok(None),
    };

    let chosen_v = j.vmap().to_vec();
    let chosen_e = j.emap().to_vec();
    Ok(Some(Section {
        morphism: j,
        certificate: RetractionCertificate { chosen_v, chosen_e },
    }))
}

fn check_partition<T: Copy + Into<usize>>(
    blocks: &[Vec<T>],
    universe: usize,
    what: &str,
) -> Result<Vec<usize>, CertificateViolation> {
    let mut owner = vec![None; universe];
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(CertificateViolation(format!("empty {what} block {b}")));
        }
        for &item in block {
            let i: usize = item.into();
            if i >= universe {
                return Err(CertificateViolation(format!(
                    "{what} block {b} exceeds the codomain"
                )));
            }
            if owner[i].replace(b).is_some() {
                return Err(CertificateViolation(format!(
                    "{what} {i} assigned to two blocks"
                )));
            }
        }
    }
    owner
        .into_iter()
        .enumerate()
        .map(|(i, o)| o.ok_or_else(|| CertificateViolation(format!("{what} {i} not covered"))))
        .collect()
}

/// Re-checks a section certificate against `j` from scratch: genuine
/// partitions, `j(v) ∈ A_v`, `j(e) ∈ B_e`, and every `f ∈ B_e` runs from
/// `A_{src(e)}` to `A_{tgt(e)}`.
pub fn verify_section_certificate(
    j: &QuiverMorphism,
    cert: &SectionCertificate,
) -> Result<(), CertificateViolation> {
    let g = j.domain();
    let h = j.codomain();
    if cert.partition_v.len() != g.vertex_count() || cert.partition_e.len() != g.edge_count() {
        return Err(CertificateViolation("certificate not indexed by G".into()));
    }
    let vertex_class = check_partition(&cert.partition_v, h.vertex_count(), "vertex")?;
    let edge_class = check_partition(&cert.partition_e, h.edge_count(), "edge")?;
    for v in g.vertices() {
        if vertex_class[j.apply_vertex(v).0] != v.0 {
            return Err(CertificateViolation(format!(
                "j({}) lies outside its own block",
                g.vertex_name(v)
            )));
        }
    }
    for e in g.edges() {
        if edge_class[j.apply_edge(e).0] != e.0 {
            return Err(CertificateViolation(format!(
                "j({}) lies outside its own block",
                g.edge_name(e)
            )));
        }
    }
    for f in h.edges() {
        let e = EdgeId(edge_class[f.0]);
        if vertex_class[h.src(f).0] != g.src(e).0 {
            return Err(CertificateViolation(format!(
                "edge {} leaves the wrong source block",
                h.edge_name(f)
            )));
        }
        if vertex_class[h.tgt(f).0] != g.tgt(e).0 {
            return Err(CertificateViolation(format!(
                "edge {} enters the wrong target block",
                h.edge_name(f)
            )));
        }
    }
    Ok(())
}

/// Re-checks a retraction certificate against `q` from scratch:
/// `q(w_v) = v`, `q(f_e) = e`, and the chosen edges run between the chosen
/// vertices.
pub fn verify_retraction_certificate(
    q: &QuiverMorphism,
    cert: &RetractionCertificate,
) -> Result<(), CertificateViolation> {
    let h = q.domain();
    let g = q.codomain();
    if cert.chosen_v.len() != g.vertex_count() || cert.chosen_e.len() != g.edge_count() {
        return Err(CertificateViolation("certificate not indexed by G".into()));
    }
    for v in g.vertices() {
        let w = cert.chosen_v[v.0];
        if w.0 >= h.vertex_count() || q.apply_vertex(w) != v {
            return Err(CertificateViolation(format!(
                "chosen vertex for {} is not a preimage",
                g.vertex_name(v)
            )));
        }
    }
    for e in g.edges() {
        let f = cert.chosen_e[e.0];
        if f.0 >= h.edge_count() || q.apply_edge(f) != e {
            return Err(CertificateViolation(format!(
                "chosen edge for {} is not a preimage",
                g.edge_name(e)
            )));
        }
        if h.src(f) != cert.chosen_v[g.src(e).0] {
            return Err(CertificateViolation(format!(
                "chosen edge for {} starts off the chosen vertex",
                g.edge_name(e)
            )));
        }
        if h.tgt(f) != cert.chosen_v[g.tgt(e).0] {
            return Err(CertificateViolation(format!(
                "chosen edge for {} ends off the chosen vertex",
                g.edge_name(e)
            )));
        }
    }
    Ok(())
}

/// The two-cycle with a pendant sink attached to each vertex. The inclusion
/// of the two-cycle into it is a section, yet the quiver fans out too much to
/// be a blow-up of the two-cycle.
#[cfg(test)]
pub(crate) fn midpoint_fixture() -> crate::quiver::Quiver {
    use crate::quiver::{Quiver, RawQuiver};
    let raw = RawQuiver::default()
        .vertex("w_prime")
        .vertex("v")
        .vertex("w")
        .vertex("v_prime")
        .edge("e", "v", "w")
        .edge("f", "w", "v")
        .edge("e_prime", "v", "w_prime")
        .edge("f_prime", "w", "v_prime");
    Quiver::validate(&raw).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::families::cycle_quiver;
    use crate::homs::enumerate_homs;
    use crate::morphism::phi_n;

    fn two_cycle_inclusion() -> QuiverMorphism {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let mid = Arc::new(midpoint_fixture());
        QuiverMorphism::new(
            c2,
            mid.clone(),
            vec![
                mid.vertex_by_name("v").unwrap(),
                mid.vertex_by_name("w").unwrap(),
            ],
            vec![
                mid.edge_by_name("e").unwrap(),
                mid.edge_by_name("f").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_retracts_itself() {
        let c3 = Arc::new(cycle_quiver(3).unwrap());
        let id = QuiverMorphism::identity(c3.clone());
        let found = find_retraction(&id, &mut Budget::unlimited())
            .unwrap()
            .expect("identity is a section");
        assert_eq!(found.morphism, QuiverMorphism::identity(c3.clone()));
        verify_section_certificate(&id, &found.certificate).unwrap();

        let sec = find_section(&id, &mut Budget::unlimited())
            .unwrap()
            .expect("identity is a retraction");
        assert_eq!(sec.morphism, QuiverMorphism::identity(c3));
        verify_retraction_certificate(&id, &sec.certificate).unwrap();
    }

    #[test]
    fn pendant_sinks_retract_onto_the_two_cycle() {
        let j = two_cycle_inclusion();
        let found = find_retraction(&j, &mut Budget::unlimited())
            .unwrap()
            .expect("the inclusion is a section");
        let q = &found.morphism;
        assert_eq!(j.then(q).unwrap(), QuiverMorphism::identity(j.domain_arc().clone()));
        verify_section_certificate(&j, &found.certificate).unwrap();

        // The pendant copies collapse onto their counterparts.
        let mid = j.codomain();
        let c2 = j.domain();
        let w_prime = mid.vertex_by_name("w_prime").unwrap();
        let v_prime = mid.vertex_by_name("v_prime").unwrap();
        assert_eq!(q.apply_vertex(w_prime), c2.vertex_by_name("a_2").unwrap());
        assert_eq!(q.apply_vertex(v_prime), c2.vertex_by_name("a_1").unwrap());
    }

    #[test]
    fn path_into_cycle_is_not_a_section() {
        // Brute force over all maps C_3 -> P_3 agrees: nothing commutes.
        let phi = phi_n(3).unwrap();
        assert!(find_retraction(&phi, &mut Budget::unlimited())
            .unwrap()
            .is_none());
        let brute_left_inverse = enumerate_homs(phi.codomain_arc(), phi.domain_arc())
            .any(|q| phi.then(&q).unwrap() == QuiverMorphism::identity(phi.domain_arc().clone()));
        assert!(!brute_left_inverse);
    }

    #[test]
    fn collapse_onto_the_loop_has_no_section() {
        // Both candidate sections of the collapse C_2 -> C_1 would need a
        // loop upstairs, and C_2 has none.
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let collapse = QuiverMorphism::new(
            c2,
            c1,
            vec![VertexId(0), VertexId(0)],
            vec![EdgeId(0), EdgeId(0)],
        )
        .unwrap();
        assert!(find_section(&collapse, &mut Budget::unlimited())
            .unwrap()
            .is_none());
    }

    #[test]
    fn sections_are_monic() {
        let j = two_cycle_inclusion();
        assert!(find_retraction(&j, &mut Budget::unlimited())
            .unwrap()
            .is_some());
        assert!(j.is_monic());

        // A non-monic map is rejected without search.
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let collapse = QuiverMorphism::new(
            c2,
            c1.clone(),
            vec![VertexId(0), VertexId(0)],
            vec![EdgeId(0), EdgeId(0)],
        )
        .unwrap();
        assert!(find_retraction(&collapse, &mut Budget::unlimited())
            .unwrap()
            .is_none());
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let j = two_cycle_inclusion();
        let found = find_retraction(&j, &mut Budget::unlimited())
            .unwrap()
            .unwrap();

        let mut swapped = found.certificate.clone();
        swapped.partition_v.swap(0, 1);
        assert!(verify_section_certificate(&j, &swapped).is_err());

        let mut dropped = found.certificate.clone();
        dropped.partition_v[0].pop();
        assert!(verify_section_certificate(&j, &dropped).is_err());
    }

    #[test]
    fn found_retraction_admits_a_section_back() {
        let j = two_cycle_inclusion();
        let q = find_retraction(&j, &mut Budget::unlimited())
            .unwrap()
            .unwrap()
            .morphism;
        let sec = find_section(&q, &mut Budget::unlimited())
            .unwrap()
            .expect("a retraction has a right inverse");
        assert_eq!(
            sec.morphism.then(&q).unwrap(),
            QuiverMorphism::identity(q.codomain_arc().clone())
        );
        verify_retraction_certificate(&q, &sec.certificate).unwrap();
    }
}
