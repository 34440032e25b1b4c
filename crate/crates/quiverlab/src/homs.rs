//! Backtracking enumeration of quiver homomorphisms.
//!
//! One engine serves plain enumeration, morphism extension, and the
//! section/retraction searches: variables are the domain's vertices followed
//! by its edges, each in id order, and values are tried in codomain id order,
//! so results stream in lexicographic order of the assignment vector.
//! Assigning a vertex immediately checks the edges it completes, which prunes
//! infeasible branches without changing the enumerated set.

use std::sync::Arc;

use crate::error::{Budget, QuiverError};
use crate::morphism::QuiverMorphism;
use crate::quiver::{EdgeId, Quiver, VertexId};

/// Streaming enumeration of homomorphisms, optionally restricted by
/// per-vertex candidate lists and per-edge masks.
pub struct HomIter {
    dom: Arc<Quiver>,
    cod: Arc<Quiver>,
    vertex_cands: Vec<Vec<usize>>,
    edge_mask: Option<Vec<Vec<bool>>>,
    /// Domain edges whose endpoints are both assigned once vertex `i` is.
    completed_edges_at: Vec<Vec<usize>>,

    vertex_choice: Vec<usize>,
    vertex_assign: Vec<usize>,
    edge_choice: Vec<usize>,
    edge_cands: Vec<Vec<usize>>,
    depth: usize,
    state: IterState,
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    /// Interrupted mid-tree by a spent budget; the pending candidate is
    /// retried on the next call.
    Mid,
    /// The current full assignment was yielded.
    AtLeaf,
    Exhausted,
}

impl HomIter {
    pub(crate) fn new(
        dom: Arc<Quiver>,
        cod: Arc<Quiver>,
        vertex_cands: Vec<Vec<usize>>,
        edge_mask: Option<Vec<Vec<bool>>>,
    ) -> Self {
        let vn = dom.vertex_count();
        let en = dom.edge_count();
        let mut completed_edges_at = vec![Vec::new(); vn];
        for e in dom.edges() {
            let last = dom.src(e).0.max(dom.tgt(e).0);
            completed_edges_at[last].push(e.0);
        }
        HomIter {
            dom,
            cod,
            vertex_cands,
            edge_mask,
            completed_edges_at,
            vertex_choice: vec![0; vn],
            vertex_assign: vec![0; vn],
            edge_choice: vec![0; en],
            edge_cands: vec![Vec::new(); en],
            depth: 0,
            state: IterState::Fresh,
        }
    }

    fn total_positions(&self) -> usize {
        self.dom.vertex_count() + self.dom.edge_count()
    }

    fn cands_len(&self, position: usize) -> usize {
        let vn = self.dom.vertex_count();
        if position < vn {
            self.vertex_cands[position].len()
        } else {
            self.edge_cands[position - vn].len()
        }
    }

    fn choice_mut(&mut self, position: usize) -> &mut usize {
        let vn = self.dom.vertex_count();
        if position < vn {
            &mut self.vertex_choice[position]
        } else {
            &mut self.edge_choice[position - vn]
        }
    }

    /// Prepares the candidate list when a position is first entered.
    fn enter(&mut self, position: usize) {
        let vn = self.dom.vertex_count();
        if position < vn {
            self.vertex_choice[position] = 0;
        } else {
            let e = position - vn;
            let src = VertexId(self.vertex_assign[self.dom.src(EdgeId(e)).0]);
            let tgt = VertexId(self.vertex_assign[self.dom.tgt(EdgeId(e)).0]);
            self.edge_cands[e] = self
                .cod
                .edges_between(src, tgt)
                .map(|f| f.0)
                .filter(|&f| match &self.edge_mask {
                    Some(mask) => mask[e][f],
                    None => true,
                })
                .collect();
            self.edge_choice[e] = 0;
        }
        self.depth = position + 1;
    }

    /// True when the current choice at a vertex position leaves every
    /// just-completed domain edge a nonempty image set.
    fn consistent(&mut self, position: usize) -> bool {
        let vn = self.dom.vertex_count();
        if position >= vn {
            return true;
        }
        let image = self.vertex_cands[position][self.vertex_choice[position]];
        self.vertex_assign[position] = image;
        for &e in &self.completed_edges_at[position] {
            let src = VertexId(self.vertex_assign[self.dom.src(EdgeId(e)).0]);
            let tgt = VertexId(self.vertex_assign[self.dom.tgt(EdgeId(e)).0]);
            let feasible = match &self.edge_mask {
                Some(mask) => self
                    .cod
                    .edges_between(src, tgt)
                    .any(|f| mask[e][f.0]),
                None => self.cod.has_edge_between(src, tgt),
            };
            if !feasible {
                return false;
            }
        }
        true
    }

    /// Advances the choice at the top position until one is consistent,
    /// popping exhausted positions. Returns false when the tree is spent.
    fn settle(&mut self, budget: &mut Budget) -> Result<bool, QuiverError> {
        loop {
            if self.depth == 0 {
                self.state = IterState::Exhausted;
                return Ok(false);
            }
            let p = self.depth - 1;
            if *self.choice_mut(p) >= self.cands_len(p) {
                self.depth -= 1;
                if self.depth == 0 {
                    self.state = IterState::Exhausted;
                    return Ok(false);
                }
                *self.choice_mut(self.depth - 1) += 1;
                continue;
            }
            budget.spend()?;
            if self.consistent(p) {
                return Ok(true);
            }
            *self.choice_mut(p) += 1;
        }
    }

    fn snapshot(&self) -> QuiverMorphism {
        let vmap = self.vertex_assign.iter().map(|&v| VertexId(v)).collect();
        let emap = self
            .edge_cands
            .iter()
            .zip(&self.edge_choice)
            .map(|(cands, &i)| EdgeId(cands[i]))
            .collect();
        QuiverMorphism::new(self.dom.clone(), self.cod.clone(), vmap, emap)
            .expect("search assignments are total and in range")
    }

    /// Like `Iterator::next`, but spends the given budget and aborts with
    /// [`QuiverError::Budget`] instead of hanging on a large search space.
    /// An interrupted iterator may be resumed with a fresh budget; nothing
    /// is skipped or repeated.
    pub fn next_budgeted(
        &mut self,
        budget: &mut Budget,
    ) -> Result<Option<QuiverMorphism>, QuiverError> {
        let total = self.total_positions();
        match self.state {
            IterState::Exhausted => return Ok(None),
            IterState::AtLeaf => {
                if total == 0 {
                    self.state = IterState::Exhausted;
                    return Ok(None);
                }
                *self.choice_mut(total - 1) += 1;
                self.state = IterState::Mid;
            }
            IterState::Fresh => {
                if total == 0 {
                    // The empty domain has exactly one morphism anywhere.
                    self.state = IterState::AtLeaf;
                    return Ok(Some(self.snapshot()));
                }
                self.enter(0);
                self.state = IterState::Mid;
            }
            IterState::Mid => {}
        }
        loop {
            if !self.settle(budget)? {
                return Ok(None);
            }
            if self.depth == total {
                self.state = IterState::AtLeaf;
                return Ok(Some(self.snapshot()));
            }
            self.enter(self.depth);
        }
    }
}

impl Iterator for HomIter {
    type Item = QuiverMorphism;

    fn next(&mut self) -> Option<QuiverMorphism> {
        self.next_budgeted(&mut Budget::unlimited())
            .expect("unlimited budget cannot be exceeded")
    }
}

/// Streams every homomorphism `g -> h` exactly once, lexicographically by
/// assignment vector. Bound the stream with `take` when only a prefix is
/// needed.
pub fn enumerate_homs(g: &Arc<Quiver>, h: &Arc<Quiver>) -> HomIter {
    let all: Vec<usize> = (0..h.vertex_count()).collect();
    HomIter::new(g.clone(), h.clone(), vec![all; g.vertex_count()], None)
}

/// Completes the square: given monic `phi: D -> C` and `psi: D -> J`, finds
/// the least `psi_tilde: C -> J` with `psi_tilde ∘ phi = psi`, if any.
/// Assignments on the range of `phi` are forced; the rest is searched
/// least-first.
pub fn extend_morphism(
    phi: &QuiverMorphism,
    psi: &QuiverMorphism,
    budget: &mut Budget,
) -> Result<Option<QuiverMorphism>, QuiverError> {
    if phi.check().is_err() || psi.check().is_err() {
        return Err(QuiverError::Precondition(
            "extension needs valid homomorphisms".into(),
        ));
    }
    if !phi.is_monic() {
        return Err(QuiverError::Precondition(
            "extension is defined along monomorphisms".into(),
        ));
    }
    if phi.domain() != psi.domain() {
        return Err(QuiverError::Precondition(
            "extension needs a shared domain".into(),
        ));
    }

    let c = phi.codomain_arc();
    let j = psi.codomain_arc();

    let mut vertex_cands: Vec<Vec<usize>> =
        vec![(0..j.vertex_count()).collect(); c.vertex_count()];
    for a in phi.domain().vertices() {
        vertex_cands[phi.apply_vertex(a).0] = vec![psi.apply_vertex(a).0];
    }
    let mut edge_mask: Vec<Vec<bool>> = vec![vec![true; j.edge_count()]; c.edge_count()];
    for b in phi.domain().edges() {
        let forced = psi.apply_edge(b).0;
        let row = &mut edge_mask[phi.apply_edge(b).0];
        for (f, slot) in row.iter_mut().enumerate() {
            *slot = f == forced;
        }
    }

    let mut iter = HomIter::new(c.clone(), j.clone(), vertex_cands, Some(edge_mask));
    iter.next_budgeted(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle_quiver, loaded_quiver, path_quiver};
    use crate::morphism::phi_n;

    /// Independent oracle: counts homomorphisms by trying every assignment
    /// vector outright and checking the squares directly.
    fn brute_hom_count(g: &Quiver, h: &Quiver) -> usize {
        let gv = g.vertex_count();
        let ge = g.edge_count();
        let hv = h.vertex_count();
        let he = h.edge_count();
        if (gv > 0 && hv == 0) || (ge > 0 && he == 0) {
            return 0;
        }
        let mut count = 0;
        let mut vassign = vec![0usize; gv];
        loop {
            let mut eassign = vec![0usize; ge];
            loop {
                let squares_ok = (0..ge).all(|e| {
                    let img = EdgeId(eassign[e]);
                    h.src(img).0 == vassign[g.src(EdgeId(e)).0]
                        && h.tgt(img).0 == vassign[g.tgt(EdgeId(e)).0]
                });
                if squares_ok {
                    count += 1;
                }
                if !increment(&mut eassign, he) {
                    break;
                }
            }
            if !increment(&mut vassign, hv) {
                break;
            }
        }
        count
    }

    fn increment(digits: &mut [usize], radix: usize) -> bool {
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < radix {
                return true;
            }
            *d = 0;
        }
        false
    }

    #[test]
    fn terminal_object_receives_exactly_one_hom() {
        let p2 = Arc::new(path_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        assert_eq!(enumerate_homs(&p2, &c1).count(), 1);
    }

    #[test]
    fn path_to_itself_has_only_the_identity() {
        // Frozen from brute force over the four vertex maps.
        let p2 = Arc::new(path_quiver(2).unwrap());
        let homs: Vec<_> = enumerate_homs(&p2, &p2).collect();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0], QuiverMorphism::identity(p2.clone()));
        assert_eq!(brute_hom_count(&p2, &p2), 1);
    }

    #[test]
    fn cycles_do_not_map_into_paths() {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        for n in 2..=5 {
            let pn = Arc::new(path_quiver(n).unwrap());
            assert_eq!(enumerate_homs(&c2, &pn).count(), 0);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_quivers() {
        let quivers: Vec<Arc<Quiver>> = vec![
            Arc::new(path_quiver(2).unwrap()),
            Arc::new(path_quiver(3).unwrap()),
            Arc::new(cycle_quiver(2).unwrap()),
            Arc::new(cycle_quiver(3).unwrap()),
            Arc::new(loaded_quiver(2, 1).unwrap()),
        ];
        for g in &quivers {
            for h in &quivers {
                let streamed: Vec<_> = enumerate_homs(g, h).collect();
                assert_eq!(streamed.len(), brute_hom_count(g, h), "{g:?} -> {h:?}");
                for m in &streamed {
                    assert!(m.is_valid());
                }
                // Exactly once, in lexicographic order.
                let mut keys: Vec<(Vec<usize>, Vec<usize>)> = streamed
                    .iter()
                    .map(|m| {
                        (
                            m.vmap().iter().map(|v| v.0).collect(),
                            m.emap().iter().map(|e| e.0).collect(),
                        )
                    })
                    .collect();
                let sorted = {
                    let mut s = keys.clone();
                    s.sort();
                    s
                };
                assert_eq!(keys, sorted);
                keys.dedup();
                assert_eq!(keys.len(), streamed.len());
            }
        }
    }

    #[test]
    fn empty_domain_yields_the_single_empty_hom() {
        let empty = Arc::new(Quiver::validate(&crate::quiver::RawQuiver::default()).unwrap());
        let c3 = Arc::new(cycle_quiver(3).unwrap());
        assert_eq!(enumerate_homs(&empty, &c3).count(), 1);
        assert_eq!(enumerate_homs(&c3, &empty).count(), 0);
    }

    #[test]
    fn interrupted_enumeration_resumes_without_skips() {
        let l2 = Arc::new(loaded_quiver(2, 2).unwrap());
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        for (g, h) in [(&l2, &l2), (&c2, &l2), (&l2, &c2)] {
            let all: Vec<_> = enumerate_homs(g, h).collect();
            let mut resumed = Vec::new();
            let mut iter = enumerate_homs(g, h);
            loop {
                // A budget this small trips constantly mid-tree.
                match iter.next_budgeted(&mut Budget::new(3)) {
                    Ok(Some(m)) => resumed.push(m),
                    Ok(None) => break,
                    Err(QuiverError::Budget(_)) => continue,
                    Err(other) => panic!("unexpected error {other:?}"),
                }
            }
            assert_eq!(resumed, all);
        }
    }

    #[test]
    fn budget_aborts_instead_of_hanging() {
        let l3 = Arc::new(loaded_quiver(3, 2).unwrap());
        let mut iter = enumerate_homs(&l3, &l3);
        let mut budget = Budget::new(5);
        let mut hit = false;
        for _ in 0..1000 {
            match iter.next_budgeted(&mut budget) {
                Err(QuiverError::Budget(_)) => {
                    hit = true;
                    break;
                }
                Err(other) => panic!("unexpected error {other:?}"),
                Ok(Some(_)) => continue,
                Ok(None) => break,
            }
        }
        assert!(hit);
    }

    #[test]
    fn forced_extension_along_phi_three() {
        let phi = phi_n(3).unwrap();
        let c3 = phi.codomain_arc().clone();
        // psi embeds P_3 onto the first two edges of C_3.
        let psi = QuiverMorphism::new(
            phi.domain_arc().clone(),
            c3.clone(),
            vec![VertexId(0), VertexId(1), VertexId(2)],
            vec![EdgeId(0), EdgeId(1)],
        )
        .unwrap();
        let tilde = extend_morphism(&phi, &psi, &mut Budget::unlimited())
            .unwrap()
            .expect("extension exists");
        assert_eq!(tilde, QuiverMorphism::identity(c3));
        assert_eq!(psi, phi.then(&tilde).unwrap());
    }

    #[test]
    fn extension_absent_when_the_cycle_cannot_close() {
        // All maps C_2 -> P_2 fail, so the identity of P_2 cannot extend.
        let phi = phi_n(2).unwrap();
        let p2 = phi.domain_arc().clone();
        let psi = QuiverMorphism::identity(p2);
        let found = extend_morphism(&phi, &psi, &mut Budget::unlimited()).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn identity_extends_to_itself() {
        let c3 = Arc::new(cycle_quiver(3).unwrap());
        let id = QuiverMorphism::identity(c3.clone());
        let psi = QuiverMorphism::new(
            c3.clone(),
            c3.clone(),
            vec![VertexId(1), VertexId(2), VertexId(0)],
            vec![EdgeId(1), EdgeId(2), EdgeId(0)],
        )
        .unwrap();
        let tilde = extend_morphism(&id, &psi, &mut Budget::unlimited())
            .unwrap()
            .expect("identity extension");
        assert_eq!(tilde, psi);
    }

    #[test]
    fn non_monic_phi_is_rejected() {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let c1 = Arc::new(cycle_quiver(1).unwrap());
        let collapse = QuiverMorphism::new(
            c2.clone(),
            c1,
            vec![VertexId(0), VertexId(0)],
            vec![EdgeId(0), EdgeId(0)],
        )
        .unwrap();
        let psi = QuiverMorphism::identity(c2);
        let err = extend_morphism(&collapse, &psi, &mut Budget::unlimited()).unwrap_err();
        assert!(matches!(err, QuiverError::Precondition(_)));
    }
}
