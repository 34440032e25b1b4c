//! Injectivity analysis for the path-into-cycle embeddings, and the
//! structural classifier.
//!
//! A quiver `J` is injective with respect to a monic `phi: D -> C` when every
//! `psi: D -> J` extends along `phi`. For `phi_n: P_n -> C_n` this reduces to
//! a walk criterion: every walk of `n-1` edges admits an edge from its end
//! back to its start. The classifier turns a positive verdict into structure:
//! each weakly connected component is loaded, a blow-up of a directed cycle
//! whose length divides `n`, or too short to carry a walk of `n-1` edges.

use std::sync::Arc;

use crate::blowup::{verify_blowup_witness, BlowupWitness};
use crate::construct::{component_quiver, weak_components};
use crate::error::{Budget, QuiverError};
use crate::families::cycle_quiver;
use crate::homs::{enumerate_homs, extend_morphism};
use crate::morphism::{phi_n, QuiverMorphism};
use crate::quiver::{EdgeId, Quiver, VertexId};
use crate::walks::{find_walk, min_closed_walk, walk_pairs, WalkWitness};

/// The outcome of an injectivity decision.
#[derive(Clone, Debug)]
pub enum InjectivityVerdict {
    /// Injective; `checked` summarizes how many obligations were discharged
    /// (morphisms extended, or walk pairs inspected).
    Injective { checked: usize },
    NotInjective(Box<Counterexample>),
}

impl InjectivityVerdict {
    pub fn injective(&self) -> bool {
        matches!(self, InjectivityVerdict::Injective { .. })
    }
}

/// A morphism that admits no extension, witnessing non-injectivity.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub phi: QuiverMorphism,
    pub psi: QuiverMorphism,
    /// For the walk criterion: the walk `psi` traces, whose endpoints have no
    /// return edge.
    pub walk: Option<WalkWitness>,
}

/// Decides injectivity directly from the definition: enumerates every
/// `psi: D -> J` and attempts the extension along `phi`. Use for arbitrary
/// monic maps or as the slow cross-check of the walk criterion.
pub fn is_phi_injective_brute(
    j: &Arc<Quiver>,
    phi: &QuiverMorphism,
    budget: &mut Budget,
) -> Result<InjectivityVerdict, QuiverError> {
    if phi.check().is_err() || !phi.is_monic() {
        return Err(QuiverError::Precondition(
            "injectivity is tested against monic quiver maps".into(),
        ));
    }
    let mut checked = 0;
    let mut iter = enumerate_homs(phi.domain_arc(), j);
    while let Some(psi) = iter.next_budgeted(budget)? {
        if extend_morphism(phi, &psi, budget)?.is_none() {
            return Ok(InjectivityVerdict::NotInjective(Box::new(Counterexample {
                phi: phi.clone(),
                psi,
                walk: None,
            })));
        }
        checked += 1;
    }
    Ok(InjectivityVerdict::Injective { checked })
}

/// Fast decision for `phi_n`: compute the exact-length walk relation and
/// check every pair for a return edge. The counterexample packages the first
/// failing pair's walk as a morphism from the path.
pub fn is_phin_injective(j: &Arc<Quiver>, n: usize) -> Result<InjectivityVerdict, QuiverError> {
    if n < 2 {
        return Err(QuiverError::InvalidSize(
            "the walk criterion needs n >= 2".into(),
        ));
    }
    let relation = walk_pairs(j, n - 1);
    let mut checked = 0;
    for (u, v) in relation.pairs() {
        if !j.has_edge_between(v, u) {
            let walk = find_walk(j, u, v, n - 1).expect("relation pair has a walk");
            let phi = phi_n(n)?;
            let psi = walk_morphism(phi.domain_arc(), j, &walk)?;
            return Ok(InjectivityVerdict::NotInjective(Box::new(Counterexample {
                phi,
                psi,
                walk: Some(walk),
            })));
        }
        checked += 1;
    }
    Ok(InjectivityVerdict::Injective { checked })
}

/// The morphism from a path quiver tracing a walk of matching length.
fn walk_morphism(
    path: &Arc<Quiver>,
    j: &Arc<Quiver>,
    walk: &WalkWitness,
) -> Result<QuiverMorphism, QuiverError> {
    QuiverMorphism::new(
        path.clone(),
        j.clone(),
        walk.vertices.clone(),
        walk.edges.clone(),
    )
}

/// The two-step criterion: every non-loop edge must have a companion in
/// reverse. Returns the first offending edge, or `None` when the structure
/// holds. Agrees with `is_phin_injective(j, 2)`.
pub fn phi2_structure(j: &Quiver) -> Option<EdgeId> {
    j.edges()
        .find(|&e| j.src(e) != j.tgt(e) && !j.has_edge_between(j.tgt(e), j.src(e)))
}

/// Layers a quiver that carries no walk of `n-1` edges by the longest walk
/// ending at each vertex; every edge then climbs strictly. Returns `None`
/// when a walk of `n-1` edges exists.
pub fn layering(component: &Quiver, n: usize) -> Option<Vec<Vec<VertexId>>> {
    if n < 2 || !walk_pairs(component, n - 1).is_empty() {
        return None;
    }
    if component.is_empty() {
        return Some(Vec::new());
    }
    // No walk of length n-1 >= 1 rules out cycles, so the levels terminate.
    let vcount = component.vertex_count();
    let mut indegree: Vec<usize> = (0..vcount)
        .map(|v| component.in_edges(VertexId(v)).count())
        .collect();
    let mut level = vec![0usize; vcount];
    let mut queue: Vec<usize> = (0..vcount).filter(|&v| indegree[v] == 0).collect();
    let mut processed = 0;
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        processed += 1;
        for e in component.out_edges(VertexId(v)) {
            let w = component.tgt(e).0;
            level[w] = level[w].max(level[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push(w);
            }
        }
    }
    debug_assert_eq!(processed, vcount, "short components are acyclic");
    let depth = level.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for v in 0..vcount {
        layers[level[v]].push(VertexId(v));
    }
    Some(layers)
}

/// Per-component structure of a quiver that passed (or failed) the walk
/// criterion. Ids refer to the component quiver carried alongside.
#[derive(Clone, Debug)]
pub struct ComponentClass {
    pub component: Arc<Quiver>,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug)]
pub enum ComponentKind {
    /// Weakly connected, injective, and carrying a loop: necessarily loaded.
    Loaded,
    /// Injective with a long walk and no loop: a blow-up of the directed
    /// cycle whose length divides `n`.
    CycleBlowup {
        cycle_length: usize,
        witness: BlowupWitness,
    },
    /// No walk of `n-1` edges; the layering shows every edge climbing.
    Short {
        layers: Vec<Vec<VertexId>>,
        vacuous: bool,
    },
    /// The walk criterion failed; the walk's endpoints have no return edge.
    NotInjective { walk: WalkWitness },
}

impl ComponentKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ComponentKind::Loaded => "loaded",
            ComponentKind::CycleBlowup { .. } => "cycle_blowup",
            ComponentKind::Short { .. } => "short",
            ComponentKind::NotInjective { .. } => "not_injective",
        }
    }
}

/// The full classification verdict.
#[derive(Clone, Debug)]
pub struct Classification {
    pub n: usize,
    pub injective: bool,
    pub detail: ClassificationDetail,
}

#[derive(Clone, Debug)]
pub enum ClassificationDetail {
    /// `n = 2` has no structural dichotomy; the verdict is the reverse-edge
    /// criterion with the first offending edge.
    Phi2 { offending: Option<EdgeId> },
    Components(Vec<ComponentClass>),
}

/// Classifies each weak component of `j` against the structure dichotomy.
/// For `n = 2` this delegates to [`phi2_structure`]. For `n >= 3` each
/// component is short, not injective, loaded, or a verified blow-up of a
/// cycle of length dividing `n`. Every emitted certificate has been
/// re-checked by its independent verifier.
pub fn classify(j: &Arc<Quiver>, n: usize) -> Result<Classification, QuiverError> {
    if n < 2 {
        return Err(QuiverError::InvalidSize(
            "classification needs n >= 2".into(),
        ));
    }
    if n == 2 {
        let offending = phi2_structure(j);
        return Ok(Classification {
            n,
            injective: offending.is_none(),
            detail: ClassificationDetail::Phi2 { offending },
        });
    }

    if j.is_empty() {
        return Ok(Classification {
            n,
            injective: true,
            detail: ClassificationDetail::Components(vec![ComponentClass {
                component: j.clone(),
                kind: ComponentKind::Short {
                    layers: Vec::new(),
                    vacuous: true,
                },
            }]),
        });
    }

    let mut components = Vec::new();
    let mut injective = true;
    for part in weak_components(j) {
        let component = Arc::new(component_quiver(j, &part));
        let kind = classify_component(&component, n)?;
        if matches!(kind, ComponentKind::NotInjective { .. }) {
            injective = false;
        }
        components.push(ComponentClass { component, kind });
    }
    Ok(Classification {
        n,
        injective,
        detail: ClassificationDetail::Components(components),
    })
}

fn classify_component(c: &Arc<Quiver>, n: usize) -> Result<ComponentKind, QuiverError> {
    let relation = walk_pairs(c, n - 1);
    if relation.is_empty() {
        let layers = layering(c, n).ok_or_else(|| {
            QuiverError::InternalInconsistency("empty walk relation but no layering".into())
        })?;
        return Ok(ComponentKind::Short {
            layers,
            vacuous: false,
        });
    }

    if let Some((u, v)) = relation.pairs().find(|&(u, v)| !c.has_edge_between(v, u)) {
        let walk = find_walk(c, u, v, n - 1).expect("relation pair has a walk");
        return Ok(ComponentKind::NotInjective { walk });
    }

    if c.first_loop().is_some() {
        // A weakly connected injective quiver with a loop must be loaded.
        if !c.is_loaded() {
            return Err(QuiverError::InternalInconsistency(
                "looped injective component is not loaded".into(),
            ));
        }
        return Ok(ComponentKind::Loaded);
    }

    let cycle = min_closed_walk(c).ok_or_else(|| {
        QuiverError::InternalInconsistency("injective component with long walks has no cycle".into())
    })?;
    let cycle_length = cycle.len();
    if !n.is_multiple_of(cycle_length) {
        return Err(QuiverError::InternalInconsistency(format!(
            "minimal cycle length {cycle_length} does not divide {n}"
        )));
    }

    let witness = cycle_blowup_witness(c, &cycle)?;
    verify_blowup_witness(&witness)
        .map_err(|v| QuiverError::InternalInconsistency(format!("witness rejected: {v}")))?;
    Ok(ComponentKind::CycleBlowup {
        cycle_length,
        witness,
    })
}

/// Reads the blow-up partition off a minimal closed walk: the class stepping
/// after position `k` collects the heads of all edges leaving the walk's
/// `k`-th vertex. The resulting blocks must partition the component, with
/// every edge stepping exactly one class forward; anything else contradicts
/// the already-verified walk criterion.
fn cycle_blowup_witness(
    c: &Arc<Quiver>,
    cycle: &WalkWitness,
) -> Result<BlowupWitness, QuiverError> {
    let ell = cycle.len();
    let mut class = vec![usize::MAX; c.vertex_count()];
    for k in 0..ell {
        let vk = cycle.vertices[k];
        let class_idx = (k + 1) % ell;
        for f in c.out_edges(vk) {
            let x = c.tgt(f).0;
            if class[x] == usize::MAX {
                class[x] = class_idx;
            } else if class[x] != class_idx {
                return Err(QuiverError::InternalInconsistency(format!(
                    "vertex `{}` falls in two partite classes",
                    c.vertex_name(VertexId(x))
                )));
            }
        }
    }
    if let Some(x) = class.iter().position(|&cl| cl == usize::MAX) {
        return Err(QuiverError::InternalInconsistency(format!(
            "vertex `{}` missed by the partite classes",
            c.vertex_name(VertexId(x))
        )));
    }

    let mut vertex_blocks = vec![Vec::new(); ell];
    for (x, &cl) in class.iter().enumerate() {
        vertex_blocks[cl].push(VertexId(x));
    }
    let mut edge_blocks = vec![Vec::new(); ell];
    for f in c.edges() {
        let from = class[c.src(f).0];
        let to = class[c.tgt(f).0];
        if to != (from + 1) % ell {
            return Err(QuiverError::InternalInconsistency(format!(
                "edge `{}` skips a partite class",
                c.edge_name(f)
            )));
        }
        edge_blocks[from].push(f);
    }

    Ok(BlowupWitness {
        base: Arc::new(cycle_quiver(ell)?),
        blown: c.clone(),
        vertex_blocks,
        edge_blocks,
    })
}

/// Structural consequences of injectivity around loops, reported as missing
/// edges. For an input already verified injective the report must be empty;
/// the audit exists so that claim can be checked rather than trusted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosureReport {
    /// A walk of two edges with distinct endpoints touching a loop demands
    /// the reverse edge and a loop on the far vertex. Missing edges, as
    /// (src, tgt) pairs; loops appear as (v, v).
    pub propagation_missing: Vec<(VertexId, VertexId)>,
    /// Two chained edges ending in a loop demand edges both ways between all
    /// three vertices involved.
    pub triangulation_missing: Vec<(VertexId, VertexId)>,
}

impl ClosureReport {
    pub fn is_empty(&self) -> bool {
        self.propagation_missing.is_empty() && self.triangulation_missing.is_empty()
    }
}

pub fn check_lemma_closures(j: &Quiver, n: usize) -> Result<ClosureReport, QuiverError> {
    if n < 3 {
        return Err(QuiverError::InvalidSize(
            "the loop closures apply for n >= 3".into(),
        ));
    }
    let mut report = ClosureReport::default();

    for e in j.edges() {
        let u = j.src(e);
        let w = j.tgt(e);
        if u == w || (!j.has_loop_at(u) && !j.has_loop_at(w)) {
            continue;
        }
        if !j.has_edge_between(w, u) {
            report.propagation_missing.push((w, u));
        }
        for v in [u, w] {
            if !j.has_loop_at(v) {
                report.propagation_missing.push((v, v));
            }
        }
    }

    let adjacent =
        |a: VertexId, b: VertexId| j.has_edge_between(a, b) || j.has_edge_between(b, a);
    for w in j.vertices() {
        for x in j.vertices() {
            if x == w || !adjacent(w, x) {
                continue;
            }
            for y in j.vertices() {
                if y == w || y == x || !adjacent(x, y) || !j.has_loop_at(y) {
                    continue;
                }
                for (a, b) in [(w, x), (x, w), (x, y), (y, x), (w, y), (y, w)] {
                    if !j.has_edge_between(a, b) {
                        report.triangulation_missing.push((a, b));
                    }
                }
            }
        }
    }

    report.propagation_missing.sort();
    report.propagation_missing.dedup();
    report.triangulation_missing.sort();
    report.triangulation_missing.dedup();
    Ok(report)
}
