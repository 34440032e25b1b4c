//! Blow-ups: inflate each vertex of a base quiver into a block of vertices
//! and each edge into a block of edges that fully connects the corresponding
//! blocks.
//!
//! Three conditions make partitions `(A_v)` of `V(H)` and `(B_e)` of `E(H)` a
//! blow-up witness: every `f ∈ B_e` starts in `A_{src(e)}`, ends in
//! `A_{tgt(e)}`, and every pair `x ∈ A_{src(e)}`, `y ∈ A_{tgt(e)}` is joined
//! by at least one edge of `B_e`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Budget, QuiverError};
use crate::morphism::QuiverMorphism;
use crate::quiver::{EdgeId, Quiver, RawQuiver, VertexId};
use crate::retract::CertificateViolation;

/// How many parallel copies each base edge receives per vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Uniform(usize),
    /// Indexed by base edge.
    PerEdge(Vec<usize>),
}

impl Multiplicity {
    fn of(&self, e: EdgeId) -> usize {
        match self {
            Multiplicity::Uniform(m) => *m,
            Multiplicity::PerEdge(ms) => ms[e.0],
        }
    }
}

/// Construction data for a blow-up: how large each vertex block is and how
/// many parallel edges each pair receives. The minimal blow-up uses
/// multiplicity one everywhere.
#[derive(Clone, Debug)]
pub struct BlowupSpec {
    pub base: Arc<Quiver>,
    /// Block size per base vertex, in vertex order.
    pub vertex_sizes: Vec<usize>,
    pub multiplicity: Multiplicity,
}

/// A checkable blow-up witness: the partitions tying `blown` to `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupWitness {
    pub base: Arc<Quiver>,
    pub blown: Arc<Quiver>,
    /// Block `A_v` of `V(blown)` per base vertex, ascending.
    pub vertex_blocks: Vec<Vec<VertexId>>,
    /// Block `B_e` of `E(blown)` per base edge, ascending.
    pub edge_blocks: Vec<Vec<EdgeId>>,
}

/// Builds the blow-up described by `spec`. Ids are derived from the base:
/// vertex copy `i` of `v` is `v.i`, and copy `k` of edge `e` between the
/// `i`-th source and `j`-th target vertices is `e.i.j.k`, so output is
/// byte-stable.
pub fn construct_blowup(spec: &BlowupSpec) -> Result<BlowupWitness, QuiverError> {
    let base = &spec.base;
    if spec.vertex_sizes.len() != base.vertex_count() {
        return Err(QuiverError::InvalidSpec(format!(
            "{} sizes for {} vertices",
            spec.vertex_sizes.len(),
            base.vertex_count()
        )));
    }
    if let Some(v) = spec.vertex_sizes.iter().position(|&s| s == 0) {
        return Err(QuiverError::InvalidSpec(format!(
            "vertex `{}` has size zero",
            base.vertex_name(VertexId(v))
        )));
    }
    if let Multiplicity::PerEdge(ms) = &spec.multiplicity {
        if ms.len() != base.edge_count() {
            return Err(QuiverError::InvalidSpec(format!(
                "{} multiplicities for {} edges",
                ms.len(),
                base.edge_count()
            )));
        }
    }
    if let Some(e) = base.edges().find(|&e| spec.multiplicity.of(e) == 0) {
        return Err(QuiverError::InvalidSpec(format!(
            "edge `{}` has multiplicity zero",
            base.edge_name(e)
        )));
    }

    let mut raw = RawQuiver::default();
    let mut vertex_offset = vec![0usize; base.vertex_count()];
    let mut next_vertex = 0;
    for v in base.vertices() {
        vertex_offset[v.0] = next_vertex;
        for i in 0..spec.vertex_sizes[v.0] {
            raw = raw.vertex(&format!("{}.{i}", base.vertex_name(v)));
            next_vertex += 1;
        }
    }

    let vertex_blocks: Vec<Vec<VertexId>> = base
        .vertices()
        .map(|v| {
            (0..spec.vertex_sizes[v.0])
                .map(|i| VertexId(vertex_offset[v.0] + i))
                .collect()
        })
        .collect();
    let mut edge_blocks: Vec<Vec<EdgeId>> = vec![Vec::new(); base.edge_count()];

    let mut next_edge = 0;
    for e in base.edges() {
        let src = base.src(e);
        let tgt = base.tgt(e);
        for i in 0..spec.vertex_sizes[src.0] {
            for j in 0..spec.vertex_sizes[tgt.0] {
                for k in 0..spec.multiplicity.of(e) {
                    raw = raw.edge(
                        &format!("{}.{i}.{j}.{k}", base.edge_name(e)),
                        &format!("{}.{i}", base.vertex_name(src)),
                        &format!("{}.{j}", base.vertex_name(tgt)),
                    );
                    edge_blocks[e.0].push(EdgeId(next_edge));
                    next_edge += 1;
                }
            }
        }
    }

    let blown = Arc::new(Quiver::validate(&raw).expect("derived ids are unique"));
    Ok(BlowupWitness {
        base: base.clone(),
        blown,
        vertex_blocks,
        edge_blocks,
    })
}

/// Decides whether `h` is a blow-up of `base`, returning the first witness
/// in assignment order. The search classes each vertex of `h`, prunes on
/// edge feasibility and block nonemptiness, then assigns edge blocks and
/// checks fullness.
pub fn recognize_blowup(
    base: &Arc<Quiver>,
    h: &Arc<Quiver>,
    budget: &mut Budget,
) -> Result<Option<BlowupWitness>, QuiverError> {
    if base.is_empty() {
        // Partitions indexed by nothing can only cover nothing.
        if h.is_empty() {
            return Ok(Some(BlowupWitness {
                base: base.clone(),
                blown: h.clone(),
                vertex_blocks: Vec::new(),
                edge_blocks: Vec::new(),
            }));
        }
        return Ok(None);
    }
    // Blocks are nonempty, so h needs at least as many vertices and edges.
    if h.vertex_count() < base.vertex_count() || h.edge_count() < base.edge_count() {
        return Ok(None);
    }

    let mut search = RecognizeSearch {
        base,
        h,
        vertex_class: vec![usize::MAX; h.vertex_count()],
        class_sizes: vec![0usize; base.vertex_count()],
        unused_classes: base.vertex_count(),
        edge_class: vec![usize::MAX; h.edge_count()],
    };
    if search.assign_vertex(0, budget)? {
        let witness = search.into_witness();
        debug_assert!(verify_blowup_witness(&witness).is_ok());
        return Ok(Some(witness));
    }
    Ok(None)
}

struct RecognizeSearch<'a> {
    base: &'a Arc<Quiver>,
    h: &'a Arc<Quiver>,
    vertex_class: Vec<usize>,
    class_sizes: Vec<usize>,
    unused_classes: usize,
    edge_class: Vec<usize>,
}

impl<'a> RecognizeSearch<'a> {
    fn assign_vertex(&mut self, w: usize, budget: &mut Budget) -> Result<bool, QuiverError> {
        if w == self.h.vertex_count() {
            if self.unused_classes > 0 {
                return Ok(false);
            }
            return self.check_pair_coverage_relaxed(budget);
        }
        // Every class must end up nonempty.
        let remaining = self.h.vertex_count() - w;
        if remaining < self.unused_classes {
            return Ok(false);
        }
        for class in 0..self.base.vertex_count() {
            budget.spend()?;
            if !self.vertex_feasible(w, class) {
                continue;
            }
            self.vertex_class[w] = class;
            self.class_sizes[class] += 1;
            if self.class_sizes[class] == 1 {
                self.unused_classes -= 1;
            }
            if self.assign_vertex(w + 1, budget)? {
                return Ok(true);
            }
            self.class_sizes[class] -= 1;
            if self.class_sizes[class] == 0 {
                self.unused_classes += 1;
            }
            self.vertex_class[w] = usize::MAX;
        }
        Ok(false)
    }

    /// A class is feasible when every h-edge now closed by `w` has at least
    /// one base edge between the endpoint classes.
    fn vertex_feasible(&self, w: usize, class: usize) -> bool {
        let wv = VertexId(w);
        for e in self.h.out_edges(wv).chain(self.h.in_edges(wv)) {
            let s = self.h.src(e).0;
            let t = self.h.tgt(e).0;
            let s_class = if s == w { class } else { self.vertex_class[s] };
            let t_class = if t == w { class } else { self.vertex_class[t] };
            if s_class == usize::MAX || t_class == usize::MAX {
                continue;
            }
            if !self
                .base
                .has_edge_between(VertexId(s_class), VertexId(t_class))
            {
                return false;
            }
        }
        true
    }

    /// Necessary half of the fullness condition, ignoring edge blocks: every
    /// pair of vertices spanning a base edge must already be joined in `h`.
    fn check_pair_coverage_relaxed(&mut self, budget: &mut Budget) -> Result<bool, QuiverError> {
        for e in self.base.edges() {
            let s_class = self.base.src(e).0;
            let t_class = self.base.tgt(e).0;
            for x in self.h.vertices().filter(|x| self.vertex_class[x.0] == s_class) {
                for y in self.h.vertices().filter(|y| self.vertex_class[y.0] == t_class) {
                    if !self.h.has_edge_between(x, y) {
                        return Ok(false);
                    }
                }
            }
        }
        self.assign_edge(0, budget)
    }

    fn assign_edge(&mut self, f: usize, budget: &mut Budget) -> Result<bool, QuiverError> {
        if f == self.h.edge_count() {
            return Ok(self.check_fullness());
        }
        let fe = EdgeId(f);
        let s_class = VertexId(self.vertex_class[self.h.src(fe).0]);
        let t_class = VertexId(self.vertex_class[self.h.tgt(fe).0]);
        let candidates: Vec<EdgeId> = self.base.edges_between(s_class, t_class).collect();
        for e in candidates {
            budget.spend()?;
            self.edge_class[f] = e.0;
            if self.assign_edge(f + 1, budget)? {
                return Ok(true);
            }
        }
        self.edge_class[f] = usize::MAX;
        Ok(false)
    }

    /// Full fullness check: each base edge block joins every spanned pair.
    fn check_fullness(&self) -> bool {
        let mut joined: HashSet<(usize, usize, usize)> = HashSet::new();
        for f in self.h.edges() {
            joined.insert((self.h.src(f).0, self.h.tgt(f).0, self.edge_class[f.0]));
        }
        for e in self.base.edges() {
            let s_class = self.base.src(e).0;
            let t_class = self.base.tgt(e).0;
            for x in 0..self.h.vertex_count() {
                if self.vertex_class[x] != s_class {
                    continue;
                }
                for y in 0..self.h.vertex_count() {
                    if self.vertex_class[y] != t_class {
                        continue;
                    }
                    if !joined.contains(&(x, y, e.0)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn into_witness(self) -> BlowupWitness {
        let mut vertex_blocks = vec![Vec::new(); self.base.vertex_count()];
        for (w, &class) in self.vertex_class.iter().enumerate() {
            vertex_blocks[class].push(VertexId(w));
        }
        let mut edge_blocks = vec![Vec::new(); self.base.edge_count()];
        for (f, &class) in self.edge_class.iter().enumerate() {
            edge_blocks[class].push(EdgeId(f));
        }
        BlowupWitness {
            base: self.base.clone(),
            blown: self.h.clone(),
            vertex_blocks,
            edge_blocks,
        }
    }
}

/// Re-checks a witness against the definition, independently of any search:
/// genuine partitions with nonempty blocks, block-respecting endpoints, and
/// fullness. Runs in `O(|E(blown)| + Σ|A|·|A|)` per base edge.
pub fn verify_blowup_witness(w: &BlowupWitness) -> Result<(), CertificateViolation> {
    let base = &w.base;
    let blown = &w.blown;
    if w.vertex_blocks.len() != base.vertex_count() || w.edge_blocks.len() != base.edge_count() {
        return Err(CertificateViolation(
            "witness blocks not indexed by the base".into(),
        ));
    }

    let vertex_class = partition_classes(&w.vertex_blocks, blown.vertex_count(), "vertex")?;
    let edge_class = partition_classes(&w.edge_blocks, blown.edge_count(), "edge")?;

    for f in blown.edges() {
        let e = EdgeId(edge_class[f.0]);
        if vertex_class[blown.src(f).0] != base.src(e).0 {
            return Err(CertificateViolation(format!(
                "edge `{}` starts outside the source block of `{}`",
                blown.edge_name(f),
                base.edge_name(e)
            )));
        }
        if vertex_class[blown.tgt(f).0] != base.tgt(e).0 {
            return Err(CertificateViolation(format!(
                "edge `{}` ends outside the target block of `{}`",
                blown.edge_name(f),
                base.edge_name(e)
            )));
        }
    }

    let mut joined: HashSet<(usize, usize, usize)> = HashSet::new();
    for f in blown.edges() {
        joined.insert((blown.src(f).0, blown.tgt(f).0, edge_class[f.0]));
    }
    for e in base.edges() {
        for &x in &w.vertex_blocks[base.src(e).0] {
            for &y in &w.vertex_blocks[base.tgt(e).0] {
                if !joined.contains(&(x.0, y.0, e.0)) {
                    return Err(CertificateViolation(format!(
                        "no `{}` edge joins `{}` to `{}`",
                        base.edge_name(e),
                        blown.vertex_name(x),
                        blown.vertex_name(y)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn partition_classes<T: Copy + Into<usize>>(
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
                    "{what} block {b} exceeds the quiver"
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

/// The class-collapsing retraction induced by a witness, with the section it
/// splits: representatives are the least element of each block and the least
/// block edge joining them.
#[derive(Clone, Debug)]
pub struct RetractionPair {
    /// `q: blown -> base`.
    pub retraction: QuiverMorphism,
    /// `j: base -> blown` with `q ∘ j = id`.
    pub section: QuiverMorphism,
}

pub fn blowup_retraction(w: &BlowupWitness) -> Result<RetractionPair, QuiverError> {
    verify_blowup_witness(w)
        .map_err(|v| QuiverError::Precondition(format!("invalid witness: {v}")))?;

    let base = &w.base;
    let blown = &w.blown;
    let mut vertex_class = vec![0usize; blown.vertex_count()];
    for (v, block) in w.vertex_blocks.iter().enumerate() {
        for &x in block {
            vertex_class[x.0] = v;
        }
    }
    let mut edge_class = vec![0usize; blown.edge_count()];
    for (e, block) in w.edge_blocks.iter().enumerate() {
        for &f in block {
            edge_class[f.0] = e;
        }
    }
    let retraction = QuiverMorphism::new(
        blown.clone(),
        base.clone(),
        vertex_class.iter().map(|&v| VertexId(v)).collect(),
        edge_class.iter().map(|&e| EdgeId(e)).collect(),
    )?;

    let chosen_v: Vec<VertexId> = w.vertex_blocks.iter().map(|block| block[0]).collect();
    let chosen_e: Vec<EdgeId> = base
        .edges()
        .map(|e| {
            let x = chosen_v[base.src(e).0];
            let y = chosen_v[base.tgt(e).0];
            blown
                .edges_between(x, y)
                .find(|&f| edge_class[f.0] == e.0)
                .expect("fullness was verified")
        })
        .collect();
    let section = QuiverMorphism::new(base.clone(), blown.clone(), chosen_v, chosen_e)?;

    debug_assert_eq!(
        section.then(&retraction).expect("composable"),
        QuiverMorphism::identity(base.clone())
    );
    Ok(RetractionPair {
        retraction,
        section,
    })
}
