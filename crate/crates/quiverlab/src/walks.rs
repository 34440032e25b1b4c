//! Walk analytics: the exact-length walk relation, deterministic walk
//! extraction, and minimum closed walks.

use crate::quiver::{EdgeId, Quiver, VertexId};

/// A concrete walk: vertices `v_1..v_{k+1}` and edges `e_1..e_k` with
/// `src(e_j) = v_j` and `tgt(e_j) = v_{j+1}`. A walk of length zero is a
/// single vertex with no edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkWitness {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl WalkWitness {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("walks hold at least one vertex")
    }

    /// Re-checks the witness against the quiver it claims to live in.
    pub fn verify(&self, q: &Quiver) -> bool {
        if self.vertices.is_empty() || self.vertices.len() != self.edges.len() + 1 {
            return false;
        }
        if self.vertices.iter().any(|v| v.0 >= q.vertex_count()) {
            return false;
        }
        self.edges.iter().enumerate().all(|(j, &e)| {
            e.0 < q.edge_count()
                && q.src(e) == self.vertices[j]
                && q.tgt(e) == self.vertices[j + 1]
        })
    }
}

/// A boolean relation on the vertex set, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRelation {
    n: usize,
    bits: Vec<bool>,
}

impl WalkRelation {
    fn identity(n: usize) -> Self {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        WalkRelation { n, bits }
    }

    fn adjacency(q: &Quiver) -> Self {
        let n = q.vertex_count();
        let mut bits = vec![false; n * n];
        for e in q.edges() {
            bits[q.src(e).0 * n + q.tgt(e).0] = true;
        }
        WalkRelation { n, bits }
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.bits[u.0 * self.n + v.0]
    }

    /// Ordered pairs of the relation, row-major.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| {
                if self.bits[u * self.n + v] {
                    Some((VertexId(u), VertexId(v)))
                } else {
                    None
                }
            })
        })
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// Relational composition: `(u, w)` iff some `v` has `(u, v)` here and
    /// `(v, w)` in `other`.
    pub fn compose(&self, other: &WalkRelation) -> WalkRelation {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut bits = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                if self.bits[u * n + v] {
                    for w in 0..n {
                        if other.bits[v * n + w] {
                            bits[u * n + w] = true;
                        }
                    }
                }
            }
        }
        WalkRelation { n, bits }
    }

    fn meets_diagonal(&self) -> Option<VertexId> {
        (0..self.n).find(|&i| self.bits[i * self.n + i]).map(VertexId)
    }
}

/// The relation of exact-length-`k` walks, the k-th boolean power of the
/// adjacency relation. `k = 0` is the identity relation.
pub fn walk_pairs(q: &Quiver, k: usize) -> WalkRelation {
    let mut result = WalkRelation::identity(q.vertex_count());
    let mut base = WalkRelation::adjacency(q);
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.compose(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.compose(&base);
        }
    }
    result
}

/// For each step count `t = 0..=k`, the set of vertices from which a walk of
/// exactly `t` edges reaches `target`. Vectors indexed by vertex.
fn reach_in(q: &Quiver, target: VertexId, k: usize) -> Vec<Vec<bool>> {
    let n = q.vertex_count();
    let mut levels = Vec::with_capacity(k + 1);
    let mut current = vec![false; n];
    current[target.0] = true;
    levels.push(current.clone());
    for _ in 0..k {
        let mut next = vec![false; n];
        for e in q.edges() {
            if current[q.tgt(e).0] {
                next[q.src(e).0] = true;
            }
        }
        levels.push(next.clone());
        current = next;
    }
    levels
}

/// A concrete walk of exactly `k` edges from `u` to `v`, when one exists.
/// Deterministic: the lexicographically least edge sequence in edge order.
pub fn find_walk(q: &Quiver, u: VertexId, v: VertexId, k: usize) -> Option<WalkWitness> {
    let levels = reach_in(q, v, k);
    if !levels[k][u.0] {
        return None;
    }
    let mut vertices = vec![u];
    let mut edges = Vec::with_capacity(k);
    let mut here = u;
    for step in 0..k {
        let remaining = k - step - 1;
        let e = q
            .out_edges(here)
            .find(|&e| levels[remaining][q.tgt(e).0])
            .expect("feasibility was established by the level sets");
        here = q.tgt(e);
        vertices.push(here);
        edges.push(e);
    }
    Some(WalkWitness { vertices, edges })
}

/// The shortest closed walk, if any: the least length `l >= 1` whose walk
/// relation meets the diagonal, witnessed from the least such vertex. Lengths
/// beyond the vertex count need not be searched — a minimal closed walk never
/// repeats a vertex.
pub fn min_closed_walk(q: &Quiver) -> Option<WalkWitness> {
    let adjacency = WalkRelation::adjacency(q);
    let mut power = WalkRelation::identity(q.vertex_count());
    for length in 1..=q.vertex_count() {
        power = power.compose(&adjacency);
        if let Some(v) = power.meets_diagonal() {
            let witness = find_walk(q, v, v, length).expect("diagonal pair has a walk");
            return Some(witness);
        }
    }
    None
}
