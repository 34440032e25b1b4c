//! Shared generators and independent oracles for the integration suites.

#![allow(dead_code)]

use std::sync::Arc;

use quiverlab::{EdgeId, Quiver, QuiverMorphism, RawQuiver, VertexId};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random quiver with `1..=max_v` vertices, `0..=max_e` edges, and the
/// given probability that an edge is a loop.
pub fn random_quiver(
    rng: &mut ChaCha8Rng,
    max_v: usize,
    max_e: usize,
    loop_p: f64,
) -> Arc<Quiver> {
    let v = rng.random_range(1..=max_v);
    let e = rng.random_range(0..=max_e);
    let mut raw = RawQuiver::default();
    for i in 0..v {
        raw = raw.vertex(&format!("v{i}"));
    }
    for k in 0..e {
        let (s, t) = if v == 1 || rng.random_bool(loop_p) {
            let s = rng.random_range(0..v);
            (s, s)
        } else {
            let s = rng.random_range(0..v);
            let mut t = rng.random_range(0..v - 1);
            if t >= s {
                t += 1;
            }
            (s, t)
        };
        raw = raw.edge(&format!("e{k}"), &format!("v{s}"), &format!("v{t}"));
    }
    Arc::new(Quiver::validate(&raw).expect("generated ids are unique"))
}

/// Exhaustive assignment-vector count of homomorphisms, fully independent of
/// the search engine: every vertex/edge map is tried and the squares checked
/// directly.
pub fn brute_hom_count(g: &Quiver, h: &Quiver) -> usize {
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
            let ok = (0..ge).all(|e| {
                let img = EdgeId(eassign[e]);
                h.src(img).0 == vassign[g.src(EdgeId(e)).0]
                    && h.tgt(img).0 == vassign[g.tgt(EdgeId(e)).0]
            });
            if ok {
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

/// Depth-first existence of a walk with exactly `len` edges from `u` to `v`,
/// independent of the relation machinery.
pub fn brute_walk_exists(q: &Quiver, u: VertexId, v: VertexId, len: usize) -> bool {
    if len == 0 {
        return u == v;
    }
    q.out_edges(u)
        .any(|e| brute_walk_exists(q, q.tgt(e), v, len - 1))
}

/// The least closed-walk length found by brute enumeration up to `|V|`.
pub fn brute_min_closed_walk_len(q: &Quiver) -> Option<usize> {
    (1..=q.vertex_count())
        .find(|&len| q.vertices().any(|v| brute_walk_exists(q, v, v, len)))
}

/// Brute-force left-inverse existence: some `q: H -> G` with `q ∘ j = id`.
pub fn brute_has_left_inverse(j: &QuiverMorphism) -> bool {
    let id = QuiverMorphism::identity(j.domain_arc().clone());
    quiverlab::enumerate_homs(j.codomain_arc(), j.domain_arc())
        .any(|q| j.then(&q).expect("composable") == id)
}

/// Brute-force right-inverse existence: some `j: G -> H` with `q ∘ j = id`.
pub fn brute_has_right_inverse(q: &QuiverMorphism) -> bool {
    let id = QuiverMorphism::identity(q.codomain_arc().clone());
    quiverlab::enumerate_homs(q.codomain_arc(), q.domain_arc())
        .any(|j| j.then(q).expect("composable") == id)
}
