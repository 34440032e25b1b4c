//! Standard quiver families: directed paths, directed cycles, independent
//! sets, and loaded quivers.
//!
//! Naming is fixed so generated quivers are byte-stable: paths and cycles use
//! vertices `a_1..a_n` and edges `x_1..`, independent sets use `a_1..a_m`,
//! loaded quivers use `v_i` and `e_i_j_k`.

use crate::error::QuiverError;
use crate::quiver::{Quiver, RawQuiver};

/// The directed path `P_n`: vertices `a_1..a_n`, edges `x_j : a_j -> a_{j+1}`.
pub fn path_quiver(n: usize) -> Result<Quiver, QuiverError> {
    if n < 1 {
        return Err(QuiverError::InvalidSize(
            "path quiver needs at least one vertex".into(),
        ));
    }
    let mut raw = RawQuiver::default();
    for j in 1..=n {
        raw = raw.vertex(&format!("a_{j}"));
    }
    for j in 1..n {
        raw = raw.edge(&format!("x_{j}"), &format!("a_{j}"), &format!("a_{}", j + 1));
    }
    Ok(Quiver::validate(&raw).expect("generated ids are unique"))
}

/// The directed cycle `C_n`: the path `P_n` plus the closing edge
/// `x_n : a_n -> a_1`. `C_1` is the single-loop bouquet.
pub fn cycle_quiver(n: usize) -> Result<Quiver, QuiverError> {
    if n < 1 {
        return Err(QuiverError::InvalidSize(
            "cycle quiver needs at least one vertex".into(),
        ));
    }
    let mut raw = path_quiver(n)?.to_raw();
    raw = raw.edge(&format!("x_{n}"), &format!("a_{n}"), "a_1");
    Ok(Quiver::validate(&raw).expect("generated ids are unique"))
}

/// The independent set `I_m`: `m` vertices, no edges.
pub fn independent_set(m: usize) -> Quiver {
    let mut raw = RawQuiver::default();
    for j in 1..=m {
        raw = raw.vertex(&format!("a_{j}"));
    }
    Quiver::validate(&raw).expect("generated ids are unique")
}

/// The loaded quiver on `m` vertices with `multiplicity` parallel edges for
/// every ordered vertex pair, loops included.
pub fn loaded_quiver(m: usize, multiplicity: usize) -> Result<Quiver, QuiverError> {
    if m < 1 {
        return Err(QuiverError::InvalidSize(
            "loaded quiver needs at least one vertex".into(),
        ));
    }
    if multiplicity < 1 {
        return Err(QuiverError::InvalidSize(
            "loaded quiver needs multiplicity at least one".into(),
        ));
    }
    let mut raw = RawQuiver::default();
    for i in 1..=m {
        raw = raw.vertex(&format!("v_{i}"));
    }
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=multiplicity {
                raw = raw.edge(&format!("e_{i}_{j}_{k}"), &format!("v_{i}"), &format!("v_{j}"));
            }
        }
    }
    Ok(Quiver::validate(&raw).expect("generated ids are unique"))
}
