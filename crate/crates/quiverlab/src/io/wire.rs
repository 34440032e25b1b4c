//! JSON wire shapes for certificates and verdicts. All ids are serialized as
//! names, in the deterministic orders of the underlying quivers, so output is
//! byte-stable across runs.

use serde::Serialize;

use crate::blowup::BlowupWitness;
use crate::injectivity::{
    Classification, ClassificationDetail, ComponentKind, Counterexample, InjectivityVerdict,
};
use crate::morphism::QuiverMorphism;
use crate::quiver::Quiver;
use crate::retract::{RetractionCertificate, SectionCertificate};
use crate::walks::WalkWitness;

#[derive(Clone, Debug, Serialize)]
pub struct WireAssignment {
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WireMorphism {
    pub vmap: Vec<WireAssignment>,
    pub emap: Vec<WireAssignment>,
}

pub fn wire_morphism(m: &QuiverMorphism) -> WireMorphism {
    WireMorphism {
        vmap: m
            .domain()
            .vertices()
            .map(|v| WireAssignment {
                from: m.domain().vertex_name(v).to_string(),
                to: m.codomain().vertex_name(m.apply_vertex(v)).to_string(),
            })
            .collect(),
        emap: m
            .domain()
            .edges()
            .map(|e| WireAssignment {
                from: m.domain().edge_name(e).to_string(),
                to: m.codomain().edge_name(m.apply_edge(e)).to_string(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireWalk {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

pub fn wire_walk(q: &Quiver, w: &WalkWitness) -> WireWalk {
    WireWalk {
        vertices: w
            .vertices
            .iter()
            .map(|&v| q.vertex_name(v).to_string())
            .collect(),
        edges: w.edges.iter().map(|&e| q.edge_name(e).to_string()).collect(),
    }
}

/// A block keyed by the id it belongs to in the smaller quiver.
#[derive(Clone, Debug, Serialize)]
pub struct WireBlock {
    pub of: String,
    pub block: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WireBlowupWitness {
    pub base: crate::quiver::RawQuiver,
    pub blown: crate::quiver::RawQuiver,
    pub a: Vec<WireBlock>,
    pub b: Vec<WireBlock>,
}

pub fn wire_blowup_witness(w: &BlowupWitness) -> WireBlowupWitness {
    WireBlowupWitness {
        base: w.base.to_raw(),
        blown: w.blown.to_raw(),
        a: w
            .vertex_blocks
            .iter()
            .enumerate()
            .map(|(v, block)| WireBlock {
                of: w.base.vertex_name(crate::quiver::VertexId(v)).to_string(),
                block: block
                    .iter()
                    .map(|&x| w.blown.vertex_name(x).to_string())
                    .collect(),
            })
            .collect(),
        b: w
            .edge_blocks
            .iter()
            .enumerate()
            .map(|(e, block)| WireBlock {
                of: w.base.edge_name(crate::quiver::EdgeId(e)).to_string(),
                block: block
                    .iter()
                    .map(|&f| w.blown.edge_name(f).to_string())
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireSectionCertificate {
    pub partition_v: Vec<WireBlock>,
    pub partition_e: Vec<WireBlock>,
}

/// Serializes the fiber partitions of a left inverse of `j: G -> H`, keyed by
/// `G`'s ids.
pub fn wire_section_certificate(
    j: &QuiverMorphism,
    cert: &SectionCertificate,
) -> WireSectionCertificate {
    let g = j.domain();
    let h = j.codomain();
    WireSectionCertificate {
        partition_v: cert
            .partition_v
            .iter()
            .enumerate()
            .map(|(v, block)| WireBlock {
                of: g.vertex_name(crate::quiver::VertexId(v)).to_string(),
                block: block.iter().map(|&w| h.vertex_name(w).to_string()).collect(),
            })
            .collect(),
        partition_e: cert
            .partition_e
            .iter()
            .enumerate()
            .map(|(e, block)| WireBlock {
                of: g.edge_name(crate::quiver::EdgeId(e)).to_string(),
                block: block.iter().map(|&f| h.edge_name(f).to_string()).collect(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireChoice {
    pub of: String,
    pub pick: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WireRetractionCertificate {
    pub chosen_v: Vec<WireChoice>,
    pub chosen_e: Vec<WireChoice>,
}

/// Serializes the chosen preimages of a right inverse of `q: H -> G`, keyed
/// by `G`'s ids.
pub fn wire_retraction_certificate(
    q: &QuiverMorphism,
    cert: &RetractionCertificate,
) -> WireRetractionCertificate {
    let h = q.domain();
    let g = q.codomain();
    WireRetractionCertificate {
        chosen_v: cert
            .chosen_v
            .iter()
            .enumerate()
            .map(|(v, &w)| WireChoice {
                of: g.vertex_name(crate::quiver::VertexId(v)).to_string(),
                pick: h.vertex_name(w).to_string(),
            })
            .collect(),
        chosen_e: cert
            .chosen_e
            .iter()
            .enumerate()
            .map(|(e, &f)| WireChoice {
                of: g.edge_name(crate::quiver::EdgeId(e)).to_string(),
                pick: h.edge_name(f).to_string(),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireCounterexample {
    pub psi: WireMorphism,
    pub walk: Option<WireWalk>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WireInjectivity {
    pub injective: bool,
    pub checked: usize,
    pub counterexample: Option<WireCounterexample>,
}

pub fn wire_injectivity(j: &Quiver, verdict: &InjectivityVerdict) -> WireInjectivity {
    match verdict {
        InjectivityVerdict::Injective { checked } => WireInjectivity {
            injective: true,
            checked: *checked,
            counterexample: None,
        },
        InjectivityVerdict::NotInjective(cex) => WireInjectivity {
            injective: false,
            checked: 0,
            counterexample: Some(wire_counterexample(j, cex)),
        },
    }
}

fn wire_counterexample(j: &Quiver, cex: &Counterexample) -> WireCounterexample {
    WireCounterexample {
        psi: wire_morphism(&cex.psi),
        walk: cex.walk.as_ref().map(|w| wire_walk(j, w)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WireClassification {
    pub n: usize,
    pub injective: bool,
    #[serde(flatten)]
    pub detail: WireClassificationDetail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum WireClassificationDetail {
    Phi2 { phi2: WirePhi2 },
    Components { components: Vec<WireComponent> },
}

#[derive(Clone, Debug, Serialize)]
pub struct WirePhi2 {
    pub offending_edge: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WireComponent {
    Loaded {
        vertices: Vec<String>,
    },
    CycleBlowup {
        vertices: Vec<String>,
        cycle_length: usize,
        witness: WireBlowupWitness,
    },
    Short {
        vertices: Vec<String>,
        layers: Vec<Vec<String>>,
        vacuous: bool,
    },
    NotInjective {
        vertices: Vec<String>,
        walk: WireWalk,
    },
}

pub fn wire_classification(q: &Quiver, c: &Classification) -> WireClassification {
    let detail = match &c.detail {
        ClassificationDetail::Phi2 { offending } => WireClassificationDetail::Phi2 {
            phi2: WirePhi2 {
                offending_edge: offending.map(|e| q.edge_name(e).to_string()),
            },
        },
        ClassificationDetail::Components(components) => WireClassificationDetail::Components {
            components: components
                .iter()
                .map(|class| {
                    let comp = &class.component;
                    let vertices: Vec<String> = comp
                        .vertices()
                        .map(|v| comp.vertex_name(v).to_string())
                        .collect();
                    match &class.kind {
                        ComponentKind::Loaded => WireComponent::Loaded { vertices },
                        ComponentKind::CycleBlowup {
                            cycle_length,
                            witness,
                        } => WireComponent::CycleBlowup {
                            vertices,
                            cycle_length: *cycle_length,
                            witness: wire_blowup_witness(witness),
                        },
                        ComponentKind::Short { layers, vacuous } => WireComponent::Short {
                            vertices,
                            layers: layers
                                .iter()
                                .map(|layer| {
                                    layer
                                        .iter()
                                        .map(|&v| comp.vertex_name(v).to_string())
                                        .collect()
                                })
                                .collect(),
                            vacuous: *vacuous,
                        },
                        ComponentKind::NotInjective { walk } => WireComponent::NotInjective {
                            vertices,
                            walk: wire_walk(comp, walk),
                        },
                    }
                })
                .collect(),
        },
    };
    WireClassification {
        n: c.n,
        injective: c.injective,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::families::cycle_quiver;
    use crate::injectivity::classify;

    #[test]
    fn classification_json_is_stable_and_shaped() {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let classification = classify(&c2, 4).unwrap();
        let wire = wire_classification(&c2, &classification);
        let json = serde_json::to_string(&wire).unwrap();
        assert!(json.starts_with("{\"n\":4,\"injective\":true,\"components\":["));
        assert!(json.contains("\"kind\":\"cycle_blowup\""));
        let again = serde_json::to_string(&wire_classification(&c2, &classification)).unwrap();
        assert_eq!(json, again);
    }

    #[test]
    fn phi2_detail_uses_its_own_key() {
        let c2 = Arc::new(cycle_quiver(2).unwrap());
        let classification = classify(&c2, 2).unwrap();
        let json =
            serde_json::to_string(&wire_classification(&c2, &classification)).unwrap();
        assert_eq!(
            json,
            "{\"n\":2,\"injective\":true,\"phi2\":{\"offending_edge\":null}}"
        );
    }
}
