//! Per-command output assembly. JSON envelopes use fixed field orders so
//! output is byte-stable; text mode renders the same structure for humans.

use serde::Serialize;

use quiverlab::io::wire::{
    wire_blowup_witness, wire_classification, wire_injectivity, wire_morphism,
    wire_retraction_certificate, wire_section_certificate, WireBlowupWitness, WireClassification,
    WireInjectivity, WireMorphism, WireRetractionCertificate, WireSectionCertificate,
};
use quiverlab::{
    BlowupWitness, Classification, ClassificationDetail, HomViolation, InjectivityVerdict, Quiver,
    QuiverMorphism, RawQuiver, Retraction, Section, Square, ValidationIssue, ValidationReport,
};

use crate::Format;

/// A finished verdict: whether it is affirmative (exit 0) and both renderings
/// of its payload.
pub struct Rendered {
    affirmative: bool,
    json: String,
    text: String,
}

impl Rendered {
    fn new<T: Serialize>(affirmative: bool, envelope: &T, text: String) -> Self {
        let mut json =
            serde_json::to_string_pretty(envelope).expect("envelopes serialize cleanly");
        json.push('\n');
        Rendered {
            affirmative,
            json,
            text,
        }
    }

    /// DOT output is a format of its own; both modes print it verbatim.
    pub fn dot(dot: String) -> Self {
        Rendered {
            affirmative: true,
            json: dot.clone(),
            text: dot,
        }
    }

    pub fn affirmative(&self) -> bool {
        self.affirmative
    }

    pub fn body(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WireIssue {
    DuplicateId { id: String, id_kind: &'static str },
    DanglingEndpoint { edge: String, vertex: String },
}

#[derive(Serialize)]
struct ValidateEnvelope {
    valid: bool,
    vertices: usize,
    edges: usize,
    issues: Vec<WireIssue>,
}

pub fn validate(raw: &RawQuiver, outcome: Result<Quiver, ValidationReport>) -> Rendered {
    let issues: Vec<WireIssue> = match &outcome {
        Ok(_) => Vec::new(),
        Err(report) => report
            .issues
            .iter()
            .map(|issue| match issue {
                ValidationIssue::DuplicateId { id, kind } => WireIssue::DuplicateId {
                    id: id.clone(),
                    id_kind: match kind {
                        quiverlab::IdKind::Vertex => "vertex",
                        quiverlab::IdKind::Edge => "edge",
                    },
                },
                ValidationIssue::DanglingEndpoint { edge, vertex } => {
                    WireIssue::DanglingEndpoint {
                        edge: edge.clone(),
                        vertex: vertex.clone(),
                    }
                }
            })
            .collect(),
    };
    let envelope = ValidateEnvelope {
        valid: outcome.is_ok(),
        vertices: raw.vertices.len(),
        edges: raw.edges.len(),
        issues,
    };
    let text = match &outcome {
        Ok(q) => format!(
            "valid quiver: {} vertices, {} edges\n",
            q.vertex_count(),
            q.edge_count()
        ),
        Err(report) => format!("invalid quiver:\n{report}\n"),
    };
    Rendered::new(envelope.valid, &envelope, text)
}

#[derive(Serialize)]
struct WireViolation {
    edge: String,
    square: &'static str,
    expected: String,
    actual: String,
}

#[derive(Serialize)]
struct HomCheckEnvelope {
    valid: bool,
    violation: Option<WireViolation>,
}

pub fn hom_check(m: &QuiverMorphism) -> Rendered {
    let violation = m.check().err().map(|v: HomViolation| WireViolation {
        edge: m.domain().edge_name(v.edge).to_string(),
        square: match v.square {
            Square::Source => "source",
            Square::Target => "target",
        },
        expected: m.codomain().vertex_name(v.expected).to_string(),
        actual: m.codomain().vertex_name(v.actual).to_string(),
    });
    let text = match &violation {
        None => "valid homomorphism\n".to_string(),
        Some(v) => format!(
            "not a homomorphism: edge {} breaks the {} square (expected {}, got {})\n",
            v.edge, v.square, v.expected, v.actual
        ),
    };
    let envelope = HomCheckEnvelope {
        valid: violation.is_none(),
        violation,
    };
    Rendered::new(envelope.valid, &envelope, text)
}

#[derive(Serialize)]
struct MonicEnvelope {
    monic: bool,
}

pub fn monic_check(m: &QuiverMorphism) -> Rendered {
    let monic = m.is_monic();
    let text = if monic {
        "monomorphism\n".to_string()
    } else {
        "not a monomorphism\n".to_string()
    };
    Rendered::new(monic, &MonicEnvelope { monic }, text)
}

#[derive(Serialize)]
struct HomsCountEnvelope {
    count: usize,
    limit: Option<usize>,
    truncated: bool,
}

pub fn homs_count(count: usize, limit: Option<usize>, truncated: bool) -> Rendered {
    let text = if truncated {
        format!("at least {count} homomorphisms (limit reached)\n")
    } else {
        format!("{count} homomorphisms\n")
    };
    Rendered::new(
        true,
        &HomsCountEnvelope {
            count,
            limit,
            truncated,
        },
        text,
    )
}

#[derive(Serialize)]
struct InjectivityEnvelope {
    n: Option<usize>,
    #[serde(flatten)]
    verdict: WireInjectivity,
}

pub fn injectivity(j: &Quiver, verdict: &InjectivityVerdict, n: Option<usize>) -> Rendered {
    let wire = wire_injectivity(j, verdict);
    let label = match n {
        Some(n) => format!("order-{n} embedding"),
        None => "the supplied embedding".to_string(),
    };
    let text = match verdict {
        InjectivityVerdict::Injective { checked } => {
            format!("injective for {label} ({checked} obligations checked)\n")
        }
        InjectivityVerdict::NotInjective(cex) => match &cex.walk {
            Some(walk) => {
                let names: Vec<&str> = walk
                    .vertices
                    .iter()
                    .map(|&v| j.vertex_name(v))
                    .collect();
                format!(
                    "not injective for {label}: walk {} has no return edge\n",
                    names.join(" -> ")
                )
            }
            None => format!("not injective for {label}: a morphism fails to extend\n"),
        },
    };
    let envelope = InjectivityEnvelope { n, verdict: wire };
    Rendered::new(envelope.verdict.injective, &envelope, text)
}

pub fn classification(j: &Quiver, c: &Classification) -> Rendered {
    let wire: WireClassification = wire_classification(j, c);
    let mut text = format!(
        "order-{} embedding: {}\n",
        c.n,
        if c.injective { "injective" } else { "not injective" }
    );
    match &c.detail {
        ClassificationDetail::Phi2 { offending } => match offending {
            None => text.push_str("every non-loop edge has a reverse edge\n"),
            Some(e) => {
                text.push_str(&format!(
                    "edge {} has no reverse edge\n",
                    j.edge_name(*e)
                ));
            }
        },
        ClassificationDetail::Components(components) => {
            for (i, class) in components.iter().enumerate() {
                let comp = &class.component;
                let describe = match &class.kind {
                    quiverlab::ComponentKind::Loaded => "loaded".to_string(),
                    quiverlab::ComponentKind::CycleBlowup { cycle_length, .. } => {
                        format!("blow-up of the directed {cycle_length}-cycle")
                    }
                    quiverlab::ComponentKind::Short { layers, vacuous } => {
                        if *vacuous {
                            "empty (vacuously injective)".to_string()
                        } else {
                            format!("short ({} layers)", layers.len())
                        }
                    }
                    quiverlab::ComponentKind::NotInjective { walk } => {
                        let names: Vec<&str> = walk
                            .vertices
                            .iter()
                            .map(|&v| comp.vertex_name(v))
                            .collect();
                        format!("not injective: walk {}", names.join(" -> "))
                    }
                };
                text.push_str(&format!(
                    "component {} ({} vertices): {}\n",
                    i + 1,
                    comp.vertex_count(),
                    describe
                ));
            }
        }
    }
    Rendered::new(c.injective, &wire, text)
}

#[derive(Serialize)]
struct BlowupMakeEnvelope {
    quiver: RawQuiver,
    witness: WireBlowupWitness,
}

pub fn blowup_make(witness: &BlowupWitness) -> Rendered {
    let envelope = BlowupMakeEnvelope {
        quiver: witness.blown.to_raw(),
        witness: wire_blowup_witness(witness),
    };
    let text = format!(
        "blow-up constructed: {} vertices, {} edges\n",
        witness.blown.vertex_count(),
        witness.blown.edge_count()
    );
    Rendered::new(true, &envelope, text)
}

#[derive(Serialize)]
struct BlowupRecognizeEnvelope {
    blowup: bool,
    witness: Option<WireBlowupWitness>,
}

pub fn blowup_recognize(witness: Option<&BlowupWitness>) -> Rendered {
    let envelope = BlowupRecognizeEnvelope {
        blowup: witness.is_some(),
        witness: witness.map(wire_blowup_witness),
    };
    let text = match witness {
        Some(w) => format!(
            "blow-up recognized: {} blocks over the base\n",
            w.vertex_blocks.len()
        ),
        None => "not a blow-up of the base\n".to_string(),
    };
    Rendered::new(envelope.blowup, &envelope, text)
}

#[derive(Serialize)]
struct RetractFindEnvelope {
    is_section: bool,
    retraction: Option<WireMorphism>,
    certificate: Option<WireSectionCertificate>,
}

pub fn retract_find(j: &QuiverMorphism, found: Option<&Retraction>) -> Rendered {
    let envelope = RetractFindEnvelope {
        is_section: found.is_some(),
        retraction: found.map(|r| wire_morphism(&r.morphism)),
        certificate: found.map(|r| wire_section_certificate(j, &r.certificate)),
    };
    let text = if found.is_some() {
        "section: a left inverse exists (certificate attached)\n".to_string()
    } else {
        "not a section: no left inverse\n".to_string()
    };
    Rendered::new(envelope.is_section, &envelope, text)
}

#[derive(Serialize)]
struct SectionFindEnvelope {
    is_retraction: bool,
    section: Option<WireMorphism>,
    certificate: Option<WireRetractionCertificate>,
}

pub fn section_find(q: &QuiverMorphism, found: Option<&Section>) -> Rendered {
    let envelope = SectionFindEnvelope {
        is_retraction: found.is_some(),
        section: found.map(|s| wire_morphism(&s.morphism)),
        certificate: found.map(|s| wire_retraction_certificate(q, &s.certificate)),
    };
    let text = if found.is_some() {
        "retraction: a right inverse exists (certificate attached)\n".to_string()
    } else {
        "not a retraction: no right inverse\n".to_string()
    };
    Rendered::new(envelope.is_retraction, &envelope, text)
}
