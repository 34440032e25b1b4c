//! quiverlab: analysis of finite quivers (directed multigraphs with loops).
//!
//! The crate decides and certifies structural properties of quivers:
//!
//! - homomorphism checking, streaming enumeration, and monomorphism tests;
//! - section/retraction recognition with partition and preimage certificates;
//! - blow-up construction and recognition, with the induced retraction;
//! - injectivity with respect to monic maps, both by brute-force extension
//!   and by the fast walk criterion for the path-into-cycle embeddings;
//! - a structural classifier: every injective quiver decomposes into loaded
//!   components, blow-ups of directed cycles, and short components.
//!
//! Every positive verdict comes with a certificate that can be re-verified
//! independently of the search that produced it, and every negative verdict
//! with a concrete witness. All operations are deterministic: ties resolve
//! to the least element in insertion order.
//!
//! ```
//! use std::sync::Arc;
//! use quiverlab::{classify, cycle_quiver, is_phin_injective};
//!
//! let c2 = Arc::new(cycle_quiver(2)?);
//! assert!(is_phin_injective(&c2, 4)?.injective());
//! assert!(!is_phin_injective(&c2, 5)?.injective());
//!
//! // At n = 4 the two-cycle is classified as a blow-up of itself.
//! let classification = classify(&c2, 4)?;
//! assert!(classification.injective);
//! # Ok::<(), quiverlab::QuiverError>(())
//! ```

pub mod blowup;
pub mod construct;
pub mod error;
pub mod families;
pub mod homs;
pub mod injectivity;
pub mod io;
pub mod morphism;
pub mod quiver;
pub mod retract;
pub mod walks;

pub use blowup::{
    blowup_retraction, construct_blowup, recognize_blowup, verify_blowup_witness, BlowupSpec,
    BlowupWitness, Multiplicity, RetractionPair,
};
pub use construct::{component_quiver, coproduct, product, weak_components, Component, Coproduct,
    Product};
pub use error::{Budget, QuiverError, DEFAULT_BUDGET};
pub use families::{cycle_quiver, independent_set, loaded_quiver, path_quiver};
pub use homs::{enumerate_homs, extend_morphism, HomIter};
pub use injectivity::{
    check_lemma_closures, classify, is_phi_injective_brute, is_phin_injective, layering,
    phi2_structure, Classification, ClassificationDetail, ClosureReport, ComponentClass,
    ComponentKind, Counterexample, InjectivityVerdict,
};
pub use morphism::{phi_n, HomViolation, QuiverMorphism, Square};
pub use quiver::{EdgeId, IdKind, Quiver, RawEdge, RawQuiver, ValidationIssue, ValidationReport,
    VertexId};
pub use retract::{
    find_retraction, find_section, verify_retraction_certificate, verify_section_certificate,
    CertificateViolation, Retraction, RetractionCertificate, Section, SectionCertificate,
};
pub use walks::{find_walk, min_closed_walk, walk_pairs, WalkRelation, WalkWitness};
