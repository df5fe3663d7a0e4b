//! Galois groups of integer polynomials as permutation groups on indexed
//! roots, resolvents, subfield generators and instance generation.

pub mod candidates;
pub mod compute;
pub mod resolvent;
pub mod templates;

pub use compute::{galois_group, galois_group_seeded, GaloisEvidence, GaloisResult};
pub use resolvent::{
    partial_resolvent, resolvent_identity_check, splitting_factorization, subfield_generator, FactorizationCertificate,
    PartialResolvent,
};
pub use templates::{parse_template, realize_action, template_kinds, ActionTemplate, Instance};
