//! Flag-algebra computations over the single order-2 type, an arc `1 → 2`.
//!
//! Types are isomorphism classes of small tournaments; flags are tournaments
//! with the arc labelled. Product tables express the expected product of two
//! flag indicators, sampled on disjoint vertex sets around the same arc, as a
//! combination of type densities. Certificates built on those tables prove
//! lower bounds on `c4` in terms of `c3`.

mod certificate;
mod table;
mod types;

pub use certificate::{
    lemma1_bound, lemma1_certificate, lift_certificate, moment_consistency_check, search_certificate,
    verify_certificate, Certificate, MomentPair, MomentReport, Verification, CERT_TOLERANCE,
};
pub use table::ProductTable;
pub use types::{enumerate_flags, enumerate_types, subtype_density, Flag, FlagKind, TournamentType, MAX_TYPE_ORDER};
