//! Monodromy data of cyclic Galois covers of curves.
//!
//! Given a datum `(d, g', theta)` this crate computes the Chevalley–Weil
//! eigenspace profile, the factor decomposition of `Sp(H^1)^G`, the
//! dimension test comparing the family with the PEL special subvariety
//! `S(G)`, and the boundary degeneration to a lower base genus. The
//! [`search`] module enumerates canonical data exhaustively and classifies
//! them.

pub mod classify;
pub mod datum;
pub mod degeneration;
pub mod eigenspaces;
pub mod error;
pub mod factors;
pub mod search;

pub use classify::{
    monodromy_report, star_condition, verdict, MonodromyReport, Qualifier, StarReport, Status,
    Verdict,
};
pub use datum::{
    canonicalize, family_dimension, total_genus, validate, CanonicalDatum, MonodromyDatum,
};
pub use degeneration::{
    check_profile_preservation, degeneration_chain, delta0_degenerate, prym_dimension,
    DegenerationResult,
};
pub use eigenspaces::{chevalley_weil, profile_checks, CheckReport, EigenspaceProfile};
pub use error::{Error, Result};
pub use factors::{
    decompose, delta, dim_special, dim_special_via_sym2, no_repeating, FactorKind, FactorList,
    GroupFactor,
};
