//! General Albertson irregularity index and related degree-based graph
//! invariants, the structured tree families they are evaluated on, exhaustive
//! small-graph enumeration, and a registry of executable bound and identity
//! checks.

pub mod canon;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod format;
pub mod graph;
pub mod graph6;
pub mod generators;
pub mod indices;
pub mod verify;

pub use canon::{canonical_code, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{DegreeSummary, EccentricityTable, Graph, PathAttachment, Regularity};
pub use indices::{Exponent, IndexValue, PowValue};
