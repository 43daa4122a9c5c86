//! Intersecting r-partite hypergraphs and their cover numbers.
//!
//! The crate builds, verifies and searches for r-partite intersecting
//! hypergraphs whose cover number τ is large compared with r − 1, the
//! extremal case of Ryser's conjecture for intersecting families.
//!
//! - [`hypergraph`]: the data model, degrees and matchings.
//! - [`format`]: the plain-text instance format.
//! - [`cover`]: greedy and exact vertex covers with certificates.
//! - [`constructions`]: truncated projective planes, the built-in
//!   instances and padding to more parts.
//! - [`analysis`]: degree tables, linearity and lemma verifiers.
//! - [`search`]: orderly generation of extremal instances up to
//!   isomorphism.

pub mod analysis;
pub mod bitset;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod search;

pub use bitset::EdgeSet;
pub use cover::{cover_number, enumerate_covers, greedy_cover, is_cover, tau, CoverCertificate, CoverKind};
pub use error::{Error, Result};
pub use format::{parse_instance, parse_instances, write_instance};
pub use hypergraph::{Edge, PartiteHypergraph, VertexRef};
pub use search::{canonical_form, search_extremal, CanonicalForm, SearchMode, SearchOutcome, SearchParams, SearchStatus};
