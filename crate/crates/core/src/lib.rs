//! Privacy auditing and recommendation for social-network photo albums.
//!
//! The crate models a user as profile attributes, an interest set, and a
//! per-album visibility summary. On top of that it provides:
//!
//! - [`audit`] — flags weakly protected albums and renders a report.
//! - [`categorize`] — a fixed visibility rule plus a decision-tree learner
//!   that assign users to the Fundamentalist / Pragmatic / Unconcerned
//!   privacy categories.
//! - [`recommend`] — k-nearest-neighbor retrieval over disclosure patterns
//!   and tighten-only per-attribute advice.
//! - [`evaluation`] — a 5x2 cross-validation harness with accuracy and
//!   probabilistic mean-absolute-error metrics.
//! - [`ingest`] — CSV/JSON dataset parsing, multilingual normalization,
//!   and dataset statistics.
//! - [`synth`] — a seeded synthetic-population generator calibrated by
//!   configurable per-attribute marginals.
//!
//! Everything is deterministic: parsing is order-preserving, training and
//! retrieval use fixed tie-breaks, and all randomness flows from explicit
//! 64-bit seeds.

pub mod audit;
pub mod categorize;
pub mod evaluation;
pub mod ingest;
pub mod profile;
pub mod recommend;
pub mod synth;

pub use profile::{
    AlbumPrivacyValue, AlbumSummary, Attribute, Birthday, DisclosureVector, Gender, InterestItem,
    PhotoAlbum, PrivacyCategory, Relationship, UserProfile, UserVector,
};

pub use ingest::{Dataset, DatasetMetadata, NormalizationDictionary};

#[cfg(test)]
pub(crate) mod test_fixtures;
