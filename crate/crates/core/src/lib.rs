//! Spectral Turán problems for graphs with a fixed number of edges, with
//! the gem `K_1 ∨ P_4` as the main forbidden pattern.
//!
//! Graphs are bitset-backed ([`Graph`], at most 128 vertices). On top sit
//! pattern detection, Perron solvers and closed forms, the Kelmans-type
//! surgeries, canonical labelling, exhaustive generation by canonical
//! augmentation, a seeded local search and a record store.

pub mod canon;
pub mod certify;
pub mod error;
pub mod family;
pub mod forbidden;
pub mod graph;
pub mod enumerate;
pub mod graph6;
pub mod random;
pub mod record;
pub mod report;
pub mod search;
pub mod spectral;
pub mod store;
pub mod structure;
pub mod transforms;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use certify::{certify_theorem, Certification, CertifyOptions, Mode};
pub use enumerate::{enumerate_ffree, extremal_scan, EnumOptions};
pub use error::{Error, Result};
pub use family::{build_family, FamilySpec};
pub use forbidden::{
    classify_neighborhood, contains_subgraph, is_free, ComponentClass, ForbiddenSpec,
    NeighborhoodDecomposition,
};
pub use graph::{Graph, VertexSet, MAX_ORDER};
pub use record::{ExtremalRecord, Method, Verdict};
pub use search::{local_search, RunLog, SearchConfig};
pub use spectral::{perron, rho_exact_family, PerronData, QuotientMatrix, RhoOrder};
pub use store::{RecordFilter, RecordStore};
pub use structure::{is_connected, structure, Structure};
