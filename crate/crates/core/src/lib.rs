//! Desk-scale combinatorics of simplicial polytopes and their diameters.
//!
//! The crate provides:
//!
//! * facet-list simplicial complexes with deletion, link, rank/corank and
//!   face counting ([`complex`]);
//! * facet-ridge graphs, exact diameters and the Hirsch, Provan–Billera
//!   and Brightwell-et-al. bound checks ([`diameter`]);
//! * certified exhaustive search for strong and weak k-decomposability
//!   ([`decomp`]);
//! * exact-rational m×n transportation polytopes: feasibility,
//!   non-degeneracy, spanning-tree vertex enumeration, facets, and the
//!   polar boundary complex ([`transport`]);
//! * the delta family Δ(a,b) of polar complexes of 2×(a+b+1)
//!   transportation polytopes, built directly and via the polar route
//!   ([`delta`]);
//! * corank profiles along shedding sequences, the hitting-set
//!   extraction, and the obstruction audit explaining why shedding
//!   sequences on Δ(a,b) fail ([`obstruction`]).
//!
//! All constructions are exact; nothing here uses floating point.

pub mod comb;
pub mod complex;
pub mod decomp;
pub mod delta;
pub mod diameter;
pub mod obstruction;
pub mod transport;

pub use complex::{Face, RankResult, SimplicialComplex, VertexId};
pub use decomp::{
    find_strong_decomposition, find_weak_decomposition, verify_certificate, Mode, SearchOptions,
    SearchStatus, SearchVerdict, SheddingCertificate,
};
pub use delta::DeltaComplex;
pub use diameter::{bound_report, diameter, BoundKind, BoundReport, FacetRidgeGraph};
pub use transport::{Margins, Rational, TransportVertex};
