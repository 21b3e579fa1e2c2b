//! Clique-immersion certificates for graphs with independence number at most two.
//!
//! Graphs are small dense bitset graphs ([`Graph`]). Every construction in
//! [`construct`] returns an [`ImmersionCertificate`] that can be rechecked
//! with [`verify_certificate`] without trusting the code that built it.

pub mod analysis;
pub mod construct;
pub mod error;
pub mod gen;
pub mod graph;
pub mod immersion;
pub mod inflation;
pub mod oracle;
pub mod pattern;

pub use error::{ClaimViolation, Error, Result};
pub use graph::{Graph, Relabel, VertexSet};
pub use immersion::{verify_certificate, CertificateViolation, GraphImmersion, ImmersionCertificate};
pub use inflation::{build_inflation, BagMap, InflationSpec};
pub use pattern::Pattern;
