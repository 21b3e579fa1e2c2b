//! Certificate-producing constructions.
//!
//! Each public entry point re-verifies the certificate it returns. Failures
//! of a structural claim the construction relies on surface as
//! [`Error::ClaimViolation`](crate::Error::ClaimViolation) carrying the
//! offending graph.

mod cycle_inflation;
mod extension;
mod holes;
mod path_inflation;
mod recursion;
mod small;
mod vergara;

pub use cycle_inflation::cycle_inflation_clique_immersion;
pub use extension::{
    extend_over_dominating_c4, extend_over_dominating_c5, extend_over_dominating_p4, ExtensionContext,
};
pub use holes::{decompose_around_long_hole, hole_free_immersion};
pub use path_inflation::path_inflation_clique_immersion;
pub use recursion::{house_free_immersion, owh_free_immersion};
pub use small::{k4_free_immersion, k4minus_free_clique, CliquePartition, K4MinusOutcome};
pub use vergara::{solve_auto, vergara_solve, AUTO_ORACLE_LIMIT, AUTO_ORDER};

use crate::error::Result;
use crate::graph::Graph;
use crate::immersion::{verify_certificate, ImmersionCertificate};

/// `⌈n/2⌉`, the order every α ≤ 2 graph on `n` vertices should immerse.
pub fn half_up(n: usize) -> usize {
    n.div_ceil(2)
}

fn checked(g: &Graph, c: ImmersionCertificate) -> Result<ImmersionCertificate> {
    verify_certificate(g, &c)?;
    Ok(c)
}
