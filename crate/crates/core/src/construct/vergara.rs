use crate::analysis::alpha_at_most_two;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immersion::{trim_certificate, ImmersionCertificate};
use crate::oracle::{brute_force_immersion, OracleBudget};
use crate::pattern::Pattern;

use super::recursion::require_free;
use super::{
    checked, half_up, hole_free_immersion, house_free_immersion, k4_free_immersion,
    k4minus_free_clique, owh_free_immersion,
};

/// Order-`⌈n/2⌉` clique immersion for an `h`-free graph with `α ≤ 2`, where
/// `h` is one of the seven four-vertex graphs with `α ≤ 2`.
pub fn vergara_solve(g: &Graph, h: Pattern) -> Result<ImmersionCertificate> {
    if !Pattern::SEVEN.contains(&h) {
        return Err(Error::precondition(format!(
            "{h} is not a four-vertex graph with independence number at most 2"
        )));
    }
    if !alpha_at_most_two(g) {
        return Err(Error::precondition("independence number exceeds 2"));
    }
    require_free(g, h)?;
    let c = match h {
        Pattern::K4 => k4_free_immersion(g)?,
        Pattern::K4Minus => k4minus_free_clique(g)?.certificate,
        Pattern::C4 => hole_free_immersion(g)?,
        Pattern::P4 | Pattern::Paw => house_free_immersion(g)?,
        Pattern::TwoK2 | Pattern::K3v => owh_free_immersion(g)?,
        _ => unreachable!(),
    };
    let want = half_up(g.n());
    if c.order < want {
        return Err(Error::claim(
            "the dispatched construction reaches ceil(n/2)",
            format!("{h}: order {} < {want}", c.order),
            g,
        ));
    }
    checked(g, trim_certificate(&c, want)?)
}

/// Order in which [`solve_auto`] tries the patterns.
pub const AUTO_ORDER: [Pattern; 7] = [
    Pattern::C4,
    Pattern::P4,
    Pattern::Paw,
    Pattern::TwoK2,
    Pattern::K3v,
    Pattern::K4Minus,
    Pattern::K4,
];

/// Largest graph [`solve_auto`] hands to the oracle when no pattern is missing.
pub const AUTO_ORACLE_LIMIT: usize = 10;

/// Solves with the first pattern of [`AUTO_ORDER`] that `g` avoids. Graphs
/// containing all seven fall back to the oracle when small enough.
pub fn solve_auto(g: &Graph) -> Result<(Option<Pattern>, ImmersionCertificate)> {
    if !alpha_at_most_two(g) {
        return Err(Error::precondition("independence number exceeds 2"));
    }
    for h in AUTO_ORDER {
        if require_free(g, h).is_ok() {
            return Ok((Some(h), vergara_solve(g, h)?));
        }
    }
    if g.n() <= AUTO_ORACLE_LIMIT {
        let budget = OracleBudget {
            max_n: AUTO_ORACLE_LIMIT,
            ..OracleBudget::default()
        };
        if let Some(c) = brute_force_immersion(g, half_up(g.n()), &budget)? {
            return Ok((None, c));
        }
        return Err(Error::claim(
            "every graph with α <= 2 immerses K_ceil(n/2)",
            "oracle found no immersion",
            g,
        ));
    }
    Err(Error::precondition(
        "graph contains all seven four-vertex patterns and is too large for the oracle",
    ))
}
