use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::immersion::CertificateViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{what} supports at most {limit} vertices, got {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural claim that a construction relies on turned out false on
    /// the given instance. Carries the instance so it can be dumped.
    #[error("claim violated: {0}")]
    ClaimViolation(Box<ClaimViolation>),

    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("generator gave up after {tries} tries: {advice}")]
    GeneratorExhausted { tries: u64, advice: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(#[from] CertificateViolation),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn claim(claim: &str, detail: impl Into<String>, graph: &Graph) -> Self {
        Error::ClaimViolation(Box::new(ClaimViolation {
            claim: claim.to_string(),
            detail: detail.into(),
            graph: graph.to_json_value(),
        }))
    }

    pub fn is_claim_violation(&self) -> bool {
        matches!(self, Error::ClaimViolation(_))
    }
}

/// Serialized counterexample for a failed structural claim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimViolation {
    pub claim: String,
    pub detail: String,
    pub graph: serde_json::Value,
}

impl std::fmt::Display for ClaimViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.claim, self.detail)
    }
}

/// Fails with a [`Error::ClaimViolation`] when `cond` does not hold.
pub(crate) fn ensure_claim(
    cond: bool,
    claim: &str,
    graph: &Graph,
    detail: impl FnOnce() -> String,
) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::claim(claim, detail(), graph))
    }
}
