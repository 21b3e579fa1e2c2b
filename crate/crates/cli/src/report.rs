use std::str::FromStr;
use std::time::Duration;

use immlab::construct::{
    hole_free_immersion, house_free_immersion, k4_free_immersion, k4minus_free_clique, owh_free_immersion,
    solve_auto, vergara_solve,
};
use immlab::oracle::{max_immersion_order, OracleBudget};
use immlab::{verify_certificate, Error, Graph, ImmersionCertificate, Pattern};
use serde::{Deserialize, Serialize};

/// Construction selected with `solve --method`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Forbholes,
    House,
    Owh,
    K4,
    K4Minus,
    Vergara(Pattern),
    Oracle,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some(p) = s.strip_prefix("vergara:") {
            return Ok(Method::Vergara(p.parse()?));
        }
        Ok(match s.to_ascii_lowercase().as_str() {
            "auto" => Method::Auto,
            "forbholes" => Method::Forbholes,
            "house" => Method::House,
            "owh" => Method::Owh,
            "k4" => Method::K4,
            "k4minus" => Method::K4Minus,
            "oracle" => Method::Oracle,
            _ => return Err(Error::Parse(format!("unknown method {s:?}"))),
        })
    }
}

/// Name of the construction `vergara_solve` uses for an excluded pattern.
pub fn dispatch_name(p: Pattern) -> &'static str {
    match p {
        Pattern::K4 => "k4",
        Pattern::K4Minus => "k4minus",
        Pattern::C4 => "forbholes",
        Pattern::P4 | Pattern::Paw => "house",
        _ => "owh",
    }
}

/// Runs a method; returns the dispatch path taken and the certificate.
pub fn solve(g: &Graph, method: Method) -> Result<(String, ImmersionCertificate), Error> {
    let cert = match method {
        Method::Auto => {
            return Ok(match solve_auto(g)? {
                (Some(p), c) => (format!("auto:{p}->{}", dispatch_name(p)), c),
                (None, c) => ("auto:oracle".to_string(), c),
            })
        }
        Method::Forbholes => hole_free_immersion(g)?,
        Method::House => house_free_immersion(g)?,
        Method::Owh => owh_free_immersion(g)?,
        Method::K4 => k4_free_immersion(g)?,
        Method::K4Minus => k4minus_free_clique(g)?.certificate,
        Method::Vergara(p) => vergara_solve(g, p)?,
        Method::Oracle => max_immersion_order(g, &OracleBudget::default())?.1,
    };
    let name = match method {
        Method::Vergara(p) => format!("vergara:{p}"),
        m => format!("{m:?}").to_ascii_lowercase(),
    };
    Ok((name, cert))
}

/// Outcome of one solve. `verified` is always recomputed here from the
/// certificate and the graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub instance: String,
    pub graph_sha256: String,
    pub n: usize,
    pub method: String,
    pub order: Option<usize>,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Suite-specific expectations that failed; empty means pass.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl SolveReport {
    pub fn new(instance: impl Into<String>, g: &Graph, method: impl Into<String>, wall: Duration) -> Self {
        SolveReport {
            instance: instance.into(),
            graph_sha256: g.sha256(),
            n: g.n(),
            method: method.into(),
            order: None,
            verified: false,
            violation: None,
            alpha: None,
            omega: None,
            chi: None,
            wall_ms: wall.as_secs_f64() * 1e3,
            error: None,
            failures: Vec::new(),
        }
    }

    pub fn with_certificate(mut self, g: &Graph, c: &ImmersionCertificate) -> Self {
        self.order = Some(c.order);
        match verify_certificate(g, c) {
            Ok(()) => self.verified = true,
            Err(v) => {
                self.verified = false;
                self.violation = Some(v.to_string());
                self.failures.push(format!("certificate rejected: {v}"));
            }
        }
        self
    }

    pub fn with_error(mut self, e: &Error) -> Self {
        self.error = Some(e.to_string());
        self.failures.push(e.to_string());
        self
    }

    /// Records a failed expectation unless `ok`.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.verified && self.failures.is_empty()
    }
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidCertificate(_) => 1,
        Error::ClaimViolation(_) => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_parse() {
        assert_eq!("auto".parse::<Method>().unwrap(), Method::Auto);
        assert_eq!("vergara:K4minus".parse::<Method>().unwrap(), Method::Vergara(Pattern::K4Minus));
        assert!("vergara:K5".parse::<Method>().is_err());
        assert!("greedy".parse::<Method>().is_err());
    }

    #[test]
    fn c5_auto_goes_through_forbholes() {
        let (name, c) = solve(&Graph::cycle(5), Method::Auto).unwrap();
        assert_eq!(name, "auto:C4->forbholes");
        assert_eq!(c.order, 3);
    }

    #[test]
    fn report_recomputes_verdict() {
        let g = Graph::cycle(5);
        let (_, mut c) = solve(&g, Method::Auto).unwrap();
        let r = SolveReport::new("c5", &g, "auto", Duration::ZERO).with_certificate(&g, &c);
        assert!(r.passed());
        c.paths[0].walk[0] ^= 1;
        let r = SolveReport::new("c5", &g, "auto", Duration::ZERO).with_certificate(&g, &c);
        assert!(!r.verified);
        assert!(r.violation.is_some());
    }

    #[test]
    fn alpha_three_is_precondition() {
        let e = solve(&Graph::empty(3).unwrap(), Method::Vergara(Pattern::C4)).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }
}
