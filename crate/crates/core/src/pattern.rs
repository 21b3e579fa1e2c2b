//! Catalog of the small fixed graphs the constructions are stated in terms of.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Pattern {
    K4,
    K4Minus,
    C4,
    P4,
    /// Triangle with a pendant edge.
    Paw,
    /// Triangle plus an isolated vertex.
    K3v,
    /// Two disjoint edges (complement of C4).
    TwoK2,
    /// C4 with a roof vertex over one edge.
    House,
    /// Triangle with a pendant path of length two (one-wall house).
    Owh,
    C5,
}

impl Pattern {
    /// The seven graphs on four vertices with independence number at most 2.
    pub const SEVEN: [Pattern; 7] = [
        Pattern::K4,
        Pattern::K4Minus,
        Pattern::C4,
        Pattern::P4,
        Pattern::Paw,
        Pattern::K3v,
        Pattern::TwoK2,
    ];

    pub const ALL: [Pattern; 10] = [
        Pattern::K4,
        Pattern::K4Minus,
        Pattern::C4,
        Pattern::P4,
        Pattern::Paw,
        Pattern::K3v,
        Pattern::TwoK2,
        Pattern::House,
        Pattern::Owh,
        Pattern::C5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::K4 => "K4",
            Pattern::K4Minus => "K4minus",
            Pattern::C4 => "C4",
            Pattern::P4 => "P4",
            Pattern::Paw => "paw",
            Pattern::K3v => "K3v",
            Pattern::TwoK2 => "twoK2",
            Pattern::House => "house",
            Pattern::Owh => "owh",
            Pattern::C5 => "C5",
        }
    }

    pub fn order(self) -> usize {
        match self {
            Pattern::House | Pattern::Owh | Pattern::C5 => 5,
            _ => 4,
        }
    }

    /// Canonical edge list, 0-based.
    pub fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Pattern::K4 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            Pattern::K4Minus => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            Pattern::P4 => &[(0, 1), (1, 2), (2, 3)],
            Pattern::Paw => &[(0, 1), (0, 2), (1, 2), (2, 3)],
            Pattern::K3v => &[(0, 1), (0, 2), (1, 2)],
            Pattern::TwoK2 => &[(0, 1), (2, 3)],
            Pattern::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            Pattern::House => &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)],
            Pattern::Owh => &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)],
        }
    }

    pub fn graph(self) -> Graph {
        Graph::from_edges(self.order(), self.edges().iter().copied()).expect("catalog is valid")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Pattern::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown pattern {s:?}")))
    }
}

impl TryFrom<String> for Pattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::independence_number;

    #[test]
    fn seven_have_alpha_at_most_two() {
        for p in Pattern::SEVEN {
            assert_eq!(p.order(), 4);
            assert!(independence_number(&p.graph()).unwrap() <= 2, "{p}");
        }
    }

    #[test]
    fn edge_counts() {
        let counts: Vec<usize> = Pattern::ALL.iter().map(|p| p.graph().edge_count()).collect();
        assert_eq!(counts, vec![6, 5, 4, 3, 4, 3, 2, 6, 5, 5]);
    }

    #[test]
    fn names_roundtrip() {
        for p in Pattern::ALL {
            assert_eq!(p.name().parse::<Pattern>().unwrap(), p);
        }
        assert!("K5".parse::<Pattern>().is_err());
    }
}
