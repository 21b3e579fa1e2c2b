//! Inflations: every base vertex becomes a clique ("bag"), and two bags are
//! completely joined exactly when their base vertices are adjacent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const INFLATION_FORMAT: &str = "immlab-inflation-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationSpec {
    pub format: String,
    pub base: Graph,
    pub f: Vec<usize>,
}

impl InflationSpec {
    pub fn new(base: Graph, f: Vec<usize>) -> Self {
        InflationSpec {
            format: INFLATION_FORMAT.to_string(),
            base,
            f,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.format != INFLATION_FORMAT {
            return Err(Error::Parse(format!("unexpected format {:?}", self.format)));
        }
        if self.f.len() != self.base.n() {
            return Err(Error::precondition(format!(
                "{} bag sizes for a base graph on {} vertices",
                self.f.len(),
                self.base.n()
            )));
        }
        if let Some(i) = self.f.iter().position(|&s| s == 0) {
            return Err(Error::precondition(format!("bag {i} has size zero")));
        }
        Ok(())
    }
}

/// Bag partition of an inflated graph. `bags[i]` is the clique replacing
/// base vertex `i`, listed in increasing id order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BagMap {
    pub base: Graph,
    pub bags: Vec<Vec<usize>>,
}

impl BagMap {
    pub fn sizes(&self) -> Vec<usize> {
        self.bags.iter().map(Vec::len).collect()
    }

    /// Base vertex owning each inflated vertex, `None` outside every bag.
    pub fn owner(&self, n: usize) -> Vec<Option<usize>> {
        let mut own = vec![None; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &x in bag {
                if x < n {
                    own[x] = Some(i);
                }
            }
        }
        own
    }

    pub fn total(&self) -> usize {
        self.bags.iter().map(Vec::len).sum()
    }
}

/// Builds the inflation. Bag ids are contiguous in base-vertex order, so
/// the `r`-th vertex of bag `i` is `sum(f[..i]) + r`.
pub fn build_inflation(spec: &InflationSpec) -> Result<(Graph, BagMap)> {
    spec.validate()?;
    let mut bags = Vec::with_capacity(spec.f.len());
    let mut next = 0;
    for &s in &spec.f {
        bags.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let mut edges = Vec::new();
    for bag in &bags {
        for (i, &x) in bag.iter().enumerate() {
            for &y in &bag[i + 1..] {
                edges.push((x, y));
            }
        }
    }
    for (a, b) in spec.base.edges() {
        for &x in &bags[a] {
            for &y in &bags[b] {
                edges.push((x, y));
            }
        }
    }
    let g = Graph::from_edges(next, edges)?;
    Ok((
        g,
        BagMap {
            base: spec.base.clone(),
            bags,
        },
    ))
}

/// Why a bag map does not describe an inflation of its base.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BagViolation {
    #[error("{bags} bags for a base graph on {base} vertices")]
    Count { bags: usize, base: usize },
    #[error("bag {0} is empty")]
    EmptyBag(usize),
    #[error("vertex {0} is outside the graph")]
    OutOfRange(usize),
    #[error("vertex {0} lies in two bags or is missing from every bag")]
    NotPartition(usize),
    #[error("bag {0} is not a clique")]
    NotClique(usize),
    #[error("adjacency between bags {0} and {1} does not follow the base graph")]
    CrossAdjacency(usize, usize),
}

/// Accepts iff the bags partition `V(g)`, each bag is a clique, and
/// vertices of distinct bags are adjacent exactly when their base vertices are.
pub fn bag_invariant_check(g: &Graph, m: &BagMap) -> std::result::Result<(), BagViolation> {
    if m.bags.len() != m.base.n() {
        return Err(BagViolation::Count {
            bags: m.bags.len(),
            base: m.base.n(),
        });
    }
    let mut owner = vec![None; g.n()];
    for (i, bag) in m.bags.iter().enumerate() {
        if bag.is_empty() {
            return Err(BagViolation::EmptyBag(i));
        }
        for &x in bag {
            if x >= g.n() {
                return Err(BagViolation::OutOfRange(x));
            }
            if owner[x].is_some() {
                return Err(BagViolation::NotPartition(x));
            }
            owner[x] = Some(i);
        }
    }
    if let Some(x) = owner.iter().position(Option::is_none) {
        return Err(BagViolation::NotPartition(x));
    }
    for (i, bag) in m.bags.iter().enumerate() {
        if !g.is_clique(bag) {
            return Err(BagViolation::NotClique(i));
        }
    }
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            let (a, b) = (owner[x].unwrap(), owner[y].unwrap());
            if a != b && g.has_edge(x, y) != m.base.has_edge(a, b) {
                return Err(BagViolation::CrossAdjacency(a.min(b), a.max(b)));
            }
        }
    }
    Ok(())
}
