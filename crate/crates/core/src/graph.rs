//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitset row per vertex. Graphs are immutable
//! once built; every derived graph (complement, induced subgraph, deletion)
//! is a new value, and the operations that renumber vertices hand back a
//! [`Relabel`] so results can be lifted to the parent graph.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest graph any algorithm in the crate accepts.
pub const MAX_VERTICES: usize = 4096;

pub const GRAPH_FORMAT: &str = "immlab-graph-v1";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit {
                what: "graph",
                n,
                limit: MAX_VERTICES,
            });
        }
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("complete graph too large");
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// The cycle `0-1-..-(n-1)-0`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// The path `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Join of `self` and `other`: disjoint union plus every cross edge.
    /// Vertices of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, v + self.n);
            }
        }
        Ok(g)
    }

    /// Disjoint union, `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Bitset row of `v`'s neighbourhood.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// `true` when every vertex of `targets` has a neighbour in `dominators`
    /// (vertices of `targets` that lie in `dominators` count as dominated).
    pub fn dominates(&self, dominators: &[usize], targets: &[usize]) -> bool {
        targets.iter().all(|&t| {
            dominators
                .iter()
                .any(|&d| d == t || self.has_edge(d, t))
        })
    }

    /// Non-neighbours of `v`, excluding `v` itself.
    pub fn non_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| u != v && !self.has_edge(u, v))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `vs`. Vertex `i` of the result is `vs[i]` after
    /// sorting and deduplication.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<(Graph, Relabel)> {
        for &v in vs {
            self.check_vertex(v)?;
        }
        let mut keep: Vec<usize> = vs.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut g = Graph::empty(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok((g, Relabel::new(keep, self.n)))
    }

    /// Graph with `vs` removed; surviving vertices keep their relative order.
    pub fn delete_vertices(&self, vs: &[usize]) -> Result<(Graph, Relabel)> {
        let mut drop = vec![false; self.n];
        for &v in vs {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn with_edges_added(&self, extra: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in extra {
            g.set_edge(u, v);
        }
        g
    }

    pub(crate) fn with_edge_removed(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        let w = g.words;
        g.rows[u * w + v / 64] &= !(1 << (v % 64));
        g.rows[v * w + u / 64] &= !(1 << (u % 64));
        g
    }

    // ---- serialization ----

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    /// Canonical JSON text: format tag, `n`, and sorted `u < v` edges.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(text)?;
        raw.into_graph()
    }

    /// `"n m"` header followed by `m` lines `"u v"`.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a vertex id or count: {t:?}")))
        });
        let mut next = |what: &str| -> Result<usize> {
            nums.next()
                .unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            edges.push((u, v));
        }
        if nums.next().is_some() {
            return Err(Error::Parse("trailing tokens after edge list".into()));
        }
        Graph::from_edges(n, edges)
    }

    /// Accepts either the JSON format or the edge-list text format.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            Graph::from_json_str(text)
        } else {
            Graph::from_edge_list(text)
        }
    }

    /// Hex SHA-256 of the canonical JSON text.
    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.to_json_string().as_bytes()))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    format: String,
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            format: GRAPH_FORMAT.to_string(),
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl GraphJson {
    fn into_graph(self) -> Result<Graph> {
        if self.format != GRAPH_FORMAT {
            return Err(Error::Parse(format!(
                "unexpected graph format {:?}",
                self.format
            )));
        }
        Graph::from_edges(self.n, self.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .into_graph()
            .map_err(serde::de::Error::custom)
    }
}

/// Iterates the set bits of a bitset row.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Old/new id correspondence produced by [`Graph::induced_subgraph`] and
/// [`Graph::delete_vertices`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    to_old: Vec<usize>,
    to_new: Vec<Option<usize>>,
}

impl Relabel {
    fn new(to_old: Vec<usize>, parent_n: usize) -> Self {
        let mut to_new = vec![None; parent_n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        Relabel { to_old, to_new }
    }

    /// Parent id of child vertex `v`.
    pub fn old(&self, v: usize) -> usize {
        self.to_old[v]
    }

    /// Child id of parent vertex `v`, if it survived.
    pub fn new_id(&self, v: usize) -> Option<usize> {
        self.to_new.get(v).copied().flatten()
    }

    pub fn old_ids(&self) -> &[usize] {
        &self.to_old
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vs: Vec<usize>) -> Self {
        vs.sort_unstable();
        vs.dedup();
        VertexSet(vs)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for VertexSet {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet::new(it.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Pattern;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    #[test]
    fn induced_path_in_c5() {
        let (h, map) = Graph::cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(map.old_ids(), &[0, 1, 2]);
    }

    #[test]
    fn induced_edge_in_k4() {
        let (h, _) = Graph::complete(4).induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(h, Graph::complete(2));
    }

    #[test]
    fn house_square_is_c4() {
        let house = Pattern::House.graph();
        // square 0-1-2-3-0 with roof 4 over edge 0-1
        let (sq, _) = house.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sq, Pattern::C4.graph());
        let (del, _) = house.delete_vertices(&[4]).unwrap();
        assert_eq!(del, Pattern::C4.graph());
    }

    #[test]
    fn out_of_range_rejected() {
        let g = Graph::cycle(5);
        assert!(matches!(
            g.induced_subgraph(&[0, 7]),
            Err(Error::VertexOutOfRange { vertex: 7, n: 5 })
        ));
        assert!(g.delete_vertices(&[5]).is_err());
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(4).complement().edge_count(), 0);
        assert_eq!(Graph::cycle(4).complement().edges(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn deletion_examples() {
        let (p, _) = Graph::cycle(5).delete_vertices(&[4]).unwrap();
        assert_eq!(p, Graph::path(4));
        let (k, _) = Graph::complete(5).delete_vertices(&[]).unwrap();
        assert_eq!(k, Graph::complete(5));
    }

    #[test]
    fn edge_list_and_json_parse() {
        let g = Pattern::House.graph();
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        assert_eq!(Graph::parse(&g.to_json_string()).unwrap(), g);
        assert_eq!(
            Graph::path(3).to_json_string(),
            r#"{"format":"immlab-graph-v1","n":3,"edges":[[0,1],[1,2]]}"#
        );
        assert!(Graph::parse("3 2\n0 1\n").is_err());
        assert!(Graph::parse(r#"{"format":"other","n":1,"edges":[]}"#).is_err());
    }

    #[test]
    fn size_limit() {
        assert!(Graph::empty(MAX_VERTICES).is_ok());
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
        let big = Graph::path(200);
        assert_eq!(big.edge_count(), 199);
        assert!(big.has_edge(130, 131));
        assert!(!big.has_edge(64, 130));
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph(12)) {
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn adjacency_symmetric_irreflexive(g in arb_graph(12)) {
            for u in 0..g.n() {
                prop_assert!(!g.has_edge(u, u));
                for v in 0..g.n() {
                    prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                }
            }
            let ordered: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(ordered, 2 * g.edge_count());
        }

        #[test]
        fn deletion_matches_induced(g in arb_graph(12), mask in any::<u16>()) {
            let all: Vec<usize> = (0..g.n()).collect();
            prop_assert_eq!(&g.induced_subgraph(&all).unwrap().0, &g);
            let del: Vec<usize> = all.iter().copied().filter(|v| mask >> v & 1 == 1).collect();
            let rest: Vec<usize> = all.iter().copied().filter(|v| mask >> v & 1 == 0).collect();
            let (a, ma) = g.delete_vertices(&del).unwrap();
            let (b, mb) = g.induced_subgraph(&rest).unwrap();
            prop_assert_eq!(a, b);
            prop_assert_eq!(ma, mb);
        }

        #[test]
        fn json_roundtrip(g in arb_graph(10)) {
            prop_assert_eq!(Graph::parse(&g.to_json_string()).unwrap(), g.clone());
            prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        }
    }
}
