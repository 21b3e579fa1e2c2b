//! Clique immersion certificates and their verifier.
//!
//! A certificate for `K_t` in a host graph names `t` distinct branch
//! vertices and, for every unordered branch pair, a host path between them.
//! It is valid when
//!
//! * (I) there is exactly one path per branch pair, with the right endpoints,
//!   and every consecutive pair on a path is a host edge;
//! * (II) the paths are pairwise edge-disjoint;
//! * (III) no branch vertex is an interior vertex of any path.
//!
//! Interior vertices may be shared between paths; only edges are exclusive.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CERT_FORMAT: &str = "immlab-cert-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPath {
    pub u: usize,
    pub v: usize,
    pub walk: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionCertificate {
    pub format: String,
    pub graph_sha256: String,
    pub order: usize,
    pub branch: Vec<usize>,
    pub paths: Vec<BranchPath>,
}

/// Why a certificate was rejected. Each variant names the condition it breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum CertificateViolation {
    #[error("host mismatch: certificate is for graph {expected}, got {actual}")]
    HostMismatch { expected: String, actual: String },
    #[error("structure: unknown format {0:?}")]
    Format(String),
    #[error("structure: vertex {0} out of range")]
    OutOfRange(usize),
    #[error("condition I: order {order} but {branch} branch vertices")]
    OrderMismatch { order: usize, branch: usize },
    #[error("condition I: branch vertex {0} listed twice")]
    DuplicateBranch(usize),
    #[error("condition I: expected {expected} paths, found {found}")]
    PathCount { expected: usize, found: usize },
    #[error("condition I: no path for branch pair {0}-{1}")]
    MissingPair(usize, usize),
    #[error("condition I: pair {0}-{1} is not a branch pair or appears twice")]
    UnexpectedPair(usize, usize),
    #[error("condition I: path for {u}-{v} does not run between its endpoints")]
    BadEndpoints { u: usize, v: usize },
    #[error("condition I: path for {u}-{v} steps along non-edge {a}-{b}")]
    NotAnEdge { u: usize, v: usize, a: usize, b: usize },
    #[error("condition I: path for {u}-{v} revisits vertex {vertex}")]
    NotSimple { u: usize, v: usize, vertex: usize },
    #[error("condition II: edge {a}-{b} used by paths {first:?} and {second:?}")]
    EdgeReused {
        a: usize,
        b: usize,
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("condition III: branch vertex {vertex} is interior to path {u}-{v}")]
    BranchInterior { vertex: usize, u: usize, v: usize },
}

impl CertificateViolation {
    /// `"I"`, `"II"`, `"III"`, or `"structure"`/`"host"`.
    pub fn condition(&self) -> &'static str {
        use CertificateViolation::*;
        match self {
            HostMismatch { .. } => "host",
            Format(_) | OutOfRange(_) => "structure",
            EdgeReused { .. } => "II",
            BranchInterior { .. } => "III",
            _ => "I",
        }
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ImmersionCertificate {
    /// Builds a certificate from branch vertices and one walk per pair.
    /// Walks are oriented from the smaller endpoint, branch vertices sorted
    /// and paths sorted by pair. No validity check is done here.
    pub fn new(host: &Graph, branch: Vec<usize>, walks: Vec<Vec<usize>>) -> Self {
        Self::with_hash(host.sha256(), branch, walks)
    }

    pub(crate) fn with_hash(hash: String, mut branch: Vec<usize>, walks: Vec<Vec<usize>>) -> Self {
        branch.sort_unstable();
        let mut paths: Vec<BranchPath> = walks
            .into_iter()
            .map(|mut w| {
                let (a, b) = (w[0], *w.last().unwrap());
                if a > b {
                    w.reverse();
                }
                BranchPath {
                    u: a.min(b),
                    v: a.max(b),
                    walk: w,
                }
            })
            .collect();
        paths.sort_by_key(|p| (p.u, p.v));
        ImmersionCertificate {
            format: CERT_FORMAT.to_string(),
            graph_sha256: hash,
            order: branch.len(),
            branch,
            paths,
        }
    }

    /// The trivial certificate for a clique of `host`: every pair joined by its edge.
    pub fn clique(host: &Graph, vertices: &[usize]) -> Self {
        let mut walks = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                walks.push(vec![a, b]);
            }
        }
        Self::new(host, vertices.to_vec(), walks)
    }

    pub fn path(&self, a: usize, b: usize) -> Option<&[usize]> {
        let (u, v) = ordered(a, b);
        self.paths
            .binary_search_by_key(&(u, v), |p| (p.u, p.v))
            .ok()
            .map(|i| self.paths[i].walk.as_slice())
    }

    /// Total number of host edges used by the path family.
    pub fn edges_used(&self) -> usize {
        self.paths.iter().map(|p| p.walk.len() - 1).sum()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-points the certificate at another host, mapping every vertex
    /// through `map` (child id → parent id).
    pub fn relabel(&self, host: &Graph, map: impl Fn(usize) -> usize) -> Self {
        let branch = self.branch.iter().map(|&v| map(v)).collect();
        let walks = self
            .paths
            .iter()
            .map(|p| p.walk.iter().map(|&v| map(v)).collect())
            .collect();
        Self::new(host, branch, walks)
    }
}

/// Checks a certificate against its host graph.
pub fn verify_certificate(
    g: &Graph,
    c: &ImmersionCertificate,
) -> std::result::Result<(), CertificateViolation> {
    use CertificateViolation::*;
    if c.format != CERT_FORMAT {
        return Err(Format(c.format.clone()));
    }
    let actual = g.sha256();
    if c.graph_sha256 != actual {
        return Err(HostMismatch {
            expected: c.graph_sha256.clone(),
            actual,
        });
    }
    for &v in c
        .branch
        .iter()
        .chain(c.paths.iter().flat_map(|p| p.walk.iter()))
    {
        if v >= g.n() {
            return Err(OutOfRange(v));
        }
    }
    let t = c.branch.len();
    if c.order != t {
        return Err(OrderMismatch {
            order: c.order,
            branch: t,
        });
    }
    let mut is_branch = vec![false; g.n()];
    for &b in &c.branch {
        if is_branch[b] {
            return Err(DuplicateBranch(b));
        }
        is_branch[b] = true;
    }
    let expected = t * t.saturating_sub(1) / 2;
    let mut seen_pairs = HashSet::new();
    let mut used: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for p in &c.paths {
        let (u, v) = (p.u, p.v);
        if u == v || !is_branch[u] || !is_branch[v] || !seen_pairs.insert(ordered(u, v)) {
            return Err(UnexpectedPair(u, v));
        }
        let w = &p.walk;
        let ends_ok = w.len() >= 2
            && ((w[0] == u && w[w.len() - 1] == v) || (w[0] == v && w[w.len() - 1] == u));
        if !ends_ok {
            return Err(BadEndpoints { u, v });
        }
        let mut on_path = HashSet::new();
        for &x in w {
            if !on_path.insert(x) {
                return Err(NotSimple { u, v, vertex: x });
            }
        }
        for &x in &w[1..w.len() - 1] {
            if is_branch[x] {
                return Err(BranchInterior { vertex: x, u, v });
            }
        }
        for s in w.windows(2) {
            let (a, b) = (s[0], s[1]);
            if !g.has_edge(a, b) {
                return Err(NotAnEdge { u, v, a, b });
            }
            if let Some(&first) = used.get(&ordered(a, b)) {
                let (a, b) = ordered(a, b);
                return Err(EdgeReused {
                    a,
                    b,
                    first,
                    second: ordered(u, v),
                });
            }
            used.insert(ordered(a, b), ordered(u, v));
        }
    }
    if c.paths.len() != expected {
        return Err(PathCount {
            expected,
            found: c.paths.len(),
        });
    }
    for (i, &a) in c.branch.iter().enumerate() {
        for &b in &c.branch[i + 1..] {
            if !seen_pairs.contains(&ordered(a, b)) {
                let (a, b) = ordered(a, b);
                return Err(MissingPair(a, b));
            }
        }
    }
    Ok(())
}

/// An immersion of an arbitrary pattern graph into a host.
///
/// `map[i]` is the host image of pattern vertex `i`; `paths` holds one host
/// walk per pattern edge `(a, b)` with `a < b`, running from `map[a]` to
/// `map[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphImmersion {
    pub pattern: Graph,
    pub map: Vec<usize>,
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl GraphImmersion {
    /// The identity immersion of a subgraph: `pattern` vertex `i` is host
    /// vertex `map[i]` and every pattern edge must be a host edge.
    pub fn from_subgraph(pattern: &Graph, map: Vec<usize>) -> Self {
        let paths = pattern
            .edges()
            .into_iter()
            .map(|(a, b)| ((a, b), vec![map[a], map[b]]))
            .collect();
        GraphImmersion {
            pattern: pattern.clone(),
            map,
            paths,
        }
    }

    /// Walk for the pattern edge `a-b`, oriented from `map[a]` to `map[b]`.
    fn walk(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if a < b {
            self.paths.get(&(a, b)).cloned()
        } else {
            self.paths.get(&(b, a)).map(|w| w.iter().rev().copied().collect())
        }
    }
}

/// Checks a general immersion against conditions (I)–(III).
pub fn verify_immersion(g: &Graph, imm: &GraphImmersion) -> std::result::Result<(), CertificateViolation> {
    use CertificateViolation::*;
    let k = imm.pattern.n();
    if imm.map.len() != k {
        return Err(OrderMismatch {
            order: k,
            branch: imm.map.len(),
        });
    }
    let mut is_branch = vec![false; g.n()];
    for &b in &imm.map {
        if b >= g.n() {
            return Err(OutOfRange(b));
        }
        if is_branch[b] {
            return Err(DuplicateBranch(b));
        }
        is_branch[b] = true;
    }
    let edges = imm.pattern.edges();
    if imm.paths.len() != edges.len() {
        return Err(PathCount {
            expected: edges.len(),
            found: imm.paths.len(),
        });
    }
    let mut used = HashMap::new();
    for (a, b) in edges {
        let (u, v) = (imm.map[a], imm.map[b]);
        let w = imm.paths.get(&(a, b)).ok_or(MissingPair(u, v))?;
        if w.len() < 2 || w[0] != u || w[w.len() - 1] != v {
            return Err(BadEndpoints { u, v });
        }
        for &x in &w[1..w.len() - 1] {
            if x >= g.n() {
                return Err(OutOfRange(x));
            }
            if is_branch[x] {
                return Err(BranchInterior { vertex: x, u, v });
            }
        }
        for s in w.windows(2) {
            if !g.has_edge(s[0], s[1]) {
                return Err(NotAnEdge { u, v, a: s[0], b: s[1] });
            }
            if let Some(&first) = used.get(&ordered(s[0], s[1])) {
                let (a, b) = ordered(s[0], s[1]);
                return Err(EdgeReused {
                    a,
                    b,
                    first,
                    second: ordered(u, v),
                });
            }
            used.insert(ordered(s[0], s[1]), ordered(u, v));
        }
    }
    Ok(())
}

/// Turns a walk into a simple path with the same endpoints by repeatedly
/// cutting out the closed sub-walk at the first repeated vertex.
pub fn shortcut_walk(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    let mut pos: HashMap<usize, usize> = HashMap::new();
    for &x in walk {
        if let Some(&i) = pos.get(&x) {
            for y in out.drain(i + 1..) {
                pos.remove(&y);
            }
        } else {
            pos.insert(x, out.len());
            out.push(x);
        }
    }
    out
}

/// Composes `g ≽ M` (outer) with `M ≽ K_t` (inner) into `g ≽ K_t`.
///
/// Each edge of an inner path is replaced by the outer path of that pattern
/// edge; the concatenated walk is then shortcut to a simple path.
pub fn compose_certificates(
    g: &Graph,
    outer: &GraphImmersion,
    inner: &ImmersionCertificate,
) -> Result<ImmersionCertificate> {
    let pattern_hash = outer.pattern.sha256();
    if inner.graph_sha256 != pattern_hash {
        return Err(Error::InvalidCertificate(CertificateViolation::HostMismatch {
            expected: inner.graph_sha256.clone(),
            actual: pattern_hash,
        }));
    }
    let branch = inner.branch.iter().map(|&b| outer.map[b]).collect();
    let mut walks = Vec::with_capacity(inner.paths.len());
    for p in &inner.paths {
        let mut walk = vec![outer.map[p.walk[0]]];
        for s in p.walk.windows(2) {
            let seg = outer.walk(s[0], s[1]).ok_or_else(|| {
                Error::precondition(format!(
                    "inner path uses {}-{}, which is not an edge of the outer pattern",
                    s[0], s[1]
                ))
            })?;
            walk.extend_from_slice(&seg[1..]);
        }
        walks.push(shortcut_walk(&walk));
    }
    Ok(ImmersionCertificate::new(g, branch, walks))
}

/// Keeps the `target` lowest-id branch vertices and the paths among them.
pub fn trim_certificate(c: &ImmersionCertificate, target: usize) -> Result<ImmersionCertificate> {
    if target > c.order {
        return Err(Error::precondition(format!(
            "cannot trim an order-{} certificate to order {target}",
            c.order
        )));
    }
    let mut branch = c.branch.clone();
    branch.sort_unstable();
    branch.truncate(target);
    let keep: HashSet<usize> = branch.iter().copied().collect();
    let walks = c
        .paths
        .iter()
        .filter(|p| keep.contains(&p.u) && keep.contains(&p.v))
        .map(|p| p.walk.clone())
        .collect();
    Ok(ImmersionCertificate::with_hash(
        c.graph_sha256.clone(),
        branch,
        walks,
    ))
}

/// Adds universal vertices of `g` as new branch vertices joined by direct edges.
pub fn extend_with_universal(
    g: &Graph,
    c: &ImmersionCertificate,
    universal: &[usize],
) -> Result<ImmersionCertificate> {
    let mut touched = HashSet::new();
    for p in &c.paths {
        touched.extend(p.walk.iter().copied());
    }
    touched.extend(c.branch.iter().copied());
    for (i, &u) in universal.iter().enumerate() {
        g.check_vertex(u)?;
        if g.degree(u) + 1 != g.n() {
            return Err(Error::precondition(format!("vertex {u} is not universal")));
        }
        if touched.contains(&u) || universal[..i].contains(&u) {
            return Err(Error::precondition(format!(
                "vertex {u} is already used by the certificate"
            )));
        }
    }
    let mut branch = c.branch.clone();
    let mut walks: Vec<Vec<usize>> = c.paths.iter().map(|p| p.walk.clone()).collect();
    for &u in universal {
        for &b in &branch {
            walks.push(vec![b, u]);
        }
        branch.push(u);
    }
    Ok(ImmersionCertificate::new(g, branch, walks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c5_cert(third: Vec<usize>) -> (Graph, ImmersionCertificate) {
        let g = Graph::cycle(5);
        let c = ImmersionCertificate::new(&g, vec![0, 1, 2], vec![vec![0, 1], vec![1, 2], third]);
        (g, c)
    }

    #[test]
    fn c5_triangle_accepted() {
        let (g, c) = c5_cert(vec![2, 3, 4, 0]);
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        assert_eq!(c.path(2, 0).unwrap(), &[0, 4, 3, 2]);
    }

    #[test]
    fn c5_reused_edge_rejected() {
        let (g, c) = c5_cert(vec![2, 1, 0]);
        let err = verify_certificate(&g, &c).unwrap_err();
        assert!(matches!(err.condition(), "II" | "III"), "{err}");
    }

    #[test]
    fn violations_are_named() {
        let g = Graph::cycle(5);
        let c = ImmersionCertificate::new(&g, vec![0, 2], vec![vec![0, 1, 2]]);
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        let c = ImmersionCertificate::new(&g, vec![0, 1, 2], vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(verify_certificate(&g, &c).unwrap_err().condition(), "I");
        let c = ImmersionCertificate::new(&g, vec![0, 2], vec![vec![0, 2]]);
        assert!(matches!(
            verify_certificate(&g, &c),
            Err(CertificateViolation::NotAnEdge { .. })
        ));
        let c = ImmersionCertificate::new(&g, vec![0, 2], vec![vec![0, 1, 2]]);
        assert!(matches!(
            verify_certificate(&Graph::cycle(6), &c),
            Err(CertificateViolation::HostMismatch { .. })
        ));
        let mut c = ImmersionCertificate::new(&g, vec![0, 2], vec![vec![0, 1, 2]]);
        c.paths[0].walk = vec![0, 9, 2];
        assert_eq!(verify_certificate(&g, &c), Err(CertificateViolation::OutOfRange(9)));
    }

    #[test]
    fn shared_interior_vertices_allowed() {
        // bowtie-ish: 0 and 2 joined through 4 twice via distinct edges
        let g = Graph::from_edges(
            6,
            [(0, 4), (4, 2), (1, 4), (4, 3), (0, 1), (1, 2), (0, 5), (5, 2)],
        )
        .unwrap();
        let c = ImmersionCertificate::new(
            &g,
            vec![0, 1, 2],
            vec![vec![0, 1], vec![1, 2], vec![0, 4, 2]],
        );
        assert_eq!(verify_certificate(&g, &c), Ok(()));
    }

    #[test]
    fn trim_examples() {
        let k5 = Graph::complete(5);
        let c = ImmersionCertificate::clique(&k5, &[0, 1, 2, 3, 4]);
        let t = trim_certificate(&c, 3).unwrap();
        assert_eq!(t.branch, vec![0, 1, 2]);
        assert_eq!(verify_certificate(&k5, &t), Ok(()));
        assert_eq!(trim_certificate(&c, 5).unwrap(), c);
        assert!(trim_certificate(&c, 6).is_err());
    }

    #[test]
    fn universal_extension() {
        // C4 join K1: apex 4
        let g = Graph::cycle(4).join(&Graph::complete(1)).unwrap();
        let c = ImmersionCertificate::clique(&g, &[0, 1]);
        let e = extend_with_universal(&g, &c, &[4]).unwrap();
        assert_eq!(e.order, 3);
        assert_eq!(verify_certificate(&g, &e), Ok(()));
        assert_eq!(extend_with_universal(&g, &c, &[]).unwrap(), c);
        assert!(extend_with_universal(&g, &c, &[2]).is_err());
        assert!(extend_with_universal(&g, &ImmersionCertificate::clique(&g, &[0, 4]), &[4]).is_err());
    }

    #[test]
    fn compose_identity_cases() {
        let g = Graph::cycle(5);
        // outer: K3 immersed in C5 (pattern = K3 on 3 vertices)
        let k3 = Graph::complete(3);
        let mut paths = BTreeMap::new();
        paths.insert((0, 1), vec![0, 1]);
        paths.insert((1, 2), vec![1, 2]);
        paths.insert((0, 2), vec![0, 4, 3, 2]);
        let outer = GraphImmersion {
            pattern: k3.clone(),
            map: vec![0, 1, 2],
            paths,
        };
        assert_eq!(verify_immersion(&g, &outer), Ok(()));
        let inner = ImmersionCertificate::clique(&k3, &[0, 1, 2]);
        let c = compose_certificates(&g, &outer, &inner).unwrap();
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        assert_eq!(c.path(0, 2).unwrap(), &[0, 4, 3, 2]);

        // outer identity on a subgraph: C5 inside K5
        let k5 = Graph::complete(5);
        let id = GraphImmersion::from_subgraph(&g, vec![0, 1, 2, 3, 4]);
        let inner = ImmersionCertificate::new(&g, vec![0, 1, 2], vec![vec![0, 1], vec![1, 2], vec![2, 3, 4, 0]]);
        let c = compose_certificates(&k5, &id, &inner).unwrap();
        assert_eq!(c.paths, inner.paths);
        assert_eq!(verify_certificate(&k5, &c), Ok(()));
    }

    #[test]
    fn shortcut_removes_cycles() {
        assert_eq!(shortcut_walk(&[0, 1, 2, 1, 3]), vec![0, 1, 3]);
        assert_eq!(shortcut_walk(&[0, 1, 2, 3, 0, 4]), vec![0, 4]);
        assert_eq!(shortcut_walk(&[5, 6, 7]), vec![5, 6, 7]);
    }

    #[test]
    fn json_shape() {
        let g = Graph::cycle(5);
        let c = ImmersionCertificate::new(&g, vec![2, 0], vec![vec![2, 1, 0]]);
        let text = c.to_json_string();
        assert!(text.starts_with(r#"{"format":"immlab-cert-v1","graph_sha256":""#));
        assert!(text.contains(r#""order":2,"branch":[0,2],"paths":[{"u":0,"v":2,"walk":[0,1,2]}]"#));
        assert_eq!(ImmersionCertificate::from_json_str(&text).unwrap(), c);
    }

    fn arb_dense_host() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (3usize..9).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n.min(4)),
            )
                .prop_map(move |(bits, branch)| {
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
                    (Graph::from_edges(n, edges).unwrap(), branch)
                })
        })
    }

    proptest! {
        /// Composition of an identity-embedded subgraph immersion with a
        /// clique certificate of that subgraph stays valid.
        #[test]
        fn compose_preserves_validity((m, branch) in arb_dense_host()) {
            use crate::oracle::{brute_force_immersion, OracleBudget};
            let t = branch.len();
            if let Ok(Some(inner)) = brute_force_immersion(&m, t, &OracleBudget::default()) {
                // host: M plus a pendant copy of every edge subdivided
                let n = m.n();
                let edges = m.edges();
                let mut host_edges = Vec::new();
                let mut paths = BTreeMap::new();
                for (i, &(a, b)) in edges.iter().enumerate() {
                    let mid = n + i;
                    host_edges.push((a, mid));
                    host_edges.push((mid, b));
                    paths.insert((a, b), vec![a, mid, b]);
                }
                let host = Graph::from_edges(n + edges.len(), host_edges).unwrap();
                let outer = GraphImmersion { pattern: m.clone(), map: (0..n).collect(), paths };
                prop_assert_eq!(verify_immersion(&host, &outer), Ok(()));
                let c = compose_certificates(&host, &outer, &inner).unwrap();
                prop_assert_eq!(verify_certificate(&host, &c), Ok(()));
                prop_assert_eq!(c.order, t);
            }
        }
    }
}
