use serde::{Deserialize, Serialize};

use crate::analysis::find_induced;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::immersion::{verify_certificate, ImmersionCertificate};
use crate::oracle::{brute_force_immersion, OracleBudget};
use crate::pattern::Pattern;

use super::recursion::{require_alpha_two, require_free, small_clique};
use super::{checked, half_up};

/// Order-`⌈n/2⌉` clique immersion in a K4-free graph with `α ≤ 2` (so `n <= 8`).
pub fn k4_free_immersion(g: &Graph) -> Result<ImmersionCertificate> {
    require_alpha_two(g)?;
    require_free(g, Pattern::K4)?;
    if g.n() > 8 {
        return Err(Error::claim(
            "K4-free graphs with α <= 2 have at most 8 vertices",
            format!("n = {}", g.n()),
            g,
        ));
    }
    checked(g, k4_free(g)?)
}

fn k4_free(g: &Graph) -> Result<ImmersionCertificate> {
    match g.n() {
        0..=4 => small_clique(g),
        5 => triangle_from_cycle(g),
        6 | 8 => {
            let (rest, rel) = g.delete_vertices(&[g.n() - 1])?;
            Ok(k4_free(&rest)?.relabel(g, |v| rel.old(v)))
        }
        7 => seven(g),
        n => unreachable!("n = {n} rejected earlier"),
    }
}

/// `K3` immersion from any cycle: three consecutive cycle vertices, the rest
/// of the cycle closing the third pair.
fn triangle_from_cycle(g: &Graph) -> Result<ImmersionCertificate> {
    let cycle = find_cycle(g).ok_or_else(|| {
        Error::claim("a graph on 5 vertices with α <= 2 has a cycle", "graph is a forest", g)
    })?;
    let mut closing = cycle[2..].to_vec();
    closing.push(cycle[0]);
    let walks = vec![vec![cycle[0], cycle[1]], vec![cycle[1], cycle[2]], closing];
    Ok(ImmersionCertificate::new(g, cycle[..3].to_vec(), walks))
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    stack.push(w);
                } else if w != parent[u] && parent[w] != u {
                    // non-tree edge u-w closes a cycle through their common ancestor
                    let (mut x, mut y) = (u, w);
                    let (mut left, mut right) = (vec![x], vec![y]);
                    while x != y {
                        if depth[x] >= depth[y] {
                            x = parent[x];
                            left.push(x);
                        } else {
                            y = parent[y];
                            right.push(y);
                        }
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// The seven-vertex case: search all labelings for one matching the case
/// analysis, falling back to the exhaustive oracle.
fn seven(g: &Graph) -> Result<ImmersionCertificate> {
    if let Some(c) = seven_by_cases(g) {
        return Ok(c);
    }
    log::warn!("no labeling fits the seven-vertex case analysis; using the oracle");
    brute_force_immersion(g, 4, &OracleBudget::default())?.ok_or_else(|| {
        Error::claim("a K4-free graph on 7 vertices with α <= 2 immerses K4", "oracle found none", g)
    })
}

fn seven_by_cases(g: &Graph) -> Option<ImmersionCertificate> {
    let e = |u: usize, v: usize| g.has_edge(u, v);
    let n = g.n();
    for m1 in 0..n {
        for m2 in 0..n {
            for m3 in 0..n {
                if !(e(m1, m2) && e(m2, m3) && e(m1, m3)) {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|v| ![m1, m2, m3].contains(v)).collect();
                for &a1 in &rest {
                    for &a2 in &rest {
                        if a1 == a2 || e(a1, a2) {
                            continue;
                        }
                        if !(e(a1, m1) && e(a2, m2) && e(a2, m3) && !e(a1, m3) && !e(a2, m1)) {
                            continue;
                        }
                        let others: Vec<usize> =
                            rest.iter().copied().filter(|&v| v != a1 && v != a2).collect();
                        for (a3, a4) in [(others[0], others[1]), (others[1], others[0])] {
                            if let Some(c) = seven_case(g, [m1, m2, m3], [a1, a2, a3, a4]) {
                                return Some(c);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn seven_case(g: &Graph, m: [usize; 3], a: [usize; 4]) -> Option<ImmersionCertificate> {
    let e = |u: usize, v: usize| g.has_edge(u, v);
    let [m1, m2, m3] = m;
    let [a1, a2, a3, a4] = a;
    let build = |long: Vec<usize>| {
        let walks = vec![
            vec![m1, m2],
            vec![m1, m3],
            vec![m2, m3],
            vec![a2, m2],
            vec![a2, m3],
            long,
        ];
        let c = ImmersionCertificate::new(g, vec![a2, m1, m2, m3], walks);
        verify_certificate(g, &c).is_ok().then_some(c)
    };
    // a common neighbour of a1, a2 among a3, a4
    for ai in [a3, a4] {
        if e(a1, ai) && e(a2, ai) {
            return build(vec![a2, ai, a1, m1]);
        }
    }
    if !(e(a1, a3) && e(a2, a4) && !e(a1, a4) && !e(a2, a3) && e(a1, m2)) {
        return None;
    }
    if e(a3, a4) {
        return build(vec![a2, a4, a3, a1, m1]);
    }
    if e(a4, m1) {
        return build(vec![a2, a4, m1]);
    }
    None
}

/// Two cliques covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliquePartition {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl CliquePartition {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![0u8; g.n()];
        for &v in self.left.iter().chain(self.right.iter()) {
            if v >= g.n() {
                return false;
            }
            seen[v] += 1;
        }
        seen.iter().all(|&s| s == 1) && g.is_clique(&self.left) && g.is_clique(&self.right)
    }

    pub fn larger(&self) -> &VertexSet {
        if self.left.len() >= self.right.len() {
            &self.left
        } else {
            &self.right
        }
    }
}

/// Result of the K4minus-free construction: a clique subgraph of order at
/// least `⌈n/2⌉` with the partition it came from, or for `C5` itself a
/// `K3` immersion and no partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4MinusOutcome {
    pub certificate: ImmersionCertificate,
    pub partition: Option<CliquePartition>,
}

/// Splits a K4minus-free graph with `α ≤ 2` into two cliques.
///
/// `C5` is the one graph in the class with no clique on `⌈n/2⌉` vertices;
/// it gets a `K3` immersion instead.
pub fn k4minus_free_clique(g: &Graph) -> Result<K4MinusOutcome> {
    require_alpha_two(g)?;
    require_free(g, Pattern::K4Minus)?;
    let n = g.n();
    if let Some(h) = find_induced(g, Pattern::C5)? {
        if n == 5 {
            let walks = vec![vec![h[0], h[1]], vec![h[1], h[2]], vec![h[2], h[3], h[4], h[0]]];
            let c = ImmersionCertificate::new(g, h[..3].to_vec(), walks);
            return Ok(K4MinusOutcome {
                certificate: checked(g, c)?,
                partition: None,
            });
        }
        return Err(Error::claim(
            "a K4minus-free graph with α <= 2 and an induced C5 has exactly 5 vertices",
            format!("induced C5 {h:?} with n = {n}"),
            g,
        ));
    }
    let all: Vec<usize> = (0..n).collect();
    let partition = if g.is_clique(&all) {
        CliquePartition {
            left: VertexSet::new(all),
            right: VertexSet::new(Vec::new()),
        }
    } else {
        split(g)?
    };
    if !partition.is_valid(g) || partition.larger().len() < half_up(n) {
        return Err(Error::claim(
            "V is the disjoint union of two cliques",
            format!("{partition:?}"),
            g,
        ));
    }
    let certificate = checked(g, ImmersionCertificate::clique(g, partition.larger()))?;
    Ok(K4MinusOutcome {
        certificate,
        partition: Some(partition),
    })
}

fn split(g: &Graph) -> Result<CliquePartition> {
    let x = (0..g.n()).min_by_key(|&v| g.degree(v)).unwrap();
    let nx: Vec<usize> = g.neighbors(x).collect();
    let far = g.non_neighbors(x);
    if g.is_clique(&nx) {
        let mut left = nx;
        left.push(x);
        return Ok(CliquePartition {
            left: VertexSet::new(left),
            right: VertexSet::new(far),
        });
    }
    // N(x) has no induced P3, so it is a disjoint union of cliques
    let a_side: Vec<usize> = {
        let first = nx[0];
        nx.iter().copied().filter(|&v| v == first || g.has_edge(v, first)).collect()
    };
    let b_side: Vec<usize> = nx.iter().copied().filter(|v| !a_side.contains(v)).collect();
    let cross = a_side.iter().any(|&a| b_side.iter().any(|&b| g.has_edge(a, b)));
    if !g.is_clique(&a_side) || !g.is_clique(&b_side) || cross {
        return Err(Error::claim(
            "the neighbourhood of a minimum-degree vertex is two disjoint cliques",
            format!("x = {x}, N(x) = {nx:?}"),
            g,
        ));
    }
    let complete_to_far = |side: &[usize]| side.iter().all(|&s| far.iter().all(|&y| g.has_edge(s, y)));
    let (with_far, with_x) = if complete_to_far(&a_side) {
        (a_side, b_side)
    } else if complete_to_far(&b_side) {
        (b_side, a_side)
    } else {
        return Err(Error::claim(
            "one side of N(x) is complete to the non-neighbourhood of x",
            format!("x = {x}, N(x) = {nx:?}, far = {far:?}"),
            g,
        ));
    };
    let mut left = with_far;
    left.extend(far);
    let mut right = with_x;
    right.push(x);
    Ok(CliquePartition {
        left: VertexSet::new(left),
        right: VertexSet::new(right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::max_immersion_order;

    #[test]
    fn k4_free_examples() {
        let c = k4_free_immersion(&Graph::cycle(5)).unwrap();
        assert_eq!(c.order, 3);
        let g = Graph::cycle(7).complement();
        let c = k4_free_immersion(&g).unwrap();
        assert_eq!(c.order, 4);
        let c = k4_free_immersion(&Graph::complete(3)).unwrap();
        assert_eq!(c.order, 2);
        assert!(k4_free_immersion(&Graph::complete(4)).is_err());
    }

    #[test]
    fn c7_complement_uses_case_analysis() {
        let g = Graph::cycle(7).complement();
        assert!(seven_by_cases(&g).is_some());
    }

    #[test]
    fn cycles_are_simple() {
        for n in 3..8 {
            let c = find_cycle(&Graph::cycle(n)).unwrap();
            assert_eq!(c.len(), n);
        }
        assert!(find_cycle(&Graph::path(5)).is_none());
    }

    #[test]
    fn k4minus_examples() {
        let out = k4minus_free_clique(&Graph::cycle(5)).unwrap();
        assert!(out.partition.is_none());
        assert_eq!(out.certificate.order, 3);
        assert_eq!(max_immersion_order(&Graph::cycle(5), &OracleBudget::default()).unwrap().0, 3);

        let out = k4minus_free_clique(&Graph::complete(6)).unwrap();
        assert_eq!(out.certificate.order, 6);

        // two triangles plus a perfect matching between them
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
            .unwrap();
        let out = k4minus_free_clique(&g).unwrap();
        let p = out.partition.unwrap();
        assert!(p.is_valid(&g));
        assert!(p.larger().len() >= 3);
    }
}
