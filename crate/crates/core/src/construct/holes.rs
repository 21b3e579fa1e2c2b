use crate::analysis::{clique_number, find_hole_in_range, independence_number, weighted_chromatic_number, HoleReport};
use crate::error::{ensure_claim, Error, Result};
use crate::graph::Graph;
use crate::immersion::{extend_with_universal, trim_certificate, ImmersionCertificate};
use crate::inflation::{bag_invariant_check, BagMap};

use super::{checked, cycle_inflation_clique_immersion};

/// Splits `V(g)` around a hole of length `2α+1` into the bags of an inflated
/// cycle (`A`) and a set `B` of universal vertices.
///
/// Bag `j` is `h_j` together with every vertex whose neighbourhood on the
/// hole is exactly `h_{j-1}, h_j, h_{j+1}`. Bag vertex ids are host ids.
pub fn decompose_around_long_hole(g: &Graph, hole: &HoleReport) -> Result<(BagMap, Vec<usize>)> {
    let alpha = independence_number(g)?;
    if alpha < 2 {
        return Err(Error::precondition("independence number is below 2"));
    }
    let len = hole.vertices.len();
    if len != 2 * alpha + 1 || hole.length != len {
        return Err(Error::precondition(format!(
            "hole of length {} given, expected {}",
            len,
            2 * alpha + 1
        )));
    }
    let h = &hole.vertices;
    let induced_cycle = (0..len).all(|i| {
        (0..len).all(|j| {
            let d = (i + len - j) % len;
            i == j || g.has_edge(h[i], h[j]) == (d == 1 || d == len - 1)
        })
    });
    if !induced_cycle {
        return Err(Error::precondition("given vertices do not induce a cycle"));
    }
    if let Some(short) = find_hole_in_range(g, 4, 2 * alpha) {
        return Err(Error::precondition(format!(
            "graph has a hole of length {} <= 2α",
            short.length
        )));
    }

    let mut bags: Vec<Vec<usize>> = h.iter().map(|&v| vec![v]).collect();
    let mut universal = Vec::new();
    for u in 0..g.n() {
        if h.contains(&u) {
            continue;
        }
        let adj: Vec<bool> = h.iter().map(|&v| g.has_edge(u, v)).collect();
        let count = adj.iter().filter(|&&a| a).count();
        if count == len {
            universal.push(u);
            continue;
        }
        let middle = (0..len).find(|&j| adj[(j + len - 1) % len] && adj[j] && adj[(j + 1) % len]);
        match middle {
            Some(j) if count == 3 => bags[j].push(u),
            _ => {
                let seen: Vec<usize> = (0..len).filter(|&j| adj[j]).map(|j| h[j]).collect();
                return Err(Error::claim(
                    "outside vertex sees all of the hole or exactly three consecutive vertices",
                    format!("vertex {u} is adjacent to hole vertices {seen:?}"),
                    g,
                ));
            }
        }
    }
    for bag in &mut bags {
        bag.sort_unstable();
    }

    let a: Vec<usize> = bags.iter().flatten().copied().collect();
    let (ga, rel) = g.induced_subgraph(&a)?;
    let local = BagMap {
        base: Graph::cycle(len),
        bags: bags
            .iter()
            .map(|b| b.iter().map(|&v| rel.new_id(v).unwrap()).collect())
            .collect(),
    };
    if let Err(e) = bag_invariant_check(&ga, &local) {
        return Err(Error::claim(
            "A induces an inflation of the hole",
            e.to_string(),
            g,
        ));
    }
    for &u in &universal {
        ensure_claim(g.degree(u) + 1 == g.n(), "vertices seeing the whole hole are universal", g, || {
            format!("vertex {u} has degree {} in a graph on {} vertices", g.degree(u), g.n())
        })?;
    }
    Ok((
        BagMap {
            base: Graph::cycle(len),
            bags,
        },
        universal,
    ))
}

/// Clique immersion of order `χ(g)` when `g` has no hole of length in `[4, 2α]`.
///
/// The cycle construction on `G[A]` may use more colours than needed; its
/// certificate is trimmed to the exact `χ(G[A])` before the universal
/// vertices are added.
pub fn hole_free_immersion(g: &Graph) -> Result<ImmersionCertificate> {
    let alpha = independence_number(g)?;
    if alpha <= 1 {
        let all: Vec<usize> = (0..g.n()).collect();
        return checked(g, ImmersionCertificate::clique(g, &all));
    }
    if let Some(short) = find_hole_in_range(g, 4, 2 * alpha) {
        return Err(Error::precondition(format!(
            "graph has a hole of length {} <= 2α = {}",
            short.length,
            2 * alpha
        )));
    }
    let Some(hole) = find_hole_in_range(g, 2 * alpha + 1, 2 * alpha + 1) else {
        // chordal
        let (_, clique) = clique_number(g)?;
        return checked(g, ImmersionCertificate::clique(g, &clique));
    };
    let (bags, universal) = decompose_around_long_hole(g, &hole)?;
    let a: Vec<usize> = bags.bags.iter().flatten().copied().collect();
    let (ga, rel) = g.induced_subgraph(&a)?;
    let local = BagMap {
        base: bags.base.clone(),
        bags: bags
            .bags
            .iter()
            .map(|b| b.iter().map(|&v| rel.new_id(v).unwrap()).collect())
            .collect(),
    };
    let (cert, _) = cycle_inflation_clique_immersion(&ga, &local)?;
    let chi_a = weighted_chromatic_number(&local.base, &local.sizes())?;
    let cert = trim_certificate(&cert, chi_a)?;
    let lifted = cert.relabel(g, |v| rel.old(v));
    checked(g, extend_with_universal(g, &lifted, &universal)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::chromatic_number;
    use crate::immersion::verify_certificate;
    use crate::inflation::{build_inflation, InflationSpec};

    #[test]
    fn c5_singletons() {
        let g = Graph::cycle(5);
        let hole = find_hole_in_range(&g, 5, 5).unwrap();
        let (m, b) = decompose_around_long_hole(&g, &hole).unwrap();
        assert!(b.is_empty());
        assert_eq!(m.sizes(), vec![1; 5]);
    }

    #[test]
    fn c7_singletons() {
        let g = Graph::cycle(7);
        let hole = find_hole_in_range(&g, 7, 7).unwrap();
        let (m, b) = decompose_around_long_hole(&g, &hole).unwrap();
        assert!(b.is_empty());
        assert_eq!(m.sizes(), vec![1; 7]);
    }

    #[test]
    fn recovers_bags_and_universals() {
        let (infl, _) = build_inflation(&InflationSpec::new(Graph::cycle(5), vec![2, 1, 1, 2, 1])).unwrap();
        let g = infl.join(&Graph::complete(2)).unwrap();
        let hole = find_hole_in_range(&g, 5, 5).unwrap();
        let (m, b) = decompose_around_long_hole(&g, &hole).unwrap();
        assert_eq!(b, vec![7, 8]);
        let mut sizes = m.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn rejects_short_holes() {
        let g = Graph::cycle(4);
        assert!(hole_free_immersion(&g).is_err());
    }

    #[test]
    fn examples() {
        let c = hole_free_immersion(&Graph::complete(5)).unwrap();
        assert_eq!(c.order, 5);
        let c = hole_free_immersion(&Graph::cycle(7)).unwrap();
        assert_eq!(c.order, 3);
        let (infl, _) = build_inflation(&InflationSpec::new(Graph::cycle(5), vec![2; 5])).unwrap();
        let g = infl.join(&Graph::complete(2)).unwrap();
        let c = hole_free_immersion(&g).unwrap();
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        assert_eq!(c.order, 7);
        assert_eq!(chromatic_number(&g).unwrap().0, 7);
    }
}
