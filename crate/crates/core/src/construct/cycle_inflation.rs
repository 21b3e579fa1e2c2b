use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immersion::{compose_certificates, GraphImmersion, ImmersionCertificate};
use crate::inflation::{bag_invariant_check, build_inflation, BagMap, InflationSpec};

use super::checked;
use super::path_inflation::cross_paths;

/// Clique immersion in an inflated cycle together with a proper colouring
/// that uses exactly as many colours as the certificate has branch vertices.
///
/// The colouring is not guaranteed optimal: the recursion can settle on more
/// colours than `χ(g)`.
pub fn cycle_inflation_clique_immersion(
    g: &Graph,
    m: &BagMap,
) -> Result<(ImmersionCertificate, Vec<usize>)> {
    let k = m.bags.len();
    if k < 3 {
        return Err(Error::precondition(format!("cycle inflation needs k >= 3, got {k}")));
    }
    if m.base != Graph::cycle(k) {
        return Err(Error::precondition("bag map base is not a cycle in bag order"));
    }
    bag_invariant_check(g, m).map_err(|e| Error::precondition(e.to_string()))?;
    let (c, coloring) = solve(g, &m.bags);
    Ok((checked(g, c)?, coloring))
}

fn solve(g: &Graph, bags: &[Vec<usize>]) -> (ImmersionCertificate, Vec<usize>) {
    let k = bags.len();
    let mut color = vec![usize::MAX; g.n()];
    if k == 3 {
        for (c, v) in (0..g.n()).enumerate() {
            color[v] = c;
        }
        let all: Vec<usize> = (0..g.n()).collect();
        return (ImmersionCertificate::clique(g, &all), color);
    }
    if k == 4 {
        let s = bags[0].len().max(bags[2].len());
        for (i, bag) in bags.iter().enumerate() {
            let start = if i % 2 == 0 { 0 } else { s };
            for (r, &v) in bag.iter().enumerate() {
                color[v] = start + r;
            }
        }
        let i = best_pair(bags);
        let clique: Vec<usize> = bags[i].iter().chain(&bags[(i + 1) % 4]).copied().collect();
        return (ImmersionCertificate::clique(g, &clique), color);
    }

    // rotate: paper index j (1-based) lives in bag (i + 1 + j) mod k, so that
    // v_{k-1}, v_k are the heaviest adjacent pair
    let i = best_pair(bags);
    let bag = |j: usize| &bags[(i + 1 + j) % k];
    let (b1, bkm2, bkm1, bk) = (bag(1), bag(k - 2), bag(k - 1), bag(k));
    debug_assert!(b1.len() <= bkm1.len() && bkm2.len() <= bk.len());

    // G' = inflation of C_{k-2} on v_1..v_{k-2}
    let sizes: Vec<usize> = (1..=k - 2).map(|j| bag(j).len()).collect();
    let (gp, mp) = build_inflation(&InflationSpec::new(Graph::cycle(k - 2), sizes))
        .expect("bag sizes are positive");
    let mut to_host = vec![0; gp.n()];
    for (j, pbag) in mp.bags.iter().enumerate() {
        for (r, &x) in pbag.iter().enumerate() {
            to_host[x] = bag(j + 1)[r];
        }
    }
    let mut outer = GraphImmersion {
        pattern: gp.clone(),
        map: to_host.clone(),
        paths: Default::default(),
    };
    let own = mp.owner(gp.n());
    let four = if bkm2.len() <= b1.len() {
        vec![bkm2.clone(), bkm1.clone(), bk.clone(), b1.clone()]
    } else {
        vec![b1.clone(), bk.clone(), bkm1.clone(), bkm2.clone()]
    };
    let mut cross: HashMap<(usize, usize), Vec<usize>> = cross_paths(&four)
        .into_iter()
        .map(|w| ((w[0].min(w[3]), w[0].max(w[3])), w))
        .collect();
    for (a, b) in gp.edges() {
        let (ha, hb) = (to_host[a], to_host[b]);
        // the B_1 - B_{k-2} edges of G' are not host edges
        let (ja, jb) = (own[a].unwrap(), own[b].unwrap());
        let walk = if (ja.min(jb), ja.max(jb)) == (0, k - 3) {
            let mut w = cross
                .remove(&(ha.min(hb), ha.max(hb)))
                .expect("every new cross pair has an alternating path");
            if w[0] != ha {
                w.reverse();
            }
            w
        } else {
            vec![ha, hb]
        };
        outer.paths.insert((a, b), walk);
    }

    let (inner, inner_color) = solve(&gp, &mp.bags);
    let composed = compose_certificates(g, &outer, &inner).expect("inner certificate is on G'");
    let chi_p = inner.order;
    for x in 0..gp.n() {
        color[to_host[x]] = inner_color[x];
    }

    // extend the colouring to B_{k-1} and B_k
    let c1: Vec<usize> = b1.iter().map(|&v| color[v]).collect();
    let ckm2: Vec<usize> = bkm2.iter().map(|&v| color[v]).collect();
    let taken: BTreeSet<usize> = c1.iter().chain(&ckm2).copied().collect();
    let mut free = (0..chi_p).filter(|c| !taken.contains(c));
    let mut next_new = chi_p;
    let mut fresh = false;
    let mut paint = |v: usize, color: &mut Vec<usize>| {
        color[v] = free.next().unwrap_or_else(|| {
            fresh = true;
            next_new += 1;
            next_new - 1
        });
    };
    for (r, &v) in bkm1.iter().enumerate() {
        if r < c1.len() {
            color[v] = c1[r];
        } else {
            paint(v, &mut color);
        }
    }
    for (r, &v) in bk.iter().enumerate() {
        if r < ckm2.len() {
            color[v] = ckm2[r];
        } else {
            paint(v, &mut color);
        }
    }
    if fresh {
        let clique: Vec<usize> = bkm1.iter().chain(bk).copied().collect();
        debug_assert_eq!(next_new, clique.len());
        (ImmersionCertificate::clique(g, &clique), color)
    } else {
        (composed, color)
    }
}

/// Lowest `i` maximising `|B_i| + |B_{i+1}|`.
fn best_pair(bags: &[Vec<usize>]) -> usize {
    let k = bags.len();
    let mut best = 0;
    for i in 1..k {
        if bags[i].len() + bags[(i + 1) % k].len() > bags[best].len() + bags[(best + 1) % k].len() {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{chromatic_number, colors_used, is_proper_coloring};
    use crate::immersion::verify_certificate;

    fn run(f: &[usize]) -> (Graph, ImmersionCertificate, Vec<usize>) {
        let (g, m) = build_inflation(&InflationSpec::new(Graph::cycle(f.len()), f.to_vec())).unwrap();
        let (c, col) = cycle_inflation_clique_immersion(&g, &m).unwrap();
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        assert!(is_proper_coloring(&g, &col));
        assert_eq!(c.order, colors_used(&col));
        (g, c, col)
    }

    #[test]
    fn triangle() {
        let (_, c, _) = run(&[1, 1, 1]);
        assert_eq!(c.order, 3);
    }

    #[test]
    fn c7_singletons() {
        let (_, c, _) = run(&[1; 7]);
        assert_eq!(c.order, 3);
    }

    #[test]
    fn c5_doubled_at_least_chi() {
        let (g, c, _) = run(&[2; 5]);
        assert_eq!(chromatic_number(&g).unwrap().0, 5);
        assert!(c.order >= 5);
    }

    #[test]
    fn c7_two_heavy_bags() {
        run(&[1, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn c4_case() {
        let (_, c, _) = run(&[2, 1, 3, 2]);
        assert_eq!(c.order, 5);
    }

    #[test]
    fn order_never_below_chi() {
        for k in 3..=8usize {
            for s in 0..8usize {
                let f: Vec<usize> = (0..k).map(|i| 1 + (i * 5 + s * 7 + i * s) % 3).collect();
                let (g, c, _) = run(&f);
                if g.n() <= 20 {
                    assert!(c.order >= chromatic_number(&g).unwrap().0, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_non_cycle_maps() {
        let (g, m) = build_inflation(&InflationSpec::new(Graph::path(4), vec![1; 4])).unwrap();
        assert!(cycle_inflation_clique_immersion(&g, &m).is_err());
    }
}
