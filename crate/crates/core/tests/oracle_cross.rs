//! Constructors checked against the brute-force oracle on small inputs.

use immlab::analysis::chromatic_number;
use immlab::construct::*;
use immlab::gen::*;
use immlab::oracle::{max_immersion_order, OracleBudget};
use immlab::{verify_certificate, Graph, Pattern};

fn oracle(g: &Graph) -> usize {
    let (t, c) = max_immersion_order(g, &OracleBudget::default()).unwrap();
    assert_eq!(verify_certificate(g, &c), Ok(()));
    t
}

#[test]
fn random_alpha2_against_solver() {
    for seed in 0..150u64 {
        let n = 1 + seed as usize % 9;
        let g = random_alpha2(n, seed).unwrap();
        let (_, c) = solve_auto(&g).unwrap();
        assert_eq!(verify_certificate(&g, &c), Ok(()));
        let t = oracle(&g);
        assert!(t >= half_up(n), "seed {seed}: oracle {t} below half");
        assert!(t >= c.order);
    }
}

#[test]
fn extensions_small() {
    for kind in [Pattern::C4, Pattern::C5, Pattern::P4] {
        let mut done = 0;
        let mut seed = 0u64;
        while done < 60 {
            seed += 1;
            let n = kind.order() + seed as usize % (10 - kind.order());
            let inst = dominating_family(kind, n, seed).unwrap();
            let (rest, _) = inst.graph.delete_vertices(&inst.h[..4]).unwrap();
            let Ok((_, sub)) = solve_auto(&rest) else { continue };
            let ctx = ExtensionContext::new(&inst.graph, kind, inst.h.clone(), &sub).unwrap();
            let c = match kind {
                Pattern::C4 => extend_over_dominating_c4(&ctx),
                Pattern::C5 => extend_over_dominating_c5(&ctx),
                _ => extend_over_dominating_p4(&ctx),
            }
            .unwrap();
            assert_eq!(verify_certificate(&inst.graph, &c), Ok(()));
            assert!(c.order >= half_up(n));
            assert!(oracle(&inst.graph) >= c.order);
            done += 1;
        }
    }
}

#[test]
fn k4_free_small() {
    for seed in 0..60u64 {
        let n = 1 + seed as usize % 8;
        let g = random_hfree_alpha2(Pattern::K4, n, seed, 1000).unwrap();
        let c = k4_free_immersion(&g).unwrap();
        assert!(oracle(&g) >= c.order);
    }
}

#[test]
fn hole_free_order_is_chromatic() {
    for seed in 0..120u64 {
        let inst = forbholes_family(2 + seed as usize % 2, seed).unwrap();
        let g = &inst.graph;
        if g.n() > 18 {
            continue;
        }
        let c = hole_free_immersion(g).unwrap();
        assert_eq!(c.order, chromatic_number(g).unwrap().0, "seed {seed}");
    }
}

#[test]
fn c5_and_complement_c7() {
    assert_eq!(oracle(&Graph::cycle(5)), 3);
    let c7 = Graph::cycle(7).complement();
    assert_eq!(vergara_solve(&c7, Pattern::K4).unwrap().order, 4);
    assert!(oracle(&c7) >= 4);
}
