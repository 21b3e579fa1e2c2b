//! Every constructor's output goes through the verifier on at least 500
//! seeded instances.

use immlab::analysis::independence_number;
use immlab::construct::*;
use immlab::gen::*;
use immlab::immersion::verify_certificate;
use immlab::{Graph, ImmersionCertificate, Pattern};

const RUNS: u64 = 500;

fn check(g: &Graph, c: &ImmersionCertificate, want: usize, what: &str) {
    assert_eq!(verify_certificate(g, c), Ok(()), "{what}: {}", g.to_json_string());
    assert!(c.order >= want, "{what}: order {} < {want}", c.order);
}

fn subcert(g: &Graph, h: &[usize]) -> Option<ImmersionCertificate> {
    let (rest, _) = g.delete_vertices(&h[..4]).unwrap();
    if rest.n() == 0 {
        return Some(ImmersionCertificate::clique(&rest, &[]));
    }
    solve_auto(&rest).ok().map(|(_, c)| c)
}

#[test]
fn path_inflations() {
    for seed in 0..RUNS {
        let k = 2 * (1 + seed as usize % 5);
        let (g, m) = random_inflation(InflationKind::Path, k, 5, seed).unwrap();
        let f = m.sizes();
        let c = path_inflation_clique_immersion(&g, &m, f[0], f[k - 1]).unwrap();
        check(&g, &c, f[0] + f[k - 1], "path");
    }
}

#[test]
fn cycle_inflations() {
    for seed in 0..RUNS {
        let k = 3 + seed as usize % 7;
        let (g, m) = random_inflation(InflationKind::Cycle, k, 4, seed).unwrap();
        let (c, col) = cycle_inflation_clique_immersion(&g, &m).unwrap();
        check(&g, &c, immlab::analysis::colors_used(&col), "cycle");
    }
}

#[test]
fn hole_free() {
    for seed in 0..RUNS {
        let inst = forbholes_family(2 + seed as usize % 2, seed).unwrap();
        let c = hole_free_immersion(&inst.graph).unwrap();
        check(&inst.graph, &c, 1, "forbholes");
    }
}

#[test]
fn extensions() {
    for (kind, ext) in [
        (Pattern::C4, extend_over_dominating_c4 as fn(&ExtensionContext) -> _),
        (Pattern::C5, extend_over_dominating_c5),
        (Pattern::P4, extend_over_dominating_p4),
    ] {
        let mut done = 0;
        let mut seed = 0;
        while done < RUNS {
            seed += 1;
            let n = kind.order() + (seed as usize % 13);
            let inst = dominating_family(kind, n, seed).unwrap();
            let Some(sub) = subcert(&inst.graph, &inst.h) else { continue };
            let ctx = ExtensionContext::new(&inst.graph, kind, inst.h.clone(), &sub).unwrap();
            let c = ext(&ctx).unwrap_or_else(|e| panic!("{kind} seed {seed}: {e}"));
            check(&inst.graph, &c, half_up(n), "extension");
            done += 1;
        }
    }
}

#[test]
fn house_and_owh_free() {
    for seed in 0..RUNS {
        let n = 1 + seed as usize % 18;
        let g = random_hfree_alpha2(Pattern::House, n, seed, 100).unwrap();
        let c = house_free_immersion(&g).unwrap_or_else(|e| panic!("house seed {seed}: {e}"));
        check(&g, &c, half_up(n), "house");
        let g = random_hfree_alpha2(Pattern::Owh, n, seed, 100).unwrap();
        let c = owh_free_immersion(&g).unwrap_or_else(|e| panic!("owh seed {seed}: {e}"));
        check(&g, &c, half_up(n), "owh");
    }
}

#[test]
fn small_cases() {
    for seed in 0..RUNS {
        let n = 1 + seed as usize % 8;
        let g = random_hfree_alpha2(Pattern::K4, n, seed, 1000).unwrap();
        let c = k4_free_immersion(&g).unwrap();
        check(&g, &c, half_up(n), "k4");
        let n = 1 + seed as usize % 16;
        let g = random_hfree_alpha2(Pattern::K4Minus, n, seed, 100).unwrap();
        let out = k4minus_free_clique(&g).unwrap();
        check(&g, &out.certificate, half_up(n), "k4minus");
        if let Some(p) = out.partition {
            assert!(p.is_valid(&g));
        }
    }
}

#[test]
fn vergara_all_patterns() {
    for h in Pattern::SEVEN {
        for seed in 0..RUNS / 5 {
            let n = if h == Pattern::K4 { 1 + seed as usize % 8 } else { 1 + seed as usize % 14 };
            let g = random_hfree_alpha2(h, n, seed, 1000).unwrap();
            assert!(independence_number(&g).unwrap() <= 2);
            let c = vergara_solve(&g, h).unwrap_or_else(|e| panic!("{h} seed {seed}: {e}"));
            check(&g, &c, half_up(n), "vergara");
            assert_eq!(c.order, half_up(n));
        }
    }
}
