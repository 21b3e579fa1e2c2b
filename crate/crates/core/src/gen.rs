//! Seeded instance generators.
//!
//! All randomness comes from [`Rng`], a xorshift64* generator, so any port
//! that implements the recurrence below reproduces the same instances:
//!
//! ```text
//! seed:  z = seed + 0x9E3779B97F4A7C15 (wrapping)
//!        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!        x = z ^ (z >> 31), replaced by 1 if zero
//! step:  x ^= x >> 12; x ^= x << 25; x ^= x >> 27
//!        output x * 0x2545F4914F6CDD1D (wrapping)
//! below(m) = (output as u128 * m) >> 64
//! unit()   = (output >> 11) / 2^53
//! ```
//!
//! Every generator re-checks its advertised properties with [`crate::analysis`]
//! before returning.

use serde::{Deserialize, Serialize};

use crate::analysis::{alpha_at_most_two, find_hole_in_range, find_induced, find_induced_through, is_free};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inflation::{build_inflation, BagMap, InflationSpec};
use crate::pattern::Pattern;

#[derive(Debug, Clone)]
pub struct Rng {
    x: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        let x = z ^ (z >> 31);
        Rng { x: if x == 0 { 1 } else { x } }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.x ^= self.x >> 12;
        self.x ^= self.x << 25;
        self.x ^= self.x >> 27;
        self.x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..m`; `m` must be positive.
    pub fn below(&mut self, m: usize) -> usize {
        ((self.next_u64() as u128 * m as u128) >> 64) as usize
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for i in (1..v.len()).rev() {
            let j = self.below(i + 1);
            v.swap(i, j);
        }
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// `u` and `v` have a common non-neighbour, so deleting `uv` would create
/// an independent triple.
fn common_non_neighbor(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.n()).any(|w| w != u && w != v && !g.has_edge(w, u) && !g.has_edge(w, v))
}

fn ensure_alpha2(g: &Graph, what: &str) -> Result<()> {
    if alpha_at_most_two(g) {
        Ok(())
    } else {
        Err(Error::precondition(format!("{what}: generated graph has α > 2")))
    }
}

/// Complement of a random triangle-free graph: pairs are visited in random
/// order and each is deleted from `K_n` with a per-instance probability
/// whenever that keeps `α ≤ 2`.
pub fn random_alpha2(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::precondition("random_alpha2 needs n >= 1"));
    }
    let mut rng = Rng::new(seed);
    let p = 0.3 + 0.7 * rng.unit();
    let mut g = Graph::complete(n);
    let mut pairs = all_pairs(n);
    rng.shuffle(&mut pairs);
    for (u, v) in pairs {
        if rng.chance(p) && !common_non_neighbor(&g, u, v) {
            g = g.with_edge_removed(u, v);
        }
    }
    ensure_alpha2(&g, "random_alpha2")?;
    Ok(g)
}

/// Random `h`-free graph with `α ≤ 2`.
///
/// For patterns absent from `K_n` this runs the deletion process of
/// [`random_alpha2`] and also refuses deletions that create an induced `h`
/// (checked through the affected pair). K4minus-free graphs start from two
/// disjoint cliques and gain random cross edges. K4-free graphs are drawn by
/// repeatedly breaking a random `K4`, restarting up to `max_tries` times.
pub fn random_hfree_alpha2(h: Pattern, n: usize, seed: u64, max_tries: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::precondition("random_hfree_alpha2 needs n >= 1"));
    }
    let mut rng = Rng::new(seed);
    let g = match h {
        Pattern::K4 => k4_free_sample(n, &mut rng, max_tries)?,
        Pattern::K4Minus => k4minus_free_sample(n, &mut rng),
        _ => deletion_sample(h, n, &mut rng),
    };
    ensure_alpha2(&g, "random_hfree_alpha2")?;
    if !is_free(&g, h)? {
        return Err(Error::precondition(format!("generated graph contains {h}")));
    }
    Ok(g)
}

fn deletion_sample(h: Pattern, n: usize, rng: &mut Rng) -> Graph {
    let p = 0.4 + 0.6 * rng.unit();
    let mut g = Graph::complete(n);
    let mut pairs = all_pairs(n);
    rng.shuffle(&mut pairs);
    for (u, v) in pairs {
        if !rng.chance(p) || common_non_neighbor(&g, u, v) {
            continue;
        }
        let next = g.with_edge_removed(u, v);
        if find_induced_through(&next, h, &[u, v]).is_none() {
            g = next;
        }
    }
    g
}

fn k4minus_free_sample(n: usize, rng: &mut Rng) -> Graph {
    let split = rng.range(0, n);
    let mut edges = Vec::new();
    for (u, v) in all_pairs(n) {
        if (u < split) == (v < split) {
            edges.push((u, v));
        }
    }
    let mut g = Graph::from_edges(n, edges).expect("valid pairs");
    let p = rng.unit();
    let mut cross: Vec<(usize, usize)> = (0..split).flat_map(|u| (split..n).map(move |v| (u, v))).collect();
    rng.shuffle(&mut cross);
    for (u, v) in cross {
        if !rng.chance(p) {
            continue;
        }
        let next = g.with_edges_added(&[(u, v)]);
        if find_induced_through(&next, Pattern::K4Minus, &[u, v]).is_none() {
            g = next;
        }
    }
    g
}

fn k4_free_sample(n: usize, rng: &mut Rng, max_tries: usize) -> Result<Graph> {
    if n > 8 {
        return Err(Error::GeneratorExhausted {
            tries: 0,
            advice: "K4-free graphs with α <= 2 have at most 8 vertices".into(),
        });
    }
    for _ in 0..max_tries.max(1) {
        let mut g = random_alpha2(n, rng.next_u64())?;
        loop {
            let Some(k4) = find_induced(&g, Pattern::K4)? else {
                return Ok(g);
            };
            let mut options: Vec<(usize, usize)> = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    if !common_non_neighbor(&g, k4[i], k4[j]) {
                        options.push((k4[i], k4[j]));
                    }
                }
            }
            if options.is_empty() {
                break;
            }
            let (u, v) = options[rng.below(options.len())];
            g = g.with_edge_removed(u, v);
        }
    }
    Err(Error::GeneratorExhausted {
        tries: max_tries as u64,
        advice: "raise max_tries or lower n".into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InflationKind {
    Path,
    Cycle,
}

/// Random inflation of `P_k` or `C_k` with bags in `1..=max_bag`. Path bags
/// are adjusted so the first bag is a smallest bag and the last bag a
/// smallest even-position bag.
pub fn random_inflation(kind: InflationKind, k: usize, max_bag: usize, seed: u64) -> Result<(Graph, BagMap)> {
    if max_bag == 0 {
        return Err(Error::precondition("max_bag must be positive"));
    }
    let base = match kind {
        InflationKind::Path if k >= 2 && k.is_multiple_of(2) => Graph::path(k),
        InflationKind::Cycle if k >= 3 => Graph::cycle(k),
        _ => {
            return Err(Error::precondition(format!(
                "no {kind:?} inflation with k = {k} (paths need even k >= 2, cycles k >= 3)"
            )))
        }
    };
    let mut rng = Rng::new(seed);
    let mut f: Vec<usize> = (0..k).map(|_| rng.range(1, max_bag)).collect();
    if kind == InflationKind::Path {
        let even_min = (1..k).step_by(2).map(|i| f[i]).min().unwrap();
        f[k - 1] = rng.range(1, even_min);
        let all_min = *f.iter().min().unwrap();
        f[0] = rng.range(1, all_min);
    }
    build_inflation(&InflationSpec::new(base, f))
}

/// A graph with a marked induced copy of `H` (C4, C5 or P4) on vertices
/// `0..|H|` in pattern order, every edge of which dominates the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingInstance {
    pub graph: Graph,
    pub h: Vec<usize>,
}

/// Each outside vertex misses at most one vertex of `H`; vertices missing
/// the same one are made pairwise adjacent; the outside part starts as a
/// random `α ≤ 2` graph.
pub fn dominating_family(kind: Pattern, n: usize, seed: u64) -> Result<DominatingInstance> {
    if !matches!(kind, Pattern::C4 | Pattern::C5 | Pattern::P4) {
        return Err(Error::precondition(format!("no dominating family for {kind}")));
    }
    let k = kind.order();
    if n < k {
        return Err(Error::precondition(format!("n = {n} is below |H| = {k}")));
    }
    let mut rng = Rng::new(seed);
    let rest = if n > k { Some(random_alpha2(n - k, rng.next_u64())?) } else { None };
    let missed: Vec<Option<usize>> = (k..n)
        .map(|_| {
            let r = rng.below(k + 1);
            (r < k).then_some(r)
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = kind.edges().to_vec();
    for v in k..n {
        for a in 0..k {
            if missed[v - k] != Some(a) {
                edges.push((a, v));
            }
        }
    }
    for u in k..n {
        for v in u + 1..n {
            let keep = rest.as_ref().is_some_and(|r| r.has_edge(u - k, v - k));
            let forced = missed[u - k].is_some() && missed[u - k] == missed[v - k];
            if keep || forced {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    let h: Vec<usize> = (0..k).collect();
    check_dominating(&graph, kind, &h)?;
    Ok(DominatingInstance { graph, h })
}

pub fn dominating_c4_family(n: usize, seed: u64) -> Result<DominatingInstance> {
    dominating_family(Pattern::C4, n, seed)
}

pub fn dominating_c5_family(n: usize, seed: u64) -> Result<DominatingInstance> {
    dominating_family(Pattern::C5, n, seed)
}

pub fn dominating_p4_family(n: usize, seed: u64) -> Result<DominatingInstance> {
    dominating_family(Pattern::P4, n, seed)
}

fn check_dominating(g: &Graph, kind: Pattern, h: &[usize]) -> Result<()> {
    ensure_alpha2(g, "dominating family")?;
    let pg = kind.graph();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            if g.has_edge(h[i], h[j]) != pg.has_edge(i, j) {
                return Err(Error::precondition("planted H is not induced"));
            }
        }
    }
    let outside: Vec<usize> = (0..g.n()).filter(|v| !h.contains(v)).collect();
    for (a, b) in pg.edges() {
        if !g.dominates(&[h[a], h[b]], &outside) {
            return Err(Error::precondition("an edge of H does not dominate"));
        }
    }
    Ok(())
}

/// Inflation of `C_{2α+1}` joined to a clique, with the ground truth kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbHolesInstance {
    pub graph: Graph,
    /// Bags in host ids; the inflated cycle occupies the lowest ids.
    pub bags: BagMap,
    pub universal: Vec<usize>,
}

/// Bags are at most 3 for `α = 2` and at most 2 otherwise; `|B| <= 3`.
pub fn forbholes_family(alpha: usize, seed: u64) -> Result<ForbHolesInstance> {
    if !(2..=7).contains(&alpha) {
        return Err(Error::precondition("forbholes_family supports 2 <= α <= 7"));
    }
    let mut rng = Rng::new(seed);
    let k = 2 * alpha + 1;
    let max_bag = if alpha == 2 { 3 } else { 2 };
    let f: Vec<usize> = (0..k).map(|_| rng.range(1, max_bag)).collect();
    let b = rng.range(0, 3);
    forbholes_with(alpha, f, b)
}

/// Deterministic variant with explicit bag sizes and `|B|`.
pub fn forbholes_with(alpha: usize, f: Vec<usize>, b: usize) -> Result<ForbHolesInstance> {
    let k = 2 * alpha + 1;
    if f.len() != k {
        return Err(Error::precondition(format!("need {k} bag sizes")));
    }
    let (infl, bags) = build_inflation(&InflationSpec::new(Graph::cycle(k), f))?;
    let graph = infl.join(&Graph::complete(b))?;
    let universal: Vec<usize> = (infl.n()..graph.n()).collect();
    if let Some(h) = find_hole_in_range(&graph, 4, 2 * alpha) {
        return Err(Error::precondition(format!("unexpected hole of length {}", h.length)));
    }
    Ok(ForbHolesInstance { graph, bags, universal })
}

/// Everything `cli gen` can be asked for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenSpec {
    Alpha2 { n: usize, seed: u64 },
    Hfree { pattern: Pattern, n: usize, seed: u64, #[serde(default = "default_tries")] max_tries: usize },
    Inflation { kind: InflationKind, k: usize, max_bag: usize, seed: u64 },
    Dominating { pattern: Pattern, n: usize, seed: u64 },
    Forbholes { alpha: usize, seed: u64 },
}

fn default_tries() -> usize {
    1000
}

/// A generated graph plus whatever ground truth the family records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generated {
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bags: Option<BagMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universal: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<usize>>,
}

impl Generated {
    fn plain(graph: Graph) -> Self {
        Generated { graph, bags: None, universal: None, marked: None }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    Ok(match *spec {
        GenSpec::Alpha2 { n, seed } => Generated::plain(random_alpha2(n, seed)?),
        GenSpec::Hfree { pattern, n, seed, max_tries } => {
            Generated::plain(random_hfree_alpha2(pattern, n, seed, max_tries)?)
        }
        GenSpec::Inflation { kind, k, max_bag, seed } => {
            let (graph, bags) = random_inflation(kind, k, max_bag, seed)?;
            Generated { bags: Some(bags), ..Generated::plain(graph) }
        }
        GenSpec::Dominating { pattern, n, seed } => {
            let d = dominating_family(pattern, n, seed)?;
            Generated { marked: Some(d.h), ..Generated::plain(d.graph) }
        }
        GenSpec::Forbholes { alpha, seed } => {
            let f = forbholes_family(alpha, seed)?;
            Generated { bags: Some(f.bags), universal: Some(f.universal), ..Generated::plain(f.graph) }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{chromatic_number, independence_number};
    use crate::inflation::bag_invariant_check;

    #[test]
    fn rng_is_reproducible() {
        let a: Vec<u64> = {
            let mut r = Rng::new(42);
            (0..5).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = Rng::new(42);
            (0..5).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, {
            let mut r = Rng::new(43);
            (0..5).map(|_| r.next_u64()).collect::<Vec<_>>()
        });
        let mut r = Rng::new(7);
        for _ in 0..1000 {
            assert!(r.below(5) < 5);
            let u = r.unit();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn alpha2_examples() {
        assert_eq!(random_alpha2(1, 3).unwrap(), Graph::complete(1));
        for seed in 0..20 {
            assert!(independence_number(&random_alpha2(6, seed).unwrap()).unwrap() <= 2);
            assert_eq!(random_alpha2(2, seed).unwrap().n(), 2);
        }
        assert_eq!(
            random_alpha2(9, 5).unwrap().to_json_string(),
            random_alpha2(9, 5).unwrap().to_json_string()
        );
    }

    #[test]
    fn hfree_examples() {
        for seed in 0..5 {
            let g = random_hfree_alpha2(Pattern::C4, 10, seed, 100).unwrap();
            assert!(is_free(&g, Pattern::C4).unwrap());
            let g = random_hfree_alpha2(Pattern::P4, 5, seed, 100).unwrap();
            assert!(is_free(&g, Pattern::P4).unwrap());
        }
        assert!(random_hfree_alpha2(Pattern::K4, 9, 1, 10).is_err());
        for n in 1..=8 {
            let g = random_hfree_alpha2(Pattern::K4, n, n as u64, 1000).unwrap();
            assert!(is_free(&g, Pattern::K4).unwrap());
        }
    }

    #[test]
    fn inflation_examples() {
        let (g, m) = random_inflation(InflationKind::Cycle, 5, 2, 9).unwrap();
        assert!(m.sizes().iter().all(|&s| (1..=2).contains(&s)));
        assert_eq!(bag_invariant_check(&g, &m), Ok(()));
        let (g, m) = random_inflation(InflationKind::Path, 2, 1, 9).unwrap();
        assert_eq!((g.n(), m.sizes()), (2, vec![1, 1]));
        let (g, _) = random_inflation(InflationKind::Cycle, 3, 3, 4).unwrap();
        assert!(g.is_clique(&(0..g.n()).collect::<Vec<_>>()));
        for seed in 0..50 {
            let (_, m) = random_inflation(InflationKind::Path, 8, 5, seed).unwrap();
            let f = m.sizes();
            assert!(f.iter().all(|&s| s >= f[0]));
            assert!((1..8).step_by(2).all(|i| f[i] >= f[7]));
        }
        assert!(random_inflation(InflationKind::Path, 3, 2, 0).is_err());
    }

    #[test]
    fn dominating_examples() {
        assert_eq!(dominating_c4_family(4, 1).unwrap().graph, Graph::cycle(4));
        for seed in 0..20 {
            dominating_c5_family(6, seed).unwrap();
            dominating_c4_family(12, seed).unwrap();
            dominating_p4_family(9, seed).unwrap();
        }
    }

    #[test]
    fn forbholes_examples() {
        let f = forbholes_with(2, vec![1; 5], 0).unwrap();
        assert_eq!(f.graph, Graph::cycle(5));
        let f = forbholes_with(2, vec![2; 5], 2).unwrap();
        assert_eq!(f.graph.n(), 12);
        assert_eq!(chromatic_number(&f.graph).unwrap().0, 7);
        for seed in 0..5 {
            let f = forbholes_family(3, seed).unwrap();
            assert!(find_hole_in_range(&f.graph, 4, 6).is_none());
        }
    }

    #[test]
    fn spec_roundtrip() {
        let spec: GenSpec =
            serde_json::from_str(r#"{"family":"hfree","pattern":"paw","n":7,"seed":3}"#).unwrap();
        assert_eq!(spec, GenSpec::Hfree { pattern: Pattern::Paw, n: 7, seed: 3, max_tries: 1000 });
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
