//! Exact invariants and structural searches: independence, clique and
//! chromatic numbers, induced pattern search, holes and chordality.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};
use crate::pattern::Pattern;

/// Limit for the bitset clique search (also bounds α).
pub const CLIQUE_LIMIT: usize = 128;
/// Limit for the exact colouring search.
pub const CHROMATIC_LIMIT: usize = 24;
/// Limit for five-vertex induced pattern searches.
pub const FIVE_VERTEX_PATTERN_LIMIT: usize = 512;

fn small_rows(g: &Graph, what: &'static str) -> Result<Vec<u128>> {
    if g.n() > CLIQUE_LIMIT {
        return Err(Error::SizeLimit {
            what,
            n: g.n(),
            limit: CLIQUE_LIMIT,
        });
    }
    Ok((0..g.n())
        .map(|v| g.neighbors(v).fold(0u128, |acc, u| acc | 1 << u))
        .collect())
}

/// Branch and bound with greedy colouring bounds.
fn max_clique_rows(rows: &[u128]) -> Vec<usize> {
    fn expand(rows: &[u128], cand: u128, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        // greedy colour classes over the candidates, lowest id first
        let mut order = Vec::new();
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1 << v) & !rows[v];
                uncolored &= !(1 << v);
                order.push((v, color));
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if cur.len() + c <= best.len() {
                return;
            }
            cur.push(v);
            let next = cand & rows[v];
            if next == 0 {
                if cur.len() > best.len() {
                    *best = cur.clone();
                }
            } else {
                expand(rows, next, cur, best);
            }
            cur.pop();
            cand &= !(1 << v);
        }
    }
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = vec![0];
    expand(rows, all, &mut Vec::new(), &mut best);
    best.sort_unstable();
    best
}

/// Clique number with a witness clique. `n <= 128`.
pub fn clique_number(g: &Graph) -> Result<(usize, VertexSet)> {
    let rows = small_rows(g, "clique search")?;
    let best = max_clique_rows(&rows);
    Ok((best.len(), VertexSet::new(best)))
}

/// Independence number. `n <= 128`.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(max_independent_set(g)?.len())
}

pub fn max_independent_set(g: &Graph) -> Result<VertexSet> {
    let (_, s) = clique_number(&g.complement())?;
    Ok(s)
}

/// `true` iff the complement is triangle-free, i.e. α(g) ≤ 2. Works on any size.
pub fn alpha_at_most_two(g: &Graph) -> bool {
    find_independent_triple(g).is_none()
}

/// Some independent set of size three, if one exists.
pub fn find_independent_triple(g: &Graph) -> Option<[usize; 3]> {
    let n = g.n();
    let words = n.div_ceil(64);
    let non_adj = |v: usize| -> Vec<u64> {
        let row = g.row(v);
        (0..words)
            .map(|w| {
                let valid = if (w + 1) * 64 <= n {
                    u64::MAX
                } else {
                    (1u64 << (n - w * 64)) - 1
                };
                !row[w] & valid
            })
            .collect()
    };
    let rows: Vec<Vec<u64>> = (0..n).map(non_adj).collect();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            for w in 0..words {
                let mut common = rows[u][w] & rows[v][w];
                while common != 0 {
                    let x = w * 64 + common.trailing_zeros() as usize;
                    common &= common - 1;
                    if x > v {
                        return Some([u, v, x]);
                    }
                }
            }
        }
    }
    None
}

/// Exact chromatic number and an optimal proper colouring (colours `0..χ`).
/// `n <= 24`.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Vec<usize>)> {
    chromatic_number_bounded(g, CHROMATIC_LIMIT)
}

/// Same as [`chromatic_number`] with a caller-chosen size limit (at most 64).
pub fn chromatic_number_bounded(g: &Graph, limit: usize) -> Result<(usize, Vec<usize>)> {
    let limit = limit.min(64);
    if g.n() > limit {
        return Err(Error::SizeLimit {
            what: "exact colouring",
            n: g.n(),
            limit,
        });
    }
    Ok(Dsatur::new(g).solve())
}

/// DSATUR branch and bound, seeded with a maximum clique.
struct Dsatur {
    n: usize,
    adj: Vec<u64>,
    best: Vec<usize>,
    best_k: usize,
    lower: usize,
}

impl Dsatur {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let adj = (0..n)
            .map(|v| g.neighbors(v).fold(0u64, |a, u| a | 1 << u))
            .collect();
        Dsatur {
            n,
            adj,
            best: Vec::new(),
            best_k: usize::MAX,
            lower: 0,
        }
    }

    fn solve(mut self) -> (usize, Vec<usize>) {
        if self.n == 0 {
            return (0, Vec::new());
        }
        let rows: Vec<u128> = self.adj.iter().map(|&r| r as u128).collect();
        let clique = max_clique_rows(&rows);
        self.lower = clique.len();
        let mut color = vec![usize::MAX; self.n];
        for (c, &v) in clique.iter().enumerate() {
            color[v] = c;
        }
        // greedy DSATUR for the initial upper bound
        let greedy = self.greedy(color.clone());
        self.best_k = greedy.iter().max().map_or(0, |&m| m + 1);
        self.best = greedy;
        if self.best_k > self.lower {
            let used = clique.len();
            self.search(&mut color, used, self.n - clique.len());
        }
        (self.best_k, self.best)
    }

    fn saturation(&self, color: &[usize], v: usize) -> u64 {
        let mut seen = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if color[u] != usize::MAX {
                seen |= 1 << color[u];
            }
        }
        seen
    }

    fn pick(&self, color: &[usize]) -> (usize, u64) {
        let mut best: Option<(u32, u32, usize, u64)> = None;
        for v in 0..self.n {
            if color[v] != usize::MAX {
                continue;
            }
            let sat = self.saturation(color, v);
            let uncolored_deg = bits(&[self.adj[v]])
                .filter(|&u| color[u] == usize::MAX)
                .count() as u32;
            let key = (sat.count_ones(), uncolored_deg);
            if best.is_none_or(|(s, d, _, _)| key > (s, d)) {
                best = Some((key.0, key.1, v, sat));
            }
        }
        let (_, _, v, sat) = best.expect("an uncoloured vertex");
        (v, sat)
    }

    fn greedy(&self, mut color: Vec<usize>) -> Vec<usize> {
        while color.contains(&usize::MAX) {
            let (v, sat) = self.pick(&color);
            color[v] = (0..).find(|&c| sat >> c & 1 == 0).unwrap();
        }
        color
    }

    fn search(&mut self, color: &mut Vec<usize>, used: usize, left: usize) {
        if self.best_k == self.lower {
            return;
        }
        if left == 0 {
            if used < self.best_k {
                self.best_k = used;
                self.best = color.clone();
            }
            return;
        }
        let (v, sat) = self.pick(color);
        for c in 0..used {
            if sat >> c & 1 == 0 {
                color[v] = c;
                self.search(color, used, left - 1);
                color[v] = usize::MAX;
                if self.best_k == self.lower {
                    return;
                }
            }
        }
        if used + 1 < self.best_k {
            color[v] = used;
            self.search(color, used + 1, left - 1);
            color[v] = usize::MAX;
        }
    }
}

/// Exact weighted chromatic number of `base`: the least number of colours
/// such that every vertex `v` receives `weights[v]` distinct colours and
/// adjacent vertices share none. This equals the chromatic number of any
/// inflation of `base` with bag sizes `weights`. `base` may have at most 16
/// vertices.
pub fn weighted_chromatic_number(base: &Graph, weights: &[usize]) -> Result<usize> {
    let k = base.n();
    if k > 16 {
        return Err(Error::SizeLimit {
            what: "weighted colouring base",
            n: k,
            limit: 16,
        });
    }
    if weights.len() != k {
        return Err(Error::precondition("one weight per base vertex required"));
    }
    let adj: Vec<u32> = (0..k)
        .map(|v| base.neighbors(v).fold(0u32, |a, u| a | 1 << u))
        .collect();
    let independent: Vec<u32> = (1u32..1 << k)
        .filter(|&s| iter32(s).all(|v| adj[v] & s == 0))
        .collect();
    let cliques: Vec<u32> = (1u32..1 << k)
        .filter(|&s| iter32(s).all(|v| (adj[v] | 1 << v) & s == s))
        .collect();
    let alpha = independent.iter().map(|s| s.count_ones()).max().unwrap_or(0) as usize;
    let total: usize = weights.iter().sum();
    if total == 0 {
        return Ok(0);
    }
    let clique_bound = cliques
        .iter()
        .map(|&s| iter32(s).map(|v| weights[v]).sum::<usize>())
        .max()
        .unwrap_or(0);
    let mut t = clique_bound.max(total.div_ceil(alpha));
    let demand: Vec<u8> = weights.iter().map(|&w| w as u8).collect();
    loop {
        let mut failed = HashSet::new();
        if weighted_feasible(&demand, t, &adj, &independent, alpha, &mut failed) {
            return Ok(t);
        }
        t += 1;
    }
}

fn iter32(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn weighted_feasible(
    demand: &[u8],
    colors: usize,
    adj: &[u32],
    independent: &[u32],
    alpha: usize,
    failed: &mut HashSet<(Vec<u8>, usize)>,
) -> bool {
    let total: usize = demand.iter().map(|&d| d as usize).sum();
    if total == 0 {
        return true;
    }
    let max = *demand.iter().max().unwrap() as usize;
    if max > colors || total > colors * alpha {
        return false;
    }
    // any two adjacent vertices need disjoint colour sets
    for (v, &row) in adj.iter().enumerate() {
        for u in iter32(row) {
            if (demand[u] as usize + demand[v] as usize) > colors {
                return false;
            }
        }
    }
    let key = (demand.to_vec(), colors);
    if failed.contains(&key) {
        return false;
    }
    let support: u32 = demand
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .fold(0, |a, (v, _)| a | 1 << v);
    let pivot = (0..demand.len())
        .max_by_key(|&v| (demand[v], std::cmp::Reverse(v)))
        .unwrap();
    let mut tried = HashSet::new();
    for &s in independent {
        let class = s & support;
        if class & (1 << pivot) == 0 || !tried.insert(class) {
            continue;
        }
        // only classes maximal within the support
        let extendable = iter32(support & !class).any(|u| adj[u] & class == 0);
        if extendable {
            continue;
        }
        let mut next = demand.to_vec();
        for v in iter32(class) {
            next[v] -= 1;
        }
        if weighted_feasible(&next, colors - 1, adj, independent, alpha, failed) {
            return true;
        }
    }
    failed.insert(key);
    false
}

/// Checks whether an ordered vertex tuple realises a pattern as an induced
/// subgraph, up to isomorphism.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    k: usize,
    accepted: Vec<bool>,
}

fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

impl PatternMatcher {
    pub fn new(p: Pattern) -> Self {
        let pg = p.graph();
        let k = pg.n();
        let mut accepted = vec![false; 1 << (k * (k - 1) / 2)];
        let mut perm: Vec<usize> = (0..k).collect();
        permutations(&mut perm, 0, &mut |perm| {
            let mut mask = 0usize;
            for (a, b) in pg.edges() {
                mask |= 1 << pair_index(perm[a], perm[b]);
            }
            accepted[mask] = true;
        });
        PatternMatcher { k, accepted }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn matches(&self, g: &Graph, vs: &[usize]) -> bool {
        debug_assert_eq!(vs.len(), self.k);
        let mut mask = 0usize;
        for j in 1..vs.len() {
            for i in 0..j {
                if g.has_edge(vs[i], vs[j]) {
                    mask |= 1 << pair_index(i, j);
                }
            }
        }
        self.accepted[mask]
    }
}

fn permutations(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permutations(v, i + 1, f);
        v.swap(i, j);
    }
}

fn check_pattern_limit(g: &Graph, p: Pattern) -> Result<()> {
    if p.order() == 5 && g.n() > FIVE_VERTEX_PATTERN_LIMIT {
        return Err(Error::SizeLimit {
            what: "five-vertex pattern search",
            n: g.n(),
            limit: FIVE_VERTEX_PATTERN_LIMIT,
        });
    }
    Ok(())
}

/// An induced copy of `p`, as the lexicographically least embedding:
/// `result[i]` is the image of pattern vertex `i`, and the images induce
/// exactly the pattern's edges under that correspondence.
pub fn find_induced(g: &Graph, p: Pattern) -> Result<Option<Vec<usize>>> {
    check_pattern_limit(g, p)?;
    let pg = p.graph();
    let k = pg.n();
    let pdeg: Vec<usize> = (0..k).map(|v| pg.degree(v)).collect();
    let gdeg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut emb = Vec::with_capacity(k);
    let mut used = vec![false; g.n()];
    fn go(
        g: &Graph,
        pg: &Graph,
        pdeg: &[usize],
        gdeg: &[usize],
        emb: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = emb.len();
        if i == pg.n() {
            return true;
        }
        for x in 0..g.n() {
            if used[x] || gdeg[x] < pdeg[i] {
                continue;
            }
            if (0..i).any(|j| pg.has_edge(i, j) != g.has_edge(x, emb[j])) {
                continue;
            }
            used[x] = true;
            emb.push(x);
            if go(g, pg, pdeg, gdeg, emb, used) {
                return true;
            }
            emb.pop();
            used[x] = false;
        }
        false
    }
    Ok(go(g, &pg, &pdeg, &gdeg, &mut emb, &mut used).then_some(emb))
}

pub fn is_free(g: &Graph, p: Pattern) -> Result<bool> {
    Ok(find_induced(g, p)?.is_none())
}

/// An induced copy of `p` that uses every vertex in `required`, if any.
pub fn find_induced_through(g: &Graph, p: Pattern, required: &[usize]) -> Option<Vec<usize>> {
    let m = PatternMatcher::new(p);
    let k = m.order();
    if required.len() > k {
        return None;
    }
    let others: Vec<usize> = (0..g.n()).filter(|v| !required.contains(v)).collect();
    let need = k - required.len();
    let mut pick = Vec::with_capacity(need);
    fn go(
        g: &Graph,
        m: &PatternMatcher,
        others: &[usize],
        start: usize,
        need: usize,
        required: &[usize],
        pick: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if pick.len() == need {
            let vs: Vec<usize> = required.iter().chain(pick.iter()).copied().collect();
            return m.matches(g, &vs).then_some(vs);
        }
        for i in start..others.len() {
            pick.push(others[i]);
            if let Some(found) = go(g, m, others, i + 1, need, required, pick) {
                return Some(found);
            }
            pick.pop();
        }
        None
    }
    go(g, &m, &others, 0, need, required, &mut pick)
}

/// An induced cycle of length at least four.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleReport {
    pub length: usize,
    /// Cyclically ordered, starting at the smallest vertex.
    pub vertices: Vec<usize>,
}

/// The lexicographically least hole with `lo <= length <= hi`, if any.
/// Lengths below 4 are never reported.
pub fn find_hole_in_range(g: &Graph, lo: usize, hi: usize) -> Option<HoleReport> {
    let lo = lo.max(4);
    let hi = hi.min(g.n());
    if lo > hi {
        return None;
    }
    let mut path = Vec::with_capacity(hi);
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() {
        path.push(s);
        on_path[s] = true;
        if let Some(h) = hole_dfs(g, lo, hi, &mut path, &mut on_path) {
            return Some(h);
        }
        path.pop();
        on_path[s] = false;
    }
    None
}

fn hole_dfs(
    g: &Graph,
    lo: usize,
    hi: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> Option<HoleReport> {
    let s = path[0];
    let last = *path.last().unwrap();
    let len = path.len();
    let candidates: Vec<usize> = g.neighbors(last).filter(|&w| w > s && !on_path[w]).collect();
    for w in candidates {
        // w may only touch `last` among interior path vertices
        let interior = if len >= 2 { &path[1..len - 1] } else { &[][..] };
        if interior
            .iter()
            .any(|&x| g.has_edge(x, w))
        {
            continue;
        }
        if len >= 2 && g.has_edge(w, s) {
            let cyc = len + 1;
            if cyc >= lo && cyc <= hi && path[1] < w {
                let mut vertices = path.clone();
                vertices.push(w);
                return Some(HoleReport {
                    length: cyc,
                    vertices,
                });
            }
            continue;
        }
        if len + 2 <= hi {
            path.push(w);
            on_path[w] = true;
            let found = hole_dfs(g, lo, hi, path, on_path);
            path.pop();
            on_path[w] = false;
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// A perfect elimination ordering if `g` is chordal.
pub fn chordal_decompose(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    // maximum cardinality search; the reverse visit order is a PEO iff chordal
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        visited[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    let peo = visit;
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &peo {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        if !g.is_clique(&later) {
            return None;
        }
    }
    Some(peo)
}

/// Largest clique of the form `{v} ∪ later neighbours of v` along a PEO.
pub fn clique_from_peo(g: &Graph, peo: &[usize]) -> VertexSet {
    let mut pos = vec![0; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    peo.iter()
        .map(|&v| {
            std::iter::once(v)
                .chain(g.neighbors(v).filter(|&u| pos[u] > pos[v]))
                .collect::<VertexSet>()
        })
        .max_by_key(|s| s.len())
        .unwrap_or_default()
}

/// Whether `coloring` is a proper colouring of `g`.
pub fn is_proper_coloring(g: &Graph, coloring: &[usize]) -> bool {
    coloring.len() == g.n() && g.edges().iter().all(|&(u, v)| coloring[u] != coloring[v])
}

pub fn colors_used(coloring: &[usize]) -> usize {
    coloring.iter().collect::<HashSet<_>>().len()
}
