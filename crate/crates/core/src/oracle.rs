//! Exhaustive clique-immersion search for tiny graphs.
//!
//! Used as ground truth for the constructions, never as a solver of record.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::immersion::ImmersionCertificate;

/// Hard ceiling on `max_n`: edge sets are held in a 128-bit mask.
pub const ORACLE_HARD_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_t: usize,
    /// Backtracking steps before giving up with [`Error::BudgetExceeded`].
    pub node_limit: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 10,
            max_t: 6,
            node_limit: 200_000_000,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    edge_id: HashMap<(usize, usize), u32>,
    nodes: u64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn eid(&self, a: usize, b: usize) -> u32 {
        self.edge_id[&(a.min(b), a.max(b))]
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            Err(Error::BudgetExceeded { nodes: self.nodes })
        } else {
            Ok(())
        }
    }

    /// Unused edges from `u` to non-branch vertices.
    fn free_exits(&self, u: usize, used: u128, is_branch: &[bool]) -> usize {
        self.g
            .neighbors(u)
            .filter(|&w| !is_branch[w] && used >> self.eid(u, w) & 1 == 0)
            .count()
    }

    /// Whether `v` is reachable from `u` through non-branch interiors on unused edges.
    fn reachable(&self, u: usize, v: usize, used: u128, is_branch: &[bool]) -> bool {
        let mut seen = vec![false; self.g.n()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for w in self.g.neighbors(x) {
                if seen[w] || used >> self.eid(x, w) & 1 == 1 {
                    continue;
                }
                if w == v {
                    return true;
                }
                if !is_branch[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn pack(
        &mut self,
        pending: &mut Vec<(usize, usize)>,
        used: u128,
        is_branch: &[bool],
        out: &mut Vec<Vec<usize>>,
    ) -> Result<bool> {
        self.tick()?;
        if pending.is_empty() {
            return Ok(true);
        }
        // residual capacity at every branch endpoint
        let mut demand: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in pending.iter() {
            *demand.entry(a).or_default() += 1;
            *demand.entry(b).or_default() += 1;
        }
        let mut slack = HashMap::new();
        for (&x, &d) in &demand {
            let free = self.free_exits(x, used, is_branch);
            if free < d {
                return Ok(false);
            }
            slack.insert(x, free - d);
        }
        for &(a, b) in pending.iter() {
            if !self.reachable(a, b, used, is_branch) {
                return Ok(false);
            }
        }
        let pick = (0..pending.len())
            .min_by_key(|&i| {
                let (a, b) = pending[i];
                (slack[&a].min(slack[&b]), a, b)
            })
            .unwrap();
        let (a, b) = pending.swap_remove(pick);
        let mut path = vec![a];
        let mut on_path = vec![false; self.g.n()];
        on_path[a] = true;
        let found = self.route(a, b, used, is_branch, &mut path, &mut on_path, pending, out)?;
        // restore order-insensitive pending set
        pending.push((a, b));
        let last = pending.len() - 1;
        pending.swap(pick, last);
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn route(
        &mut self,
        x: usize,
        target: usize,
        used: u128,
        is_branch: &[bool],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        pending: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<bool> {
        self.tick()?;
        let nbrs: Vec<usize> = self.g.neighbors(x).collect();
        for w in nbrs {
            let e = self.eid(x, w);
            if used >> e & 1 == 1 || on_path[w] {
                continue;
            }
            if w == target {
                path.push(w);
                out.push(path.clone());
                if self.pack(pending, used | 1 << e, is_branch, out)? {
                    path.pop();
                    return Ok(true);
                }
                out.pop();
                path.pop();
            } else if !is_branch[w] {
                path.push(w);
                on_path[w] = true;
                let found =
                    self.route(w, target, used | 1 << e, is_branch, path, on_path, pending, out)?;
                on_path[w] = false;
                path.pop();
                if found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Searches for an immersion of `K_t` in `g`. Returns `Ok(None)` only when
/// none exists; an exhausted budget is reported as an error.
pub fn brute_force_immersion(
    g: &Graph,
    t: usize,
    budget: &OracleBudget,
) -> Result<Option<ImmersionCertificate>> {
    let max_n = budget.max_n.min(ORACLE_HARD_LIMIT);
    if g.n() > max_n {
        return Err(Error::SizeLimit {
            what: "immersion oracle",
            n: g.n(),
            limit: max_n,
        });
    }
    if t > budget.max_t {
        return Err(Error::precondition(format!(
            "oracle order {t} exceeds budget max_t {}",
            budget.max_t
        )));
    }
    let n = g.n();
    if t > n {
        return Ok(None);
    }
    if t <= 1 {
        return Ok(Some(ImmersionCertificate::new(g, (0..t).collect(), Vec::new())));
    }
    let edges = g.edges();
    let m = edges.len();
    if m < t * (t - 1) / 2 {
        return Ok(None);
    }
    let edge_id = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u32))
        .collect();
    let mut search = Search {
        g,
        edge_id,
        nodes: 0,
        limit: budget.node_limit,
    };
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 1 >= t).collect();
    let mut subset = Vec::with_capacity(t);
    let found = subsets(&eligible, t, 0, &mut subset, &mut |branch| {
        try_branch_set(&mut search, branch, m)
    })?;
    Ok(found.map(|(branch, walks)| ImmersionCertificate::new(g, branch, walks)))
}

type Found = Option<(Vec<usize>, Vec<Vec<usize>>)>;

fn subsets(
    pool: &[usize],
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Result<Found>,
) -> Result<Found> {
    if cur.len() == k {
        return f(cur);
    }
    for i in start..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        if let Some(found) = subsets(pool, k, i + 1, cur, f)? {
            return Ok(Some(found));
        }
        cur.pop();
    }
    Ok(None)
}

fn try_branch_set(search: &mut Search, branch: &[usize], m: usize) -> Result<Found> {
    let g = search.g;
    let mut is_branch = vec![false; g.n()];
    for &b in branch {
        is_branch[b] = true;
    }
    // an edge between two branch vertices can only ever serve that pair
    let mut used = 0u128;
    let mut walks = Vec::new();
    let mut pending = Vec::new();
    for (i, &a) in branch.iter().enumerate() {
        for &b in &branch[i + 1..] {
            if g.has_edge(a, b) {
                used |= 1 << search.eid(a, b);
                walks.push(vec![a, b]);
            } else {
                pending.push((a, b));
            }
        }
    }
    if walks.len() + 2 * pending.len() > m {
        return Ok(None);
    }
    let mut out = Vec::new();
    if search.pack(&mut pending, used, &is_branch, &mut out)? {
        walks.extend(out);
        Ok(Some((branch.to_vec(), walks)))
    } else {
        Ok(None)
    }
}

/// Largest `t <= budget.max_t` with `K_t ≼ g`, and a certificate for it.
pub fn max_immersion_order(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<(usize, ImmersionCertificate)> {
    let mut best = brute_force_immersion(g, 0, budget)?.expect("K0 always immerses");
    let top = budget.max_t.min(g.n());
    for t in 1..=top {
        match brute_force_immersion(g, t, budget)? {
            Some(c) => {
                assert_eq!(c.order, best.order + 1, "immersion orders are monotone");
                best = c;
            }
            None => break,
        }
    }
    Ok((best.order, best))
}
